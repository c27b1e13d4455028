#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "lie2/derivations.hpp"
#include "lie2/lie2_core.hpp"
#include "lie2/random.hpp"

namespace lie2 {

/// Degree -1 endomorphism tau: g_0 -> g_{-1}, an element of the monoid (End^{-1}, *).
template <class T>
struct Tau {
  Matrix<T> tau;  // n1 x n0

  static Tau zero(std::size_t n0, std::size_t n1) { return {Matrix<T>(n1, n0)}; }

  template <class U>
  Tau<U> cast() const {
    return {tau.template cast<U>()};
  }
  friend bool operator==(const Tau& a, const Tau& b) { return a.tau == b.tau; }
};

/// Invertible weak endomorphism with A0^{-1}, A1^{-1} cached at construction.
template <class T>
class Aut0 {
 public:
  /// Checks the homomorphism conditions on L (exactly, or within tol for
  /// floats) and invertibility.
  static std::optional<Aut0> certify(const Lie2Algebra<T>& L, const Lie2Hom<T>& A, double tol = 0.0);
  /// Inverts A0 and A1 without checking the homomorphism conditions.
  static std::optional<Aut0> trusted(const Lie2Hom<T>& A);
  /// Caller supplies the inverses.
  static Aut0 from_parts(Lie2Hom<T> A, Matrix<T> a0_inv, Matrix<T> a1_inv) {
    return Aut0(std::move(A), std::move(a0_inv), std::move(a1_inv));
  }
  static Aut0 identity(const Lie2Algebra<T>& L) {
    return Aut0(Lie2Hom<T>::identity(L), Matrix<T>::identity(L.n0), Matrix<T>::identity(L.n1));
  }

  const Lie2Hom<T>& hom() const { return hom_; }
  const Matrix<T>& a0_inv() const { return a0_inv_; }
  const Matrix<T>& a1_inv() const { return a1_inv_; }
  Lie2Hom<T> inverse_hom() const { return {a0_inv_, a1_inv_, -postcompose(a1_inv_, pullback(hom_.a2, a0_inv_))}; }

  template <class U>
  Aut0<U> cast() const {
    return Aut0<U>::from_parts(hom_.template cast<U>(), a0_inv_.template cast<U>(), a1_inv_.template cast<U>());
  }

  friend bool operator==(const Aut0& a, const Aut0& b) { return a.hom_ == b.hom_; }

 private:
  Aut0(Lie2Hom<T> A, Matrix<T> i0, Matrix<T> i1) : hom_(std::move(A)), a0_inv_(std::move(i0)), a1_inv_(std::move(i1)) {}
  Lie2Hom<T> hom_;
  Matrix<T> a0_inv_;
  Matrix<T> a1_inv_;
};

/// validate_hom(L, L, A) plus "aut.invertible" (0 when A0 and A1 are invertible, 1 otherwise).
template <class T>
Report is_aut0(const Lie2Algebra<T>& L, const Lie2Hom<T>& A);

template <class T>
Aut0<T> aut_compose(const Aut0<T>& A, const Aut0<T>& B);
template <class T>
Aut0<T> aut_inverse(const Aut0<T>& A);

/// tau * tau' = tau + tau' + tau d tau'.
template <class T>
Tau<T> star(const Lie2Algebra<T>& L, const Tau<T>& a, const Tau<T>& b);

/// -tau (I + d tau)^{-1}, absent when I + d tau is singular.
template <class T>
std::optional<Tau<T>> tau_inverse(const Lie2Algebra<T>& L, const Tau<T>& t);

/// (A0 + d tau, A1 + tau d, A2 + l), with
/// l(x,y) = tau[x,y] - [A0 x, tau y] - [tau x, A0 y] - [tau x, d tau y].
template <class T>
Lie2Hom<T> twist_hom(const Lie2Algebra<T>& L, const Lie2Hom<T>& A, const Tau<T>& t);

/// twist_hom(id, tau). Throws std::invalid_argument if tau is not invertible.
template <class T>
Aut0<T> partial(const Lie2Algebra<T>& L, const Tau<T>& t);

/// A1 tau A0^{-1}.
template <class T>
Tau<T> act(const Aut0<T>& A, const Tau<T>& t);

using ActionFn = std::function<Tau<Rat>(const Aut0<Rat>&, const Tau<Rat>&)>;

/// Exact crossed-module identities over all sample pairs:
///   aut.equivariance   d(A |> tau) = A <> d(tau) <> A^{-1}
///   aut.peiffer        d(tau) |> tau' = tau * tau' * tau^{-1}
///   aut.partial_hom    d(tau * tau') = d(tau) <> d(tau')
///   aut.action         (A <> B) |> tau = A |> (B |> tau)
/// `action` replaces |> when given.
Report check_crossed_module(const Lie2Algebra<Rat>& L, const std::vector<Tau<Rat>>& taus,
                            const std::vector<Aut0<Rat>>& auts, const ActionFn& action = {});

/// 2-cell from g to d(h) <> g.
struct TwoGroupCell {
  Aut0<Rat> g;
  Tau<Rat> h;
  friend bool operator==(const TwoGroupCell& a, const TwoGroupCell& b) { return a.g == b.g && a.h == b.h; }
};

Aut0<Rat> cell_source(const TwoGroupCell& c);
Aut0<Rat> cell_target(const Lie2Algebra<Rat>& L, const TwoGroupCell& c);
TwoGroupCell identity_cell(const Aut0<Rat>& g);

/// (g', h') after (g, h) = (g, h' * h); throws unless g' = d(h) <> g.
TwoGroupCell vcompose(const Lie2Algebra<Rat>& L, const TwoGroupCell& outer, const TwoGroupCell& inner);
/// (g, h)(g', h') = (g <> g', h * (g |> h')).
TwoGroupCell hmultiply(const Lie2Algebra<Rat>& L, const TwoGroupCell& a, const TwoGroupCell& b);

/// Element of Aut^0 x| Aut^{-1}.
template <class T>
struct SemidirectElement {
  Aut0<T> a;
  Tau<T> t;
};

template <class T>
SemidirectElement<T> semidirect_identity(const Lie2Algebra<T>& L);
/// (A, tau)(A', tau') = (A <> A', tau * (A |> tau')).
template <class T>
SemidirectElement<T> semidirect_multiply(const Lie2Algebra<T>& L, const SemidirectElement<T>& p,
                                         const SemidirectElement<T>& q);
/// (A^{-1}, A^{-1} |> tau^{-1}).
template <class T>
SemidirectElement<T> semidirect_inverse(const Lie2Algebra<T>& L, const SemidirectElement<T>& p);

struct AutFlags {
  bool weak = false;
  bool strict = false;
};

/// Degree 0: weak = automorphism, strict = also A2 = 0.
/// Degree -1: weak = invertible, strict = also tau[x,y] = [x,tau y] + [tau x,y] + [tau x,d tau y].
using AutElement = std::variant<Lie2Hom<Rat>, Tau<Rat>>;
AutFlags classify_automorphism(const Lie2Algebra<Rat>& L, const AutElement& elem);

/// Pair (X, Theta) in the semidirect Lie algebra Der^0 x| Der^{-1}.
template <class T>
struct SemidirectDer {
  Derivation0<T> x;
  DerM1<T> theta;
  friend bool operator==(const SemidirectDer& a, const SemidirectDer& b) { return a.x == b.x && a.theta == b.theta; }
};

/// Ad(A)X = (A0 X0 A0^{-1}, A1 X1 A1^{-1}, l) with
/// l(x,y) = A1 lX(u,v) - A1 X1 A1^{-1} A2(u,v) + A2(X0 u, v) + A2(u, X0 v), u = A0^{-1}x, v = A0^{-1}y.
template <class T>
Derivation0<T> ad_conjugate(const Lie2Algebra<T>& L, const Aut0<T>& A, const Derivation0<T>& X);
/// Ad(A)Theta = A1 Theta A0^{-1}.
template <class T>
DerM1<T> ad_conjugate(const Lie2Algebra<T>& L, const Aut0<T>& A, const DerM1<T>& th);
/// Ad(tau)X = (X, X1 tau^{-1} + tau X0 + tau d X1 tau^{-1}).
template <class T>
SemidirectDer<T> ad_conjugate(const Lie2Algebra<T>& L, const Tau<T>& t, const Derivation0<T>& X);
/// Ad(tau)Theta = (I + tau d) Theta (I + d tau)^{-1}.
template <class T>
DerM1<T> ad_conjugate(const Lie2Algebra<T>& L, const Tau<T>& t, const DerM1<T>& th);
/// Componentwise extension to pairs.
template <class T>
SemidirectDer<T> ad_conjugate(const Lie2Algebra<T>& L, const Aut0<T>& A, const SemidirectDer<T>& p);
template <class T>
SemidirectDer<T> ad_conjugate(const Lie2Algebra<T>& L, const Tau<T>& t, const SemidirectDer<T>& p);

/// Random tau; with `invertible` set, rejection-samples until I + d tau is invertible.
Tau<Rat> sample_tau(Sampler& g, const Lie2Algebra<Rat>& L, bool invertible = true);

}  // namespace lie2
