#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lie2/automorphisms.hpp"
#include "lie2/derivations.hpp"
#include "lie2/linalg.hpp"

namespace lie2 {

struct ExpConfig {
  int order = 24;
  double tol = 1e-9;
  ExpMode mode = ExpMode::exact_if_terminating;
  double fd_step = 1e-3;

  /// Throws std::invalid_argument unless order >= 1, tol > 0, fd_step > 0.
  void validate() const;
};

using MixedAut0 = std::variant<Aut0<Rat>, Aut0<double>>;
using MixedTau = std::variant<Tau<Rat>, Tau<double>>;

/// Number of series terms after which e^{tD} is exact, when X0 and X1 are
/// nilpotent. With X0^a = 0 and X1^b = 0 every term past 2a + b vanishes.
std::optional<int> terminating_order(const Derivation0<Rat>& D);
/// Same for e^{t Theta}: terminates when d Theta is nilpotent.
std::optional<int> terminating_order(const Lie2Algebra<Rat>& L, const DerM1<Rat>& th);

/// e^{t l_X} = sum_{n>=1} t^n/n! Q_n with Q_1 = l, Q_{n+1} = X1 Q_n + P_n and
/// P_m(x,y) = sum_{i+j=m} C(m,i) l(X0^i x, X0^j y); n runs to `order`.
template <class T>
AltTensor<T> exp_l_series(const Derivation0<T>& D, const T& t, int order);

/// (e^{tX0}, e^{tX1}, e^{t l_X}) truncated at `order`, with inverses taken
/// from the same series at -t.
template <class T>
Aut0<T> exp_der0_series(const Derivation0<T>& D, const T& t, int order);

/// sum_{n>=1} t^n (Theta d)^{n-1} Theta / n!, truncated at `order`.
template <class T>
Tau<T> exp_derM1_series(const Lie2Algebra<T>& L, const DerM1<T>& th, const T& t, int order);

/// e^{tD}: exact when the configuration allows it and the series terminates,
/// floating point otherwise. Throws std::invalid_argument if D is not a derivation.
MixedAut0 exp_der0(const Lie2Algebra<Rat>& L, const Derivation0<Rat>& D, const Rat& t, const ExpConfig& cfg);
/// e^{t Theta}, with the same exactness rule.
MixedTau exp_derM1(const Lie2Algebra<Rat>& L, const DerM1<Rat>& th, const ExpConfig& cfg, const Rat& t = Rat(1));

/// Residual "exp.one_parameter" of e^{(t+s)D} against e^{tD} <> e^{sD}.
IdentityResidual check_one_parameter(const Lie2Algebra<Rat>& L, const Derivation0<Rat>& D, const Rat& t,
                                     const Rat& s, const ExpConfig& cfg);
/// Residual "exp.one_parameter_m1" of e^{(t+s)Theta} against e^{t Theta} * e^{s Theta}.
IdentityResidual check_one_parameter(const Lie2Algebra<Rat>& L, const DerM1<Rat>& th, const Rat& t, const Rat& s,
                                     const ExpConfig& cfg);

/// Residual "exp.square" of d(e^Theta) against e^{dbar Theta}.
IdentityResidual check_commuting_square(const Lie2Algebra<Rat>& L, const DerM1<Rat>& th, const ExpConfig& cfg);

/// Mixed central difference at (0,0), step cfg.fd_step, of the components of
/// s,t -> e^{sX} <> e^{tY} <> e^{-sX} <> e^{-tY}.
Derivation0<double> recover_bracket(const Lie2Algebra<Rat>& L, const Derivation0<Rat>& a, const Derivation0<Rat>& b,
                                    const ExpConfig& cfg);
/// Same for e^{s Theta} * e^{t Theta'} * (e^{s Theta})^{-1} * (e^{t Theta'})^{-1}.
DerM1<double> recover_bracket(const Lie2Algebra<Rat>& L, const DerM1<Rat>& a, const DerM1<Rat>& b,
                              const ExpConfig& cfg);

/// Max-abs distance of two derivations, in floating point.
double der_distance(const Derivation0<double>& a, const Derivation0<double>& b);

using MixedSemidirect = std::variant<SemidirectElement<Rat>, SemidirectElement<double>>;

/// (e^X, e^Theta); exact only when both series terminate.
MixedSemidirect exp_semidirect(const Lie2Algebra<Rat>& L, const SemidirectDer<Rat>& p, const ExpConfig& cfg,
                               const Rat& t = Rat(1));

/// Residual "exp.semidirect_one_parameter" of e^{(t+s)p} against e^{tp} e^{sp}
/// in the semidirect product group.
IdentityResidual check_semidirect_one_parameter(const Lie2Algebra<Rat>& L, const SemidirectDer<Rat>& p,
                                                const Rat& t, const Rat& s, const ExpConfig& cfg);

struct ConjugationSamples {
  std::vector<Aut0<Rat>> auts;
  std::vector<Tau<Rat>> taus;
  std::vector<Derivation0<Rat>> ders;
  std::vector<DerM1<Rat>> thetas;
  std::vector<Vec<Rat>> points;  // x in g_0
};

/// One item per identity, maximised over the samples (index k uses entry k of
/// every list, cycling):
///   conj.aut_der0     A <> e^X <> A^{-1} = e^{Ad(A)X}
///   conj.tau_derM1    tau * e^Theta * tau^{-1} = e^{Ad(tau)Theta}
///   conj.aut_derM1    A |> e^Theta = e^{A1 Theta A0^{-1}}
///   conj.tau_der0     tau * (e^X |> tau^{-1}) = e^{X1 tau^{-1} + tau X0 + tau d X1 tau^{-1}}
///   conj.aut_dbar     A <> e^{dbar Theta} <> A^{-1} = e^{dbar(A1 Theta A0^{-1})}
///   conj.aut_adbar    A <> e^{adbar0(x)} <> A^{-1} = e^{adbar0(A0 x) + dbar(A2(x, A0^{-1} .))}
/// An item is exact when every sample of it terminated, float otherwise.
Report check_conjugation_identities(const Lie2Algebra<Rat>& L, const ConjugationSamples& samples,
                                    const ExpConfig& cfg);

/// A2(x, A0^{-1} .) as a degree -1 derivation.
DerM1<Rat> adbar_correction(const Aut0<Rat>& A, const Vec<Rat>& x);

struct InnGenerators {
  std::vector<MixedAut0> degree0;     // e^{b} for b in inn0_basis
  std::vector<MixedTau> degree_m1;    // e^{E} for E in derM1_basis
};

/// Throws std::runtime_error if a generator fails certification within cfg.tol.
InnGenerators inn_group_generators(const Lie2Algebra<Rat>& L, const ExpConfig& cfg);

/// Draws exact automorphisms as products of d(tau) and exponentials e^{tX}
/// of derivations with nilpotent X0, X1 (from Der^0, adbar_0 and dbar).
class Aut0Sampler {
 public:
  explicit Aut0Sampler(const Lie2Algebra<Rat>& L);
  Aut0<Rat> draw(Sampler& g) const;
  std::size_t candidate_count() const { return candidates_.size(); }

 private:
  Lie2Algebra<Rat> L_;
  std::vector<Derivation0<Rat>> candidates_;
};

/// Nilpotent Der^0 elements used by Aut0Sampler.
std::vector<Derivation0<Rat>> nilpotent_derivations(const Lie2Algebra<Rat>& L);

}  // namespace lie2
