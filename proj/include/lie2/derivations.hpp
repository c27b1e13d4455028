#pragma once

#include <variant>
#include <vector>

#include "lie2/lie2_core.hpp"

namespace lie2 {

/// Degree-0 derivation (X0, X1, lX).
template <class T>
struct Derivation0 {
  Matrix<T> x0;     // n0 x n0
  Matrix<T> x1;     // n1 x n1
  AltTensor<T> lx;  // g_0 ^ g_0 -> g_{-1}

  static Derivation0 zero(std::size_t n0, std::size_t n1) {
    return {Matrix<T>(n0, n0), Matrix<T>(n1, n1), AltTensor<T>(2, n0, n1)};
  }
  template <class A>
  static Derivation0 zero(const Lie2Algebra<A>& L) {
    return zero(L.n0, L.n1);
  }

  template <class U>
  Derivation0<U> cast() const {
    return {x0.template cast<U>(), x1.template cast<U>(), lx.template cast<U>()};
  }

  friend Derivation0 operator+(const Derivation0& a, const Derivation0& b) { return {a.x0 + b.x0, a.x1 + b.x1, a.lx + b.lx}; }
  friend Derivation0 operator-(const Derivation0& a, const Derivation0& b) { return {a.x0 - b.x0, a.x1 - b.x1, a.lx - b.lx}; }
  friend Derivation0 operator*(const Derivation0& a, const T& s) { return {a.x0 * s, a.x1 * s, a.lx * s}; }
  friend bool operator==(const Derivation0& a, const Derivation0& b) { return a.x0 == b.x0 && a.x1 == b.x1 && a.lx == b.lx; }
};

/// Degree -1 derivation: any linear map g_0 -> g_{-1}.
template <class T>
struct DerM1 {
  Matrix<T> theta;  // n1 x n0

  template <class U>
  DerM1<U> cast() const {
    return {theta.template cast<U>()};
  }

  friend DerM1 operator+(const DerM1& a, const DerM1& b) { return {a.theta + b.theta}; }
  friend DerM1 operator*(const DerM1& a, const T& s) { return {a.theta * s}; }
  friend bool operator==(const DerM1& a, const DerM1& b) { return a.theta == b.theta; }
};

using DerElement = std::variant<Derivation0<Rat>, DerM1<Rat>>;

/// Residuals "der.chain" (X0 d = d X1) and "der.a", "der.b", "der.c".
template <class T>
Report is_derivation0(const Lie2Algebra<T>& L, const Derivation0<T>& D);

/// Coordinates (X0 row-major, X1 row-major, lX canonical slots) and back.
Vec<Rat> flatten(const Derivation0<Rat>& D);
Derivation0<Rat> unflatten_der0(std::size_t n0, std::size_t n1, const Vec<Rat>& v);

/// Basis of Der^0 from the stacked homogeneous system (chain, a, b, c).
std::vector<Derivation0<Rat>> compute_der0_basis(const Lie2Algebra<Rat>& L);

/// Degree-0 derivations with lX = 0.
std::vector<Derivation0<Rat>> strict_der0_basis(const Lie2Algebra<Rat>& L);

/// Theta with Theta[x,y] = [Theta x, y] + [x, Theta y].
std::vector<DerM1<Rat>> strict_derM1_basis(const Lie2Algebra<Rat>& L);

/// Strict degree -1 derivations that also satisfy d Theta = 0 and Theta d = 0.
std::vector<DerM1<Rat>> homotopy_derM1_basis(const Lie2Algebra<Rat>& L);

/// Unit basis of Der^{-1} = Hom(g_0, g_{-1}): E_{a,i}, ordered row-major in (a, i).
std::vector<DerM1<Rat>> derM1_basis(const Lie2Algebra<Rat>& L);

/// dbar(Theta) = (d Theta, Theta d, Theta[x,y] - [x,Theta y] - [Theta x,y]).
template <class T>
Derivation0<T> dbar(const Lie2Algebra<T>& L, const DerM1<T>& theta);

/// L_X omega = X1 omega - sum_i omega(.., X0 x_i, ..).
template <class T>
AltTensor<T> lie_cochain_action(const Matrix<T>& x0, const Matrix<T>& x1, const AltTensor<T>& omega);

/// {D, D'} = ([X,Y]_C, L_X lY - L_Y lX).
template <class T>
Derivation0<T> bracket00(const Derivation0<T>& a, const Derivation0<T>& b);
/// {D, Theta} = X1 Theta - Theta X0.
template <class T>
DerM1<T> bracket0m(const Derivation0<T>& a, const DerM1<T>& b);
/// {Theta, Theta'} = Theta d Theta' - Theta' d Theta.
template <class T>
DerM1<T> bracketmm(const Lie2Algebra<T>& L, const DerM1<T>& a, const DerM1<T>& b);

/// Graded bracket on Der(g); two degree -1 inputs use bracketmm.
DerElement graded_bracket(const Lie2Algebra<Rat>& L, const DerElement& a, const DerElement& b);

/// adbar_0(x) = (ad_x on g_0, ad_x on g_{-1}, l3(x, ., .)).
Derivation0<Rat> adbar0(const Lie2Algebra<Rat>& L, const Vec<Rat>& x);
/// adbar_1(a) = (y -> [a, y]).
DerM1<Rat> adbar1(const Lie2Algebra<Rat>& L, const Vec<Rat>& a);
/// adbar_2(y, z) = -l3(y, z, .).
DerM1<Rat> adbar2(const Lie2Algebra<Rat>& L, const Vec<Rat>& y, const Vec<Rat>& z);

/// Der(g) in chosen bases, with its realization as a strict Lie 2-algebra.
struct DerLie2 {
  std::size_t source_n0 = 0;
  std::size_t source_n1 = 0;
  std::vector<Derivation0<Rat>> basis0;
  std::vector<DerM1<Rat>> basisM1;
  Matrix<Rat> dbar_matrix;  // |basis0| x |basisM1|
  Lie2Algebra<Rat> realization;

  /// Coordinates of a Der^0 element in basis0; throws if it is not in the span.
  Vec<Rat> coords0(const Derivation0<Rat>& D) const;
  Vec<Rat> coordsM1(const DerM1<Rat>& T) const;
  Derivation0<Rat> element0(const Vec<Rat>& c) const;
  DerM1<Rat> elementM1(const Vec<Rat>& c) const;
};

DerLie2 build_der_lie2(const Lie2Algebra<Rat>& L);

/// The adjoint homomorphism L -> Der(L), in the bases of `D`.
Lie2Hom<Rat> adbar(const Lie2Algebra<Rat>& L, const DerLie2& D);

/// Basis of inn^0 = Im adbar_0 + Im dbar, by row reduction of the generators
/// adbar_0(e_0..), dbar(E_00..).
std::vector<Derivation0<Rat>> inn0_basis(const Lie2Algebra<Rat>& L);

struct DerivationFlags {
  bool weak = false;
  bool strict = false;
  bool homotopy = false;
};

DerivationFlags classify_derivation(const Lie2Algebra<Rat>& L, const DerElement& elem);

}  // namespace lie2
