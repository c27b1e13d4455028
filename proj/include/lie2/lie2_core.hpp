#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lie2/alt_tensor.hpp"
#include "lie2/matrix.hpp"
#include "lie2/report.hpp"

namespace lie2 {

/// Semistrict Lie 2-algebra g_{-1} --d--> g_0 by structure constants.
///
/// Degree-0 basis e_0..e_{n0-1}, degree -1 basis f_0..f_{n1-1}.
///   d        : n0 x n1 matrix, d(f_a) = sum_i d(i, a) e_i
///   b00      : [e_i, e_j] for i < j (values in g_0)
///   b01[i]   : n1 x n1 matrix of a -> [e_i, a]; [a, x] = -[x, a]
///   l3       : alternating trilinear map g_0^3 -> g_{-1}
/// There is no bracket on g_{-1} x g_{-1}.
template <class T>
struct Lie2Algebra {
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  Matrix<T> d;
  AltTensor<T> b00;
  std::vector<Matrix<T>> b01;
  AltTensor<T> l3;

  /// All structure maps zero.
  static Lie2Algebra zero(std::size_t n0, std::size_t n1);

  /// Throws std::invalid_argument if any tensor has the wrong shape.
  void check_shapes() const;

  Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const;
  /// [x, a] for x in g_0, a in g_{-1}.
  Vec<T> act(const Vec<T>& x, const Vec<T>& a) const;
  Vec<T> diff(const Vec<T>& a) const { return d.apply(a); }
  Vec<T> l3_eval(const Vec<T>& x, const Vec<T>& y, const Vec<T>& z) const { return l3.eval({x, y, z}); }

  /// y -> [x, y] on g_0.
  Matrix<T> ad0(const Vec<T>& x) const;
  /// a -> [x, a] on g_{-1}.
  Matrix<T> ad0_minus1(const Vec<T>& x) const;

  bool is_strict() const { return l3.is_zero(); }

  template <class U>
  Lie2Algebra<U> cast() const {
    Lie2Algebra<U> out;
    out.n0 = n0;
    out.n1 = n1;
    out.d = d.template cast<U>();
    out.b00 = b00.template cast<U>();
    for (const auto& m : b01) out.b01.push_back(m.template cast<U>());
    out.l3 = l3.template cast<U>();
    return out;
  }

  friend bool operator==(const Lie2Algebra& a, const Lie2Algebra& b) {
    return a.n0 == b.n0 && a.n1 == b.n1 && a.d == b.d && a.b00 == b.b00 && a.b01 == b.b01 && a.l3 == b.l3;
  }
};

/// Weak homomorphism (A0, A1, A2) between Lie 2-algebras.
template <class T>
struct Lie2Hom {
  Matrix<T> a0;       // n0' x n0
  Matrix<T> a1;       // n1' x n1
  AltTensor<T> a2;    // g_0 ^ g_0 -> g'_{-1}

  static Lie2Hom identity(std::size_t n0, std::size_t n1) {
    return {Matrix<T>::identity(n0), Matrix<T>::identity(n1), AltTensor<T>(2, n0, n1)};
  }
  static Lie2Hom identity(const Lie2Algebra<T>& L) { return identity(L.n0, L.n1); }

  std::size_t source_n0() const { return a0.cols(); }
  std::size_t source_n1() const { return a1.cols(); }
  std::size_t target_n0() const { return a0.rows(); }
  std::size_t target_n1() const { return a1.rows(); }

  bool is_strict() const { return a2.is_zero(); }

  template <class U>
  Lie2Hom<U> cast() const {
    return {a0.template cast<U>(), a1.template cast<U>(), a2.template cast<U>()};
  }

  friend bool operator==(const Lie2Hom& a, const Lie2Hom& b) {
    return a.a0 == b.a0 && a.a1 == b.a1 && a.a2 == b.a2;
  }
};

/// Residuals of the axioms: a1 d[x,a]=[x,da]; a2 [da,b]=[a,db];
/// b1 [[x,y],z]+c.p. = -d l3(x,y,z); b2 [[x,y],a]+c.p. = -l3(x,y,da);
/// c  the l3 coherence law on four degree-0 arguments.
template <class T>
Report validate_lie2(const Lie2Algebra<T>& L);

/// Axiom letter ("a", "b", "c", "chain", "i", ...) of a report item name.
std::string axiom_of(const std::string& item_name);

/// Residuals of the chain condition and conditions (i)-(iii) for A: src -> tgt.
template <class T>
Report validate_hom(const Lie2Algebra<T>& src, const Lie2Algebra<T>& tgt, const Lie2Hom<T>& A);

/// B <> A, with (B<>A)_2 = B_2(A_0., A_0.) + B_1 A_2.
template <class T>
Lie2Hom<T> compose_hom(const Lie2Hom<T>& B, const Lie2Hom<T>& A);

/// (A0^{-1}, A1^{-1}, -A1^{-1} A2(A0^{-1}., A0^{-1}.)) when A0 and A1 are invertible.
template <class T>
std::optional<Lie2Hom<T>> invert_hom(const Lie2Hom<T>& A);

/// Max-abs entrywise difference of two homomorphism triples.
template <class T>
T hom_distance(const Lie2Hom<T>& A, const Lie2Hom<T>& B);

// ---------------------------------------------------------------------------
// Lie algebras, crossed modules and the named constructions.

/// Finite-dimensional Lie algebra by structure constants.
struct LieAlgebra {
  std::size_t dim = 0;
  AltTensor<Rat> bracket;  // arity 2, dim -> dim

  static LieAlgebra abelian(std::size_t n);
  /// Basis {h, e, f}: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
  static LieAlgebra sl2();

  Vec<Rat> br(const Vec<Rat>& x, const Vec<Rat>& y) const { return bracket.eval({x, y}); }
  Matrix<Rat> ad(const Vec<Rat>& x) const;
  Matrix<Rat> ad(std::size_t i) const { return ad(unit_vector<Rat>(dim, i)); }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.dim == b.dim && a.bracket == b.bracket; }
};

/// Representation of a Lie algebra: one matrix per basis vector.
using Representation = std::vector<Matrix<Rat>>;

Representation trivial_representation(const LieAlgebra& k, std::size_t dim_v);
Matrix<Rat> rep_apply(const Representation& phi, const Vec<Rat>& x);

/// Residual of the Jacobi identity on basis triples.
Report validate_lie_algebra(const LieAlgebra& k, const std::string& label = "lie");

/// Crossed module (h1, h0, varphi, phi) of Lie algebras.
struct CrossedModule {
  LieAlgebra h1;
  LieAlgebra h0;
  Matrix<Rat> varphi;             // dim h0 x dim h1
  std::vector<Matrix<Rat>> action;  // action[i] = phi_{e_i} on h1

  friend bool operator==(const CrossedModule& a, const CrossedModule& b) {
    return a.h1 == b.h1 && a.h0 == b.h0 && a.varphi == b.varphi && a.action == b.action;
  }
};

/// Jacobi for both brackets, varphi a homomorphism, phi a representation by
/// derivations, equivariance and the Peiffer identity.
Report validate_crossed_module(const CrossedModule& C);

/// Throws std::invalid_argument when l3 != 0.
CrossedModule strict_to_crossed(const Lie2Algebra<Rat>& L);
Lie2Algebra<Rat> crossed_to_strict(const CrossedModule& C);

/// K(x, y) = tr(ad_x ad_y).
Matrix<Rat> killing_form(const LieAlgebra& k);

/// R --0--> k with l3(x,y,z) = K([x,y],z).
Lie2Algebra<Rat> make_string(const LieAlgebra& k);

/// V --0--> k with [x,u] = phi_x(u) and the given V-valued 3-cochain.
Lie2Algebra<Rat> make_skeletal(const LieAlgebra& k, const Representation& phi, const AltTensor<Rat>& l3);

/// Two-term complex V_{-1} --dV--> V_0.
struct TwoTermComplex {
  std::size_t dim0 = 0;   // dim V_0
  std::size_t dim1 = 0;   // dim V_{-1}
  Matrix<Rat> dv;         // dim0 x dim1
};

/// The strict Lie 2-algebra End(V): g_0 = pairs (X0, X1) with X0 dV = dV X1
/// (basis from kernel_basis of the linearised constraint, unknowns X0 then X1
/// row-major), g_{-1} = Hom(V_0, V_{-1}) with the row-major unit basis.
Lie2Algebra<Rat> make_endo(const TwoTermComplex& V);

/// Basis vector of g_0 in make_endo(V), unpacked as (X0, X1).
std::pair<Matrix<Rat>, Matrix<Rat>> endo_basis_element(const TwoTermComplex& V, std::size_t i);

/// Chevalley-Eilenberg differential of a V-valued cochain on k.
/// Throws std::invalid_argument when the cochain arity exceeds dim k.
AltTensor<Rat> ce_coboundary(const LieAlgebra& k, const Representation& phi, const AltTensor<Rat>& f);

/// The strict Lie 2-algebra 0 --> k.
Lie2Algebra<Rat> make_strict_lie(const LieAlgebra& k);

/// The strict Lie 2-algebra k --id--> k with [x, a] = [x, a]_k.
Lie2Algebra<Rat> make_identity_crossed(const LieAlgebra& k);

/// Transports L along the linear isomorphisms P0 (on g_0) and P1 (on g_{-1}).
Lie2Algebra<Rat> transport(const Lie2Algebra<Rat>& L, const Matrix<Rat>& P0, const Matrix<Rat>& P1);

/// Named fixtures.
Lie2Algebra<Rat> fixture_abelian();        // n0 = n1 = 1, everything zero
Lie2Algebra<Rat> fixture_string_sl2();     // make_string(sl2)
Lie2Algebra<Rat> fixture_endo_1_1();       // make_endo(R --id--> R)
Lie2Algebra<Rat> fixture_skeletal_demo();  // sl2 on its 2-dim module, nonzero l3

}  // namespace lie2
