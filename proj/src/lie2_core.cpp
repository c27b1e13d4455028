#include "lie2/lie2_core.hpp"

#include <sstream>
#include <stdexcept>

#include "lie2/linalg.hpp"

namespace lie2 {

namespace {

std::string e_(std::size_t i) { return "e" + std::to_string(i); }
std::string f_(std::size_t a) { return "f" + std::to_string(a); }

std::string witness(std::initializer_list<std::string> parts) {
  std::string out = "(";
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += ",";
    out += p;
    first = false;
  }
  return out + ")";
}

template <class T>
Vec<T> neg(Vec<T> v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

template <class T>
Lie2Algebra<T> Lie2Algebra<T>::zero(std::size_t n0, std::size_t n1) {
  Lie2Algebra L;
  L.n0 = n0;
  L.n1 = n1;
  L.d = Matrix<T>(n0, n1);
  L.b00 = AltTensor<T>(2, n0, n0);
  L.b01.assign(n0, Matrix<T>(n1, n1));
  L.l3 = AltTensor<T>(3, n0, n1);
  return L;
}

template <class T>
void Lie2Algebra<T>::check_shapes() const {
  auto bad = [](const std::string& what) { throw std::invalid_argument("lie2 algebra: " + what + " has the wrong shape"); };
  if (d.rows() != n0 || d.cols() != n1) bad("d");
  if (b00.arity() != 2 || b00.domain_dim() != n0 || b00.codomain_dim() != n0) bad("b00");
  if (b01.size() != n0) bad("b01");
  for (const auto& m : b01)
    if (m.rows() != n1 || m.cols() != n1) bad("b01");
  if (l3.arity() != 3 || l3.domain_dim() != n0 || l3.codomain_dim() != n1) bad("l3");
}

template <class T>
Vec<T> Lie2Algebra<T>::bracket(const Vec<T>& x, const Vec<T>& y) const {
  return b00.eval({x, y});
}

template <class T>
Vec<T> Lie2Algebra<T>::act(const Vec<T>& x, const Vec<T>& a) const {
  Vec<T> out(n1, ScalarTraits<T>::zero());
  for (std::size_t i = 0; i < n0; ++i) {
    if (ScalarTraits<T>::is_zero(x[i])) continue;
    out = add(out, scaled(b01[i].apply(a), x[i]));
  }
  return out;
}

template <class T>
Matrix<T> Lie2Algebra<T>::ad0(const Vec<T>& x) const {
  std::vector<Vec<T>> cols;
  for (std::size_t j = 0; j < n0; ++j) cols.push_back(bracket(x, unit_vector<T>(n0, j)));
  return Matrix<T>::from_columns(n0, cols);
}

template <class T>
Matrix<T> Lie2Algebra<T>::ad0_minus1(const Vec<T>& x) const {
  Matrix<T> out(n1, n1);
  for (std::size_t i = 0; i < n0; ++i)
    if (!ScalarTraits<T>::is_zero(x[i])) out += b01[i] * x[i];
  return out;
}

template <class T>
Report validate_lie2(const Lie2Algebra<T>& L) {
  L.check_shapes();
  const std::size_t n0 = L.n0, n1 = L.n1;
  auto e = [&](std::size_t i) { return unit_vector<T>(n0, i); };
  auto f = [&](std::size_t a) { return unit_vector<T>(n1, a); };
  Report rep;

  ResidualAccumulator<T> a1("lie2.a1");
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t a = 0; a < n1; ++a) {
      auto r = sub(L.diff(L.act(e(i), f(a))), L.bracket(e(i), L.diff(f(a))));
      a1.observe(r, [&] { return witness({e_(i), f_(a)}); });
    }
  rep.items.push_back(a1.finish());

  // [da, b] = [a, db], i.e. [da, b] + [db, a] = 0.
  ResidualAccumulator<T> a2("lie2.a2");
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = a; b < n1; ++b) {
      auto r = add(L.act(L.diff(f(a)), f(b)), L.act(L.diff(f(b)), f(a)));
      a2.observe(r, [&] { return witness({f_(a), f_(b)}); });
    }
  rep.items.push_back(a2.finish());

  ResidualAccumulator<T> b1("lie2.b1");
  for (const auto& t : increasing_tuples(n0, 3)) {
    const auto x = e(t[0]), y = e(t[1]), z = e(t[2]);
    auto r = add(add(L.bracket(L.bracket(x, y), z), L.bracket(L.bracket(y, z), x)), L.bracket(L.bracket(z, x), y));
    r = add(r, L.diff(L.l3_eval(x, y, z)));
    b1.observe(r, [&] { return witness({e_(t[0]), e_(t[1]), e_(t[2])}); });
  }
  rep.items.push_back(b1.finish());

  // [[x,y],a] + [[y,a],x] + [[a,x],y] = -l3(x,y,da), written with [x,a] only.
  ResidualAccumulator<T> b2("lie2.b2");
  for (const auto& t : increasing_tuples(n0, 2))
    for (std::size_t a = 0; a < n1; ++a) {
      const auto x = e(t[0]), y = e(t[1]), fa = f(a);
      auto r = sub(L.act(L.bracket(x, y), fa), L.act(x, L.act(y, fa)));
      r = add(r, L.act(y, L.act(x, fa)));
      r = add(r, L.l3_eval(x, y, L.diff(fa)));
      b2.observe(r, [&] { return witness({e_(t[0]), e_(t[1]), f_(a)}); });
    }
  rep.items.push_back(b2.finish());

  // l3 coherence summed over (2,2)-unshuffles; [l3(..), w] = -[w, l3(..)].
  ResidualAccumulator<T> c("lie2.c");
  for (const auto& t : increasing_tuples(n0, 4)) {
    const Vec<T> v[4] = {e(t[0]), e(t[1]), e(t[2]), e(t[3])};
    auto l = [&](int p, int q, int r, int s) { return L.l3_eval(L.bracket(v[p], v[q]), v[r], v[s]); };
    Vec<T> lhs = l(0, 1, 2, 3);
    lhs = sub(lhs, l(0, 2, 1, 3));
    lhs = add(lhs, l(0, 3, 1, 2));
    lhs = add(lhs, l(1, 2, 0, 3));
    lhs = sub(lhs, l(1, 3, 0, 2));
    lhs = add(lhs, l(2, 3, 0, 1));
    auto br = [&](int p, int q, int r, int w) { return neg(L.act(v[w], L.l3_eval(v[p], v[q], v[r]))); };
    Vec<T> rhs = br(0, 1, 2, 3);
    rhs = sub(rhs, br(0, 1, 3, 2));
    rhs = add(rhs, br(0, 2, 3, 1));
    rhs = sub(rhs, br(1, 2, 3, 0));
    c.observe(sub(lhs, rhs), [&] { return witness({e_(t[0]), e_(t[1]), e_(t[2]), e_(t[3])}); });
  }
  rep.items.push_back(c.finish());
  return rep;
}

std::string axiom_of(const std::string& item_name) {
  const auto dot = item_name.find('.');
  std::string tail = dot == std::string::npos ? item_name : item_name.substr(dot + 1);
  if (item_name.rfind("lie2.", 0) == 0 && !tail.empty()) return tail.substr(0, 1);
  return tail;
}

template <class T>
Report validate_hom(const Lie2Algebra<T>& src, const Lie2Algebra<T>& tgt, const Lie2Hom<T>& A) {
  src.check_shapes();
  tgt.check_shapes();
  if (A.a0.rows() != tgt.n0 || A.a0.cols() != src.n0 || A.a1.rows() != tgt.n1 || A.a1.cols() != src.n1 ||
      A.a2.arity() != 2 || A.a2.domain_dim() != src.n0 || A.a2.codomain_dim() != tgt.n1)
    throw std::invalid_argument("homomorphism does not match its source and target dimensions");
  const std::size_t n0 = src.n0, n1 = src.n1;
  auto e = [&](std::size_t i) { return unit_vector<T>(n0, i); };
  auto f = [&](std::size_t a) { return unit_vector<T>(n1, a); };
  auto a2 = [&](const Vec<T>& x, const Vec<T>& y) { return A.a2.eval({x, y}); };
  Report rep;

  ResidualAccumulator<T> chain("hom.chain");
  chain.observe(tgt.d * A.a1 - A.a0 * src.d, [] { return std::string("matrix"); });
  rep.items.push_back(chain.finish());

  ResidualAccumulator<T> c1("hom.i");
  for (const auto& t : increasing_tuples(n0, 2)) {
    const auto x = e(t[0]), y = e(t[1]);
    auto r = sub(A.a0.apply(src.bracket(x, y)), tgt.bracket(A.a0.apply(x), A.a0.apply(y)));
    r = sub(r, tgt.diff(a2(x, y)));
    c1.observe(r, [&] { return witness({e_(t[0]), e_(t[1])}); });
  }
  rep.items.push_back(c1.finish());

  ResidualAccumulator<T> c2("hom.ii");
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t a = 0; a < n1; ++a) {
      const auto x = e(i), fa = f(a);
      auto r = sub(A.a1.apply(src.act(x, fa)), tgt.act(A.a0.apply(x), A.a1.apply(fa)));
      r = sub(r, a2(x, src.diff(fa)));
      c2.observe(r, [&] { return witness({e_(i), f_(a)}); });
    }
  rep.items.push_back(c2.finish());

  ResidualAccumulator<T> c3("hom.iii");
  for (const auto& t : increasing_tuples(n0, 3)) {
    const Vec<T> v[3] = {e(t[0]), e(t[1]), e(t[2])};
    Vec<T> r = tgt.l3_eval(A.a0.apply(v[0]), A.a0.apply(v[1]), A.a0.apply(v[2]));
    for (int k = 0; k < 3; ++k) {
      const auto& x = v[k];
      const auto& y = v[(k + 1) % 3];
      const auto& z = v[(k + 2) % 3];
      r = add(r, tgt.act(A.a0.apply(x), a2(y, z)));
      r = sub(r, a2(src.bracket(x, y), z));
    }
    r = sub(r, A.a1.apply(src.l3_eval(v[0], v[1], v[2])));
    c3.observe(r, [&] { return witness({e_(t[0]), e_(t[1]), e_(t[2])}); });
  }
  rep.items.push_back(c3.finish());
  return rep;
}

template <class T>
Lie2Hom<T> compose_hom(const Lie2Hom<T>& B, const Lie2Hom<T>& A) {
  if (B.source_n0() != A.target_n0() || B.source_n1() != A.target_n1())
    throw std::invalid_argument("compose_hom: homomorphisms are not composable");
  return {B.a0 * A.a0, B.a1 * A.a1, pullback(B.a2, A.a0) + postcompose(B.a1, A.a2)};
}

template <class T>
std::optional<Lie2Hom<T>> invert_hom(const Lie2Hom<T>& A) {
  if (!A.a0.is_square() || !A.a1.is_square()) return std::nullopt;
  auto i0 = mat_inverse(A.a0);
  auto i1 = mat_inverse(A.a1);
  if (!i0 || !i1) return std::nullopt;
  return Lie2Hom<T>{*i0, *i1, -postcompose(*i1, pullback(A.a2, *i0))};
}

template <class T>
T hom_distance(const Lie2Hom<T>& A, const Lie2Hom<T>& B) {
  if (A.a0.rows() != B.a0.rows() || A.a0.cols() != B.a0.cols() || A.a1.rows() != B.a1.rows() ||
      A.a1.cols() != B.a1.cols() || A.a2.domain_dim() != B.a2.domain_dim() ||
      A.a2.codomain_dim() != B.a2.codomain_dim())
    throw std::invalid_argument("hom_distance: shape mismatch");
  T m = max_abs<T>((A.a0 - B.a0).entries());
  T m1 = max_abs<T>((A.a1 - B.a1).entries());
  T m2 = max_abs<T>((A.a2 - B.a2).entries());
  if (m1 > m) m = m1;
  if (m2 > m) m = m2;
  return m;
}

#define LIE2_INSTANTIATE(T)                                                                      \
  template struct Lie2Algebra<T>;                                                                \
  template Report validate_lie2<T>(const Lie2Algebra<T>&);                                       \
  template Report validate_hom<T>(const Lie2Algebra<T>&, const Lie2Algebra<T>&, const Lie2Hom<T>&); \
  template Lie2Hom<T> compose_hom<T>(const Lie2Hom<T>&, const Lie2Hom<T>&);                      \
  template std::optional<Lie2Hom<T>> invert_hom<T>(const Lie2Hom<T>&);                           \
  template T hom_distance<T>(const Lie2Hom<T>&, const Lie2Hom<T>&);

LIE2_INSTANTIATE(Rat)
LIE2_INSTANTIATE(double)
#undef LIE2_INSTANTIATE

// ---------------------------------------------------------------------------

LieAlgebra LieAlgebra::abelian(std::size_t n) { return {n, AltTensor<Rat>(2, n, n)}; }

LieAlgebra LieAlgebra::sl2() {
  LieAlgebra k{3, AltTensor<Rat>(2, 3, 3)};
  k.bracket.set({0, 1}, 1, Rat(2));
  k.bracket.set({0, 2}, 2, Rat(-2));
  k.bracket.set({1, 2}, 0, Rat(1));
  return k;
}

Matrix<Rat> LieAlgebra::ad(const Vec<Rat>& x) const {
  std::vector<Vec<Rat>> cols;
  for (std::size_t j = 0; j < dim; ++j) cols.push_back(br(x, unit_vector<Rat>(dim, j)));
  return Matrix<Rat>::from_columns(dim, cols);
}

Representation trivial_representation(const LieAlgebra& k, std::size_t dim_v) {
  return Representation(k.dim, Matrix<Rat>(dim_v, dim_v));
}

Matrix<Rat> rep_apply(const Representation& phi, const Vec<Rat>& x) {
  if (phi.empty()) throw std::invalid_argument("rep_apply: empty representation");
  Matrix<Rat> out(phi[0].rows(), phi[0].cols());
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (sgn(x[i]) != 0) out += phi[i] * x[i];
  return out;
}

Report validate_lie_algebra(const LieAlgebra& k, const std::string& label) {
  Report rep;
  ResidualAccumulator<Rat> jac(label + ".jacobi");
  for (const auto& t : increasing_tuples(k.dim, 3)) {
    const auto x = unit_vector<Rat>(k.dim, t[0]), y = unit_vector<Rat>(k.dim, t[1]), z = unit_vector<Rat>(k.dim, t[2]);
    auto r = add(add(k.br(k.br(x, y), z), k.br(k.br(y, z), x)), k.br(k.br(z, x), y));
    jac.observe(r, [&] { return witness({e_(t[0]), e_(t[1]), e_(t[2])}); });
  }
  rep.items.push_back(jac.finish());
  return rep;
}

Report validate_crossed_module(const CrossedModule& C) {
  const std::size_t m = C.h1.dim, n = C.h0.dim;
  if (C.varphi.rows() != n || C.varphi.cols() != m || C.action.size() != n)
    throw std::invalid_argument("crossed module: shape mismatch");
  for (const auto& a : C.action)
    if (a.rows() != m || a.cols() != m) throw std::invalid_argument("crossed module: action shape mismatch");
  auto x_ = [&](std::size_t i) { return unit_vector<Rat>(n, i); };
  auto a_ = [&](std::size_t a) { return unit_vector<Rat>(m, a); };
  auto phi = [&](const Vec<Rat>& x) { return rep_apply(C.action, x); };

  Report rep;
  rep.append(validate_lie_algebra(C.h1, "cm.h1"));
  rep.append(validate_lie_algebra(C.h0, "cm.h0"));

  ResidualAccumulator<Rat> hom("cm.varphi");
  for (const auto& t : increasing_tuples(m, 2)) {
    auto r = sub(C.varphi.apply(C.h1.br(a_(t[0]), a_(t[1]))), C.h0.br(C.varphi.apply(a_(t[0])), C.varphi.apply(a_(t[1]))));
    hom.observe(r, [&] { return witness({f_(t[0]), f_(t[1])}); });
  }
  rep.items.push_back(hom.finish());

  ResidualAccumulator<Rat> rp("cm.representation");
  for (const auto& t : increasing_tuples(n, 2)) {
    const auto px = phi(x_(t[0])), py = phi(x_(t[1]));
    rp.observe(phi(C.h0.br(x_(t[0]), x_(t[1]))) - (px * py - py * px), [&] { return witness({e_(t[0]), e_(t[1])}); });
  }
  rep.items.push_back(rp.finish());

  ResidualAccumulator<Rat> der("cm.derivation");
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : increasing_tuples(m, 2)) {
      const auto p = C.action[i];
      const auto a = a_(t[0]), b = a_(t[1]);
      auto r = sub(p.apply(C.h1.br(a, b)), add(C.h1.br(p.apply(a), b), C.h1.br(a, p.apply(b))));
      der.observe(r, [&] { return witness({e_(i), f_(t[0]), f_(t[1])}); });
    }
  rep.items.push_back(der.finish());

  ResidualAccumulator<Rat> eq("cm.equivariance");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a) {
      auto r = sub(C.varphi.apply(C.action[i].apply(a_(a))), C.h0.br(x_(i), C.varphi.apply(a_(a))));
      eq.observe(r, [&] { return witness({e_(i), f_(a)}); });
    }
  rep.items.push_back(eq.finish());

  ResidualAccumulator<Rat> pf("cm.peiffer");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto r = sub(phi(C.varphi.apply(a_(a))).apply(a_(b)), C.h1.br(a_(a), a_(b)));
      pf.observe(r, [&] { return witness({f_(a), f_(b)}); });
    }
  rep.items.push_back(pf.finish());
  return rep;
}

CrossedModule strict_to_crossed(const Lie2Algebra<Rat>& L) {
  L.check_shapes();
  if (!L.l3.is_zero()) throw std::invalid_argument("strict_to_crossed: l3 is not zero");
  CrossedModule C;
  C.h0 = {L.n0, L.b00};
  C.h1 = {L.n1, AltTensor<Rat>(2, L.n1, L.n1)};
  for (const auto& t : increasing_tuples(L.n1, 2)) {
    // [a, b]_{h1} = [da, b]
    auto v = L.act(L.diff(unit_vector<Rat>(L.n1, t[0])), unit_vector<Rat>(L.n1, t[1]));
    for (std::size_t c = 0; c < L.n1; ++c) C.h1.bracket.set(t, c, v[c]);
  }
  C.varphi = L.d;
  C.action = L.b01;
  return C;
}

Lie2Algebra<Rat> crossed_to_strict(const CrossedModule& C) {
  auto L = Lie2Algebra<Rat>::zero(C.h0.dim, C.h1.dim);
  L.d = C.varphi;
  L.b00 = C.h0.bracket;
  L.b01 = C.action;
  L.check_shapes();
  return L;
}

Matrix<Rat> killing_form(const LieAlgebra& k) {
  std::vector<Matrix<Rat>> ads;
  for (std::size_t i = 0; i < k.dim; ++i) ads.push_back(k.ad(i));
  Matrix<Rat> K(k.dim, k.dim);
  for (std::size_t i = 0; i < k.dim; ++i)
    for (std::size_t j = 0; j < k.dim; ++j) {
      const auto p = ads[i] * ads[j];
      Rat tr = 0;
      for (std::size_t r = 0; r < k.dim; ++r) tr += p(r, r);
      K(i, j) = tr;
    }
  return K;
}

Lie2Algebra<Rat> make_string(const LieAlgebra& k) {
  auto L = Lie2Algebra<Rat>::zero(k.dim, 1);
  L.b00 = k.bracket;
  const auto K = killing_form(k);
  for (const auto& t : increasing_tuples(k.dim, 3)) {
    const auto xy = k.br(unit_vector<Rat>(k.dim, t[0]), unit_vector<Rat>(k.dim, t[1]));
    Rat v = 0;
    for (std::size_t m = 0; m < k.dim; ++m) v += xy[m] * K(m, t[2]);
    L.l3.set(t, 0, v);
  }
  return L;
}

Lie2Algebra<Rat> make_skeletal(const LieAlgebra& k, const Representation& phi, const AltTensor<Rat>& l3) {
  if (phi.size() != k.dim) throw std::invalid_argument("make_skeletal: representation size mismatch");
  const std::size_t dv = phi.empty() ? l3.codomain_dim() : phi[0].rows();
  auto L = Lie2Algebra<Rat>::zero(k.dim, dv);
  L.b00 = k.bracket;
  L.b01 = phi;
  L.l3 = l3;
  L.check_shapes();
  return L;
}

namespace {

std::vector<Vec<Rat>> endo_kernel(const TwoTermComplex& V) {
  const std::size_t p0 = V.dim0, p1 = V.dim1;
  if (V.dv.rows() != p0 || V.dv.cols() != p1) throw std::invalid_argument("make_endo: dV has the wrong shape");
  // Unknowns: X0 row-major (p0*p0), then X1 row-major (p1*p1).
  // Equations: (X0 dV - dV X1)(r, c) = 0.
  Matrix<Rat> sys(p0 * p1, p0 * p0 + p1 * p1);
  for (std::size_t r = 0; r < p0; ++r)
    for (std::size_t c = 0; c < p1; ++c) {
      const std::size_t row = r * p1 + c;
      for (std::size_t k = 0; k < p0; ++k) sys(row, r * p0 + k) += V.dv(k, c);
      for (std::size_t k = 0; k < p1; ++k) sys(row, p0 * p0 + k * p1 + c) -= V.dv(r, k);
    }
  return kernel_basis(sys);
}

std::pair<Matrix<Rat>, Matrix<Rat>> unpack_endo(const TwoTermComplex& V, const Vec<Rat>& v) {
  Matrix<Rat> x0(V.dim0, V.dim0), x1(V.dim1, V.dim1);
  for (std::size_t r = 0; r < V.dim0; ++r)
    for (std::size_t c = 0; c < V.dim0; ++c) x0(r, c) = v[r * V.dim0 + c];
  for (std::size_t r = 0; r < V.dim1; ++r)
    for (std::size_t c = 0; c < V.dim1; ++c) x1(r, c) = v[V.dim0 * V.dim0 + r * V.dim1 + c];
  return {x0, x1};
}

Vec<Rat> pack_endo(const Matrix<Rat>& x0, const Matrix<Rat>& x1) {
  Vec<Rat> v(x0.entries().begin(), x0.entries().end());
  v.insert(v.end(), x1.entries().begin(), x1.entries().end());
  return v;
}

Vec<Rat> coords_or_throw(const std::vector<Vec<Rat>>& basis, const Vec<Rat>& v) {
  auto c = solve_in_span(basis, v);
  if (!c) throw std::logic_error("make_endo: element outside the computed basis");
  return *c;
}

}  // namespace

std::pair<Matrix<Rat>, Matrix<Rat>> endo_basis_element(const TwoTermComplex& V, std::size_t i) {
  const auto basis = endo_kernel(V);
  if (i >= basis.size()) throw std::out_of_range("endo_basis_element: index out of range");
  return unpack_endo(V, basis[i]);
}

Lie2Algebra<Rat> make_endo(const TwoTermComplex& V) {
  const auto basis = endo_kernel(V);
  const std::size_t n0 = basis.size();
  const std::size_t n1 = V.dim1 * V.dim0;  // theta: V_0 -> V_{-1}, row-major
  auto L = Lie2Algebra<Rat>::zero(n0, n1);

  std::vector<std::pair<Matrix<Rat>, Matrix<Rat>>> X;
  for (const auto& b : basis) X.push_back(unpack_endo(V, b));
  auto theta = [&](std::size_t a) {
    Matrix<Rat> t(V.dim1, V.dim0);
    t(a / V.dim0, a % V.dim0) = 1;
    return t;
  };
  auto flat = [](const Matrix<Rat>& m) { return Vec<Rat>(m.entries().begin(), m.entries().end()); };

  for (std::size_t a = 0; a < n1; ++a) {
    const auto t = theta(a);
    const auto c = coords_or_throw(basis, pack_endo(V.dv * t, t * V.dv));
    for (std::size_t i = 0; i < n0; ++i) L.d(i, a) = c[i];
  }
  for (const auto& t : increasing_tuples(n0, 2)) {
    const auto& [x0, x1] = X[t[0]];
    const auto& [y0, y1] = X[t[1]];
    const auto c = coords_or_throw(basis, pack_endo(x0 * y0 - y0 * x0, x1 * y1 - y1 * x1));
    for (std::size_t k = 0; k < n0; ++k) L.b00.set(t, k, c[k]);
  }
  for (std::size_t i = 0; i < n0; ++i) {
    const auto& [x0, x1] = X[i];
    for (std::size_t a = 0; a < n1; ++a) {
      const auto t = theta(a);
      const auto v = flat(x1 * t - t * x0);
      for (std::size_t b = 0; b < n1; ++b) L.b01[i](b, a) = v[b];
    }
  }
  return L;
}

AltTensor<Rat> ce_coboundary(const LieAlgebra& k, const Representation& phi, const AltTensor<Rat>& f) {
  const std::size_t p = f.arity(), n = k.dim, m = f.codomain_dim();
  if (f.domain_dim() != n) throw std::invalid_argument("ce_coboundary: cochain domain mismatch");
  if (phi.size() != n) throw std::invalid_argument("ce_coboundary: representation size mismatch");
  for (const auto& ph : phi)
    if (ph.rows() != m || ph.cols() != m) throw std::invalid_argument("ce_coboundary: representation shape mismatch");
  if (p > n) throw std::invalid_argument("ce_coboundary: cochain arity exceeds the dimension");
  AltTensor<Rat> out(p + 1, n, m);
  const auto tuples = out.tuples();
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    const auto& t = tuples[r];
    std::vector<Vec<Rat>> xs;
    for (auto i : t) xs.push_back(unit_vector<Rat>(n, i));
    Vec<Rat> acc(m, Rat(0));
    for (std::size_t i = 0; i <= p; ++i) {
      std::vector<Vec<Rat>> rest;
      for (std::size_t j = 0; j <= p; ++j)
        if (j != i) rest.push_back(xs[j]);
      auto term = phi[t[i]].apply(f.eval(rest));
      acc = i % 2 == 0 ? add(acc, term) : sub(acc, term);
    }
    for (std::size_t i = 0; i <= p; ++i)
      for (std::size_t j = i + 1; j <= p; ++j) {
        std::vector<Vec<Rat>> args{k.br(xs[i], xs[j])};
        for (std::size_t l = 0; l <= p; ++l)
          if (l != i && l != j) args.push_back(xs[l]);
        auto term = f.eval(args);
        acc = (i + j) % 2 == 0 ? add(acc, term) : sub(acc, term);
      }
    std::copy(acc.begin(), acc.end(), out.slot(r).begin());
  }
  return out;
}

Lie2Algebra<Rat> make_strict_lie(const LieAlgebra& k) {
  auto L = Lie2Algebra<Rat>::zero(k.dim, 0);
  L.b00 = k.bracket;
  return L;
}

Lie2Algebra<Rat> make_identity_crossed(const LieAlgebra& k) {
  auto L = Lie2Algebra<Rat>::zero(k.dim, k.dim);
  L.d = Matrix<Rat>::identity(k.dim);
  L.b00 = k.bracket;
  for (std::size_t i = 0; i < k.dim; ++i) L.b01[i] = k.ad(i);
  return L;
}

Lie2Algebra<Rat> transport(const Lie2Algebra<Rat>& L, const Matrix<Rat>& P0, const Matrix<Rat>& P1) {
  const auto i0 = mat_inverse(P0);
  const auto i1 = mat_inverse(P1);
  if (!i0 || !i1) throw std::invalid_argument("transport: change of basis is singular");
  auto out = Lie2Algebra<Rat>::zero(L.n0, L.n1);
  out.d = P0 * L.d * *i1;
  out.b00 = postcompose(P0, pullback(L.b00, *i0));
  for (std::size_t i = 0; i < L.n0; ++i) {
    Matrix<Rat> m(L.n1, L.n1);
    for (std::size_t k = 0; k < L.n0; ++k)
      if (sgn((*i0)(k, i)) != 0) m += L.b01[k] * (*i0)(k, i);
    out.b01[i] = P1 * m * *i1;
  }
  out.l3 = postcompose(P1, pullback(L.l3, *i0));
  return out;
}

Lie2Algebra<Rat> fixture_abelian() { return Lie2Algebra<Rat>::zero(1, 1); }

Lie2Algebra<Rat> fixture_string_sl2() { return make_string(LieAlgebra::sl2()); }

Lie2Algebra<Rat> fixture_endo_1_1() { return make_endo({1, 1, Matrix<Rat>{{Rat(1)}}}); }

Lie2Algebra<Rat> fixture_skeletal_demo() {
  const auto k = LieAlgebra::sl2();
  Representation phi{Matrix<Rat>{{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}}, Matrix<Rat>{{Rat(0), Rat(1)}, {Rat(0), Rat(0)}},
                     Matrix<Rat>{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}};
  AltTensor<Rat> l3(3, 3, 2);
  l3.set({0, 1, 2}, 0, Rat(1));
  l3.set({0, 1, 2}, 1, Rat(2));
  return make_skeletal(k, phi, l3);
}

}  // namespace lie2
