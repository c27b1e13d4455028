#include "lie2/derivations.hpp"

#include <stdexcept>

#include "lie2/linalg.hpp"

namespace lie2 {

namespace {

std::string wit(std::initializer_list<std::string> parts) {
  std::string out = "(";
  bool first = true;
  for (const auto& p : parts) {
    out += (first ? "" : ",") + p;
    first = false;
  }
  return out + ")";
}
std::string e_(std::size_t i) { return "e" + std::to_string(i); }
std::string f_(std::size_t a) { return "f" + std::to_string(a); }

template <class T>
void check_der_shape(const Lie2Algebra<T>& L, const Derivation0<T>& D) {
  if (D.x0.rows() != L.n0 || D.x0.cols() != L.n0 || D.x1.rows() != L.n1 || D.x1.cols() != L.n1 ||
      D.lx.arity() != 2 || D.lx.domain_dim() != L.n0 || D.lx.codomain_dim() != L.n1)
    throw std::invalid_argument("derivation does not match the algebra's dimensions");
}

// Calls emit(kind, witness, residual) for every defining equation of a
// degree-0 derivation; kind 0 = chain, 1..3 = (a), (b), (c).
template <class T, class Emit>
void derivation_residuals(const Lie2Algebra<T>& L, const Derivation0<T>& D, Emit&& emit) {
  check_der_shape(L, D);
  const std::size_t n0 = L.n0, n1 = L.n1;
  auto e = [&](std::size_t i) { return unit_vector<T>(n0, i); };
  auto f = [&](std::size_t a) { return unit_vector<T>(n1, a); };
  auto lx = [&](const Vec<T>& x, const Vec<T>& y) { return D.lx.eval({x, y}); };

  const Matrix<T> chain = D.x0 * L.d - L.d * D.x1;
  emit(0, [] { return std::string("matrix"); }, Vec<T>(chain.entries().begin(), chain.entries().end()));

  for (const auto& t : increasing_tuples(n0, 2)) {
    const auto x = e(t[0]), y = e(t[1]);
    Vec<T> rhs = sub(D.x0.apply(L.bracket(x, y)), L.bracket(D.x0.apply(x), y));
    rhs = sub(rhs, L.bracket(x, D.x0.apply(y)));
    emit(1, [&] { return wit({e_(t[0]), e_(t[1])}); }, sub(L.diff(lx(x, y)), rhs));
  }

  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t a = 0; a < n1; ++a) {
      const auto x = e(i), fa = f(a);
      // [X0 x, a] and [x, X1 a], both through the g_0-on-g_{-1} action.
      Vec<T> rhs = sub(D.x1.apply(L.act(x, fa)), L.act(D.x0.apply(x), fa));
      rhs = sub(rhs, L.act(x, D.x1.apply(fa)));
      emit(2, [&] { return wit({e_(i), f_(a)}); }, sub(lx(x, L.diff(fa)), rhs));
    }

  for (const auto& t : increasing_tuples(n0, 3)) {
    const Vec<T> v[3] = {e(t[0]), e(t[1]), e(t[2])};
    Vec<T> r = D.x1.apply(L.l3_eval(v[0], v[1], v[2]));
    for (int k = 0; k < 3; ++k) {
      const auto& x = v[k];
      const auto& y = v[(k + 1) % 3];
      const auto& z = v[(k + 2) % 3];
      r = sub(r, lx(x, L.bracket(y, z)));
      r = sub(r, L.act(x, lx(y, z)));
      r = sub(r, L.l3_eval(D.x0.apply(x), y, z));
    }
    emit(3, [&] { return wit({e_(t[0]), e_(t[1]), e_(t[2])}); }, r);
  }
}

}  // namespace

template <class T>
Report is_derivation0(const Lie2Algebra<T>& L, const Derivation0<T>& D) {
  std::vector<ResidualAccumulator<T>> acc{ResidualAccumulator<T>("der.chain"), ResidualAccumulator<T>("der.a"),
                                          ResidualAccumulator<T>("der.b"), ResidualAccumulator<T>("der.c")};
  derivation_residuals(L, D, [&](int kind, auto&& witness, const Vec<T>& r) { acc[kind].observe(r, witness); });
  Report rep;
  for (const auto& a : acc) rep.items.push_back(a.finish());
  return rep;
}

Vec<Rat> flatten(const Derivation0<Rat>& D) {
  Vec<Rat> v(D.x0.entries().begin(), D.x0.entries().end());
  v.insert(v.end(), D.x1.entries().begin(), D.x1.entries().end());
  v.insert(v.end(), D.lx.entries().begin(), D.lx.entries().end());
  return v;
}

Derivation0<Rat> unflatten_der0(std::size_t n0, std::size_t n1, const Vec<Rat>& v) {
  auto D = Derivation0<Rat>::zero(n0, n1);
  const std::size_t s0 = n0 * n0, s1 = n1 * n1, s2 = D.lx.entries().size();
  if (v.size() != s0 + s1 + s2) throw std::invalid_argument("unflatten_der0: length mismatch");
  std::copy(v.begin(), v.begin() + s0, D.x0.entries().begin());
  std::copy(v.begin() + s0, v.begin() + s0 + s1, D.x1.entries().begin());
  std::copy(v.begin() + s0 + s1, v.end(), D.lx.entries().begin());
  return D;
}

namespace {

// Kernel of the linearised derivation equations. With strict_only the lX
// unknowns are pinned to zero.
std::vector<Derivation0<Rat>> solve_der0(const Lie2Algebra<Rat>& L, bool strict_only) {
  L.check_shapes();
  const auto zero = Derivation0<Rat>::zero(L);
  const std::size_t unknowns = flatten(zero).size();
  const std::size_t active = strict_only ? L.n0 * L.n0 + L.n1 * L.n1 : unknowns;
  // The residual is linear in D: assemble its matrix one unit vector at a time.
  std::vector<Vec<Rat>> columns;
  for (std::size_t u = 0; u < active; ++u) {
    Vec<Rat> col;
    const auto D = unflatten_der0(L.n0, L.n1, unit_vector<Rat>(unknowns, u));
    derivation_residuals(L, D, [&](int, auto&&, const Vec<Rat>& r) { col.insert(col.end(), r.begin(), r.end()); });
    columns.push_back(std::move(col));
  }
  std::size_t rows = 0;
  derivation_residuals(L, zero, [&](int, auto&&, const Vec<Rat>& r) { rows += r.size(); });
  const auto sys = Matrix<Rat>::from_columns(rows, columns);
  std::vector<Derivation0<Rat>> out;
  for (auto v : kernel_basis(sys)) {
    v.resize(unknowns, Rat(0));
    out.push_back(unflatten_der0(L.n0, L.n1, v));
  }
  return out;
}

// Kernel of a linear condition on Theta, assembled on the unit basis.
template <class F>
std::vector<DerM1<Rat>> solve_derM1(const Lie2Algebra<Rat>& L, F&& residual) {
  const auto units = derM1_basis(L);
  std::vector<Vec<Rat>> columns;
  for (const auto& u : units) columns.push_back(residual(u.theta));
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  std::vector<DerM1<Rat>> out;
  for (const auto& v : kernel_basis(Matrix<Rat>::from_columns(rows, columns))) {
    Matrix<Rat> t(L.n1, L.n0);
    std::copy(v.begin(), v.end(), t.entries().begin());
    out.push_back({t});
  }
  return out;
}

Vec<Rat> bracket_derivation_residual(const Lie2Algebra<Rat>& L, const Matrix<Rat>& th) {
  Vec<Rat> out;
  for (const auto& t : increasing_tuples(L.n0, 2)) {
    const auto x = unit_vector<Rat>(L.n0, t[0]), y = unit_vector<Rat>(L.n0, t[1]);
    Vec<Rat> r = sub(th.apply(L.bracket(x, y)), L.act(x, th.apply(y)));
    r = add(r, L.act(y, th.apply(x)));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace

std::vector<Derivation0<Rat>> compute_der0_basis(const Lie2Algebra<Rat>& L) { return solve_der0(L, false); }

std::vector<Derivation0<Rat>> strict_der0_basis(const Lie2Algebra<Rat>& L) { return solve_der0(L, true); }

std::vector<DerM1<Rat>> strict_derM1_basis(const Lie2Algebra<Rat>& L) {
  return solve_derM1(L, [&](const Matrix<Rat>& th) { return bracket_derivation_residual(L, th); });
}

std::vector<DerM1<Rat>> homotopy_derM1_basis(const Lie2Algebra<Rat>& L) {
  return solve_derM1(L, [&](const Matrix<Rat>& th) {
    auto r = bracket_derivation_residual(L, th);
    const auto a = L.d * th, b = th * L.d;
    r.insert(r.end(), a.entries().begin(), a.entries().end());
    r.insert(r.end(), b.entries().begin(), b.entries().end());
    return r;
  });
}

std::vector<DerM1<Rat>> derM1_basis(const Lie2Algebra<Rat>& L) {
  std::vector<DerM1<Rat>> out;
  for (std::size_t a = 0; a < L.n1; ++a)
    for (std::size_t i = 0; i < L.n0; ++i) {
      Matrix<Rat> t(L.n1, L.n0);
      t(a, i) = 1;
      out.push_back({t});
    }
  return out;
}

template <class T>
Derivation0<T> dbar(const Lie2Algebra<T>& L, const DerM1<T>& th) {
  if (th.theta.rows() != L.n1 || th.theta.cols() != L.n0) throw std::invalid_argument("dbar: theta has the wrong shape");
  Derivation0<T> D{L.d * th.theta, th.theta * L.d, AltTensor<T>(2, L.n0, L.n1)};
  const auto tuples = D.lx.tuples();
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    const auto x = unit_vector<T>(L.n0, tuples[r][0]), y = unit_vector<T>(L.n0, tuples[r][1]);
    // [Theta x, y] = -[y, Theta x]
    Vec<T> v = sub(th.theta.apply(L.bracket(x, y)), L.act(x, th.theta.apply(y)));
    v = add(v, L.act(y, th.theta.apply(x)));
    std::copy(v.begin(), v.end(), D.lx.slot(r).begin());
  }
  return D;
}

template <class T>
AltTensor<T> lie_cochain_action(const Matrix<T>& x0, const Matrix<T>& x1, const AltTensor<T>& omega) {
  if (x0.rows() != omega.domain_dim() || x1.rows() != omega.codomain_dim())
    throw std::invalid_argument("lie_cochain_action: shape mismatch");
  AltTensor<T> out = postcompose(x1, omega);
  const std::size_t k = omega.arity(), n = omega.domain_dim();
  const auto tuples = out.tuples();
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    std::vector<Vec<T>> args;
    for (auto i : tuples[r]) args.push_back(unit_vector<T>(n, i));
    auto slot = out.slot(r);
    for (std::size_t i = 0; i < k; ++i) {
      auto moved = args;
      moved[i] = x0.apply(args[i]);
      const auto v = omega.eval(moved);
      for (std::size_t c = 0; c < v.size(); ++c) slot[c] -= v[c];
    }
  }
  return out;
}

template <class T>
Derivation0<T> bracket00(const Derivation0<T>& a, const Derivation0<T>& b) {
  return {a.x0 * b.x0 - b.x0 * a.x0, a.x1 * b.x1 - b.x1 * a.x1,
          lie_cochain_action(a.x0, a.x1, b.lx) - lie_cochain_action(b.x0, b.x1, a.lx)};
}

template <class T>
DerM1<T> bracket0m(const Derivation0<T>& a, const DerM1<T>& b) {
  return {a.x1 * b.theta - b.theta * a.x0};
}

template <class T>
DerM1<T> bracketmm(const Lie2Algebra<T>& L, const DerM1<T>& a, const DerM1<T>& b) {
  return {a.theta * L.d * b.theta - b.theta * L.d * a.theta};
}

DerElement graded_bracket(const Lie2Algebra<Rat>& L, const DerElement& a, const DerElement& b) {
  return std::visit(
      [&](const auto& x, const auto& y) -> DerElement {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<X, Derivation0<Rat>> && std::is_same_v<Y, Derivation0<Rat>>) {
          return bracket00(x, y);
        } else if constexpr (std::is_same_v<X, Derivation0<Rat>>) {
          return bracket0m(x, y);
        } else if constexpr (std::is_same_v<Y, Derivation0<Rat>>) {
          return DerM1<Rat>{-bracket0m(y, x).theta};
        } else {
          return bracketmm(L, x, y);
        }
      },
      a, b);
}

Derivation0<Rat> adbar0(const Lie2Algebra<Rat>& L, const Vec<Rat>& x) {
  Derivation0<Rat> D{L.ad0(x), L.ad0_minus1(x), AltTensor<Rat>(2, L.n0, L.n1)};
  const auto tuples = D.lx.tuples();
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    const auto v = L.l3_eval(x, unit_vector<Rat>(L.n0, tuples[r][0]), unit_vector<Rat>(L.n0, tuples[r][1]));
    std::copy(v.begin(), v.end(), D.lx.slot(r).begin());
  }
  return D;
}

DerM1<Rat> adbar1(const Lie2Algebra<Rat>& L, const Vec<Rat>& a) {
  Matrix<Rat> t(L.n1, L.n0);
  for (std::size_t i = 0; i < L.n0; ++i) {
    const auto v = L.act(unit_vector<Rat>(L.n0, i), a);
    for (std::size_t b = 0; b < L.n1; ++b) t(b, i) = -v[b];
  }
  return {t};
}

DerM1<Rat> adbar2(const Lie2Algebra<Rat>& L, const Vec<Rat>& y, const Vec<Rat>& z) {
  Matrix<Rat> t(L.n1, L.n0);
  for (std::size_t i = 0; i < L.n0; ++i) {
    const auto v = L.l3_eval(y, z, unit_vector<Rat>(L.n0, i));
    for (std::size_t b = 0; b < L.n1; ++b) t(b, i) = -v[b];
  }
  return {t};
}

Vec<Rat> DerLie2::coords0(const Derivation0<Rat>& D) const {
  std::vector<Vec<Rat>> cols;
  for (const auto& b : basis0) cols.push_back(flatten(b));
  auto c = solve_in_span(cols, flatten(D));
  if (!c) throw std::invalid_argument("element is not in Der^0");
  return *c;
}

Vec<Rat> DerLie2::coordsM1(const DerM1<Rat>& T) const {
  // The degree -1 basis is the unit basis, row-major.
  return Vec<Rat>(T.theta.entries().begin(), T.theta.entries().end());
}

Derivation0<Rat> DerLie2::element0(const Vec<Rat>& c) const {
  if (c.size() != basis0.size()) throw std::invalid_argument("element0: coordinate length mismatch");
  auto D = Derivation0<Rat>::zero(source_n0, source_n1);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (sgn(c[i]) != 0) D = D + basis0[i] * c[i];
  return D;
}

DerM1<Rat> DerLie2::elementM1(const Vec<Rat>& c) const {
  Matrix<Rat> t(source_n1, source_n0);
  if (c.size() != t.entries().size()) throw std::invalid_argument("elementM1: coordinate length mismatch");
  std::copy(c.begin(), c.end(), t.entries().begin());
  return {t};
}

DerLie2 build_der_lie2(const Lie2Algebra<Rat>& L) {
  DerLie2 out;
  out.source_n0 = L.n0;
  out.source_n1 = L.n1;
  out.basis0 = compute_der0_basis(L);
  out.basisM1 = derM1_basis(L);
  const std::size_t m0 = out.basis0.size(), m1 = out.basisM1.size();
  auto R = Lie2Algebra<Rat>::zero(m0, m1);

  std::vector<Vec<Rat>> flat0;
  for (const auto& b : out.basis0) flat0.push_back(flatten(b));
  auto coords = [&](const Derivation0<Rat>& D) {
    auto c = solve_in_span(flat0, flatten(D));
    if (!c) throw std::logic_error("build_der_lie2: result left Der^0");
    return *c;
  };

  for (std::size_t j = 0; j < m1; ++j) {
    const auto c = coords(dbar(L, out.basisM1[j]));
    for (std::size_t i = 0; i < m0; ++i) R.d(i, j) = c[i];
  }
  for (const auto& t : increasing_tuples(m0, 2)) {
    const auto c = coords(bracket00(out.basis0[t[0]], out.basis0[t[1]]));
    for (std::size_t k = 0; k < m0; ++k) R.b00.set(t, k, c[k]);
  }
  for (std::size_t i = 0; i < m0; ++i)
    for (std::size_t a = 0; a < m1; ++a) {
      const auto c = out.coordsM1(bracket0m(out.basis0[i], out.basisM1[a]));
      for (std::size_t b = 0; b < m1; ++b) R.b01[i](b, a) = c[b];
    }
  out.dbar_matrix = R.d;
  out.realization = std::move(R);
  return out;
}

Lie2Hom<Rat> adbar(const Lie2Algebra<Rat>& L, const DerLie2& D) {
  const std::size_t m0 = D.basis0.size(), m1 = D.basisM1.size();
  Lie2Hom<Rat> A{Matrix<Rat>(m0, L.n0), Matrix<Rat>(m1, L.n1), AltTensor<Rat>(2, L.n0, m1)};
  for (std::size_t i = 0; i < L.n0; ++i) {
    const auto c = D.coords0(adbar0(L, unit_vector<Rat>(L.n0, i)));
    for (std::size_t r = 0; r < m0; ++r) A.a0(r, i) = c[r];
  }
  for (std::size_t a = 0; a < L.n1; ++a) {
    const auto c = D.coordsM1(adbar1(L, unit_vector<Rat>(L.n1, a)));
    for (std::size_t r = 0; r < m1; ++r) A.a1(r, a) = c[r];
  }
  const auto tuples = A.a2.tuples();
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    const auto c = D.coordsM1(adbar2(L, unit_vector<Rat>(L.n0, tuples[r][0]), unit_vector<Rat>(L.n0, tuples[r][1])));
    std::copy(c.begin(), c.end(), A.a2.slot(r).begin());
  }
  return A;
}

std::vector<Derivation0<Rat>> inn0_basis(const Lie2Algebra<Rat>& L) {
  std::vector<Vec<Rat>> gens;
  for (std::size_t i = 0; i < L.n0; ++i) gens.push_back(flatten(adbar0(L, unit_vector<Rat>(L.n0, i))));
  for (const auto& t : derM1_basis(L)) gens.push_back(flatten(dbar(L, t)));
  const std::size_t width = flatten(Derivation0<Rat>::zero(L)).size();
  std::vector<Derivation0<Rat>> out;
  for (const auto& row : row_space_basis(gens, width)) out.push_back(unflatten_der0(L.n0, L.n1, row));
  return out;
}

DerivationFlags classify_derivation(const Lie2Algebra<Rat>& L, const DerElement& elem) {
  DerivationFlags flags;
  if (const auto* D = std::get_if<Derivation0<Rat>>(&elem)) {
    flags.weak = is_derivation0(L, *D).all_zero();
    flags.strict = flags.weak && D->lx.is_zero();
    flags.homotopy = flags.weak;
  } else {
    const auto& th = std::get<DerM1<Rat>>(elem).theta;
    flags.weak = true;
    flags.strict = is_zero_vec(bracket_derivation_residual(L, th));
    flags.homotopy = flags.strict && (L.d * th).is_zero() && (th * L.d).is_zero();
  }
  return flags;
}

template Report is_derivation0<Rat>(const Lie2Algebra<Rat>&, const Derivation0<Rat>&);
template Report is_derivation0<double>(const Lie2Algebra<double>&, const Derivation0<double>&);
template Derivation0<Rat> dbar<Rat>(const Lie2Algebra<Rat>&, const DerM1<Rat>&);
template Derivation0<double> dbar<double>(const Lie2Algebra<double>&, const DerM1<double>&);
template AltTensor<Rat> lie_cochain_action<Rat>(const Matrix<Rat>&, const Matrix<Rat>&, const AltTensor<Rat>&);
template AltTensor<double> lie_cochain_action<double>(const Matrix<double>&, const Matrix<double>&, const AltTensor<double>&);
template Derivation0<Rat> bracket00<Rat>(const Derivation0<Rat>&, const Derivation0<Rat>&);
template Derivation0<double> bracket00<double>(const Derivation0<double>&, const Derivation0<double>&);
template DerM1<Rat> bracket0m<Rat>(const Derivation0<Rat>&, const DerM1<Rat>&);
template DerM1<double> bracket0m<double>(const Derivation0<double>&, const DerM1<double>&);
template DerM1<Rat> bracketmm<Rat>(const Lie2Algebra<Rat>&, const DerM1<Rat>&, const DerM1<Rat>&);
template DerM1<double> bracketmm<double>(const Lie2Algebra<double>&, const DerM1<double>&, const DerM1<double>&);

}  // namespace lie2
