#include "lie2/automorphisms.hpp"

#include <stdexcept>

#include "lie2/linalg.hpp"

namespace lie2 {

namespace {

template <class T>
void check_tau_shape(const Lie2Algebra<T>& L, const Tau<T>& t) {
  if (t.tau.rows() != L.n1 || t.tau.cols() != L.n0) throw std::invalid_argument("tau has the wrong shape");
}

template <class T>
Vec<T> hom_diff(const Lie2Hom<T>& A, const Lie2Hom<T>& B) {
  Vec<T> out;
  auto push = [&](std::span<const T> a, std::span<const T> b) {
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  };
  push(A.a0.entries(), B.a0.entries());
  push(A.a1.entries(), B.a1.entries());
  push(A.a2.entries(), B.a2.entries());
  return out;
}

template <class T>
bool invertible_parts(const Lie2Hom<T>& A) {
  return A.a0.is_square() && A.a1.is_square() && mat_inverse(A.a0) && mat_inverse(A.a1);
}

}  // namespace

template <class T>
std::optional<Aut0<T>> Aut0<T>::certify(const Lie2Algebra<T>& L, const Lie2Hom<T>& A, double tol) {
  if (A.a0.rows() != L.n0 || A.a0.cols() != L.n0 || A.a1.rows() != L.n1 || A.a1.cols() != L.n1) return std::nullopt;
  if (!validate_hom(L, L, A).all_pass(tol)) return std::nullopt;
  return trusted(A);
}

template <class T>
std::optional<Aut0<T>> Aut0<T>::trusted(const Lie2Hom<T>& A) {
  if (!A.a0.is_square() || !A.a1.is_square()) return std::nullopt;
  auto i0 = mat_inverse(A.a0);
  auto i1 = mat_inverse(A.a1);
  if (!i0 || !i1) return std::nullopt;
  return Aut0(A, std::move(*i0), std::move(*i1));
}

template <class T>
Report is_aut0(const Lie2Algebra<T>& L, const Lie2Hom<T>& A) {
  Report r = validate_hom(L, L, A);
  const bool inv = invertible_parts(A);
  r.items.push_back({"aut.invertible", Mode::exact, inv ? 0.0 : 1.0, inv ? "0" : "1", inv ? "" : "A0 or A1 singular", {}});
  return r;
}

template <class T>
Aut0<T> aut_compose(const Aut0<T>& A, const Aut0<T>& B) {
  return Aut0<T>::from_parts(compose_hom(A.hom(), B.hom()), B.a0_inv() * A.a0_inv(), B.a1_inv() * A.a1_inv());
}

template <class T>
Aut0<T> aut_inverse(const Aut0<T>& A) {
  return Aut0<T>::from_parts(A.inverse_hom(), A.hom().a0, A.hom().a1);
}

template <class T>
Tau<T> star(const Lie2Algebra<T>& L, const Tau<T>& a, const Tau<T>& b) {
  check_tau_shape(L, a);
  check_tau_shape(L, b);
  return {a.tau + b.tau + a.tau * L.d * b.tau};
}

template <class T>
std::optional<Tau<T>> tau_inverse(const Lie2Algebra<T>& L, const Tau<T>& t) {
  check_tau_shape(L, t);
  auto inv = mat_inverse(Matrix<T>(Matrix<T>::identity(L.n0) + L.d * t.tau));
  if (!inv) return std::nullopt;
  return Tau<T>{-(t.tau * *inv)};
}

template <class T>
Lie2Hom<T> twist_hom(const Lie2Algebra<T>& L, const Lie2Hom<T>& A, const Tau<T>& t) {
  check_tau_shape(L, t);
  if (A.a0.rows() != L.n0 || A.a0.cols() != L.n0 || A.a1.rows() != L.n1 || A.a1.cols() != L.n1)
    throw std::invalid_argument("twist_hom: homomorphism is not an endomorphism of L");
  Lie2Hom<T> out{A.a0 + L.d * t.tau, A.a1 + t.tau * L.d, A.a2};
  const auto tuples = out.a2.tuples();
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    const auto x = unit_vector<T>(L.n0, tuples[r][0]), y = unit_vector<T>(L.n0, tuples[r][1]);
    const auto tx = t.tau.apply(x), ty = t.tau.apply(y);
    // [tau x, A0 y] = -[A0 y, tau x] and [tau x, d tau y] = -[d tau y, tau x]
    Vec<T> v = sub(t.tau.apply(L.bracket(x, y)), L.act(A.a0.apply(x), ty));
    v = add(v, L.act(A.a0.apply(y), tx));
    v = add(v, L.act(L.diff(ty), tx));
    auto slot = out.a2.slot(r);
    for (std::size_t c = 0; c < v.size(); ++c) slot[c] += v[c];
  }
  return out;
}

template <class T>
Aut0<T> partial(const Lie2Algebra<T>& L, const Tau<T>& t) {
  const auto inv = tau_inverse(L, t);
  if (!inv) throw std::invalid_argument("partial: tau is not invertible");
  // d(tau)^{-1} = d(tau^{-1})
  return Aut0<T>::from_parts(twist_hom(L, Lie2Hom<T>::identity(L), t), Matrix<T>::identity(L.n0) + L.d * inv->tau,
                             Matrix<T>::identity(L.n1) + inv->tau * L.d);
}

template <class T>
Tau<T> act(const Aut0<T>& A, const Tau<T>& t) {
  return {A.hom().a1 * t.tau * A.a0_inv()};
}

Report check_crossed_module(const Lie2Algebra<Rat>& L, const std::vector<Tau<Rat>>& taus,
                            const std::vector<Aut0<Rat>>& auts, const ActionFn& action) {
  const ActionFn tri = action ? action : ActionFn([](const Aut0<Rat>& A, const Tau<Rat>& t) { return act(A, t); });
  ResidualAccumulator<Rat> equi("aut.equivariance"), peif("aut.peiffer"), hom("aut.partial_hom"), law("aut.action");
  const std::size_t n = std::max(taus.size(), auts.size());
  for (std::size_t k = 0; k < n && !taus.empty(); ++k) {
    const auto& t = taus[k % taus.size()];
    const auto& t2 = taus[(k + 1) % taus.size()];
    const auto t_inv = *tau_inverse(L, t);
    const auto dt = partial(L, t);
    auto w = [&] { return "sample " + std::to_string(k) + ": tau=" + format_matrix(t.tau) + " tau'=" + format_matrix(t2.tau); };
    peif.observe(tri(dt, t2).tau - star(L, star(L, t, t2), t_inv).tau, w);
    hom.observe(hom_diff(partial(L, star(L, t, t2)).hom(), aut_compose(dt, partial(L, t2)).hom()), w);
    if (auts.empty()) continue;
    const auto& A = auts[k % auts.size()];
    const auto& B = auts[(k + 1) % auts.size()];
    auto wa = [&] { return "sample " + std::to_string(k) + ": A0=" + format_matrix(A.hom().a0) + " tau=" + format_matrix(t.tau); };
    equi.observe(hom_diff(partial(L, tri(A, t)).hom(), aut_compose(aut_compose(A, dt), aut_inverse(A)).hom()), wa);
    law.observe(tri(aut_compose(A, B), t).tau - tri(A, tri(B, t)).tau, wa);
  }
  return Report{{equi.finish(), peif.finish(), hom.finish(), law.finish()}};
}

Aut0<Rat> cell_source(const TwoGroupCell& c) { return c.g; }

Aut0<Rat> cell_target(const Lie2Algebra<Rat>& L, const TwoGroupCell& c) { return aut_compose(partial(L, c.h), c.g); }

TwoGroupCell identity_cell(const Aut0<Rat>& g) { return {g, Tau<Rat>::zero(g.hom().a0.rows(), g.hom().a1.rows())}; }

TwoGroupCell vcompose(const Lie2Algebra<Rat>& L, const TwoGroupCell& outer, const TwoGroupCell& inner) {
  if (!(outer.g == cell_target(L, inner))) throw std::invalid_argument("vcompose: cells are not composable");
  return {inner.g, star(L, outer.h, inner.h)};
}

TwoGroupCell hmultiply(const Lie2Algebra<Rat>& L, const TwoGroupCell& a, const TwoGroupCell& b) {
  return {aut_compose(a.g, b.g), star(L, a.h, act(a.g, b.h))};
}

template <class T>
SemidirectElement<T> semidirect_identity(const Lie2Algebra<T>& L) {
  return {Aut0<T>::identity(L), Tau<T>::zero(L.n0, L.n1)};
}

template <class T>
SemidirectElement<T> semidirect_multiply(const Lie2Algebra<T>& L, const SemidirectElement<T>& p,
                                         const SemidirectElement<T>& q) {
  return {aut_compose(p.a, q.a), star(L, p.t, act(p.a, q.t))};
}

template <class T>
SemidirectElement<T> semidirect_inverse(const Lie2Algebra<T>& L, const SemidirectElement<T>& p) {
  const auto ti = tau_inverse(L, p.t);
  if (!ti) throw std::invalid_argument("semidirect_inverse: tau is not invertible");
  const auto ai = aut_inverse(p.a);
  return {ai, act(ai, *ti)};
}

AutFlags classify_automorphism(const Lie2Algebra<Rat>& L, const AutElement& elem) {
  AutFlags f;
  if (const auto* A = std::get_if<Lie2Hom<Rat>>(&elem)) {
    f.weak = is_aut0(L, *A).all_zero();
    f.strict = f.weak && A->a2.is_zero();
  } else {
    const auto& t = std::get<Tau<Rat>>(elem);
    f.weak = tau_inverse(L, t).has_value();
    // The strictness condition is exactly the vanishing of the twist term of d(tau).
    f.strict = f.weak && twist_hom(L, Lie2Hom<Rat>::identity(L), t).a2.is_zero();
  }
  return f;
}

template <class T>
Derivation0<T> ad_conjugate(const Lie2Algebra<T>& L, const Aut0<T>& A, const Derivation0<T>& X) {
  const auto& H = A.hom();
  const auto& i0 = A.a0_inv();
  const auto& i1 = A.a1_inv();
  // sum_i A2(.., X0 x_i, ..) = -L_{(X0, 0)} A2
  const AltTensor<T> moved = -lie_cochain_action(X.x0, Matrix<T>(L.n1, L.n1), H.a2);
  const AltTensor<T> inner = postcompose(H.a1, X.lx) - postcompose(Matrix<T>(H.a1 * X.x1 * i1), H.a2) + moved;
  return {H.a0 * X.x0 * i0, H.a1 * X.x1 * i1, pullback(inner, i0)};
}

template <class T>
DerM1<T> ad_conjugate(const Lie2Algebra<T>&, const Aut0<T>& A, const DerM1<T>& th) {
  return {A.hom().a1 * th.theta * A.a0_inv()};
}

template <class T>
SemidirectDer<T> ad_conjugate(const Lie2Algebra<T>& L, const Tau<T>& t, const Derivation0<T>& X) {
  const auto ti = tau_inverse(L, t);
  if (!ti) throw std::invalid_argument("ad_conjugate: tau is not invertible");
  const Matrix<T> x1ti = X.x1 * ti->tau;
  return {X, {x1ti + t.tau * X.x0 + t.tau * L.d * x1ti}};
}

template <class T>
DerM1<T> ad_conjugate(const Lie2Algebra<T>& L, const Tau<T>& t, const DerM1<T>& th) {
  const auto ti = tau_inverse(L, t);
  if (!ti) throw std::invalid_argument("ad_conjugate: tau is not invertible");
  // (I + d tau)^{-1} = I + d tau^{-1}
  const Matrix<T> left = Matrix<T>::identity(L.n1) + t.tau * L.d;
  const Matrix<T> right = Matrix<T>::identity(L.n0) + L.d * ti->tau;
  return {left * th.theta * right};
}

template <class T>
SemidirectDer<T> ad_conjugate(const Lie2Algebra<T>& L, const Aut0<T>& A, const SemidirectDer<T>& p) {
  return {ad_conjugate(L, A, p.x), ad_conjugate(L, A, p.theta)};
}

template <class T>
SemidirectDer<T> ad_conjugate(const Lie2Algebra<T>& L, const Tau<T>& t, const SemidirectDer<T>& p) {
  auto out = ad_conjugate(L, t, p.x);
  out.theta = out.theta + ad_conjugate(L, t, p.theta);
  return out;
}

Tau<Rat> sample_tau(Sampler& g, const Lie2Algebra<Rat>& L, bool invertible) {
  while (true) {
    Tau<Rat> t{g.matrix(L.n1, L.n0, 0.6)};
    if (!invertible || tau_inverse(L, t)) return t;
  }
}

#define LIE2_INSTANTIATE(T)                                                                                   \
  template class Aut0<T>;                                                                                     \
  template Report is_aut0<T>(const Lie2Algebra<T>&, const Lie2Hom<T>&);                                       \
  template Aut0<T> aut_compose<T>(const Aut0<T>&, const Aut0<T>&);                                            \
  template Aut0<T> aut_inverse<T>(const Aut0<T>&);                                                            \
  template Tau<T> star<T>(const Lie2Algebra<T>&, const Tau<T>&, const Tau<T>&);                               \
  template std::optional<Tau<T>> tau_inverse<T>(const Lie2Algebra<T>&, const Tau<T>&);                        \
  template Lie2Hom<T> twist_hom<T>(const Lie2Algebra<T>&, const Lie2Hom<T>&, const Tau<T>&);                  \
  template Aut0<T> partial<T>(const Lie2Algebra<T>&, const Tau<T>&);                                          \
  template Tau<T> act<T>(const Aut0<T>&, const Tau<T>&);                                                      \
  template SemidirectElement<T> semidirect_identity<T>(const Lie2Algebra<T>&);                                \
  template SemidirectElement<T> semidirect_multiply<T>(const Lie2Algebra<T>&, const SemidirectElement<T>&,   \
                                                       const SemidirectElement<T>&);                          \
  template SemidirectElement<T> semidirect_inverse<T>(const Lie2Algebra<T>&, const SemidirectElement<T>&);    \
  template Derivation0<T> ad_conjugate<T>(const Lie2Algebra<T>&, const Aut0<T>&, const Derivation0<T>&);      \
  template DerM1<T> ad_conjugate<T>(const Lie2Algebra<T>&, const Aut0<T>&, const DerM1<T>&);                  \
  template SemidirectDer<T> ad_conjugate<T>(const Lie2Algebra<T>&, const Tau<T>&, const Derivation0<T>&);     \
  template DerM1<T> ad_conjugate<T>(const Lie2Algebra<T>&, const Tau<T>&, const DerM1<T>&);                   \
  template SemidirectDer<T> ad_conjugate<T>(const Lie2Algebra<T>&, const Aut0<T>&, const SemidirectDer<T>&);  \
  template SemidirectDer<T> ad_conjugate<T>(const Lie2Algebra<T>&, const Tau<T>&, const SemidirectDer<T>&);

LIE2_INSTANTIATE(Rat)
LIE2_INSTANTIATE(double)
#undef LIE2_INSTANTIATE

}  // namespace lie2
