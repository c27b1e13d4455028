#include "lie2/integration.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>

namespace lie2 {

void ExpConfig::validate() const {
  if (order < 1) throw std::invalid_argument("ExpConfig: order must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("ExpConfig: tol must be positive");
  if (!(fd_step > 0)) throw std::invalid_argument("ExpConfig: fd_step must be positive");
}

std::optional<int> terminating_order(const Derivation0<Rat>& D) {
  const auto a = nilpotency_index(D.x0);
  const auto b = nilpotency_index(D.x1);
  if (!a || !b) return std::nullopt;
  return static_cast<int>(2 * *a + *b);
}

std::optional<int> terminating_order(const Lie2Algebra<Rat>& L, const DerM1<Rat>& th) {
  const auto k = nilpotency_index(Matrix<Rat>(th.theta * L.d));
  if (!k) return std::nullopt;
  return static_cast<int>(*k + 1);
}

template <class T>
AltTensor<T> exp_l_series(const Derivation0<T>& D, const T& t, int order) {
  const Matrix<T> zero1(D.x1.rows(), D.x1.rows());
  // D_X0 omega = sum over slots of omega(.., X0 x_i, ..)
  auto spread = [&](const AltTensor<T>& w) { return AltTensor<T>(-lie_cochain_action(D.x0, zero1, w)); };
  AltTensor<T> P = D.lx;  // P_0
  AltTensor<T> Q = D.lx;  // Q_1
  T coef = t;
  AltTensor<T> sum = Q * coef;
  for (int n = 1; n < order; ++n) {
    P = spread(P);
    Q = postcompose(D.x1, Q) + P;
    if (P.is_zero() && Q.is_zero()) break;
    coef *= t;
    coef /= ScalarTraits<T>::from_int(n + 1);
    sum += Q * coef;
  }
  return sum;
}

template <class T>
Aut0<T> exp_der0_series(const Derivation0<T>& D, const T& t, int order) {
  Lie2Hom<T> A{truncated_exp(D.x0, t, order), truncated_exp(D.x1, t, order), exp_l_series(D, t, order)};
  const T minus_t = -t;
  return Aut0<T>::from_parts(std::move(A), truncated_exp(D.x0, minus_t, order), truncated_exp(D.x1, minus_t, order));
}

template <class T>
Tau<T> exp_derM1_series(const Lie2Algebra<T>& L, const DerM1<T>& th, const T& t, int order) {
  Matrix<T> term = th.theta * t;
  Matrix<T> sum = term;
  const Matrix<T> step = th.theta * L.d * t;
  for (int n = 2; n <= order; ++n) {
    term = step * term;
    term *= T(ScalarTraits<T>::one() / ScalarTraits<T>::from_int(n));
    if (term.is_zero()) break;
    sum += term;
  }
  return {sum};
}

namespace {

template <class T>
using Id = std::type_identity<T>;

template <class T>
T conv(const Rat& r) {
  return scalar_cast<T>(r);
}

template <class T>
Vec<T> diff_entries(const Lie2Hom<T>& A, const Lie2Hom<T>& B) {
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
Vec<T> diff_entries(const Tau<T>& a, const Tau<T>& b) {
  const Matrix<T> m = a.tau - b.tau;
  return Vec<T>(m.entries().begin(), m.entries().end());
}

template <class T>
Vec<T> diff_entries(const SemidirectElement<T>& a, const SemidirectElement<T>& b) {
  auto v = diff_entries(a.a.hom(), b.a.hom());
  const auto w = diff_entries(a.t, b.t);
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

template <class T>
IdentityResidual single_residual(const std::string& name, const Vec<T>& diff) {
  ResidualAccumulator<T> acc(name);
  acc.observe(diff, [] { return std::string(); });
  return acc.finish();
}

// Accumulates exact and float observations of one identity; the result is
// float as soon as one float observation was made.
class MixedAccumulator {
 public:
  explicit MixedAccumulator(const std::string& name) : exact_(name), float_(name) {}
  template <class T>
  void observe(const Vec<T>& diff, const std::function<std::string()>& w) {
    if constexpr (std::is_same_v<T, Rat>) {
      exact_.observe(diff, w);
    } else {
      any_float_ = true;
      float_.observe(diff, w);
    }
  }
  IdentityResidual finish() const {
    const auto e = exact_.finish();
    if (!any_float_) return e;
    auto f = float_.finish();
    if (e.value > f.value) {
      f.value = e.value;
      f.witness = e.witness;
    }
    return f;
  }

 private:
  ResidualAccumulator<Rat> exact_;
  ResidualAccumulator<double> float_;
  bool any_float_ = false;
};

// Runs f(Id<Rat>, order) when every listed order is present and the mode
// allows exact evaluation, else f(Id<double>, cfg.order).
template <class F>
auto dispatch(const ExpConfig& cfg, std::initializer_list<std::optional<int>> orders, F&& f) {
  bool exact = cfg.mode == ExpMode::exact_if_terminating;
  int order = 1;
  for (const auto& o : orders) {
    if (!o) exact = false;
    else order = std::max(order, *o);
  }
  if (exact) return f(Id<Rat>{}, order);
  return f(Id<double>{}, cfg.order);
}

void require_derivation(const Lie2Algebra<Rat>& L, const Derivation0<Rat>& D) {
  if (!is_derivation0(L, D).all_zero()) throw std::invalid_argument("exp: input is not a degree-0 derivation");
}

}  // namespace

MixedAut0 exp_der0(const Lie2Algebra<Rat>& L, const Derivation0<Rat>& D, const Rat& t, const ExpConfig& cfg) {
  cfg.validate();
  require_derivation(L, D);
  return dispatch(cfg, {terminating_order(D)}, [&](auto id, int order) -> MixedAut0 {
    using T = typename decltype(id)::type;
    return exp_der0_series(D.template cast<T>(), conv<T>(t), order);
  });
}

MixedTau exp_derM1(const Lie2Algebra<Rat>& L, const DerM1<Rat>& th, const ExpConfig& cfg, const Rat& t) {
  cfg.validate();
  if (th.theta.rows() != L.n1 || th.theta.cols() != L.n0) throw std::invalid_argument("exp: theta has the wrong shape");
  return dispatch(cfg, {terminating_order(L, th)}, [&](auto id, int order) -> MixedTau {
    using T = typename decltype(id)::type;
    return exp_derM1_series(L.template cast<T>(), th.template cast<T>(), conv<T>(t), order);
  });
}

IdentityResidual check_one_parameter(const Lie2Algebra<Rat>& L, const Derivation0<Rat>& D, const Rat& t,
                                     const Rat& s, const ExpConfig& cfg) {
  cfg.validate();
  require_derivation(L, D);
  return dispatch(cfg, {terminating_order(D)}, [&](auto id, int order) {
    using T = typename decltype(id)::type;
    const auto DT = D.template cast<T>();
    const auto whole = exp_der0_series(DT, conv<T>(Rat(t + s)), order);
    const auto parts = aut_compose(exp_der0_series(DT, conv<T>(t), order), exp_der0_series(DT, conv<T>(s), order));
    return single_residual<T>("exp.one_parameter", diff_entries(whole.hom(), parts.hom()));
  });
}

IdentityResidual check_one_parameter(const Lie2Algebra<Rat>& L, const DerM1<Rat>& th, const Rat& t, const Rat& s,
                                     const ExpConfig& cfg) {
  cfg.validate();
  return dispatch(cfg, {terminating_order(L, th)}, [&](auto id, int order) {
    using T = typename decltype(id)::type;
    const auto LT = L.template cast<T>();
    const auto TT = th.template cast<T>();
    const auto whole = exp_derM1_series(LT, TT, conv<T>(Rat(t + s)), order);
    const auto parts = star(LT, exp_derM1_series(LT, TT, conv<T>(t), order), exp_derM1_series(LT, TT, conv<T>(s), order));
    return single_residual<T>("exp.one_parameter_m1", diff_entries(whole, parts));
  });
}

IdentityResidual check_commuting_square(const Lie2Algebra<Rat>& L, const DerM1<Rat>& th, const ExpConfig& cfg) {
  cfg.validate();
  const auto D = dbar(L, th);
  return dispatch(cfg, {terminating_order(L, th), terminating_order(D)}, [&](auto id, int order) {
    using T = typename decltype(id)::type;
    const auto LT = L.template cast<T>();
    const T one = ScalarTraits<T>::one();
    const auto lhs = partial(LT, exp_derM1_series(LT, th.template cast<T>(), one, order));
    const auto rhs = exp_der0_series(D.template cast<T>(), one, order);
    return single_residual<T>("exp.square", diff_entries(lhs.hom(), rhs.hom()));
  });
}

namespace {

template <class G>
auto mixed_difference(G&& F, double h) {
  auto pp = F(h, h), pm = F(h, -h), mp = F(-h, h), mm = F(-h, -h);
  const double scale = 1.0 / (4 * h * h);
  return (pp - pm - mp + mm) * scale;
}

}  // namespace

Derivation0<double> recover_bracket(const Lie2Algebra<Rat>& L, const Derivation0<Rat>& a, const Derivation0<Rat>& b,
                                    const ExpConfig& cfg) {
  cfg.validate();
  require_derivation(L, a);
  require_derivation(L, b);
  const auto X = a.cast<double>(), Y = b.cast<double>();
  auto F = [&](double s, double t) {
    const auto g = aut_compose(aut_compose(exp_der0_series(X, s, cfg.order), exp_der0_series(Y, t, cfg.order)),
                               aut_compose(exp_der0_series(X, -s, cfg.order), exp_der0_series(Y, -t, cfg.order)));
    return g.hom();
  };
  const double h = cfg.fd_step;
  const auto pp = F(h, h), pm = F(h, -h), mp = F(-h, h), mm = F(-h, -h);
  const double scale = 1.0 / (4 * h * h);
  return {(pp.a0 - pm.a0 - mp.a0 + mm.a0) * scale, (pp.a1 - pm.a1 - mp.a1 + mm.a1) * scale,
          (pp.a2 - pm.a2 - mp.a2 + mm.a2) * scale};
}

DerM1<double> recover_bracket(const Lie2Algebra<Rat>& L, const DerM1<Rat>& a, const DerM1<Rat>& b,
                              const ExpConfig& cfg) {
  cfg.validate();
  const auto LD = L.cast<double>();
  const auto A = a.cast<double>(), B = b.cast<double>();
  auto F = [&](double s, double t) {
    const auto es = exp_derM1_series(LD, A, s, cfg.order);
    const auto et = exp_derM1_series(LD, B, t, cfg.order);
    const auto inv_s = tau_inverse(LD, es), inv_t = tau_inverse(LD, et);
    if (!inv_s || !inv_t) throw std::runtime_error("recover_bracket: exponential is not invertible");
    return star(LD, star(LD, es, et), star(LD, *inv_s, *inv_t)).tau;
  };
  return {mixed_difference(F, cfg.fd_step)};
}

double der_distance(const Derivation0<double>& a, const Derivation0<double>& b) {
  double m = max_abs<double>((a.x0 - b.x0).entries());
  m = std::max(m, max_abs<double>((a.x1 - b.x1).entries()));
  return std::max(m, max_abs<double>((a.lx - b.lx).entries()));
}

MixedSemidirect exp_semidirect(const Lie2Algebra<Rat>& L, const SemidirectDer<Rat>& p, const ExpConfig& cfg,
                               const Rat& t) {
  cfg.validate();
  require_derivation(L, p.x);
  return dispatch(cfg, {terminating_order(p.x), terminating_order(L, p.theta)}, [&](auto id, int order) -> MixedSemidirect {
    using T = typename decltype(id)::type;
    const T tt = conv<T>(t);
    return SemidirectElement<T>{exp_der0_series(p.x.template cast<T>(), tt, order),
                                exp_derM1_series(L.template cast<T>(), p.theta.template cast<T>(), tt, order)};
  });
}

IdentityResidual check_semidirect_one_parameter(const Lie2Algebra<Rat>& L, const SemidirectDer<Rat>& p,
                                                const Rat& t, const Rat& s, const ExpConfig& cfg) {
  cfg.validate();
  require_derivation(L, p.x);
  return dispatch(cfg, {terminating_order(p.x), terminating_order(L, p.theta)}, [&](auto id, int order) {
    using T = typename decltype(id)::type;
    const auto LT = L.template cast<T>();
    const auto X = p.x.template cast<T>();
    const auto Th = p.theta.template cast<T>();
    auto e = [&](const Rat& r) {
      return SemidirectElement<T>{exp_der0_series(X, conv<T>(r), order), exp_derM1_series(LT, Th, conv<T>(r), order)};
    };
    const auto whole = e(Rat(t + s));
    const auto parts = semidirect_multiply(LT, e(t), e(s));
    return single_residual<T>("exp.semidirect_one_parameter", diff_entries(whole, parts));
  });
}

DerM1<Rat> adbar_correction(const Aut0<Rat>& A, const Vec<Rat>& x) {
  const auto& a2 = A.hom().a2;
  std::vector<Vec<Rat>> cols;
  for (std::size_t j = 0; j < A.a0_inv().cols(); ++j) cols.push_back(a2.eval({x, A.a0_inv().column(j)}));
  return {Matrix<Rat>::from_columns(a2.codomain_dim(), cols)};
}

Report check_conjugation_identities(const Lie2Algebra<Rat>& L, const ConjugationSamples& smp, const ExpConfig& cfg) {
  cfg.validate();
  if (smp.auts.empty() || smp.taus.empty() || smp.ders.empty() || smp.thetas.empty())
    throw std::invalid_argument("check_conjugation_identities: every sample list except points must be nonempty");
  MixedAccumulator i("conj.aut_der0"), ii("conj.tau_derM1"), iii("conj.aut_derM1"), iv("conj.tau_der0"),
      ea("conj.aut_dbar"), eb("conj.aut_adbar");
  const std::size_t n = std::max({smp.auts.size(), smp.taus.size(), smp.ders.size(), smp.thetas.size(), smp.points.size()});
  for (std::size_t k = 0; k < n; ++k) {
    const auto& A = smp.auts[k % smp.auts.size()];
    const auto& tau = smp.taus[k % smp.taus.size()];
    const auto& X = smp.ders[k % smp.ders.size()];
    const auto& Th = smp.thetas[k % smp.thetas.size()];
    auto w = [k] { return "sample " + std::to_string(k); };

    auto conj_exp = [&](MixedAccumulator& acc, const Derivation0<Rat>& inner, const Derivation0<Rat>& outer) {
      dispatch(cfg, {terminating_order(inner), terminating_order(outer)}, [&](auto id, int order) {
        using T = typename decltype(id)::type;
        const auto AT = A.template cast<T>();
        const T one = ScalarTraits<T>::one();
        const auto lhs = aut_compose(aut_compose(AT, exp_der0_series(inner.template cast<T>(), one, order)), aut_inverse(AT));
        const auto rhs = exp_der0_series(outer.template cast<T>(), one, order);
        acc.observe<T>(diff_entries(lhs.hom(), rhs.hom()), w);
        return 0;
      });
    };
    conj_exp(i, X, ad_conjugate(L, A, X));
    const DerM1<Rat> moved = ad_conjugate(L, A, Th);
    conj_exp(ea, dbar(L, Th), dbar(L, moved));
    if (!smp.points.empty()) {
      const auto& x = smp.points[k % smp.points.size()];
      conj_exp(eb, adbar0(L, x), adbar0(L, A.hom().a0.apply(x)) + dbar(L, adbar_correction(A, x)));
    }

    const auto tau_theta = ad_conjugate(L, tau, Th);
    dispatch(cfg, {terminating_order(L, Th), terminating_order(L, tau_theta)}, [&](auto id, int order) {
      using T = typename decltype(id)::type;
      const auto LT = L.template cast<T>();
      const auto tT = tau.template cast<T>();
      const T one = ScalarTraits<T>::one();
      const auto e = exp_derM1_series(LT, Th.template cast<T>(), one, order);
      const auto lhs = star(LT, star(LT, tT, e), *tau_inverse(LT, tT));
      ii.observe<T>(diff_entries(lhs, exp_derM1_series(LT, tau_theta.template cast<T>(), one, order)), w);
      return 0;
    });
    dispatch(cfg, {terminating_order(L, Th), terminating_order(L, moved)}, [&](auto id, int order) {
      using T = typename decltype(id)::type;
      const auto LT = L.template cast<T>();
      const T one = ScalarTraits<T>::one();
      const auto lhs = act(A.template cast<T>(), exp_derM1_series(LT, Th.template cast<T>(), one, order));
      iii.observe<T>(diff_entries(lhs, exp_derM1_series(LT, moved.template cast<T>(), one, order)), w);
      return 0;
    });
    const auto tau_x = ad_conjugate(L, tau, X).theta;
    dispatch(cfg, {terminating_order(X), terminating_order(L, tau_x)}, [&](auto id, int order) {
      using T = typename decltype(id)::type;
      const auto LT = L.template cast<T>();
      const auto tT = tau.template cast<T>();
      const T one = ScalarTraits<T>::one();
      const auto eX = exp_der0_series(X.template cast<T>(), one, order);
      const auto lhs = star(LT, tT, act(eX, *tau_inverse(LT, tT)));
      iv.observe<T>(diff_entries(lhs, exp_derM1_series(LT, tau_x.template cast<T>(), one, order)), w);
      return 0;
    });
  }
  Report r{{i.finish(), ii.finish(), iii.finish(), iv.finish(), ea.finish()}};
  if (!smp.points.empty()) r.items.push_back(eb.finish());
  return r;
}

InnGenerators inn_group_generators(const Lie2Algebra<Rat>& L, const ExpConfig& cfg) {
  cfg.validate();
  InnGenerators out;
  const auto LD = L.cast<double>();
  for (const auto& b : inn0_basis(L)) {
    auto e = exp_der0(L, b, Rat(1), cfg);
    const bool ok = std::visit(
        [&](const auto& A) {
          using T = std::decay_t<decltype(A.hom().a0(0, 0))>;
          if constexpr (std::is_same_v<T, Rat>)
            return Aut0<Rat>::certify(L, A.hom()).has_value();
          else
            return Aut0<double>::certify(LD, A.hom(), cfg.tol).has_value();
        },
        e);
    if (!ok) throw std::runtime_error("inn_group_generators: generator failed certification");
    out.degree0.push_back(std::move(e));
  }
  for (const auto& E : derM1_basis(L)) {
    auto e = exp_derM1(L, E, cfg);
    const bool ok = std::visit(
        [&](const auto& t) {
          if constexpr (std::is_same_v<std::decay_t<decltype(t)>, Tau<Rat>>)
            return tau_inverse(L, t).has_value();
          else
            return tau_inverse(LD, t).has_value();
        },
        e);
    if (!ok) throw std::runtime_error("inn_group_generators: generator is not invertible");
    out.degree_m1.push_back(std::move(e));
  }
  return out;
}

std::vector<Derivation0<Rat>> nilpotent_derivations(const Lie2Algebra<Rat>& L) {
  std::vector<Derivation0<Rat>> pool = compute_der0_basis(L);
  for (std::size_t i = 0; i < L.n0; ++i) pool.push_back(adbar0(L, unit_vector<Rat>(L.n0, i)));
  for (const auto& E : derM1_basis(L)) pool.push_back(dbar(L, E));
  std::vector<Derivation0<Rat>> out;
  for (const auto& D : pool)
    if (terminating_order(D) && !(D == Derivation0<Rat>::zero(L))) out.push_back(D);
  return out;
}

Aut0Sampler::Aut0Sampler(const Lie2Algebra<Rat>& L) : L_(L), candidates_(nilpotent_derivations(L)) {}

Aut0<Rat> Aut0Sampler::draw(Sampler& g) const {
  auto A = Aut0<Rat>::identity(L_);
  const std::size_t factors = 1 + g.index(3);
  for (std::size_t f = 0; f < factors; ++f) {
    if (candidates_.empty() || g.coin(0.4)) {
      A = aut_compose(A, partial(L_, sample_tau(g, L_)));
    } else {
      const auto& D = candidates_[g.index(candidates_.size())];
      A = aut_compose(A, exp_der0_series(D, g.unit_time(), *terminating_order(D)));
    }
  }
  return A;
}

#define LIE2_INSTANTIATE(T)                                                               \
  template AltTensor<T> exp_l_series<T>(const Derivation0<T>&, const T&, int);            \
  template Aut0<T> exp_der0_series<T>(const Derivation0<T>&, const T&, int);              \
  template Tau<T> exp_derM1_series<T>(const Lie2Algebra<T>&, const DerM1<T>&, const T&, int);

LIE2_INSTANTIATE(Rat)
LIE2_INSTANTIATE(double)
#undef LIE2_INSTANTIATE

}  // namespace lie2
