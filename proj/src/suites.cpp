#include "lie2/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace lie2 {

namespace {

Rat max_entry(std::span<const Rat> xs, Rat floor) {
  for (const auto& v : xs) floor = std::max<Rat>(floor, ScalarTraits<Rat>::abs(v));
  return floor;
}

IdentityResidual empty_item(const std::string& name) { return IdentityResidual{name, Mode::exact, 0.0, "0", "", {}}; }

IdentityResidual float_item(const std::string& name, double tol) {
  IdentityResidual r{name, Mode::floating, 0.0, "", "", {}};
  r.tol = tol;
  return r;
}

void observe_float(IdentityResidual& acc, double v, const std::string& witness) {
  if (v > acc.value || std::isnan(v)) {
    acc.value = v;
    acc.witness = witness;
  }
}

std::string sample_label(std::size_t k) { return "sample " + std::to_string(k); }

Report axioms(const Lie2Algebra<Rat>& L, const SuiteConfig&) { return validate_lie2(L); }

Report crossed_module(const Lie2Algebra<Rat>& L, const SuiteConfig& cfg) {
  Sampler g(cfg.seed);
  const Aut0Sampler auts(L);
  std::vector<Tau<Rat>> taus;
  std::vector<Aut0<Rat>> as;
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    taus.push_back(sample_tau(g, L));
    as.push_back(auts.draw(g));
  }
  return check_crossed_module(L, taus, as);
}

Report exp_square(const Lie2Algebra<Rat>& L, const SuiteConfig& cfg) {
  Sampler g(cfg.seed);
  auto acc = empty_item("exp.square");
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    const auto th = sample_small_theta(g, L);
    absorb(acc, check_commuting_square(L, th, cfg.exp), sample_label(k) + ": theta=" + format_matrix(th.theta));
  }
  return {{acc}};
}

Report one_parameter(const Lie2Algebra<Rat>& L, const SuiteConfig& cfg) {
  Sampler g(cfg.seed);
  const auto basis = compute_der0_basis(L);
  auto acc0 = empty_item("exp.one_parameter");
  auto acc1 = empty_item("exp.one_parameter_m1");
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    const auto D = sample_der0(g, L, basis);
    const Rat t = g.unit_time();
    const Rat s = g.unit_time();
    const auto tag = sample_label(k) + ": t=" + format_rat(t) + " s=" + format_rat(s);
    absorb(acc0, check_one_parameter(L, D, t, s, cfg.exp), tag + " X0=" + format_matrix(D.x0));
    const auto th = sample_small_theta(g, L);
    absorb(acc1, check_one_parameter(L, th, t, s, cfg.exp), tag + " theta=" + format_matrix(th.theta));
  }
  return {{acc0, acc1}};
}

// The mixed central difference is accurate to O(h^2); the tolerance follows h.
Report bracket_recovery(const Lie2Algebra<Rat>& L, const SuiteConfig& cfg) {
  Sampler g(cfg.seed);
  const auto basis = compute_der0_basis(L);
  const double h = cfg.exp.fd_step;
  const double tol = std::max(cfg.exp.tol, 100 * h * h);
  ExpConfig coarse = cfg.exp;
  coarse.fd_step = 2 * h;

  auto rec0 = float_item("exp.bracket_recovery", tol);
  auto rec1 = float_item("exp.bracket_recovery_m1", tol);
  auto order = float_item("exp.bracket_order", 0.5);
  std::size_t measured = 0;
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    const auto a = sample_der0(g, L, basis);
    const auto b = sample_der0(g, L, basis);
    const auto exact = bracket00(a, b).cast<double>();
    const double err = der_distance(recover_bracket(L, a, b, cfg.exp), exact);
    const auto tag = sample_label(k) + ": X0=" + format_matrix(a.x0) + " Y0=" + format_matrix(b.x0);
    observe_float(rec0, err, tag);
    // Ratios are only meaningful well above rounding noise.
    if (err > 1e-7) {
      ++measured;
      const double ratio = der_distance(recover_bracket(L, a, b, coarse), exact) / err;
      observe_float(order, std::fabs(ratio - 4), tag + " ratio=" + std::to_string(ratio));
    }
    const auto ta = sample_small_theta(g, L);
    const auto tb = sample_small_theta(g, L);
    const auto d1 = recover_bracket(L, ta, tb, cfg.exp).theta - bracketmm(L, ta, tb).theta.cast<double>();
    observe_float(rec1, max_abs<double>(d1.entries()), sample_label(k) + ": theta=" + format_matrix(ta.theta));
  }
  if (measured == 0) order.witness = "no sample above rounding noise";
  return {{rec0, rec1, order}};
}

Report conjugation(const Lie2Algebra<Rat>& L, const SuiteConfig& cfg) {
  Sampler g(cfg.seed);
  const Aut0Sampler auts(L);
  const auto nil = nilpotent_derivations(L);
  ConjugationSamples smp;
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    smp.auts.push_back(auts.draw(g));
    smp.taus.push_back(sample_tau(g, L));
    smp.ders.push_back(nil.empty() ? Derivation0<Rat>::zero(L) : nil[g.index(nil.size())] * g.unit_time());
    smp.thetas.push_back(sample_small_theta(g, L));
    smp.points.push_back(scaled(g.vec(L.n0), Rat(1, 8)));
  }
  return check_conjugation_identities(L, smp, cfg.exp);
}

using SuiteFn = std::function<Report(const Lie2Algebra<Rat>&, const SuiteConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"axioms", axioms},
      {"crossed-module", crossed_module},
      {"exp-square", exp_square},
      {"one-parameter", one_parameter},
      {"bracket-recovery", bracket_recovery},
      {"conjugation", conjugation},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

Report run_suite(const std::string& name, const Lie2Algebra<Rat>& L, const SuiteConfig& cfg) {
  cfg.exp.validate();
  for (const auto& [n, f] : registry())
    if (n == name) return f(L, cfg);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

Derivation0<Rat> sample_der0(Sampler& g, const Lie2Algebra<Rat>& L, const std::vector<Derivation0<Rat>>& basis) {
  auto D = Derivation0<Rat>::zero(L);
  for (const auto& b : basis) D = D + b * g.rat();
  Rat m = 1;
  for (auto span : {D.x0.entries(), D.x1.entries(), D.lx.entries()}) m = max_entry(span, m);
  return D * Rat(1 / m);
}

DerM1<Rat> sample_small_theta(Sampler& g, const Lie2Algebra<Rat>& L) {
  const auto th = g.matrix(L.n1, L.n0);
  const Rat m = max_entry(th.entries(), Rat(1));
  const Rat dm = max_entry(L.d.entries(), Rat(1));
  return {th * Rat(1 / (m * dm * Rat(static_cast<long>(L.n0 + L.n1))))};
}

void absorb(IdentityResidual& acc, const IdentityResidual& r, const std::string& witness_prefix) {
  auto witness = [&] { return r.witness.empty() ? witness_prefix : witness_prefix + "; " + r.witness; };
  if (acc.mode == Mode::exact && r.mode == Mode::exact) {
    if (ScalarTraits<Rat>::abs(parse_rat(r.exact_value)) > ScalarTraits<Rat>::abs(parse_rat(acc.exact_value))) {
      acc.exact_value = r.exact_value;
      acc.value = std::fabs(r.value);
      acc.witness = witness();
    }
    return;
  }
  acc.mode = Mode::floating;
  if (std::fabs(r.value) > acc.value || std::isnan(r.value)) {
    acc.value = std::fabs(r.value);
    acc.witness = witness();
  }
}

}  // namespace lie2
