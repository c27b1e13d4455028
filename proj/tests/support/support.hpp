#pragma once

#include "lie2/derivations.hpp"
#include "lie2/lie2_core.hpp"
#include "lie2/linalg.hpp"
#include "lie2/random.hpp"

namespace lie2::testing {

using Gen = Sampler;

/// k = aff(1) + R^2 ([e0, e1] = e1), trivial one-dimensional V and
/// l3 = e0*^e2*^e3*. The coboundary on (e0,e1,e2,e3) is -l3(e1,e2,e3), so this
/// l3 is closed and any change to l3(e1,e2,e3) breaks axiom (c) alone.
inline Lie2Algebra<Rat> four_dim_fixture() {
  LieAlgebra k = LieAlgebra::abelian(4);
  k.bracket.set({0, 1}, 1, Rat(1));
  AltTensor<Rat> l3(3, 4, 1);
  l3.set({0, 2, 3}, 0, Rat(1));
  return make_skeletal(k, trivial_representation(k, 1), l3);
}

/// The 1-form x -> xi . x with values in R.
inline AltTensor<Rat> one_form(const Vec<Rat>& xi) {
  AltTensor<Rat> t(1, xi.size(), 1);
  for (std::size_t i = 0; i < xi.size(); ++i) t.set({i}, 0, xi[i]);
  return t;
}

/// Coboundary of a 1-form on sl2 with trivial coefficients.
inline AltTensor<Rat> sl2_coboundary(const Vec<Rat>& xi) {
  const auto k = LieAlgebra::sl2();
  return ce_coboundary(k, trivial_representation(k, 1), one_form(xi));
}

/// (e^{s ad_e} e^{t ad_f}, 1, D xi) on the string algebra of sl2: the first
/// component preserves the Killing form, and D xi is a cocycle.
inline Lie2Hom<Rat> string_automorphism(Gen& g) {
  const auto k = LieAlgebra::sl2();
  const auto a0 = *exact_exp(k.ad(1), g.unit_time()) * *exact_exp(k.ad(2), g.unit_time());
  return {a0, Matrix<Rat>::identity(1), sl2_coboundary(g.vec(3))};
}

/// Random combination of `basis`, rescaled so that no entry exceeds 1 in absolute value.
inline Derivation0<Rat> random_derivation(Gen& g, const Lie2Algebra<Rat>& L, const std::vector<Derivation0<Rat>>& basis) {
  auto D = Derivation0<Rat>::zero(L);
  for (const auto& b : basis) D = D + b * g.rat();
  Rat m = 0;
  for (auto span : {D.x0.entries(), D.x1.entries(), D.lx.entries()})
    for (const auto& v : span) m = std::max(m, Rat(abs(v)));
  if (m > 1) D = D * Rat(1 / m);
  return D;
}

}  // namespace lie2::testing
