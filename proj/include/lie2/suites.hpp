#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lie2/integration.hpp"
#include "lie2/random.hpp"

namespace lie2 {

struct SuiteConfig {
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  ExpConfig exp;
};

/// axioms, crossed-module, exp-square, one-parameter, bracket-recovery, conjugation.
const std::vector<std::string>& suite_names();

/// Runs one named suite; every randomized choice comes from a Sampler seeded
/// with cfg.seed. Throws std::invalid_argument on an unknown name.
Report run_suite(const std::string& name, const Lie2Algebra<Rat>& L, const SuiteConfig& cfg);

/// Random combination of `basis`, scaled so that no entry exceeds 1.
Derivation0<Rat> sample_der0(Sampler& g, const Lie2Algebra<Rat>& L, const std::vector<Derivation0<Rat>>& basis);

/// Random Theta scaled so that |Theta d| stays below 1.
DerM1<Rat> sample_small_theta(Sampler& g, const Lie2Algebra<Rat>& L);

/// Folds one residual into a running maximum of the same identity. The result
/// is exact only while every folded residual is.
void absorb(IdentityResidual& acc, const IdentityResidual& r, const std::string& witness_prefix);

}  // namespace lie2
