#pragma once

#include <cstdint>
#include <random>

#include "lie2/alt_tensor.hpp"
#include "lie2/lie2_core.hpp"
#include "lie2/matrix.hpp"

namespace lie2 {

/// Deterministic small-rational generator. Every draw goes through one
/// mt19937_64, reduced by modulo, so a seed fixes the whole stream on every
/// platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  std::size_t index(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
  bool coin(double p = 0.5) { return static_cast<double>(eng_() % 1000000) < p * 1e6; }

  /// Numerator in [-3, 3], denominator in {1, 2}.
  Rat rat();
  Rat nonzero_rat();
  /// Uniform in [-1, 1] with denominator 4: used for exponential times.
  Rat unit_time();

  Vec<Rat> vec(std::size_t n);
  /// Entries are zero with probability 1 - density.
  Matrix<Rat> matrix(std::size_t r, std::size_t c, double density = 1.0);
  Matrix<Rat> invertible(std::size_t n);
  AltTensor<Rat> alt(std::size_t arity, std::size_t dom, std::size_t cod, double density = 1.0);

  /// A Lie algebra of the given dimension (<= 3), drawn from the standard
  /// list and moved to a random basis.
  LieAlgebra lie_algebra(std::size_t dim);

  /// A representation of k on a space of dimension dim_v (<= 2). Trivial
  /// unless a one-dimensional or standard module is available.
  Representation representation(const LieAlgebra& k, std::size_t dim_v);

  /// Random valid Lie 2-algebra with n0 <= max0 (<= 3) and n1 <= max1 (<= 2):
  /// skeletal, endomorphism or identity-crossed-module shaped, transported.
  Lie2Algebra<Rat> fixture(std::size_t max0 = 3, std::size_t max1 = 2);

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace lie2
