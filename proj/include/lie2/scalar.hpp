#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace lie2 {

/// Exact rational scalar. Always kept in canonical form (den > 0, gcd = 1).
using Rat = mpq_class;

/// Parses the rational literal grammar `-?[0-9]+(/[0-9]+)?` with a positive
/// denominator. Throws std::invalid_argument on anything else.
Rat parse_rat(std::string_view text);

/// Canonical text: "p" when the denominator is 1, "p/q" otherwise.
std::string format_rat(const Rat& r);

/// Uniform access to the two scalar modes used throughout the library.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& v) { return sgn(v) == 0; }
  static double to_double(const Rat& v) { return v.get_d(); }
  static Rat abs(const Rat& v) { return sgn(v) < 0 ? Rat(-v) : v; }
  static Rat from_int(std::int64_t v) { return Rat(static_cast<long>(v)); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  static double from_int(std::int64_t v) { return static_cast<double>(v); }
};

template <class U, class T>
U scalar_cast(const T& v) {
  if constexpr (std::is_same_v<U, T>) {
    return v;
  } else {
    static_assert(std::is_same_v<U, double>, "only exact -> float conversion is allowed");
    return ScalarTraits<T>::to_double(v);
  }
}

/// n! / (k! (n-k)!) as an exact integer.
Rat binomial(unsigned n, unsigned k);

}  // namespace lie2
