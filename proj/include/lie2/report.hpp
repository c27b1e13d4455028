#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lie2/matrix.hpp"

namespace lie2 {

enum class Mode { exact, floating };

/// Max-abs residual of one identity over everything it was evaluated on.
struct IdentityResidual {
  std::string name;
  Mode mode = Mode::exact;
  double value = 0.0;
  std::string exact_value = "0";  // meaningful in exact mode only
  std::string witness;            // first input attaining the max, empty when zero
  std::optional<double> tol;      // replaces the caller's tolerance for float items

  bool is_zero() const { return mode == Mode::exact ? exact_value == "0" : value == 0.0; }
  bool passes(double default_tol) const { return mode == Mode::exact ? is_zero() : value <= tol.value_or(default_tol); }
};

struct Report {
  std::vector<IdentityResidual> items;

  bool all_zero() const;
  bool all_pass(double tol) const;
  double max_value() const;
  const IdentityResidual* find(const std::string& name) const;
  /// Names of the items that are nonzero, in report order.
  std::vector<std::string> failing(double tol = 0.0) const;
  void append(const Report& other);
};

/// Tracks the largest residual seen for one identity.
template <class T>
class ResidualAccumulator {
 public:
  explicit ResidualAccumulator(std::string name) : name_(std::move(name)) {}

  void observe(std::span<const T> diff, const std::function<std::string()>& witness) {
    const T m = max_abs<T>(diff);
    if (m > max_) {
      max_ = m;
      witness_ = witness();
    }
  }
  void observe(const Vec<T>& diff, const std::function<std::string()>& witness) {
    observe(std::span<const T>(diff), witness);
  }
  void observe(const Matrix<T>& diff, const std::function<std::string()>& witness) {
    observe(diff.entries(), witness);
  }

  IdentityResidual finish() const;

 private:
  std::string name_;
  T max_ = ScalarTraits<T>::zero();
  std::string witness_;
};

/// Text block with one "IDENTITY <name> RESIDUAL <value> MODE <exact|float>"
/// line per item, preceded by a header line.
std::string emit_report(const std::string& title, const Report& report);

std::string format_residual(const IdentityResidual& r);

/// "[[1,0],[1/2,3]]"; used to serialize witnesses.
std::string format_matrix(const Matrix<Rat>& m);
std::string format_matrix(const Matrix<double>& m);

}  // namespace lie2
