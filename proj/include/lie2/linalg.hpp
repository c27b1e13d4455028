#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lie2/matrix.hpp"

namespace lie2 {

struct RrefResult {
  Matrix<Rat> reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form. Pivot rule: first nonzero column, topmost
/// nonzero entry at or below the current row, scaled to a leading 1.
RrefResult rref(const Matrix<Rat>& m);

std::size_t rank(const Matrix<Rat>& m);

/// Null-space basis, one vector per free column in increasing column order.
/// Each vector has a 1 in its free column and zeros in the other free columns.
std::vector<Vec<Rat>> kernel_basis(const Matrix<Rat>& m);

/// Inverse when it exists. Exact for rationals; partial pivoting for floats,
/// with a relative singularity threshold.
std::optional<Matrix<Rat>> mat_inverse(const Matrix<Rat>& m);
std::optional<Matrix<double>> mat_inverse(const Matrix<double>& m);

/// Coordinates of v in the span of `basis`, if v lies in it.
std::optional<Vec<Rat>> solve_in_span(const std::vector<Vec<Rat>>& basis, const Vec<Rat>& v);

/// Nonzero rows of rref(rows stacked): a canonical basis of their span.
std::vector<Vec<Rat>> row_space_basis(const std::vector<Vec<Rat>>& rows, std::size_t width);

/// Smallest k >= 1 with m^k = 0, checked up to k = dim.
std::optional<std::size_t> nilpotency_index(const Matrix<Rat>& m);

/// sum_{n=0}^{order} t^n m^n / n!, in the matrix's own scalar mode.
template <class T>
Matrix<T> truncated_exp(const Matrix<T>& m, const T& t, int order) {
  if (!m.is_square()) throw std::invalid_argument("truncated_exp: matrix must be square");
  if (order < 1) throw std::invalid_argument("truncated_exp: order must be >= 1");
  Matrix<T> sum = Matrix<T>::identity(m.rows());
  Matrix<T> term = Matrix<T>::identity(m.rows());
  const Matrix<T> tm = m * t;
  for (int n = 1; n <= order; ++n) {
    term = term * tm;
    term *= T(ScalarTraits<T>::one() / ScalarTraits<T>::from_int(n));
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

/// e^{tm} exactly, when m is nilpotent (the series then terminates).
std::optional<Matrix<Rat>> exact_exp(const Matrix<Rat>& m, const Rat& t);

enum class ExpMode { exact_if_terminating, floating };

using MixedMatrix = std::variant<Matrix<Rat>, Matrix<double>>;

/// Exact exponential when `mode` allows it and m is nilpotent, otherwise the
/// float series truncated at `order`.
MixedMatrix truncated_exp(const Matrix<Rat>& m, const Rat& t, int order, ExpMode mode);

}  // namespace lie2
