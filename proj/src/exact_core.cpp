#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lie2/alt_tensor.hpp"
#include "lie2/linalg.hpp"
#include "lie2/scalar.hpp"

namespace lie2 {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    d = mpz_class(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rat r(negative ? mpz_class(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat& r) {
  // get_str already omits a unit denominator.
  return r.get_str(10);
}

Rat binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rat(out);
}

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Tuple> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<Tuple> out;
  if (k > n) return out;
  Tuple t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    // Advance the rightmost slot that still has room.
    std::size_t i = k;
    while (i > 0 && t[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++t[i - 1];
    for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

std::size_t tuple_rank(std::span<const std::size_t> tuple, std::size_t n) {
  const std::size_t k = tuple.size();
  std::size_t r = 0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = next; j < tuple[i]; ++j) r += choose(n - 1 - j, k - 1 - i);
    next = tuple[i] + 1;
  }
  return r;
}

int sort_with_sign(Tuple& idx) {
  int sign = 1;
  // Insertion sort, counting transpositions.
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

RrefResult rref(const Matrix<Rat>& m) {
  RrefResult res{m, {}};
  Matrix<Rat>& a = res.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && sgn(a(piv, col)) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(row, c));
    const Rat inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      const Rat f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    res.pivots.push_back(col);
    ++row;
  }
  return res;
}

std::size_t rank(const Matrix<Rat>& m) { return rref(m).pivots.size(); }

std::vector<Vec<Rat>> kernel_basis(const Matrix<Rat>& m) {
  const auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<Rat>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<Rat> v(m.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix<Rat>> mat_inverse(const Matrix<Rat>& m) {
  if (!m.is_square()) throw std::invalid_argument("mat_inverse: matrix must be square");
  const std::size_t n = m.rows();
  Matrix<Rat> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto [red, pivots] = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix<Rat> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
  return inv;
}

std::optional<Matrix<double>> mat_inverse(const Matrix<double>& m) {
  if (!m.is_square()) throw std::invalid_argument("mat_inverse: matrix must be square");
  const std::size_t n = m.rows();
  Matrix<double> a = m;
  Matrix<double> inv = Matrix<double>::identity(n);
  double scale = 0.0;
  for (double v : m.entries()) scale = std::max(scale, std::fabs(v));
  const double threshold = 1e-13 * std::max(scale, 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (std::fabs(a(piv, col)) <= threshold) return std::nullopt;
    if (piv != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    const double p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0.0) continue;
      const double f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

std::optional<Vec<Rat>> solve_in_span(const std::vector<Vec<Rat>>& basis, const Vec<Rat>& v) {
  const std::size_t k = basis.size();
  Matrix<Rat> aug(v.size(), k + 1);
  for (std::size_t j = 0; j < k; ++j) {
    if (basis[j].size() != v.size()) throw std::invalid_argument("solve_in_span: length mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) aug(i, j) = basis[j][i];
  }
  for (std::size_t i = 0; i < v.size(); ++i) aug(i, k) = v[i];
  const auto [red, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  Vec<Rat> coords(k, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) coords[pivots[r]] = red(r, k);
  return coords;
}

std::vector<Vec<Rat>> row_space_basis(const std::vector<Vec<Rat>>& rows, std::size_t width) {
  Matrix<Rat> m(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) throw std::invalid_argument("row_space_basis: length mismatch");
    for (std::size_t c = 0; c < width; ++c) m(r, c) = rows[r][c];
  }
  const auto [red, pivots] = rref(m);
  std::vector<Vec<Rat>> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Vec<Rat> row(width);
    for (std::size_t c = 0; c < width; ++c) row[c] = red(r, c);
    out.push_back(std::move(row));
  }
  return out;
}

std::optional<std::size_t> nilpotency_index(const Matrix<Rat>& m) {
  if (!m.is_square()) throw std::invalid_argument("nilpotency_index: matrix must be square");
  if (m.rows() == 0) return 1;
  Matrix<Rat> p = m;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    if (p.is_zero()) return k;
    p = p * m;
  }
  return std::nullopt;
}

std::optional<Matrix<Rat>> exact_exp(const Matrix<Rat>& m, const Rat& t) {
  const auto k = nilpotency_index(m);
  if (!k) return std::nullopt;
  return truncated_exp(m, t, static_cast<int>(std::max<std::size_t>(*k, 1)));
}

MixedMatrix truncated_exp(const Matrix<Rat>& m, const Rat& t, int order, ExpMode mode) {
  if (mode == ExpMode::exact_if_terminating)
    if (auto e = exact_exp(m, t)) return *e;
  return truncated_exp(m.cast<double>(), t.get_d(), order);
}

}  // namespace lie2
