#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "lie2/matrix.hpp"

namespace lie2 {

using Tuple = std::vector<std::size_t>;

/// Lexicographically ordered strictly increasing k-tuples from {0..n-1}.
std::vector<Tuple> increasing_tuples(std::size_t n, std::size_t k);

/// Position of an increasing tuple in increasing_tuples(n, k).
std::size_t tuple_rank(std::span<const std::size_t> tuple, std::size_t n);

std::size_t choose(std::size_t n, std::size_t k);

/// Sorts `idx` in place and returns the permutation sign, or 0 on a repeat.
int sort_with_sign(Tuple& idx);

/// Alternating k-linear map from an n-dimensional space to an m-dimensional
/// one. Only strictly increasing index tuples are stored; everything else is
/// recovered by permutation sign.
template <class T>
class AltTensor {
 public:
  AltTensor() = default;
  AltTensor(std::size_t arity, std::size_t domain_dim, std::size_t codomain_dim)
      : arity_(arity),
        dom_(domain_dim),
        cod_(codomain_dim),
        data_(choose(domain_dim, arity) * codomain_dim, ScalarTraits<T>::zero()) {}

  std::size_t arity() const { return arity_; }
  std::size_t domain_dim() const { return dom_; }
  std::size_t codomain_dim() const { return cod_; }
  std::size_t num_tuples() const { return cod_ == 0 ? choose(dom_, arity_) : data_.size() / cod_; }
  std::vector<Tuple> tuples() const { return increasing_tuples(dom_, arity_); }

  /// Coefficient vector of a canonical tuple, addressed by rank.
  std::span<const T> slot(std::size_t rank) const { return {data_.data() + rank * cod_, cod_}; }
  std::span<T> slot(std::size_t rank) { return {data_.data() + rank * cod_, cod_}; }

  std::span<const T> entries() const { return data_; }
  std::span<T> entries() { return data_; }

  /// Value on basis vectors e_{idx[0]},...; applies the permutation sign.
  Vec<T> value(Tuple idx) const {
    check_arity(idx.size());
    Vec<T> out(cod_, ScalarTraits<T>::zero());
    const int s = sort_with_sign(idx);
    if (s == 0) return out;
    auto src = slot(tuple_rank(idx, dom_));
    for (std::size_t c = 0; c < cod_; ++c) out[c] = s > 0 ? src[c] : T(-src[c]);
    return out;
  }

  T get(Tuple idx, std::size_t out) const {
    check_arity(idx.size());
    const int s = sort_with_sign(idx);
    if (s == 0) return ScalarTraits<T>::zero();
    const T& v = slot(tuple_rank(idx, dom_))[out];
    return s > 0 ? v : T(-v);
  }

  /// Writes the value on an arbitrary tuple; the antisymmetric partners follow.
  void set(Tuple idx, std::size_t out, const T& v) {
    check_arity(idx.size());
    const int s = sort_with_sign(idx);
    if (s == 0) {
      if (!ScalarTraits<T>::is_zero(v)) throw std::invalid_argument("alternating tensor: nonzero value on repeated index");
      return;
    }
    slot(tuple_rank(idx, dom_))[out] = s > 0 ? v : T(-v);
  }

  /// Multilinear evaluation on arbitrary vectors.
  Vec<T> eval(const std::vector<Vec<T>>& args) const {
    check_arity(args.size());
    for (const auto& a : args)
      if (a.size() != dom_) throw std::invalid_argument("alternating tensor: argument length mismatch");
    Vec<T> out(cod_, ScalarTraits<T>::zero());
    if (arity_ == 0) {
      std::copy(data_.begin(), data_.end(), out.begin());
      return out;
    }
    // Sum over basis tuples of the determinant of the selected minor.
    std::vector<std::size_t> perm(arity_);
    const auto all = tuples();
    for (std::size_t r = 0; r < all.size(); ++r) {
      auto coeffs = slot(r);
      if (std::all_of(coeffs.begin(), coeffs.end(), [](const T& c) { return ScalarTraits<T>::is_zero(c); })) continue;
      const T det = minor_det(args, all[r], perm);
      if (ScalarTraits<T>::is_zero(det)) continue;
      for (std::size_t c = 0; c < cod_; ++c) out[c] += det * coeffs[c];
    }
    return out;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!ScalarTraits<T>::is_zero(v)) return false;
    return true;
  }

  AltTensor& operator+=(const AltTensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  AltTensor& operator-=(const AltTensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  AltTensor& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend AltTensor operator+(AltTensor a, const AltTensor& b) { return a += b; }
  friend AltTensor operator-(AltTensor a, const AltTensor& b) { return a -= b; }
  friend AltTensor operator-(AltTensor a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend AltTensor operator*(AltTensor a, const T& s) { return a *= s; }
  friend AltTensor operator*(const T& s, AltTensor a) { return a *= s; }

  friend bool operator==(const AltTensor& a, const AltTensor& b) {
    return a.arity_ == b.arity_ && a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.data_ == b.data_;
  }

  template <class U>
  AltTensor<U> cast() const {
    AltTensor<U> t(arity_, dom_, cod_);
    auto dst = t.entries();
    for (std::size_t i = 0; i < data_.size(); ++i) dst[i] = scalar_cast<U>(data_[i]);
    return t;
  }

 private:
  void check_arity(std::size_t k) const {
    if (k != arity_) throw std::invalid_argument("alternating tensor: wrong number of arguments");
  }
  void require_same_shape(const AltTensor& o) const {
    if (arity_ != o.arity_ || dom_ != o.dom_ || cod_ != o.cod_)
      throw std::invalid_argument("alternating tensor shape mismatch");
  }

  // Leibniz expansion; arities here are tiny (<= 4 in practice).
  T minor_det(const std::vector<Vec<T>>& args, const Tuple& cols, std::vector<std::size_t>& perm) const {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    T det = ScalarTraits<T>::zero();
    do {
      T term = ScalarTraits<T>::one();
      for (std::size_t a = 0; a < arity_ && !ScalarTraits<T>::is_zero(term); ++a) term *= args[a][cols[perm[a]]];
      if (ScalarTraits<T>::is_zero(term)) continue;
      if (permutation_sign(perm) > 0)
        det += term;
      else
        det -= term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
  }

  static int permutation_sign(const std::vector<std::size_t>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) s = -s;
    return s;
  }

  std::size_t arity_ = 0;
  std::size_t dom_ = 0;
  std::size_t cod_ = 0;
  std::vector<T> data_;
};

/// (x, y) -> M * omega(x, y).
template <class T>
AltTensor<T> postcompose(const Matrix<T>& m, const AltTensor<T>& omega) {
  if (m.cols() != omega.codomain_dim()) throw std::invalid_argument("postcompose: shape mismatch");
  AltTensor<T> out(omega.arity(), omega.domain_dim(), m.rows());
  for (std::size_t r = 0; r < omega.num_tuples(); ++r) {
    auto src = omega.slot(r);
    auto v = m.apply(src);
    std::copy(v.begin(), v.end(), out.slot(r).begin());
  }
  return out;
}

/// (x, y, ...) -> omega(M x, M y, ...).
template <class T>
AltTensor<T> pullback(const AltTensor<T>& omega, const Matrix<T>& m) {
  if (m.rows() != omega.domain_dim()) throw std::invalid_argument("pullback: shape mismatch");
  AltTensor<T> out(omega.arity(), m.cols(), omega.codomain_dim());
  const auto ts = out.tuples();
  for (std::size_t r = 0; r < ts.size(); ++r) {
    std::vector<Vec<T>> args;
    for (auto c : ts[r]) args.push_back(m.column(c));
    auto v = omega.eval(args);
    std::copy(v.begin(), v.end(), out.slot(r).begin());
  }
  return out;
}

}  // namespace lie2
