#include "lie2/random.hpp"

#include <stdexcept>

#include "lie2/linalg.hpp"

namespace lie2 {

Rat Sampler::rat() {
  const long num = static_cast<long>(index(7)) - 3;
  const long den = 1 + static_cast<long>(index(2));
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat Sampler::nonzero_rat() {
  while (true) {
    Rat r = rat();
    if (sgn(r) != 0) return r;
  }
}

Rat Sampler::unit_time() {
  Rat r(static_cast<long>(index(9)) - 4, 4);
  r.canonicalize();
  return r;
}

Vec<Rat> Sampler::vec(std::size_t n) {
  Vec<Rat> v(n);
  for (auto& x : v) x = rat();
  return v;
}

Matrix<Rat> Sampler::matrix(std::size_t r, std::size_t c, double density) {
  Matrix<Rat> m(r, c);
  for (auto& x : m.entries())
    if (density >= 1.0 || coin(density)) x = rat();
  return m;
}

Matrix<Rat> Sampler::invertible(std::size_t n) {
  while (true) {
    auto m = matrix(n, n);
    if (mat_inverse(m)) return m;
  }
}

AltTensor<Rat> Sampler::alt(std::size_t arity, std::size_t dom, std::size_t cod, double density) {
  AltTensor<Rat> t(arity, dom, cod);
  for (auto& x : t.entries())
    if (density >= 1.0 || coin(density)) x = rat();
  return t;
}

namespace {

LieAlgebra standard_lie_algebra(std::size_t dim, std::size_t which) {
  LieAlgebra k = LieAlgebra::abelian(dim);
  auto set = [&](std::size_t i, std::size_t j, std::size_t out, long v) { k.bracket.set({i, j}, out, Rat(v)); };
  switch (dim) {
    case 2:
      if (which % 2 == 1) set(0, 1, 1, 1);  // aff(1)
      break;
    case 3:
      switch (which % 6) {
        case 1: set(0, 1, 2, 1); break;  // Heisenberg
        case 2: set(0, 1, 1, 1); break;  // aff(1) + R
        case 3: set(0, 1, 1, 1); set(0, 2, 2, 1); break;
        case 4: return LieAlgebra::sl2();
        case 5: set(0, 1, 2, 1); set(1, 2, 0, 1); set(2, 0, 1, 1); break;  // so(3)
        default: break;
      }
      break;
    default:
      break;
  }
  return k;
}

}  // namespace

LieAlgebra Sampler::lie_algebra(std::size_t dim) {
  if (dim > 3) throw std::invalid_argument("Sampler::lie_algebra: dimension must be <= 3");
  LieAlgebra k = standard_lie_algebra(dim, index(6));
  if (dim == 0) return k;
  const auto p = invertible(dim);
  const auto pinv = *mat_inverse(p);
  k.bracket = postcompose(p, pullback(k.bracket, pinv));
  return k;
}

Representation Sampler::representation(const LieAlgebra& k, std::size_t dim_v) {
  if (dim_v > 2) throw std::invalid_argument("Sampler::representation: dimension must be <= 2");
  Representation phi = trivial_representation(k, dim_v);
  if (dim_v == 0 || k.dim == 0 || coin(0.3)) return phi;
  // Characters vanish on [k, k]: pick them from the annihilator of the derived algebra.
  std::vector<Vec<Rat>> derived;
  for (const auto& t : increasing_tuples(k.dim, 2)) derived.push_back(k.bracket.value(t));
  Matrix<Rat> rows(derived.size(), k.dim);
  for (std::size_t r = 0; r < derived.size(); ++r)
    for (std::size_t c = 0; c < k.dim; ++c) rows(r, c) = derived[r][c];
  const auto ann = kernel_basis(rows);
  if (ann.empty()) return phi;
  auto character = [&] {
    Vec<Rat> chi(k.dim, Rat(0));
    for (const auto& a : ann) chi = add(chi, scaled(a, rat()));
    return chi;
  };
  const auto chi = character();
  const auto psi = character();
  for (std::size_t i = 0; i < k.dim; ++i) {
    phi[i] = Matrix<Rat>::identity(dim_v) * chi[i];
    if (dim_v == 2) phi[i](0, 1) = psi[i];
  }
  return phi;
}

Lie2Algebra<Rat> Sampler::fixture(std::size_t max0, std::size_t max1) {
  if (max0 > 3 || max1 > 2 || max0 == 0) throw std::invalid_argument("Sampler::fixture: dimensions out of range");
  Lie2Algebra<Rat> L;
  switch (index(4)) {
    case 0: {
      const std::size_t n0 = 1 + index(max0), n1 = index(max1 + 1);
      const auto k = lie_algebra(n0);
      // Every 3-cochain is closed when dim k <= 3.
      L = make_skeletal(k, representation(k, n1), alt(3, n0, n1));
      break;
    }
    case 1: {
      // End(V) for dim V_0 + dim V_{-1} <= 3, kept when it fits.
      while (true) {
        const std::size_t p0 = index(3), p1 = index(3);
        if (p0 + p1 == 0 || p0 + p1 > 3) continue;
        L = make_endo({p0, p1, matrix(p0, p1)});
        if (L.n0 >= 1 && L.n0 <= max0 && L.n1 <= max1) break;
      }
      break;
    }
    case 2: {
      const std::size_t n = 1 + index(std::min<std::size_t>(max0, max1 == 0 ? 0 : max1));
      if (max1 == 0) {
        L = make_strict_lie(lie_algebra(1 + index(max0)));
      } else {
        L = make_identity_crossed(lie_algebra(n));
      }
      break;
    }
    default: {
      if (max1 >= 1 && max0 == 3) {
        L = make_string(lie_algebra(3));
      } else {
        const auto k = lie_algebra(1 + index(max0));
        L = make_skeletal(k, trivial_representation(k, 0), AltTensor<Rat>(3, k.dim, 0));
      }
      break;
    }
  }
  const auto P0 = invertible(L.n0);
  const auto P1 = invertible(L.n1);
  return transport(L, P0, P1);
}

}  // namespace lie2
