// Shared fixtures and fixed-seed random generators for the test suites.
#pragma once

#include <random>
#include <vector>

#include "solvlck/exterior.hpp"
#include "solvlck/lie_algebra.hpp"
#include "solvlck/scalar.hpp"

namespace fixtures {

using solvlck::Rational;

template <class K>
K random_rational(std::mt19937& rng, int num_range = 6, int den_range = 4) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return solvlck::scalar_traits<K>::from_int(num(rng)) /
         solvlck::scalar_traits<K>::from_int(den(rng));
}

template <class K>
solvlck::GradedForm<K> form(std::size_t dim,
                            std::vector<std::pair<std::vector<std::size_t>, K>> terms,
                            std::size_t grade) {
  solvlck::GradedForm<K> f(dim, grade);
  for (auto& [idx, c] : terms) f.add(solvlck::Monomial::from_indices(idx), c);
  return f;
}

template <class K>
solvlck::LieAlgebra<K> abelian(std::size_t n) {
  return solvlck::LieAlgebra<K>(n, std::vector<K>(n * n * n));
}

/// h(1): [x, y] = z.
template <class K>
solvlck::LieAlgebra<K> heisenberg() {
  std::vector<K> c(27);
  c[(0 * 3 + 1) * 3 + 2] = solvlck::scalar_traits<K>::from_int(1);
  c[(1 * 3 + 0) * 3 + 2] = solvlck::scalar_traits<K>::from_int(-1);
  return solvlck::LieAlgebra<K>(3, std::move(c), {"x", "y", "z"});
}

/// h(1) + R, basis x, y, z, w.
template <class K>
solvlck::LieAlgebra<K> heisenberg_plus_r() {
  std::vector<K> c(64);
  c[(0 * 4 + 1) * 4 + 2] = solvlck::scalar_traits<K>::from_int(1);
  c[(1 * 4 + 0) * 4 + 2] = solvlck::scalar_traits<K>::from_int(-1);
  return solvlck::LieAlgebra<K>(4, std::move(c), {"x", "y", "z", "w"});
}

/// h(2) + R, basis x1, y1, x2, y2, z, w with [x_i, y_i] = z.
template <class K>
solvlck::LieAlgebra<K> h2_plus_r() {
  const std::size_t n = 6;
  std::vector<K> c(n * n * n);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
    c[(i * n + j) * n + k] = solvlck::scalar_traits<K>::from_int(1);
    c[(j * n + i) * n + k] = solvlck::scalar_traits<K>::from_int(-1);
  };
  set(0, 1, 4);
  set(2, 3, 4);
  return solvlck::LieAlgebra<K>(n, std::move(c), {"x1", "y1", "x2", "y2", "z", "w"});
}

/// Inoue S0 algebra: R |x (R x C), phi(t) = diag(e^t, e^{-t/2 + i c t}).
template <class K>
solvlck::BuiltAlgebra<K> inoue_s0(const K& c) {
  using solvlck::BlockSpec;
  const K one = solvlck::scalar_traits<K>::from_int(1);
  BlockSpec<K> real{false, {one}, {}};
  BlockSpec<K> cplx{true, {-one / solvlck::scalar_traits<K>::from_int(2)}, {c}};
  return solvlck::build_meta_abelian<K>(1, {real, cplx}, {"t", "x", "g1", "g2"});
}

/// Completely solvable Sol: R |x R^2 with weights +1, -1.
template <class K>
solvlck::BuiltAlgebra<K> sol_algebra() {
  using solvlck::BlockSpec;
  const K one = solvlck::scalar_traits<K>::from_int(1);
  return solvlck::build_meta_abelian<K>(1, {BlockSpec<K>{false, {one}, {}},
                                            BlockSpec<K>{false, {-one}, {}}},
                                        {"t", "x", "y"});
}

/// R |x R^2 rotating: one complex block with lambda = 0, mu = 1.
template <class K>
solvlck::BuiltAlgebra<K> rotation_algebra() {
  using solvlck::BlockSpec;
  const K one = solvlck::scalar_traits<K>::from_int(1);
  return solvlck::build_meta_abelian<K>(1, {BlockSpec<K>{true, {K{}}, {one}}},
                                        {"t", "x", "y"});
}

/// Random meta-abelian algebra: m in {1, 2}, one to three blocks with random
/// rational weights (complex blocks with random rotation parts).
template <class K>
solvlck::BuiltAlgebra<K> random_meta_abelian(std::mt19937& rng) {
  std::uniform_int_distribution<int> mdist(1, 2), bdist(1, 3), kind(0, 1);
  const std::size_t m = mdist(rng);
  std::vector<solvlck::BlockSpec<K>> specs;
  const int nblocks = bdist(rng);
  for (int b = 0; b < nblocks; ++b) {
    solvlck::BlockSpec<K> spec;
    spec.complex_pair = kind(rng) == 1;
    for (std::size_t i = 0; i < m; ++i) {
      spec.lambda.push_back(random_rational<K>(rng, 3, 3));
      spec.mu.push_back(spec.complex_pair ? random_rational<K>(rng, 3, 3) : K{});
    }
    specs.push_back(std::move(spec));
  }
  return solvlck::build_meta_abelian<K>(m, specs);
}

template <class K>
solvlck::GradedForm<K> random_form(std::mt19937& rng, std::size_t dim,
                                   std::size_t grade) {
  solvlck::GradedForm<K> f(dim, grade);
  const std::size_t count = solvlck::binomial(dim, grade);
  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  for (int t = 0; t < 4; ++t)
    f.add(solvlck::monomial_unrank(pick(rng), dim, grade), random_rational<K>(rng));
  return f;
}

}  // namespace fixtures
