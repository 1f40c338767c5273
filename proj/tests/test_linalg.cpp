#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "solvlck/linalg.hpp"

using namespace solvlck;

namespace {

Matrix<Rational> random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  Matrix<Rational> m(r, c);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
  return m;
}

}  // namespace

TEST_CASE("rank agrees with the exhaustive minor oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 4);
    const auto m = random_matrix(rng, size(rng), size(rng));
    REQUIRE(rank(m) == oracles::naive_rank(m));
  }
}

TEST_CASE("determinant agrees with Laplace expansion") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 4);
    const std::size_t n = size(rng);
    const auto m = random_matrix(rng, n, n);
    REQUIRE(determinant(m) == oracles::naive_determinant(m));
  }
}

TEST_CASE("solve finds solutions of consistent systems and rejects the rest") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 5);
    const std::size_t rows = size(rng), cols = size(rng);
    const auto a = random_matrix(rng, rows, cols);
    std::vector<Rational> x0(cols);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (auto& v : x0) v = entry(rng);
    const auto b = a.apply(x0);

    const auto x = solve(a, b);
    REQUIRE(x.has_value());
    REQUIRE(a.apply(*x) == b);

    // Inconsistency detection against the oracle.
    std::vector<Rational> b2 = b;
    b2[0] += 1;
    Matrix<Rational> aug(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
      aug(i, cols) = b2[i];
    }
    const bool solvable = oracles::naive_rank(aug) == oracles::naive_rank(a);
    REQUIRE(solve(a, b2).has_value() == solvable);
  }
}

TEST_CASE("nullspace vectors span the kernel") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 5);
    const auto a = random_matrix(rng, size(rng), size(rng));
    const auto basis = nullspace(a);
    REQUIRE(basis.size() == a.cols() - rank(a));
    for (const auto& v : basis) {
      const auto img = a.apply(v);
      for (const auto& x : img) REQUIRE(scalar_traits<Rational>::is_zero(x));
    }
  }
}

TEST_CASE("inverse round-trips") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(rng, 4, 4);
    const auto inv = inverse(a);
    if (!inv) {
      REQUIRE(rank(a) < 4);
      continue;
    }
    REQUIRE((a * (*inv)) == Matrix<Rational>::identity(4));
  }
}

TEST_CASE("approximate rank applies the relative pivot threshold") {
  ApproxReal::tolerance() = 1e-9;
  Matrix<ApproxReal> m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 1.0 + 1e-12;
  REQUIRE(rank(m) == 1);
  m(1, 1) = 1.0 + 1e-6;
  REQUIRE(rank(m) == 2);
}

TEST_CASE("positive definiteness checks") {
  Matrix<Rational> good(2, 2);
  good(0, 0) = 2;
  good(0, 1) = 1;
  good(1, 0) = 1;
  good(1, 1) = 2;
  REQUIRE(is_positive_definite(good));

  Matrix<Rational> bad = good;
  bad(1, 1) = -2;
  REQUIRE_FALSE(is_positive_definite(bad));

  Matrix<Rational> asym = good;
  asym(0, 1) = 3;
  REQUIRE_FALSE(is_positive_definite(asym));

  Matrix<ApproxReal> ag(2, 2);
  ag(0, 0) = 2.0;
  ag(0, 1) = 1.0;
  ag(1, 0) = 1.0;
  ag(1, 1) = 2.0;
  REQUIRE(is_positive_definite(ag));
  ag(1, 1) = 0.5;  // det = 2*0.5 - 1 = 0
  REQUIRE_FALSE(is_positive_definite(ag));
}

TEST_CASE("complexified scalars form a field") {
  using C = ComplexScalar<Rational>;
  const C i(Rational(0), Rational(1));
  REQUIRE(i * i == C(Rational(-1)));
  const C z(Rational(3), Rational(-2));
  REQUIRE(z / z == C(Rational(1)));
  REQUIRE((z * i) / i == z);
}
