#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "solvlck/lie_algebra.hpp"
#include "solvlck/ot_structure.hpp"

using namespace solvlck;
using fixtures::form;

TEST_CASE("abelian and Heisenberg algebras validate") {
  REQUIRE_NOTHROW(fixtures::abelian<Rational>(4));
  REQUIRE_NOTHROW(fixtures::heisenberg<Rational>());
}

TEST_CASE("antisymmetry violations are reported with the offending pair") {
  std::vector<Rational> c(27);
  c[(0 * 3 + 1) * 3 + 0] = 1;  // c_121 = 1 without the matching -1
  try {
    LieAlgebra<Rational> g(3, std::move(c));
    FAIL("expected AntisymmetryViolation");
  } catch (const AntisymmetryViolation& e) {
    REQUIRE(e.i == 0);
    REQUIRE(e.j == 1);
    REQUIRE(std::string(e.what()).find("antisymmetry violated") != std::string::npos);
  }
}

TEST_CASE("Jacobi violations are reported") {
  // [x,y] = z, [x,z] = z, [y,z] = x fails Jacobi on (x,y,z).
  std::vector<Rational> c(27);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, int v) {
    c[(i * 3 + j) * 3 + k] = v;
    c[(j * 3 + i) * 3 + k] = -v;
  };
  set(0, 1, 2, 1);
  set(0, 2, 2, 1);
  set(1, 2, 0, 1);
  REQUIRE_THROWS_AS(LieAlgebra<Rational>(3, std::move(c)), JacobiViolation);
}

TEST_CASE("Chevalley-Eilenberg differential follows d(eta)(X,Y) = -eta([X,Y])") {
  SECTION("abelian: zero in every grade") {
    const auto g = fixtures::abelian<Rational>(4);
    for (std::size_t p = 0; p <= 4; ++p) REQUIRE(g.ce_differential(p).is_zero());
  }
  SECTION("Heisenberg: dz* = -x* ^ y*") {
    const auto g = fixtures::heisenberg<Rational>();
    const auto dz = g.d(GradedForm<Rational>::basis_one_form(3, 2));
    REQUIRE(dz == form<Rational>(3, {{{0, 1}, Rational(-1)}}, 2));
  }
  SECTION("Inoue S0: d beta = -alpha ^ beta, d gamma per the weight block") {
    const Rational c(7, 3);
    const auto built = fixtures::inoue_s0<Rational>(c);
    const auto& g = built.algebra;
    const auto alpha = GradedForm<Rational>::basis_one_form(4, 0);
    const auto beta = GradedForm<Rational>::basis_one_form(4, 1);
    const auto g1 = GradedForm<Rational>::basis_one_form(4, 2);
    const auto g2 = GradedForm<Rational>::basis_one_form(4, 3);

    REQUIRE(g.d(beta) == -wedge(alpha, beta));
    // d g1 = (1/2) alpha ^ g1 + c alpha ^ g2, d g2 = -c alpha ^ g1 + (1/2) alpha ^ g2
    REQUIRE(g.d(g1) == Rational(1, 2) * wedge(alpha, g1) + c * wedge(alpha, g2));
    REQUIRE(g.d(g2) == -c * wedge(alpha, g1) + Rational(1, 2) * wedge(alpha, g2));
  }
}

TEST_CASE("d squares to zero on random semidirect builds") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const auto built = fixtures::random_meta_abelian<Rational>(rng);
    const auto& g = built.algebra;
    for (std::size_t p = 0; p + 2 <= g.dim(); ++p)
      REQUIRE((g.ce_differential(p + 1) * g.ce_differential(p)).is_zero());
  }
}

TEST_CASE("derived dimension") {
  REQUIRE(fixtures::abelian<Rational>(3).derived_dim() == 0);
  REQUIRE(fixtures::heisenberg<Rational>().derived_dim() == 1);
  for (std::size_t s : {1u, 2u})
    for (std::size_t t : {1u, 2u}) {
      Matrix<Rational> b(s, t), c(s, t);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < t; ++k) {
          b(i, k) = -1;
          c(i, k) = Rational(static_cast<long long>(i + k + 1));
        }
      const auto ot = ot_structure<Rational>(s, t, b, c);
      REQUIRE(ot.algebra.derived_dim() == 2 * t + s);
    }
}

TEST_CASE("unimodularity") {
  REQUIRE(fixtures::abelian<Rational>(3).is_unimodular());

  const auto ot = fixtures::inoue_s0<Rational>(Rational(1));
  REQUIRE(ot.algebra.is_unimodular());

  const auto ot21 = ot_surrogate<Rational>(2, {Rational(1), Rational(2)});
  REQUIRE(ot21.algebra.is_unimodular());
  // Direct trace oracle along the abelian directions.
  for (std::size_t i = 0; i < 2; ++i) {
    Rational tr;
    const auto ad = ot21.algebra.ad(i);
    for (std::size_t k = 0; k < ot21.algebra.dim(); ++k) tr += ad(k, k);
    REQUIRE(tr == 0);
  }

  std::vector<Rational> c(8);
  c[(0 * 2 + 1) * 2 + 1] = 1;
  c[(1 * 2 + 0) * 2 + 1] = -1;  // [x, y] = y
  REQUIRE_FALSE(LieAlgebra<Rational>(2, std::move(c)).is_unimodular());
}

TEST_CASE("unimodularity is invariant under basis permutation") {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const auto built = fixtures::random_meta_abelian<Rational>(rng);
    const auto& g = built.algebra;
    const std::size_t n = g.dim();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Rational> c(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          c[(perm[i] * n + perm[j]) * n + perm[k]] = g.c(i, j, k);
    const LieAlgebra<Rational> permuted(n, std::move(c));
    REQUIRE(permuted.is_unimodular() == g.is_unimodular());
  }
}

TEST_CASE("nilpotency") {
  REQUIRE(fixtures::heisenberg<Rational>().is_nilpotent());
  REQUIRE(fixtures::abelian<Rational>(5).is_nilpotent());
  REQUIRE_FALSE(fixtures::inoue_s0<Rational>(Rational(2)).algebra.is_nilpotent());
  REQUIRE_FALSE(fixtures::sol_algebra<Rational>().algebra.is_nilpotent());
}

TEST_CASE("build_meta_abelian") {
  SECTION("no blocks gives abelian R^m") {
    const auto built = build_meta_abelian<Rational>(3, {});
    REQUIRE(built.algebra.dim() == 3);
    REQUIRE(built.algebra.derived_dim() == 0);
  }
  SECTION("Inoue S0 brackets") {
    const Rational c(2);
    const auto built = fixtures::inoue_s0<Rational>(c);
    const auto& g = built.algebra;
    REQUIRE(g.c(0, 1, 1) == 1);                 // [t, x] = x
    REQUIRE(g.c(0, 2, 2) == Rational(-1, 2));   // [t, g1] = -g1/2 + c g2
    REQUIRE(g.c(0, 2, 3) == c);
    REQUIRE(g.c(0, 3, 2) == -c);                // [t, g2] = -c g1 - g2/2
    REQUIRE(g.c(0, 3, 3) == Rational(-1, 2));
    REQUIRE(g.derived_dim() == 3);
  }
  SECTION("real blocks with rotation parts are rejected") {
    BlockSpec<Rational> bad{false, {Rational(1)}, {Rational(1)}};
    REQUIRE_THROWS_AS(build_meta_abelian<Rational>(1, {bad}), MalformedBlockSpec);
  }
}

TEST_CASE("OT(2,1) build matches the paper's t = 1 block weights") {
  // m = 2, real blocks lambda = (1,0), (0,1), complex block
  // lambda = (-1/2, -1/2), mu = (c1, c2).
  const auto ot = ot_surrogate<Rational>(2, {Rational(1), Rational(2)});
  const auto& split = ot.split;
  REQUIRE(split.a_indices == std::vector<std::size_t>{0, 1});
  REQUIRE(split.blocks.size() == 3);
  REQUIRE(split.blocks[0].lambda == std::vector<Rational>{1, 0});
  REQUIRE(split.blocks[1].lambda == std::vector<Rational>{0, 1});
  REQUIRE(split.blocks[2].complex_pair);
  REQUIRE(split.blocks[2].lambda == std::vector<Rational>{Rational(-1, 2), Rational(-1, 2)});
  REQUIRE(split.blocks[2].mu == std::vector<Rational>{1, 2});
}

TEST_CASE("split validation and reduction") {
  SECTION("Inoue split passes unchanged") {
    const auto built = fixtures::inoue_s0<Rational>(Rational(3));
    const auto r = split_check(built.algebra, built.split);
    REQUIRE(r.trivial_part_dim == 0);
    REQUIRE(r.reduced.blocks.size() == built.split.blocks.size());
  }
  SECTION("zero-weight block moves to the abelian factor") {
    BlockSpec<Rational> live{false, {Rational(1)}, {}};
    BlockSpec<Rational> dead{false, {Rational(0)}, {}};
    const auto built = build_meta_abelian<Rational>(1, {live, dead});
    const auto r = split_check(built.algebra, built.split);
    REQUIRE(r.trivial_part_dim == 1);
    REQUIRE(r.reduced.a_indices == std::vector<std::size_t>{0, 2});
    REQUIRE(r.reduced.blocks.size() == 1);
  }
  SECTION("OT(s,t) reduces to n' = 2t + s") {
    Matrix<Rational> b(1, 2), c(1, 2);
    b(0, 0) = -2;
    b(0, 1) = 1;
    c(0, 0) = 1;
    c(0, 1) = 3;
    const auto ot = ot_structure<Rational>(1, 2, b, c);
    const auto r = split_check(ot.algebra, ot.split);
    std::size_t nprime = 0;
    for (const auto& blk : r.reduced.blocks) nprime += blk.indices.size();
    REQUIRE(nprime == 2 * 2 + 1);
    REQUIRE(nprime == ot.algebra.derived_dim());
  }
  SECTION("splits inconsistent with the brackets are rejected") {
    const auto built = fixtures::inoue_s0<Rational>(Rational(1));
    auto split = built.split;
    split.blocks[0].lambda[0] = Rational(5);
    REQUIRE_THROWS_AS(validate_split(built.algebra, split), SplitInconsistent);
  }
}

TEST_CASE("d preserves the a-degree filtration on meta-abelian builds") {
  // d(L^p a* x L^q n*) stays inside L^{p+1} a* x L^q n*.
  std::mt19937 rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const auto built = fixtures::random_meta_abelian<Rational>(rng);
    const auto& g = built.algebra;
    std::uint64_t a_mask = 0;
    for (std::size_t i : built.split.a_indices) a_mask |= std::uint64_t{1} << i;
    for (std::size_t p = 0; p < g.dim(); ++p)
      for (std::size_t r = 0; r < binomial(g.dim(), p); ++r) {
        const Monomial mono = monomial_unrank(r, g.dim(), p);
        const auto image = g.d(GradedForm<Rational>::from_monomial(
            g.dim(), mono, Rational(1)));
        const auto a_deg = std::popcount(mono.bits & a_mask);
        const auto n_deg = std::popcount(mono.bits & ~a_mask);
        for (const auto& [m2, c2] : image.terms()) {
          REQUIRE(std::popcount(m2.bits & a_mask) == a_deg + 1);
          REQUIRE(std::popcount(m2.bits & ~a_mask) == n_deg);
        }
      }
  }
}

TEST_CASE("after split_check the closed one-forms are exactly L^1 a*") {
  std::mt19937 rng(303);
  int checked = 0;
  while (checked < 15) {
    const auto built = fixtures::random_meta_abelian<Rational>(rng);
    // Keep only builds whose blocks all carry nonzero weight.
    bool all_live = true;
    for (const auto& b : built.split.blocks) {
      const bool zero =
          std::all_of(b.lambda.begin(), b.lambda.end(),
                      [](const Rational& x) { return x.is_zero(); }) &&
          std::all_of(b.mu.begin(), b.mu.end(),
                      [](const Rational& x) { return x.is_zero(); });
      if (zero) all_live = false;
    }
    if (!all_live) continue;
    ++checked;
    const auto& g = built.algebra;
    const auto r = split_check(g, built.split);
    const auto d1 = g.ce_differential(1);
    REQUIRE(g.dim() - rank(d1) == r.reduced.a_indices.size());
    for (std::size_t i : r.reduced.a_indices)
      REQUIRE(g.d(GradedForm<Rational>::basis_one_form(g.dim(), i)).is_zero());
  }
}
