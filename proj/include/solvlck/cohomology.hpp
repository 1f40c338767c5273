#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "solvlck/errors.hpp"
#include "solvlck/exterior.hpp"
#include "solvlck/lie_algebra.hpp"
#include "solvlck/linalg.hpp"
#include "solvlck/scalar.hpp"

namespace solvlck {

/// Differentials, ranks and Betti numbers of (Lambda g*, D) for an
/// arbitrary degree-+1 differential D given per grade.
template <class K>
struct ComplexSnapshot {
  std::vector<Matrix<K>> differentials;  // index p: Lambda^p -> Lambda^{p+1}
  std::vector<std::size_t> space_dims;   // C(n, p)
  std::vector<std::size_t> ranks;        // rank of differentials[p]
  std::vector<std::size_t> betti;        // nullity_p - rank_{p-1}
};

template <class K>
ComplexSnapshot<K> snapshot_from_differentials(std::size_t n,
                                               std::vector<Matrix<K>> diffs) {
  ComplexSnapshot<K> s;
  s.differentials = std::move(diffs);
  for (std::size_t p = 0; p <= n; ++p) {
    s.space_dims.push_back(binomial(n, p));
    s.ranks.push_back(rank(s.differentials[p]));
  }
  for (std::size_t p = 0; p <= n; ++p) {
    const std::size_t nullity = s.space_dims[p] - s.ranks[p];
    s.betti.push_back(nullity - (p == 0 ? 0 : s.ranks[p - 1]));
  }
  return s;
}

template <class K>
ComplexSnapshot<K> snapshot(const LieAlgebra<K>& g) {
  std::vector<Matrix<K>> diffs;
  for (std::size_t p = 0; p <= g.dim(); ++p) diffs.push_back(g.ce_differential(p));
  return snapshot_from_differentials(g.dim(), std::move(diffs));
}

template <class K>
std::vector<std::size_t> betti(const LieAlgebra<K>& g) {
  return snapshot(g).betti;
}

template <class K>
bool is_closed(const LieAlgebra<K>& g, const GradedForm<K>& form) {
  return g.d(form).is_zero();
}

/// Snapshot of the twisted complex with d_theta = d - theta ^ . for a closed
/// one-form theta.
template <class K>
ComplexSnapshot<K> snapshot_twisted(const LieAlgebra<K>& g, const GradedForm<K>& theta) {
  if (theta.dim() != g.dim() || theta.grade() != 1)
    throw DimensionMismatch("theta must be a one-form on g");
  if (!is_closed(g, theta)) throw ThetaNotClosed();
  std::vector<Matrix<K>> diffs;
  for (std::size_t p = 0; p <= g.dim(); ++p) {
    Matrix<K> d = g.ce_differential(p);
    const Matrix<K> t = wedge_operator(theta, p);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = d(i, j) - t(i, j);
    diffs.push_back(std::move(d));
  }
  return snapshot_from_differentials(g.dim(), std::move(diffs));
}

template <class K>
std::vector<std::size_t> twisted_cohomology(const LieAlgebra<K>& g,
                                            const GradedForm<K>& theta) {
  return snapshot_twisted(g, theta).betti;
}

template <class K>
struct ExactnessResult {
  bool exact = false;
  std::optional<GradedForm<K>> witness;  // eta with d_theta eta = omega
};

/// Decides whether a d_theta-closed two-form is d_theta-exact, producing the
/// elimination's witness (free variables zero, pivots on the lowest monomial
/// ranks available) when it is.
template <class K>
ExactnessResult<K> twisted_exactness(const LieAlgebra<K>& g, const GradedForm<K>& theta,
                                     const GradedForm<K>& omega) {
  if (omega.dim() != g.dim() || omega.grade() != 2)
    throw DimensionMismatch("omega must be a two-form on g");
  ComplexSnapshot<K> s = snapshot_twisted(g, theta);  // checks d theta = 0
  const std::vector<K> w = omega.coefficient_vector();
  for (const K& x : s.differentials[2].apply(w))
    if (!scalar_traits<K>::is_zero(x)) throw OmegaNotDThetaClosed();
  auto x = solve(s.differentials[1], w);
  ExactnessResult<K> r;
  r.exact = x.has_value();
  if (x)
    r.witness = GradedForm<K>::from_coefficient_vector(g.dim(), 1, *x);
  return r;
}

/// Weight data of a character of g: the growth part lambda and the unitary
/// part mu are functionals on g (coefficient vectors against the basis),
/// both vanishing on [g, g].
template <class K>
struct CharacterWeight {
  std::vector<K> lambda;
  std::vector<K> mu;
  std::string name;
};

template <class K>
CharacterWeight<K> trivial_character(std::size_t dim) {
  return {std::vector<K>(dim), std::vector<K>(dim), "trivial"};
}

template <class K>
void validate_character(const LieAlgebra<K>& g, const CharacterWeight<K>& ch) {
  if (ch.lambda.size() != g.dim() || ch.mu.size() != g.dim())
    throw DimensionMismatch("character functional length mismatch");
  // Characters factor through the abelianization.
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      K l{}, m{};
      for (std::size_t k = 0; k < g.dim(); ++k) {
        l += ch.lambda[k] * g.c(i, j, k);
        m += ch.mu[k] * g.c(i, j, k);
      }
      if (!scalar_traits<K>::is_zero(l) || !scalar_traits<K>::is_zero(m))
        throw ValidationError("character does not vanish on [g, g]: " + ch.name);
    }
}

/// True when no block weight is purely unitary (lambda = 0 with mu != 0).
template <class K>
bool is_weakly_completely_solvable(const MetaAbelianSplit<K>& split) {
  for (const auto& b : split.blocks) {
    const bool lambda_zero =
        std::all_of(b.lambda.begin(), b.lambda.end(),
                    [](const K& x) { return scalar_traits<K>::is_zero(x); });
    const bool mu_zero = std::all_of(b.mu.begin(), b.mu.end(), [](const K& x) {
      return scalar_traits<K>::is_zero(x);
    });
    if (lambda_zero && !mu_zero) return false;
  }
  return true;
}

namespace detail {

/// Weight-diagonal frame of the complexified dual: a-duals and real-block
/// duals keep weight (lambda, 0); a complex pair (u, v) is replaced by
/// w = u + iv and conj(w) = u - iv with weights (lambda, +-mu).
template <class K>
struct WeightFrame {
  using C = ComplexScalar<K>;
  Matrix<C> to_weight;    // e^k = sum_j to_weight(k, j) f^j
  Matrix<C> from_weight;  // f^k = sum_j from_weight(k, j) e^j
  std::vector<std::vector<K>> lambda;  // per frame vector, functional on g
  std::vector<std::vector<K>> mu;
};

template <class K>
WeightFrame<K> weight_frame(const LieAlgebra<K>& g, const MetaAbelianSplit<K>& split) {
  using C = ComplexScalar<K>;
  const std::size_t n = g.dim();
  const K one = scalar_traits<K>::from_int(1);
  const K half = one / scalar_traits<K>::from_int(2);
  WeightFrame<K> fr;
  fr.to_weight = Matrix<C>(n, n);
  fr.from_weight = Matrix<C>(n, n);
  fr.lambda.assign(n, std::vector<K>(n));
  fr.mu.assign(n, std::vector<K>(n));

  for (std::size_t i : split.a_indices) {
    fr.to_weight(i, i) = C(one);
    fr.from_weight(i, i) = C(one);
  }
  for (const auto& b : split.blocks) {
    auto spread = [&](const std::vector<K>& weight) {
      std::vector<K> full(n);
      for (std::size_t ai = 0; ai < split.m(); ++ai)
        full[split.a_indices[ai]] = weight[ai];
      return full;
    };
    if (!b.complex_pair) {
      const std::size_t u = b.indices[0];
      fr.to_weight(u, u) = C(one);
      fr.from_weight(u, u) = C(one);
      fr.lambda[u] = spread(b.lambda);
    } else {
      const std::size_t u = b.indices[0], v = b.indices[1];
      // f^u = e^u + i e^v, f^v = e^u - i e^v.
      fr.from_weight(u, u) = C(one);
      fr.from_weight(u, v) = C(K{}, one);
      fr.from_weight(v, u) = C(one);
      fr.from_weight(v, v) = C(K{}, -one);
      // e^u = (f^u + f^v)/2, e^v = -i (f^u - f^v)/2.
      fr.to_weight(u, u) = C(half);
      fr.to_weight(u, v) = C(half);
      fr.to_weight(v, u) = C(K{}, -half);
      fr.to_weight(v, v) = C(K{}, half);
      fr.lambda[u] = spread(b.lambda);
      fr.mu[u] = spread(b.mu);
      fr.lambda[v] = spread(b.lambda);
      std::vector<K> neg = spread(b.mu);
      for (K& x : neg) x = -x;
      fr.mu[v] = std::move(neg);
    }
  }
  return fr;
}

template <class K>
bool weights_equal(const std::vector<K>& a, const std::vector<K>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace detail

/// Cohomology of the direct sum, over the supplied characters, of the
/// character-twisted weight subcomplexes: the frame monomials of T-weight
/// equal to the character carry the differential d + theta_alpha ^ . with
/// theta_alpha = lambda + i mu. Characters must be trivial on the lattice;
/// that is the caller's responsibility and is recorded upstream.
template <class K>
std::vector<std::size_t> character_cohomology(const LieAlgebra<K>& g,
                                              const MetaAbelianSplit<K>& split,
                                              const std::vector<CharacterWeight<K>>& chars) {
  using C = ComplexScalar<K>;
  validate_split(g, split);
  const std::size_t n = g.dim();
  const detail::WeightFrame<K> fr = detail::weight_frame(g, split);

  // Complexified exterior derivative on e-coordinates.
  std::vector<Matrix<C>> dmat;
  for (std::size_t p = 0; p <= n; ++p) {
    const Matrix<K> d = g.ce_differential(p);
    Matrix<C> dc(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) dc(i, j) = C(d(i, j));
    dmat.push_back(std::move(dc));
  }

  // Weight of each frame monomial, and frame monomials grouped per grade.
  auto monomial_weight = [&](const Monomial& m) {
    std::pair<std::vector<K>, std::vector<K>> w{std::vector<K>(n), std::vector<K>(n)};
    for (std::size_t idx : m.indices())
      for (std::size_t k = 0; k < n; ++k) {
        w.first[k] += fr.lambda[idx][k];
        w.second[k] += fr.mu[idx][k];
      }
    return w;
  };

  std::vector<std::size_t> total(n + 1, 0);
  for (const auto& ch : chars) {
    validate_character(g, ch);

    std::vector<std::vector<Monomial>> members(n + 1);
    bool any = false;
    for (std::size_t p = 0; p <= n; ++p)
      for (std::size_t r = 0; r < binomial(n, p); ++r) {
        const Monomial m = monomial_unrank(r, n, p);
        const auto w = monomial_weight(m);
        if (detail::weights_equal(w.first, ch.lambda) &&
            detail::weights_equal(w.second, ch.mu)) {
          members[p].push_back(m);
          any = true;
        }
      }
    if (!any) throw CharacterNotRealizable(ch.name);

    GradedForm<C> theta(n, 1);
    for (std::size_t k = 0; k < n; ++k)
      theta.add(Monomial(std::uint64_t{1} << k), C(ch.lambda[k], ch.mu[k]));

    // Per grade: express (d + theta ^ .) of each member frame monomial in
    // frame coordinates and restrict to the members of the next grade.
    std::vector<std::size_t> ranks(n + 1, 0);
    for (std::size_t p = 0; p <= n; ++p) {
      if (members[p].empty()) continue;
      const std::size_t rows = (p < n) ? members[p + 1].size() : 0;
      Matrix<C> dm(rows, members[p].size());
      for (std::size_t col = 0; col < members[p].size(); ++col) {
        GradedForm<C> f_mono =
            GradedForm<C>::from_monomial(n, members[p][col], C(scalar_traits<K>::from_int(1)));
        GradedForm<C> e_form = substitute_basis(f_mono, fr.from_weight);
        std::vector<C> v = e_form.coefficient_vector();
        std::vector<C> dv = dmat[p].apply(v);
        GradedForm<C> d_e = GradedForm<C>::from_coefficient_vector(n, p + 1, dv);
        d_e = d_e + wedge(theta, e_form);
        GradedForm<C> d_f = substitute_basis(d_e, fr.to_weight);
        for (std::size_t row = 0; rows > 0 && row < rows; ++row)
          dm(row, col) = d_f.coefficient(members[p + 1][row]);
        // The differential preserves T-weights; anything outside the member
        // set must vanish.
        GradedForm<C> residue = d_f;
        for (std::size_t row = 0; rows > 0 && row < rows; ++row)
          residue.add(members[p + 1][row], -d_f.coefficient(members[p + 1][row]));
        if (!residue.is_zero())
          throw SplitInconsistent("character complex left its weight space");
      }
      ranks[p] = rank(dm);
    }
    for (std::size_t p = 0; p <= n; ++p) {
      const std::size_t nullity = members[p].size() - ranks[p];
      total[p] += nullity - (p == 0 ? 0 : ranks[p - 1]);
    }
  }
  return total;
}

}  // namespace solvlck
