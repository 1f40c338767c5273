#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "solvlck/cohomology.hpp"
#include "solvlck/errors.hpp"
#include "solvlck/exterior.hpp"
#include "solvlck/lie_algebra.hpp"
#include "solvlck/linalg.hpp"

namespace solvlck {

/// Absolute residual accepted by the harmonic-membership projection on the
/// approximate backend; two matrix solves compound the base tolerance.
inline constexpr double kHarmonicResidualTol = 1e-7;

template <class K>
struct ComplexStructure {
  Matrix<K> J;

  explicit ComplexStructure(Matrix<K> j) : J(std::move(j)) {
    const std::size_t n = J.rows();
    if (J.cols() != n) throw DimensionMismatch("J must be square");
    Matrix<K> sq = J * J;
    for (std::size_t i = 0; i < n; ++i) sq(i, i) += scalar_traits<K>::from_int(1);
    if (!sq.is_zero()) throw JNotAlmostComplex();
  }
};

template <class K>
struct InvariantMetric {
  Matrix<K> G;

  explicit InvariantMetric(Matrix<K> g) : G(std::move(g)) {
    if (G.rows() != G.cols()) throw DimensionMismatch("metric must be square");
    if (!is_positive_definite(G))
      throw NotPositiveDefinite("metric is not symmetric positive definite");
  }
};

template <class K>
K evaluate_two_form(const GradedForm<K>& omega, const std::vector<K>& x,
                    const std::vector<K>& y) {
  K r{};
  for (const auto& [mono, c] : omega.terms()) {
    const auto idx = mono.indices();
    r += c * (x[idx[0]] * y[idx[1]] - x[idx[1]] * y[idx[0]]);
  }
  return r;
}

template <class K>
bool is_nondegenerate(const GradedForm<K>& omega) {
  const std::size_t n = omega.dim();
  if (n % 2 != 0) return false;
  return !wedge_power(omega, n / 2).is_zero();
}

template <class K>
struct LeeFormResult {
  GradedForm<K> theta;
  bool unique = true;
};

/// The closed one-form theta with d(omega) = theta ^ omega for a
/// nondegenerate omega. Wedging with omega is injective on one-forms for a
/// nondegenerate two-form, so the solution is unique whenever it exists; the
/// non-unique branch keeps the elimination's minimal-support closed solution
/// and flags it.
template <class K>
LeeFormResult<K> lee_form(const LieAlgebra<K>& g, const GradedForm<K>& omega) {
  if (omega.dim() != g.dim() || omega.grade() != 2)
    throw DimensionMismatch("omega must be a two-form on g");
  if (g.dim() % 2 != 0) throw OddDimension();
  if (!is_nondegenerate(omega)) throw DegenerateForm();

  GradedForm<K> dw = g.d(omega);
  const Matrix<K> wedge_om = wedge_operator(omega, 1);
  auto sol = solve(wedge_om, dw.coefficient_vector());
  if (!sol) throw NoLeeForm();

  const std::size_t kernel = wedge_om.cols() - rank(wedge_om);
  if (kernel == 0) {
    GradedForm<K> theta = GradedForm<K>::from_coefficient_vector(g.dim(), 1, *sol);
    if (!is_closed(g, theta)) throw LeeFormNotClosed();
    return {std::move(theta), true};
  }

  // Solution affine space is positive-dimensional: require closedness as
  // extra equations and return the elimination's solution, flagged.
  const Matrix<K> stacked = vstack(wedge_om, g.ce_differential(1));
  std::vector<K> rhs = dw.coefficient_vector();
  rhs.resize(stacked.rows());
  auto closed_sol = solve(stacked, rhs);
  if (!closed_sol) throw LeeFormNotClosed();
  return {GradedForm<K>::from_coefficient_vector(g.dim(), 1, *closed_sol), false};
}

/// Checks d theta = 0, d omega = theta ^ omega and omega^(dim/2) != 0.
template <class K>
bool is_lcs(const LieAlgebra<K>& g, const GradedForm<K>& omega,
            const GradedForm<K>& theta) {
  if (g.dim() % 2 != 0) throw OddDimension();
  if (omega.dim() != g.dim() || omega.grade() != 2 || theta.dim() != g.dim() ||
      theta.grade() != 1)
    throw DimensionMismatch("expected a two-form and a one-form on g");
  if (!is_closed(g, theta)) return false;
  if (!(g.d(omega) == wedge(theta, omega))) return false;
  return is_nondegenerate(omega);
}

/// Nijenhuis tensor N(X, Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY] on
/// basis pairs; component k of N(e_i, e_j) sits at (i, j, k).
template <class K>
class NijenhuisTensor {
 public:
  NijenhuisTensor(std::size_t dim) : dim_(dim), data_(dim * dim * dim) {}
  const K& at(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  K& at(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  std::size_t dim() const { return dim_; }
  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const K& x) { return scalar_traits<K>::is_zero(x); });
  }

 private:
  std::size_t dim_;
  std::vector<K> data_;
};

template <class K>
NijenhuisTensor<K> nijenhuis(const LieAlgebra<K>& g, const ComplexStructure<K>& J) {
  const std::size_t n = g.dim();
  if (J.J.rows() != n) throw DimensionMismatch("J dimension mismatch");
  NijenhuisTensor<K> t(n);
  auto col = [&](std::size_t i) {
    std::vector<K> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = J.J(k, i);
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<K> ei(n), ej(n);
      ei[i] = scalar_traits<K>::from_int(1);
      ej[j] = scalar_traits<K>::from_int(1);
      const std::vector<K> ji = col(i), jj = col(j);
      std::vector<K> r = g.bracket(ji, jj);
      const std::vector<K> b1 = g.bracket(ei, ej);
      const std::vector<K> b2 = J.J.apply(g.bracket(ji, ej));
      const std::vector<K> b3 = J.J.apply(g.bracket(ei, jj));
      for (std::size_t k = 0; k < n; ++k) {
        r[k] = r[k] - b1[k] - b2[k] - b3[k];
        t.at(i, j, k) = r[k];
        t.at(j, i, k) = -r[k];
      }
    }
  return t;
}

template <class K>
bool is_integrable(const LieAlgebra<K>& g, const ComplexStructure<K>& J) {
  return nijenhuis(g, J).is_zero();
}

/// G(X, Y) = omega(X, JY); requires omega J-invariant, errors when the
/// result is not positive definite.
template <class K>
InvariantMetric<K> metric_from(const LieAlgebra<K>& g, const GradedForm<K>& omega,
                               const ComplexStructure<K>& J) {
  const std::size_t n = g.dim();
  if (omega.dim() != n || omega.grade() != 2)
    throw DimensionMismatch("omega must be a two-form on g");
  auto jcol = [&](std::size_t i) {
    std::vector<K> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = J.J(k, i);
    return v;
  };
  std::vector<std::vector<K>> basis(n, std::vector<K>(n));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = scalar_traits<K>::from_int(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(evaluate_two_form(omega, jcol(i), jcol(j)) ==
            evaluate_two_form(omega, basis[i], basis[j])))
        throw NotJInvariant();
  Matrix<K> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = evaluate_two_form(omega, basis[i], jcol(j));
  if (!is_positive_definite(m)) throw NotPositiveDefinite("omega(-, J-) is not positive");
  return InvariantMetric<K>(std::move(m));
}

enum class ObstructionVerdict { kNoVaismanPossible, kInconclusive };

/// Invariant-level certificate that no Vaisman metric is compatible with the
/// given LCS pair: on a meta-abelian algebra with dim [g,g] > dim g / 2 the
/// class of omega in the twisted complex cannot vanish, which contradicts
/// the vanishing forced by a Vaisman structure.
template <class K>
struct ObstructionCertificate {
  MetaAbelianSplit<K> split;  // reduced split actually used
  std::size_t trivial_part_dim = 0;
  std::size_t dim_g = 0;
  std::size_t dim_derived = 0;
  bool hypothesis_ok = false;  // dim_derived > dim_g / 2
  GradedForm<K> theta;
  GradedForm<K> omega_prime;         // component in L2 a* + a* ^ n*
  GradedForm<K> omega_double_prime;  // component in L2 n*
  bool omega_dpp_nonzero = false;
  bool theta_in_a = false;
  bool containment_ok = false;  // d_theta(L1 g*) inside L2 a* + a* ^ n*
  bool d_theta_exact = false;
  std::optional<GradedForm<K>> witness;
  ObstructionVerdict verdict = ObstructionVerdict::kInconclusive;
};

template <class K>
ObstructionCertificate<K> vaisman_obstruction(const LieAlgebra<K>& g,
                                              const MetaAbelianSplit<K>& split,
                                              const GradedForm<K>& omega,
                                              const GradedForm<K>& theta) {
  if (!is_lcs(g, omega, theta))
    throw PreconditionError("(omega, theta) is not an LCS pair on g");
  SplitCheckResult<K> reduced = split_check(g, split);

  ObstructionCertificate<K> cert;
  cert.split = reduced.reduced;
  cert.trivial_part_dim = reduced.trivial_part_dim;
  cert.dim_g = g.dim();
  cert.dim_derived = g.derived_dim();
  cert.hypothesis_ok = 2 * cert.dim_derived > cert.dim_g;
  cert.theta = theta;

  std::uint64_t n_mask = 0;
  for (const auto& b : cert.split.blocks)
    for (std::size_t i : b.indices) n_mask |= std::uint64_t{1} << i;

  cert.omega_prime = GradedForm<K>(g.dim(), 2);
  cert.omega_double_prime = GradedForm<K>(g.dim(), 2);
  for (const auto& [mono, c] : omega.terms()) {
    if ((mono.bits & n_mask) == mono.bits)
      cert.omega_double_prime.add(mono, c);
    else
      cert.omega_prime.add(mono, c);
  }
  cert.omega_dpp_nonzero = !cert.omega_double_prime.is_zero();

  cert.theta_in_a = true;
  for (const auto& [mono, c] : theta.terms())
    if (mono.bits & n_mask) cert.theta_in_a = false;

  cert.containment_ok = true;
  for (std::size_t k = 0; k < g.dim() && cert.containment_ok; ++k) {
    GradedForm<K> dk = g.d_basis_one_form(k) -
                       wedge(theta, GradedForm<K>::basis_one_form(g.dim(), k));
    for (const auto& [mono, c] : dk.terms())
      if ((mono.bits & n_mask) == mono.bits) cert.containment_ok = false;
  }

  ExactnessResult<K> ex = twisted_exactness(g, theta, omega);
  cert.d_theta_exact = ex.exact;
  cert.witness = std::move(ex.witness);

  cert.verdict = (cert.hypothesis_ok && cert.omega_dpp_nonzero && !cert.d_theta_exact)
                     ? ObstructionVerdict::kNoVaismanPossible
                     : ObstructionVerdict::kInconclusive;
  return cert;
}

/// Basis of the harmonic space ker d ∩ ker delta in grade p, where delta is
/// the metric adjoint Gram_{p-1}^{-1} D_{p-1}^T Gram_p and the Gram matrices
/// come from the inverse metric on the dual basis.
template <class K>
std::vector<GradedForm<K>> harmonic_basis(const LieAlgebra<K>& g,
                                          const InvariantMetric<K>& metric,
                                          std::size_t p) {
  if (!g.is_unimodular()) throw NotUnimodular();
  const std::size_t n = g.dim();
  auto ginv = inverse(metric.G);
  if (!ginv) throw NotPositiveDefinite("metric is singular");

  Matrix<K> stacked = g.ce_differential(p);
  if (p >= 1) {
    const Matrix<K> gram_p = gram_matrix(*ginv, p);
    const Matrix<K> gram_pm1 = gram_matrix(*ginv, p - 1);
    auto gram_pm1_inv = inverse(gram_pm1);
    const Matrix<K> delta = (*gram_pm1_inv) * g.ce_differential(p - 1).transposed() * gram_p;
    stacked = vstack(stacked, delta);
  }
  std::vector<GradedForm<K>> basis;
  for (const auto& v : nullspace(stacked))
    basis.push_back(GradedForm<K>::from_coefficient_vector(n, p, v));
  return basis;
}

template <class K>
struct FormalityResult {
  bool formal = true;
  std::optional<std::pair<GradedForm<K>, GradedForm<K>>> failing_pair;
};

namespace detail {

/// Membership of w in the span of the columns of H, measured in the Gram
/// inner product of the ambient grade: exact backends demand a consistent
/// system, approximate ones accept a projection residual below
/// kHarmonicResidualTol.
template <class K>
bool in_span(const Matrix<K>& h, const Matrix<K>& gram, const std::vector<K>& w) {
  if (h.cols() == 0) {
    for (const K& x : w)
      if (!scalar_traits<K>::is_zero(x)) return false;
    return true;
  }
  const Matrix<K> ht = h.transposed();
  const Matrix<K> normal = ht * gram * h;
  auto inv = inverse(normal);
  if (!inv) return false;  // harmonic basis is Gram-independent, so no
  std::vector<K> rhs = (ht * gram).apply(w);
  std::vector<K> coeff = inv->apply(rhs);
  std::vector<K> residual = h.apply(coeff);
  for (std::size_t i = 0; i < w.size(); ++i) residual[i] = residual[i] - w[i];
  if constexpr (scalar_traits<K>::is_exact) {
    return std::all_of(residual.begin(), residual.end(),
                       [](const K& x) { return scalar_traits<K>::is_zero(x); });
  } else {
    double norm2 = 0.0;
    K q{};
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j)
        q += residual[i] * gram(i, j) * residual[j];
    norm2 = scalar_traits<K>::magnitude(q);
    return norm2 <= kHarmonicResidualTol * kHarmonicResidualTol;
  }
}

}  // namespace detail

/// A metric is formal when wedge products of harmonic forms stay harmonic.
/// Pairs are scanned by (grade p <= grade q, then basis positions); the
/// first failure is reported.
template <class K>
FormalityResult<K> formality_check(const LieAlgebra<K>& g,
                                   const InvariantMetric<K>& metric) {
  const std::size_t n = g.dim();
  auto ginv = inverse(metric.G);
  std::vector<std::vector<GradedForm<K>>> harm;
  std::vector<Matrix<K>> gram;
  for (std::size_t p = 0; p <= n; ++p) {
    harm.push_back(harmonic_basis(g, metric, p));
    gram.push_back(gram_matrix(*ginv, p));
  }
  for (std::size_t p = 1; p <= n; ++p)
    for (std::size_t q = p; p + q <= n; ++q)
      for (std::size_t i = 0; i < harm[p].size(); ++i)
        for (std::size_t j = (p == q ? i : 0); j < harm[q].size(); ++j) {
          const GradedForm<K> w = wedge(harm[p][i], harm[q][j]);
          Matrix<K> h(binomial(n, p + q), harm[p + q].size());
          for (std::size_t col = 0; col < harm[p + q].size(); ++col) {
            const auto v = harm[p + q][col].coefficient_vector();
            for (std::size_t row = 0; row < v.size(); ++row) h(row, col) = v[row];
          }
          if (!detail::in_span(h, gram[p + q], w.coefficient_vector()))
            return {false, std::make_pair(harm[p][i], harm[q][j])};
        }
  return {true, std::nullopt};
}

}  // namespace solvlck
