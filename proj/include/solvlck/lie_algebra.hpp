#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "solvlck/errors.hpp"
#include "solvlck/exterior.hpp"
#include "solvlck/linalg.hpp"
#include "solvlck/scalar.hpp"

namespace solvlck {

/// Finite-dimensional Lie algebra over K given by structure constants
/// [e_i, e_j] = sum_k c(i,j,k) e_k. Construction validates antisymmetry and
/// the Jacobi identity (exactly, or within tolerance * max|c| for the
/// approximate backend). Immutable afterwards.
///
/// The Chevalley-Eilenberg differential uses the convention
/// d(eta)(X, Y) = -eta([X, Y]) on one-forms, extended as a degree-+1
/// derivation of the exterior algebra.
template <class K>
class LieAlgebra {
 public:
  LieAlgebra(std::size_t dim, std::vector<K> structure_constants,
             std::vector<std::string> basis_names = {})
      : dim_(dim), c_(std::move(structure_constants)), names_(std::move(basis_names)) {
    if (c_.size() != dim_ * dim_ * dim_)
      throw ValidationError("brackets: coefficient array must be dim^3");
    if (names_.empty())
      for (std::size_t i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i + 1));
    if (names_.size() != dim_)
      throw ValidationError("basis: expected one name per basis vector");
    validate();
  }

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const std::vector<K>& structure_constants() const { return c_; }

  const K& c(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  std::vector<K> bracket(const std::vector<K>& x, const std::vector<K>& y) const {
    std::vector<K> r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (scalar_traits<K>::is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (scalar_traits<K>::is_zero(y[j])) continue;
        for (std::size_t k = 0; k < dim_; ++k) r[k] += x[i] * y[j] * c(i, j, k);
      }
    }
    return r;
  }

  Matrix<K> ad(std::size_t i) const {
    Matrix<K> m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) = c(i, j, k);
    return m;
  }

  /// d of the k-th dual basis one-form: -sum_{i<j} c(i,j,k) e^i ^ e^j.
  GradedForm<K> d_basis_one_form(std::size_t k) const {
    GradedForm<K> f(dim_, 2);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        f.add(Monomial((std::uint64_t{1} << i) | (std::uint64_t{1} << j)), -c(i, j, k));
    return f;
  }

  GradedForm<K> d(const GradedForm<K>& form) const {
    if (form.dim() != dim_) throw DimensionMismatch("form dimension mismatch");
    GradedForm<K> r(dim_, form.grade() + 1);
    for (const auto& [mono, coeff] : form.terms()) {
      const auto idx = mono.indices();
      for (std::size_t l = 0; l < idx.size(); ++l) {
        // d(e^I) = sum_l (-1)^l d(e^{i_l}) ^ e^{I minus i_l}; the two-form
        // d(e^{i_l}) commutes past the leading one-forms.
        Monomial rest(mono.bits & ~(std::uint64_t{1} << idx[l]));
        GradedForm<K> term = wedge(
            d_basis_one_form(idx[l]),
            GradedForm<K>::from_monomial(dim_, rest, scalar_traits<K>::from_int(1)));
        K s = coeff;
        if (l % 2 == 1) s = -s;
        r = r + s * term;
      }
    }
    return r;
  }

  /// Matrix of d : Lambda^p -> Lambda^{p+1} in monomial rank order.
  Matrix<K> ce_differential(std::size_t p) const {
    Matrix<K> m(binomial(dim_, p + 1), binomial(dim_, p));
    for (std::size_t col = 0; col < m.cols(); ++col) {
      const GradedForm<K> img =
          d(GradedForm<K>::from_monomial(dim_, monomial_unrank(col, dim_, p),
                                         scalar_traits<K>::from_int(1)));
      for (const auto& [mono, coeff] : img.terms())
        m(monomial_rank(mono, dim_), col) = coeff;
    }
    return m;
  }

  /// Dimension of the span of all brackets [e_i, e_j].
  std::size_t derived_dim() const {
    Matrix<K> m(dim_, dim_ * (dim_ - 1) / 2);
    std::size_t col = 0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j, ++col)
        for (std::size_t k = 0; k < dim_; ++k) m(k, col) = c(i, j, k);
    return rank(m);
  }

  bool is_unimodular() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      K tr{};
      for (std::size_t j = 0; j < dim_; ++j) tr += c(i, j, j);
      if (!scalar_traits<K>::is_zero(tr)) return false;
    }
    return true;
  }

  bool is_nilpotent() const {
    // Lower central series on column-space bases.
    std::vector<std::vector<K>> current;
    for (std::size_t i = 0; i < dim_; ++i) {
      std::vector<K> e(dim_);
      e[i] = scalar_traits<K>::from_int(1);
      current.push_back(std::move(e));
    }
    for (std::size_t step = 0; step <= dim_; ++step) {
      std::vector<std::vector<K>> next_gens;
      for (std::size_t i = 0; i < dim_; ++i) {
        std::vector<K> ei(dim_);
        ei[i] = scalar_traits<K>::from_int(1);
        for (const auto& v : current) next_gens.push_back(bracket(ei, v));
      }
      Matrix<K> m(dim_, next_gens.size());
      for (std::size_t cidx = 0; cidx < next_gens.size(); ++cidx)
        for (std::size_t r = 0; r < dim_; ++r) m(r, cidx) = next_gens[cidx][r];
      Elimination<K> e = eliminate(m);
      if (e.rank == 0) return true;
      if (e.rank == current.size()) return false;  // series stabilized above zero
      std::vector<std::vector<K>> reduced;
      for (std::size_t pc : e.pivot_cols) reduced.push_back(next_gens[pc]);
      current = std::move(reduced);
    }
    return false;
  }

 private:
  void validate() const {
    double scale = 1.0;
    if constexpr (!scalar_traits<K>::is_exact)
      for (const K& x : c_) scale = std::max(scale, scalar_traits<K>::magnitude(x));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          const K sum = c(i, j, k) + c(j, i, k);
          if constexpr (scalar_traits<K>::is_exact) {
            if (!scalar_traits<K>::is_zero(sum)) throw AntisymmetryViolation(i, j);
          } else {
            if (scalar_traits<K>::magnitude(sum) > ApproxReal::tolerance() * scale)
              throw AntisymmetryViolation(i, j);
          }
        }
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = j + 1; k < dim_; ++k)
          for (std::size_t l = 0; l < dim_; ++l) {
            K res{};
            for (std::size_t m = 0; m < dim_; ++m)
              res += c(j, k, m) * c(i, m, l) + c(k, i, m) * c(j, m, l) +
                     c(i, j, m) * c(k, m, l);
            const double mag = scalar_traits<K>::magnitude(res);
            if constexpr (scalar_traits<K>::is_exact) {
              if (!scalar_traits<K>::is_zero(res)) throw JacobiViolation(i, j, k, mag);
            } else {
              if (mag > ApproxReal::tolerance() * scale)
                throw JacobiViolation(i, j, k, mag);
            }
          }
  }

  std::size_t dim_;
  std::vector<K> c_;
  std::vector<std::string> names_;
};

/// One weight block of the normal abelian factor of a meta-abelian algebra
/// a |x n. A real block is a single n-basis line scaled by lambda(X); a
/// complex block is an ordered pair (u, v) on which ad X acts by
/// lambda(X) I + mu(X) rot with rot u = v, rot v = -u.
template <class K>
struct SplitBlock {
  bool complex_pair = false;
  std::vector<std::size_t> indices;  // one index, or an ordered pair
  std::vector<K> lambda;             // functional on a, length m
  std::vector<K> mu;                 // functional on a, length m (zero when real)
};

template <class K>
struct MetaAbelianSplit {
  std::vector<std::size_t> a_indices;
  std::vector<SplitBlock<K>> blocks;

  std::size_t m() const { return a_indices.size(); }
  std::vector<std::size_t> n_indices() const {
    std::vector<std::size_t> idx;
    for (const auto& b : blocks) idx.insert(idx.end(), b.indices.begin(), b.indices.end());
    return idx;
  }
};

/// Block request for build_meta_abelian: weights of one new n-block.
template <class K>
struct BlockSpec {
  bool complex_pair = false;
  std::vector<K> lambda;
  std::vector<K> mu;  // must be empty or all-zero for real blocks
};

template <class K>
struct BuiltAlgebra {
  LieAlgebra<K> algebra;
  MetaAbelianSplit<K> split;
};

/// Assembles R^m |x_phi R^n with phi block-diagonal semisimple: real blocks
/// scale by lambda(X), complex pairs act by lambda(X) I + mu(X) rot.
template <class K>
BuiltAlgebra<K> build_meta_abelian(std::size_t m, const std::vector<BlockSpec<K>>& specs,
                                   std::vector<std::string> basis_names = {}) {
  std::size_t n = 0;
  for (const auto& s : specs) n += s.complex_pair ? 2 : 1;
  const std::size_t dim = m + n;

  MetaAbelianSplit<K> split;
  for (std::size_t i = 0; i < m; ++i) split.a_indices.push_back(i);

  std::vector<K> c(dim * dim * dim);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> K& {
    return c[(i * dim + j) * dim + k];
  };
  auto set_pair = [&](std::size_t i, std::size_t j, std::size_t k, const K& v) {
    at(i, j, k) = v;
    at(j, i, k) = -v;
  };

  std::size_t next = m;
  for (const auto& s : specs) {
    if (s.lambda.size() != m)
      throw MalformedBlockSpec("lambda must have one entry per abelian direction");
    if (!s.mu.empty() && s.mu.size() != m)
      throw MalformedBlockSpec("mu must be empty or match lambda's length");
    std::vector<K> mu = s.mu.empty() ? std::vector<K>(m) : s.mu;
    if (!s.complex_pair)
      for (const K& x : mu)
        if (!scalar_traits<K>::is_zero(x))
          throw MalformedBlockSpec("real blocks must have mu = 0");

    SplitBlock<K> block;
    block.complex_pair = s.complex_pair;
    block.lambda = s.lambda;
    block.mu = mu;
    if (!s.complex_pair) {
      const std::size_t u = next++;
      block.indices = {u};
      for (std::size_t i = 0; i < m; ++i) set_pair(i, u, u, s.lambda[i]);
    } else {
      const std::size_t u = next++, v = next++;
      block.indices = {u, v};
      for (std::size_t i = 0; i < m; ++i) {
        set_pair(i, u, u, s.lambda[i]);
        set_pair(i, u, v, mu[i]);
        set_pair(i, v, u, -mu[i]);
        set_pair(i, v, v, s.lambda[i]);
      }
    }
    split.blocks.push_back(std::move(block));
  }

  return {LieAlgebra<K>(dim, std::move(c), std::move(basis_names)), std::move(split)};
}

/// Checks that the split matches the brackets of g.
template <class K>
void validate_split(const LieAlgebra<K>& g, const MetaAbelianSplit<K>& split) {
  const std::size_t dim = g.dim();
  std::vector<int> role(dim, -1);  // -1 unassigned, 0 a, 1 n
  for (std::size_t i : split.a_indices) {
    if (i >= dim || role[i] != -1) throw SplitInconsistent("a_indices not a partition");
    role[i] = 0;
  }
  for (const auto& b : split.blocks) {
    if (b.lambda.size() != split.m() || b.mu.size() != split.m())
      throw SplitInconsistent("block weight length mismatch");
    if (b.indices.size() != (b.complex_pair ? 2u : 1u))
      throw SplitInconsistent("block index count mismatch");
    for (std::size_t i : b.indices) {
      if (i >= dim || role[i] != -1) throw SplitInconsistent("indices not a partition");
      role[i] = 1;
    }
  }
  for (std::size_t i = 0; i < dim; ++i)
    if (role[i] == -1) throw SplitInconsistent("indices do not cover the algebra");

  auto expect = [&](std::size_t i, std::size_t j, std::size_t target, const K& v) {
    for (std::size_t k = 0; k < dim; ++k) {
      const K want = (k == target) ? v : K{};
      if (!(g.c(i, j, k) == want))
        throw SplitInconsistent("brackets disagree with the declared weights");
    }
  };
  auto expect2 = [&](std::size_t i, std::size_t j, std::size_t t1, const K& v1,
                     std::size_t t2, const K& v2) {
    for (std::size_t k = 0; k < dim; ++k) {
      K want{};
      if (k == t1) want += v1;
      if (k == t2) want += v2;
      if (!(g.c(i, j, k) == want))
        throw SplitInconsistent("brackets disagree with the declared weights");
    }
  };

  for (std::size_t a1 : split.a_indices)
    for (std::size_t a2 : split.a_indices)
      for (std::size_t k = 0; k < dim; ++k)
        if (!scalar_traits<K>::is_zero(g.c(a1, a2, k)))
          throw SplitInconsistent("[a, a] != 0");
  const auto nidx = split.n_indices();
  for (std::size_t u : nidx)
    for (std::size_t v : nidx)
      for (std::size_t k = 0; k < dim; ++k)
        if (!scalar_traits<K>::is_zero(g.c(u, v, k)))
          throw SplitInconsistent("[n, n] != 0");

  for (const auto& b : split.blocks) {
    for (std::size_t ai = 0; ai < split.m(); ++ai) {
      const std::size_t a = split.a_indices[ai];
      if (!b.complex_pair) {
        expect(a, b.indices[0], b.indices[0], b.lambda[ai]);
      } else {
        expect2(a, b.indices[0], b.indices[0], b.lambda[ai], b.indices[1], b.mu[ai]);
        expect2(a, b.indices[1], b.indices[0], -b.mu[ai], b.indices[1], b.lambda[ai]);
      }
    }
  }
}

template <class K>
struct SplitCheckResult {
  MetaAbelianSplit<K> reduced;
  std::size_t trivial_part_dim = 0;
};

/// Moves zero-weight blocks into the abelian factor, so the reduced normal
/// part carries no trivial submodule and has dimension derived_dim(g).
template <class K>
SplitCheckResult<K> split_check(const LieAlgebra<K>& g, const MetaAbelianSplit<K>& split) {
  validate_split(g, split);
  SplitCheckResult<K> r;
  r.reduced.a_indices = split.a_indices;
  std::size_t remaining = 0;
  for (const auto& b : split.blocks) {
    const bool zero_weight =
        std::all_of(b.lambda.begin(), b.lambda.end(),
                    [](const K& x) { return scalar_traits<K>::is_zero(x); }) &&
        std::all_of(b.mu.begin(), b.mu.end(),
                    [](const K& x) { return scalar_traits<K>::is_zero(x); });
    if (zero_weight) {
      for (std::size_t i : b.indices) r.reduced.a_indices.push_back(i);
      r.trivial_part_dim += b.indices.size();
    } else {
      r.reduced.blocks.push_back(b);
      remaining += b.indices.size();
    }
  }
  std::sort(r.reduced.a_indices.begin(), r.reduced.a_indices.end());
  if (remaining != g.derived_dim())
    throw SplitInconsistent("reduced normal factor does not match [g, g]");
  return r;
}

}  // namespace solvlck
