// Test-only reference implementations, deliberately independent of the
// library's elimination path: determinants by Laplace expansion, rank as the
// size of the largest nonsingular minor, and plain subset enumeration.
#pragma once

#include <cstddef>
#include <vector>

#include "solvlck/linalg.hpp"
#include "solvlck/scalar.hpp"

namespace oracles {

template <class K>
K naive_determinant(const solvlck::Matrix<K>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return solvlck::scalar_traits<K>::from_int(1);
  if (n == 1) return m(0, 0);
  K det{};
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    solvlck::Matrix<K> sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        sub(i - 1, cc++) = m(i, j);
      }
    }
    K term = m(0, c) * naive_determinant(sub);
    if (sign < 0) term = -term;
    det += term;
    sign = -sign;
  }
  return det;
}

inline void subsets_of_size(std::size_t n, std::size_t k,
                            std::vector<std::vector<std::size_t>>& out,
                            std::vector<std::size_t>& cur, std::size_t start) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_of_size(n, k, out, cur, i + 1);
    cur.pop_back();
  }
}

/// All k-subsets of [0, n) in lexicographic order.
inline std::vector<std::vector<std::size_t>> lex_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets_of_size(n, k, out, cur, 0);
  return out;
}

/// Rank as the largest k admitting a k x k minor with nonzero determinant.
template <class K>
std::size_t naive_rank(const solvlck::Matrix<K>& m) {
  const std::size_t maxk = std::min(m.rows(), m.cols());
  for (std::size_t k = maxk; k >= 1; --k) {
    for (const auto& rows : lex_subsets(m.rows(), k))
      for (const auto& cols : lex_subsets(m.cols(), k)) {
        solvlck::Matrix<K> sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
        if (!solvlck::scalar_traits<K>::is_zero(naive_determinant(sub))) return k;
      }
  }
  return 0;
}

}  // namespace oracles
