#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "solvlck/errors.hpp"
#include "solvlck/scalar.hpp"

namespace solvlck {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<K>::from_int(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& a = (*this)(i, k);
        if (scalar_traits<K>::is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix apply shape mismatch");
    std::vector<K> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool is_zero() const {
    for (const K& x : data_)
      if (!scalar_traits<K>::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
    throw DimensionMismatch("vstack column mismatch");
  const std::size_t cols = a.rows() == 0 ? b.cols() : a.cols();
  Matrix<K> r(a.rows() + b.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

/// Reduced row echelon data of a column-permuted copy of the input.
///
/// Exact backends pick the first nonzero pivot scanning columns left to
/// right, so pivot columns sit as far left as possible. Approximate backends
/// use complete pivoting: the remaining entry of largest magnitude, accepted
/// only above a relative threshold (tolerance * max(1, initial max entry)).
template <class K>
struct Elimination {
  Matrix<K> reduced;                     // RREF of input with columns permuted
  Matrix<K> rhs;                         // carried right-hand side (row ops only)
  std::vector<std::size_t> col_of_pos;   // permuted position -> original column
  std::vector<std::size_t> pivot_cols;   // original column per pivot row
  std::size_t rank = 0;
  double pivot_floor = 0.0;
};

template <class K>
Elimination<K> eliminate(Matrix<K> a, Matrix<K> rhs = Matrix<K>()) {
  const std::size_t m = a.rows(), n = a.cols();
  if (rhs.rows() == 0 && rhs.cols() == 0) rhs = Matrix<K>(m, 0);
  if (rhs.rows() != m) throw DimensionMismatch("eliminate rhs row mismatch");

  Elimination<K> e;
  e.col_of_pos.resize(n);
  std::iota(e.col_of_pos.begin(), e.col_of_pos.end(), std::size_t{0});

  if constexpr (!scalar_traits<K>::is_exact) {
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        scale = std::max(scale, scalar_traits<K>::magnitude(a(i, j)));
    e.pivot_floor = ApproxReal::tolerance() * std::max(1.0, scale);
  }

  std::size_t r = 0;
  while (r < m && r < n) {
    std::size_t pi = r, pj = r;
    bool found = false;
    if constexpr (scalar_traits<K>::is_exact) {
      for (std::size_t j = r; j < n && !found; ++j)
        for (std::size_t i = r; i < m; ++i)
          if (!scalar_traits<K>::is_zero(a(i, j))) {
            pi = i;
            pj = j;
            found = true;
            break;
          }
    } else {
      double best = e.pivot_floor;
      for (std::size_t j = r; j < n; ++j)
        for (std::size_t i = r; i < m; ++i) {
          const double mag = scalar_traits<K>::magnitude(a(i, j));
          if (mag > best) {
            best = mag;
            pi = i;
            pj = j;
            found = true;
          }
        }
    }
    if (!found) break;

    if (pi != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(pi, j));
      for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs(r, j), rhs(pi, j));
    }
    if (pj != r) {
      for (std::size_t i = 0; i < m; ++i) std::swap(a(i, r), a(i, pj));
      std::swap(e.col_of_pos[r], e.col_of_pos[pj]);
    }

    const K pivot = a(r, r);
    for (std::size_t j = r; j < n; ++j) a(r, j) = a(r, j) / pivot;
    for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(r, j) = rhs(r, j) / pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const K f = a(i, r);
      if (scalar_traits<K>::is_zero(f)) continue;
      for (std::size_t j = r; j < n; ++j) a(i, j) = a(i, j) - f * a(r, j);
      for (std::size_t j = 0; j < rhs.cols(); ++j)
        rhs(i, j) = rhs(i, j) - f * rhs(r, j);
    }
    e.pivot_cols.push_back(e.col_of_pos[r]);
    ++r;
  }
  e.rank = r;
  e.reduced = std::move(a);
  e.rhs = std::move(rhs);
  return e;
}

template <class K>
std::size_t rank(const Matrix<K>& a) {
  return eliminate(a).rank;
}

namespace detail {
template <class K>
bool residual_is_zero(const K& x, double floor) {
  if constexpr (scalar_traits<K>::is_exact)
    return scalar_traits<K>::is_zero(x);
  else
    return scalar_traits<K>::magnitude(x) <= std::max(floor, ApproxReal::tolerance());
}
}  // namespace detail

/// Solves A x = b; returns the elimination-determined solution (free
/// variables zero) or nullopt when inconsistent.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& a, const std::vector<K>& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve rhs length mismatch");
  Matrix<K> rhs(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) rhs(i, 0) = b[i];
  Elimination<K> e = eliminate(a, rhs);
  for (std::size_t i = e.rank; i < a.rows(); ++i)
    if (!detail::residual_is_zero(e.rhs(i, 0), e.pivot_floor)) return std::nullopt;
  std::vector<K> x(a.cols());
  for (std::size_t i = 0; i < e.rank; ++i) x[e.pivot_cols[i]] = e.rhs(i, 0);
  return x;
}

/// Basis of ker A, one vector per free column, ordered by original column
/// index of the free variable.
template <class K>
std::vector<std::vector<K>> nullspace(const Matrix<K>& a) {
  Elimination<K> e = eliminate(a);
  const std::size_t n = a.cols();
  std::vector<std::pair<std::size_t, std::size_t>> free_cols;  // (orig, pos)
  for (std::size_t pos = e.rank; pos < n; ++pos)
    free_cols.emplace_back(e.col_of_pos[pos], pos);
  std::sort(free_cols.begin(), free_cols.end());
  std::vector<std::vector<K>> basis;
  basis.reserve(free_cols.size());
  for (const auto& [orig, pos] : free_cols) {
    std::vector<K> v(n);
    v[orig] = scalar_traits<K>::from_int(1);
    for (std::size_t i = 0; i < e.rank; ++i)
      v[e.pivot_cols[i]] = -e.reduced(i, pos);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Elimination<K> e = eliminate(a, Matrix<K>::identity(n));
  if (e.rank != n) return std::nullopt;
  Matrix<K> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(e.col_of_pos[i], j) = e.rhs(i, j);
  return inv;
}

template <class K>
K determinant(Matrix<K> a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = a.rows();
  K det = scalar_traits<K>::from_int(1);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t pi = r;
    if constexpr (scalar_traits<K>::is_exact) {
      while (pi < n && scalar_traits<K>::is_zero(a(pi, r))) ++pi;
      if (pi == n) return K{};
    } else {
      for (std::size_t i = r + 1; i < n; ++i)
        if (scalar_traits<K>::magnitude(a(i, r)) > scalar_traits<K>::magnitude(a(pi, r)))
          pi = i;
      if (scalar_traits<K>::is_zero(a(pi, r))) return K{};
    }
    if (pi != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(pi, j));
      det = -det;
    }
    det = det * a(r, r);
    for (std::size_t i = r + 1; i < n; ++i) {
      const K f = a(i, r) / a(r, r);
      if (scalar_traits<K>::is_zero(f)) continue;
      for (std::size_t j = r; j < n; ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
  }
  return det;
}

/// Symmetric positive definiteness: leading principal minors for exact
/// scalars, LDL^T with a relative diagonal threshold for approximate ones.
template <class K>
bool is_positive_definite(const Matrix<K>& a) {
  if (a.rows() != a.cols()) return false;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(a(i, j) == a(j, i))) return false;
  if constexpr (scalar_traits<K>::is_exact) {
    for (std::size_t k = 1; k <= n; ++k) {
      Matrix<K> sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(i, j);
      if (determinant(sub) <= 0) return false;
    }
    return true;
  } else {
    Matrix<K> w = a;
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      scale = std::max(scale, scalar_traits<K>::magnitude(w(i, i)));
    for (std::size_t k = 0; k < n; ++k) {
      if (w(k, k).value() <= ApproxReal::tolerance() * scale) return false;
      for (std::size_t i = k + 1; i < n; ++i) {
        const K f = w(i, k) / w(k, k);
        for (std::size_t j = k; j < n; ++j) w(i, j) = w(i, j) - f * w(k, j);
      }
    }
    return true;
  }
}

}  // namespace solvlck
