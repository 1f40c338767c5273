#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "solvlck/errors.hpp"
#include "solvlck/linalg.hpp"
#include "solvlck/scalar.hpp"

namespace solvlck {

/// Basis monomial of the exterior algebra on an n-dimensional dual space,
/// stored as a bitmask over basis indices in [0, 64). The strictly
/// increasing index list is the canonical form; the mask realizes it.
struct Monomial {
  std::uint64_t bits = 0;

  Monomial() = default;
  explicit Monomial(std::uint64_t b) : bits(b) {}
  static Monomial from_indices(const std::vector<std::size_t>& idx) {
    Monomial m;
    for (std::size_t i : idx) m.bits |= std::uint64_t{1} << i;
    return m;
  }

  std::size_t grade() const { return std::popcount(bits); }
  bool contains(std::size_t i) const { return (bits >> i) & 1; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> idx;
    std::uint64_t b = bits;
    while (b) {
      idx.push_back(static_cast<std::size_t>(std::countr_zero(b)));
      b &= b - 1;
    }
    return idx;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) = default;
};

/// Pascal table; n up to 64 stays inside uint64.
inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(65, std::vector<std::uint64_t>(65, 0));
    for (std::size_t i = 0; i <= 64; ++i) {
      t[i][0] = 1;
      for (std::size_t j = 1; j <= i; ++j)
        t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (k > n || n > 64) return 0;
  return table[n][k];
}

/// Lexicographic rank of a grade-p monomial among all grade-p subsets of
/// [0, n); the inverse is monomial_unrank.
inline std::size_t monomial_rank(const Monomial& m, std::size_t n) {
  const auto idx = m.indices();
  const std::size_t p = idx.size();
  std::size_t r = 0;
  std::size_t prev = 0;
  for (std::size_t l = 0; l < p; ++l) {
    for (std::size_t j = prev; j < idx[l]; ++j)
      r += static_cast<std::size_t>(binomial(n - 1 - j, p - 1 - l));
    prev = idx[l] + 1;
  }
  return r;
}

inline Monomial monomial_unrank(std::size_t r, std::size_t n, std::size_t p) {
  if (r >= binomial(n, p)) throw DimensionMismatch("monomial rank out of range");
  Monomial m;
  std::size_t next = 0;
  for (std::size_t l = 0; l < p; ++l) {
    for (std::size_t j = next;; ++j) {
      const std::size_t block = static_cast<std::size_t>(binomial(n - 1 - j, p - 1 - l));
      if (r < block) {
        m.bits |= std::uint64_t{1} << j;
        next = j + 1;
        break;
      }
      r -= block;
    }
  }
  return m;
}

/// Sign of e_A ^ e_B for disjoint masks: parity of the pairs (i in A, j in B)
/// with i > j. Returns 0 when the masks overlap.
inline int wedge_sign(std::uint64_t a, std::uint64_t b) {
  if (a & b) return 0;
  int swaps = 0;
  std::uint64_t bb = b;
  while (bb) {
    const int j = std::countr_zero(bb);
    swaps += std::popcount(a >> (j + 1));
    bb &= bb - 1;
  }
  return (swaps & 1) ? -1 : 1;
}

/// Homogeneous element of grade `grade` in the exterior algebra on the dual
/// of an n-dimensional space; canonical form stores no zero coefficient.
template <class K>
class GradedForm {
 public:
  GradedForm() = default;
  GradedForm(std::size_t dim, std::size_t grade) : dim_(dim), grade_(grade) {}

  static GradedForm zero(std::size_t dim, std::size_t grade) {
    return GradedForm(dim, grade);
  }

  static GradedForm basis_one_form(std::size_t dim, std::size_t i) {
    GradedForm f(dim, 1);
    f.set(Monomial(std::uint64_t{1} << i), scalar_traits<K>::from_int(1));
    return f;
  }

  static GradedForm from_monomial(std::size_t dim, const Monomial& m, K coeff) {
    GradedForm f(dim, m.grade());
    f.set(m, std::move(coeff));
    return f;
  }

  std::size_t dim() const { return dim_; }
  std::size_t grade() const { return grade_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, K>& terms() const { return terms_; }

  K coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K{} : it->second;
  }

  void set(const Monomial& m, K coeff) {
    if (m.grade() != grade_) throw DimensionMismatch("monomial grade mismatch");
    if (scalar_traits<K>::is_zero(coeff))
      terms_.erase(m);
    else
      terms_[m] = std::move(coeff);
  }

  void add(const Monomial& m, const K& coeff) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (m.grade() != grade_) throw DimensionMismatch("monomial grade mismatch");
      if (!scalar_traits<K>::is_zero(coeff)) terms_[m] = coeff;
      return;
    }
    it->second += coeff;
    if (scalar_traits<K>::is_zero(it->second)) terms_.erase(it);
  }

  GradedForm operator-() const {
    GradedForm r(dim_, grade_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  friend GradedForm operator+(GradedForm a, const GradedForm& b) {
    if (a.dim_ != b.dim_ || a.grade_ != b.grade_)
      throw DimensionMismatch("form addition shape mismatch");
    for (const auto& [m, c] : b.terms_) a.add(m, c);
    return a;
  }

  friend GradedForm operator-(GradedForm a, const GradedForm& b) {
    if (a.dim_ != b.dim_ || a.grade_ != b.grade_)
      throw DimensionMismatch("form subtraction shape mismatch");
    for (const auto& [m, c] : b.terms_) a.add(m, -c);
    return a;
  }

  friend GradedForm operator*(const K& s, const GradedForm& f) {
    GradedForm r(f.dim_, f.grade_);
    for (const auto& [m, c] : f.terms_) r.add(m, s * c);
    return r;
  }

  friend bool operator==(const GradedForm& a, const GradedForm& b) {
    if (a.dim_ != b.dim_) return false;
    GradedForm d = a;
    for (const auto& [m, c] : b.terms_) {
      if (m.grade() != a.grade_) return false;
      d.add(m, -c);
    }
    return d.is_zero();
  }

  /// Dense coefficients ordered by monomial rank; length C(dim, grade).
  std::vector<K> coefficient_vector() const {
    std::vector<K> v(binomial(dim_, grade_));
    for (const auto& [m, c] : terms_) v[monomial_rank(m, dim_)] = c;
    return v;
  }

  static GradedForm from_coefficient_vector(std::size_t dim, std::size_t grade,
                                            const std::vector<K>& v) {
    GradedForm f(dim, grade);
    for (std::size_t r = 0; r < v.size(); ++r)
      if (!scalar_traits<K>::is_zero(v[r])) f.set(monomial_unrank(r, dim, grade), v[r]);
    return f;
  }

 private:
  std::size_t dim_ = 0, grade_ = 0;
  std::map<Monomial, K> terms_;
};

template <class K>
GradedForm<K> wedge(const GradedForm<K>& a, const GradedForm<K>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge dimension mismatch");
  GradedForm<K> r(a.dim(), a.grade() + b.grade());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const int sign = wedge_sign(ma.bits, mb.bits);
      if (sign == 0) continue;
      K c = ca * cb;
      if (sign < 0) c = -c;
      r.add(Monomial(ma.bits | mb.bits), c);
    }
  return r;
}

template <class K>
GradedForm<K> wedge_power(const GradedForm<K>& a, std::size_t k) {
  GradedForm<K> r = GradedForm<K>::from_monomial(a.dim(), Monomial(),
                                                 scalar_traits<K>::from_int(1));
  for (std::size_t i = 0; i < k; ++i) r = wedge(r, a);
  return r;
}

/// Matrix of (theta ^ .) : Lambda^p -> Lambda^{p+|theta|} in rank order.
template <class K>
Matrix<K> wedge_operator(const GradedForm<K>& theta, std::size_t p) {
  const std::size_t n = theta.dim();
  const std::size_t q = p + theta.grade();
  Matrix<K> m(binomial(n, q), binomial(n, p));
  for (std::size_t col = 0; col < m.cols(); ++col) {
    const Monomial mono = monomial_unrank(col, n, p);
    const GradedForm<K> img = wedge(
        theta, GradedForm<K>::from_monomial(n, mono, scalar_traits<K>::from_int(1)));
    for (const auto& [mm, c] : img.terms()) m(monomial_rank(mm, n), col) = c;
  }
  return m;
}

/// Gram matrix of the inner product induced on Lambda^p by a symmetric
/// positive definite Gram matrix on the dual basis: entries are determinants
/// of p x p submatrices (Cauchy-Binet).
template <class K>
Matrix<K> gram_matrix(const Matrix<K>& dual_gram, std::size_t p) {
  if (dual_gram.rows() != dual_gram.cols())
    throw DimensionMismatch("gram matrix must be square");
  if (!is_positive_definite(dual_gram))
    throw NotPositiveDefinite("metric is not symmetric positive definite");
  const std::size_t n = dual_gram.rows();
  const std::size_t d = binomial(n, p);
  Matrix<K> g(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    const auto ridx = monomial_unrank(r, n, p).indices();
    for (std::size_t c = 0; c < d; ++c) {
      const auto cidx = monomial_unrank(c, n, p).indices();
      Matrix<K> sub(p, p);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) sub(i, j) = dual_gram(ridx[i], cidx[j]);
      g(r, c) = determinant(sub);
    }
  }
  return g;
}

/// Substitutes every basis one-form e^k by sum_j M(k, j) f^j and expands.
/// Used to move between the standard and weight-diagonal coordinates.
template <class K>
GradedForm<K> substitute_basis(const GradedForm<K>& form, const Matrix<K>& m) {
  const std::size_t n = form.dim();
  GradedForm<K> result(n, form.grade());
  for (const auto& [mono, coeff] : form.terms()) {
    GradedForm<K> prod =
        GradedForm<K>::from_monomial(n, Monomial(), scalar_traits<K>::from_int(1));
    for (std::size_t k : mono.indices()) {
      GradedForm<K> image(n, 1);
      for (std::size_t j = 0; j < n; ++j)
        if (!scalar_traits<K>::is_zero(m(k, j)))
          image.add(Monomial(std::uint64_t{1} << j), m(k, j));
      prod = wedge(prod, image);
    }
    result = result + coeff * prod;
  }
  return result;
}

}  // namespace solvlck
