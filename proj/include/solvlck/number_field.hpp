#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "solvlck/errors.hpp"
#include "solvlck/ot_structure.hpp"
#include "solvlck/scalar.hpp"

namespace solvlck {

inline constexpr double kRootResidualTol = 1e-12;
inline constexpr double kNormUnitTol = 1e-6;
inline constexpr double kLogSumTol = 1e-8;
inline constexpr double kIndependenceTol = 1e-8;
inline constexpr double kImagClassifyTol = 1e-8;

/// Number-field pipeline state: a monic integer polynomial of degree s + 2t,
/// its embeddings, the units found in the equation order Z[theta], the
/// selected rank-s generator set, and the (b, c) weight matrices of the
/// associated solvable group.
struct OTFieldData {
  std::vector<long long> poly;  // c_0 .. c_d with c_d = 1
  std::size_t s = 0, t = 0;
  long long coeff_bound = 0;
  std::vector<double> real_embeddings;                 // ascending
  std::vector<std::complex<double>> complex_embeddings;  // Im > 0, by real part
  std::vector<std::vector<long long>> units;        // sign-normalized, lex sorted
  std::vector<std::vector<long long>> u_generators;  // selected, totally positive
  std::vector<std::vector<double>> v_basis;          // l(u) per generator, length s+t
  std::vector<std::vector<double>> b;                // s x t
  std::vector<std::vector<double>> c;                // s x t
  bool irreducibility_attested = false;
  std::vector<std::string> notes;
};

namespace nf_detail {

inline std::complex<double> horner(const std::vector<long long>& poly,
                                   std::complex<double> z) {
  std::complex<double> v(0.0, 0.0);
  for (std::size_t i = poly.size(); i-- > 0;) v = v * z + double(poly[i]);
  return v;
}

inline std::complex<double> horner_derivative(const std::vector<long long>& poly,
                                              std::complex<double> z) {
  std::complex<double> v(0.0, 0.0);
  for (std::size_t i = poly.size(); i-- > 1;) v = v * z + double(i) * double(poly[i]);
  return v;
}

/// Multiplication in Z[theta]: product of coefficient vectors reduced mod
/// the monic defining polynomial.
inline std::vector<long long> multiply_mod(const std::vector<long long>& a,
                                           const std::vector<long long>& b,
                                           const std::vector<long long>& poly) {
  const std::size_t d = poly.size() - 1;
  std::vector<long long> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  for (std::size_t k = prod.size(); k-- > d;) {
    const long long q = prod[k];
    if (q == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= q * poly[i];
  }
  prod.resize(d);
  return prod;
}

inline std::vector<long long> sign_normalized(std::vector<long long> v) {
  for (long long x : v) {
    if (x > 0) return v;
    if (x < 0) {
      for (long long& y : v) y = -y;
      return v;
    }
  }
  return v;
}

/// Canonical unit order: smallest coefficient height first, then lowest
/// degree, then lexicographic. Puts theta ahead of its powers and shifts.
inline bool unit_less(const std::vector<long long>& a, const std::vector<long long>& b) {
  auto height = [](const std::vector<long long>& v) {
    long long h = 0;
    for (long long x : v) h = std::max(h, std::llabs(x));
    return h;
  };
  auto degree = [](const std::vector<long long>& v) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) d = i;
    return d;
  };
  const long long ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  const std::size_t da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return a < b;
}

inline bool is_unit_one(const std::vector<long long>& v) {
  if (v.empty() || std::llabs(v[0]) != 1) return false;
  return std::all_of(v.begin() + 1, v.end(), [](long long x) { return x == 0; });
}

inline std::size_t rank_double(const std::vector<std::vector<double>>& rows,
                               std::size_t cols, double tol) {
  std::vector<std::vector<double>> m = rows;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t best = r;
    for (std::size_t i = r; i < m.size(); ++i)
      if (std::fabs(m[i][c]) > std::fabs(m[best][c])) best = i;
    if (std::fabs(m[best][c]) <= tol) continue;
    std::swap(m[r], m[best]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      const double f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Rational-root test plus, for quartics, the integer quadratic-quadratic
/// factor search. Degrees above four are accepted with an attestation note.
inline bool reducible_up_to_degree_four(const std::vector<long long>& poly) {
  const std::size_t d = poly.size() - 1;
  const long long c0 = poly[0];
  if (c0 == 0) return true;  // x divides
  auto divisors = [](long long n) {
    std::vector<long long> ds;
    n = std::llabs(n);
    for (long long k = 1; k * k <= n; ++k)
      if (n % k == 0) {
        ds.push_back(k);
        if (k != n / k) ds.push_back(n / k);
      }
    return ds;
  };
  for (long long k : divisors(c0))
    for (long long root : {k, -k}) {
      long long v = 0;
      bool overflow = false;
      for (std::size_t i = poly.size(); i-- > 0;) {
        if (std::llabs(v) > (1ll << 55)) {
          overflow = true;
          break;
        }
        v = v * root + poly[i];
      }
      if (!overflow && v == 0) return true;
    }
  if (d == 4) {
    // (x^2 + a x + b)(x^2 + c x + e) with integer a, b, c, e.
    for (long long b : divisors(c0))
      for (long long bb : {b, -b}) {
        if (c0 % bb != 0) continue;
        const long long e = c0 / bb;
        // a + c = p3, ac = p2 - b - e, a e + c b = p1.
        const long long p3 = poly[3], p2 = poly[2], p1 = poly[1];
        const long long sum = p3, prod = p2 - bb - e;
        const long long disc = sum * sum - 4 * prod;
        if (disc < 0) continue;
        const long long sq = static_cast<long long>(std::llround(std::sqrt(double(disc))));
        if (sq * sq != disc) continue;
        for (long long a : {(sum + sq) / 2, (sum - sq) / 2}) {
          if (2 * a != sum + sq && 2 * a != sum - sq) continue;
          const long long c = sum - a;
          if (a * c == prod && a * e + c * bb == p1) return true;
        }
      }
  }
  return false;
}

}  // namespace nf_detail

/// All s + 2t embedding values of the element with the given Z[theta]
/// coefficients, ordered real embeddings first then the upper-half-plane
/// representatives.
inline std::vector<std::complex<double>> embedding_values(
    const OTFieldData& data, const std::vector<long long>& coeffs) {
  std::vector<std::complex<double>> values;
  auto eval = [&](std::complex<double> root) {
    std::complex<double> v(0.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * root + double(coeffs[i]);
    return v;
  };
  for (double r : data.real_embeddings) values.push_back(eval({r, 0.0}));
  for (const auto& z : data.complex_embeddings) values.push_back(eval(z));
  return values;
}

/// |Norm| computed as the product over all s + 2t embeddings (conjugate
/// pairs enter as squared moduli).
inline double norm_magnitude(const OTFieldData& data,
                             const std::vector<long long>& coeffs) {
  const auto values = embedding_values(data, coeffs);
  double n = 1.0;
  for (std::size_t i = 0; i < data.s; ++i) n *= std::abs(values[i]);
  for (std::size_t k = 0; k < data.t; ++k) n *= std::norm(values[data.s + k]);
  return n;
}

/// Roots of the monic defining polynomial via companion-matrix eigenvalues
/// plus one Newton polish; exactly s real roots and t conjugate pairs are
/// required.
inline void embeddings(OTFieldData& data) {
  const std::size_t d = data.poly.size() - 1;
  if (data.poly.empty() || data.poly.back() != 1)
    throw ValidationError("poly: expected a monic integer polynomial");
  if (d != data.s + 2 * data.t)
    throw ValidationError("poly: degree must equal s + 2t");

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < d; ++i) comp(i, d - 1) = -double(data.poly[i]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  if (es.info() != Eigen::Success) throw PipelineError("eigenvalue solver failed");

  std::vector<std::complex<double>> roots;
  for (std::size_t i = 0; i < d; ++i) {
    std::complex<double> z = es.eigenvalues()(static_cast<Eigen::Index>(i));
    const std::complex<double> dp = nf_detail::horner_derivative(data.poly, z);
    if (std::abs(dp) > 0) z -= nf_detail::horner(data.poly, z) / dp;
    if (std::abs(nf_detail::horner(data.poly, z)) > kRootResidualTol * std::max(1.0, std::abs(z)))
      throw PipelineError("root refinement did not converge");
    roots.push_back(z);
  }

  std::vector<double> real;
  std::vector<std::complex<double>> upper;
  for (const auto& z : roots) {
    if (std::fabs(z.imag()) < kImagClassifyTol)
      real.push_back(z.real());
    else if (z.imag() > 0)
      upper.push_back(z);
  }
  if (real.size() != data.s || upper.size() != data.t)
    throw SignatureMismatch(real.size(), data.s);
  std::sort(real.begin(), real.end());
  std::sort(upper.begin(), upper.end(),
            [](const auto& a, const auto& b) { return a.real() < b.real(); });
  data.real_embeddings = std::move(real);
  data.complex_embeddings = std::move(upper);
}

/// Exhaustive unit search in Z[theta] over coefficient vectors bounded in
/// absolute value: keeps elements with |Norm| within kNormUnitTol of 1,
/// sign-normalized (first nonzero coefficient positive), deduplicated,
/// excluding +-1, sorted lexicographically.
inline std::vector<std::vector<long long>> unit_search(const OTFieldData& data,
                                                       long long coeff_bound) {
  const std::size_t d = data.poly.size() - 1;
  std::vector<std::vector<long long>> found;
  if (coeff_bound < 0) return found;
  std::vector<long long> coeffs(d, -coeff_bound);
  while (true) {
    const bool zero = std::all_of(coeffs.begin(), coeffs.end(),
                                  [](long long x) { return x == 0; });
    if (!zero && !nf_detail::is_unit_one(coeffs) &&
        std::fabs(norm_magnitude(data, coeffs) - 1.0) < kNormUnitTol)
      found.push_back(nf_detail::sign_normalized(coeffs));
    std::size_t pos = 0;
    while (pos < d && coeffs[pos] == coeff_bound) coeffs[pos++] = -coeff_bound;
    if (pos == d) break;
    ++coeffs[pos];
  }
  std::sort(found.begin(), found.end(), nf_detail::unit_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

/// Filters to totally positive units; a unit failing a real-embedding sign
/// check is replaced by its square (recorded in the notes).
inline std::vector<std::vector<long long>> totally_positive(
    const OTFieldData& data, const std::vector<std::vector<long long>>& units,
    std::vector<std::string>* notes = nullptr) {
  std::vector<std::vector<long long>> result;
  for (const auto& u : units) {
    const auto values = embedding_values(data, u);
    bool positive = true;
    for (std::size_t i = 0; i < data.s; ++i)
      if (values[i].real() <= 0) positive = false;
    if (positive) {
      result.push_back(u);
    } else {
      auto sq = nf_detail::multiply_mod(u, u, data.poly);
      if (notes) notes->push_back("unit replaced by its square to force positivity");
      result.push_back(std::move(sq));
    }
  }
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

/// The logarithmic embedding l(u) in R^{s+t}, complex coordinates doubled.
inline std::vector<double> log_embedding(const OTFieldData& data,
                                         const std::vector<long long>& u) {
  const auto values = embedding_values(data, u);
  std::vector<double> l;
  for (std::size_t i = 0; i < data.s; ++i) {
    const double v = std::abs(values[i]);
    if (v == 0.0) throw ZeroEmbedding();
    l.push_back(std::log(v));
  }
  for (std::size_t k = 0; k < data.t; ++k) {
    const double v = std::abs(values[data.s + k]);
    if (v == 0.0) throw ZeroEmbedding();
    l.push_back(2.0 * std::log(v));
  }
  return l;
}

/// Greedy selection of s candidates whose projected log vectors (first s
/// coordinates) reach full rank s.
inline std::vector<std::vector<long long>> select_generators(
    const OTFieldData& data, const std::vector<std::vector<long long>>& candidates) {
  std::vector<std::vector<long long>> chosen;
  std::vector<std::vector<double>> projected;
  for (const auto& u : candidates) {
    if (chosen.size() == data.s) break;
    std::vector<double> l = log_embedding(data, u);
    l.resize(data.s);
    projected.push_back(l);
    if (nf_detail::rank_double(projected, data.s, kIndependenceTol) == projected.size())
      chosen.push_back(u);
    else
      projected.pop_back();
  }
  if (chosen.size() != data.s)
    throw InsufficientUnits(projected.size(), data.s);
  return chosen;
}

/// Solves for the (b, c) matrices: b from expressing each standard basis
/// vector of R^s in the projected log generators and propagating to the last
/// t coordinates, c from the principal-branch arguments Arg in (-pi, pi] of
/// the complex embeddings of the generators.
inline void compute_bc(OTFieldData& data) {
  const std::size_t s = data.s, t = data.t;
  data.v_basis.clear();
  for (const auto& u : data.u_generators) {
    auto l = log_embedding(data, u);
    double sum = 0.0;
    for (double x : l) sum += x;
    if (std::fabs(sum) > kLogSumTol)
      throw PipelineError("log embedding violates the trace-zero constraint");
    data.v_basis.push_back(std::move(l));
  }

  Eigen::MatrixXd vp(s, s);  // columns are projected v_j
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < s; ++i) vp(i, j) = data.v_basis[j][i];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(vp);
  lu.setThreshold(kIndependenceTol);
  if (!lu.isInvertible()) throw SingularProjection();

  data.b.assign(s, std::vector<double>(t, 0.0));
  for (std::size_t i = 0; i < s; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(s);
    e(i) = 1.0;
    const Eigen::VectorXd a = lu.solve(e);
    for (std::size_t k = 0; k < t; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < s; ++j) acc += a(j) * data.v_basis[j][s + k];
      data.b[i][k] = acc;
    }
  }

  // Arg(sigma_{s+k}(u_j)) = sum_i c_{ik} tau_{j,i} with tau_j the projected
  // log vector of generator j; branch fixed to (-pi, pi].
  Eigen::MatrixXd m(s, s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < s; ++i) m(j, i) = data.v_basis[j][i];
  Eigen::FullPivLU<Eigen::MatrixXd> lum(m);
  lum.setThreshold(kIndependenceTol);
  if (!lum.isInvertible()) throw SingularProjection();
  data.c.assign(s, std::vector<double>(t, 0.0));
  for (std::size_t k = 0; k < t; ++k) {
    Eigen::VectorXd rhs(s);
    for (std::size_t j = 0; j < s; ++j) {
      const auto values = embedding_values(data, data.u_generators[j]);
      rhs(j) = std::arg(values[s + k]);
    }
    const Eigen::VectorXd ck = lum.solve(rhs);
    for (std::size_t i = 0; i < s; ++i) data.c[i][k] = ck(i);
  }
  data.notes.push_back("complex embedding arguments taken on the branch (-pi, pi]");
}

/// Full pipeline: polynomial -> embeddings -> units -> generators -> (b, c).
inline OTFieldData run_pipeline(std::vector<long long> poly, std::size_t s,
                                std::size_t t, long long coeff_bound) {
  if (s < 1 || t < 1) throw ValidationError("pipeline requires s >= 1 and t >= 1");
  OTFieldData data;
  data.poly = std::move(poly);
  data.s = s;
  data.t = t;
  data.coeff_bound = coeff_bound;
  data.notes.push_back("units taken in the equation order Z[theta], not the maximal order");

  const std::size_t d = data.poly.size() - 1;
  if (d <= 4) {
    if (nf_detail::reducible_up_to_degree_four(data.poly))
      throw ValidationError("poly: reducible over the rationals");
  } else {
    data.irreducibility_attested = true;
    data.notes.push_back("irreducibility not verified beyond degree 4; user attestation recorded");
  }

  embeddings(data);
  data.units = unit_search(data, coeff_bound);
  const auto positives = totally_positive(data, data.units, &data.notes);
  data.u_generators = select_generators(data, positives);
  compute_bc(data);
  return data;
}

/// Assembles the OT algebra over the approximate backend from the computed
/// (b, c) data; emits the LCK pair for t = 1.
inline OTStructure<ApproxReal> build_ot(const OTFieldData& data) {
  Matrix<ApproxReal> b(data.s, data.t), c(data.s, data.t);
  for (std::size_t i = 0; i < data.s; ++i)
    for (std::size_t k = 0; k < data.t; ++k) {
      b(i, k) = ApproxReal(data.b[i][k]);
      c(i, k) = ApproxReal(data.c[i][k]);
    }
  return ot_structure<ApproxReal>(data.s, data.t, b, c);
}

}  // namespace solvlck
