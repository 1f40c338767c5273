#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solvlck/exterior.hpp"
#include "solvlck/lie_algebra.hpp"
#include "solvlck/linalg.hpp"

namespace solvlck {

/// Oeljeklaus-Toma type solvable algebra of signature (s, t) together with
/// its split, the standard complex structure, and (for t = 1) the invariant
/// LCK pair (omega, theta).
///
/// Basis order: a-part a_1..a_s, real lines b_1..b_s, complex pairs
/// g_1..g_{2t}. Real block i has weight e_i; complex block k has weight
/// (lambda, mu) = (b_col_k / 2, c_col_k). Dual structure equations:
///   d alpha_i = 0,  d beta_i = -alpha_i ^ beta_i,
///   d gamma_{2k-1} = -lambda_k ^ gamma_{2k-1} + mu_k ^ gamma_{2k},
///   d gamma_{2k}   = -mu_k ^ gamma_{2k-1} - lambda_k ^ gamma_{2k}.
template <class K>
struct OTStructure {
  LieAlgebra<K> algebra;
  MetaAbelianSplit<K> split;
  Matrix<K> J;
  std::optional<GradedForm<K>> omega;  // t == 1 only
  std::optional<GradedForm<K>> theta;  // t == 1 only
};

/// b and c are s x t weight matrices. For t = 1 the trace-zero constraint on
/// the log lattice forces b = (-1,..,-1); other values give non-unimodular
/// relatives of the family.
template <class K>
OTStructure<K> ot_structure(std::size_t s, std::size_t t, const Matrix<K>& b,
                            const Matrix<K>& c) {
  if (b.rows() != s || b.cols() != t || c.rows() != s || c.cols() != t)
    throw DimensionMismatch("b and c must be s x t");

  const K half = scalar_traits<K>::from_int(1) / scalar_traits<K>::from_int(2);
  std::vector<BlockSpec<K>> specs;
  for (std::size_t i = 0; i < s; ++i) {
    BlockSpec<K> spec;
    spec.lambda.assign(s, K{});
    spec.lambda[i] = scalar_traits<K>::from_int(1);
    specs.push_back(std::move(spec));
  }
  for (std::size_t k = 0; k < t; ++k) {
    BlockSpec<K> spec;
    spec.complex_pair = true;
    spec.lambda.resize(s);
    spec.mu.resize(s);
    for (std::size_t i = 0; i < s; ++i) {
      spec.lambda[i] = half * b(i, k);
      spec.mu[i] = c(i, k);
    }
    specs.push_back(std::move(spec));
  }

  std::vector<std::string> names;
  for (std::size_t i = 0; i < s; ++i) names.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < s; ++i) names.push_back("b" + std::to_string(i + 1));
  for (std::size_t k = 0; k < 2 * t; ++k) names.push_back("g" + std::to_string(k + 1));

  BuiltAlgebra<K> built = build_meta_abelian<K>(s, specs, std::move(names));
  const std::size_t dim = built.algebra.dim();

  // J from the (1,0)-frame alpha_i + i beta_i, gamma_{2k-1} + i gamma_{2k}:
  // J a_i = b_i, J b_i = -a_i, J g_{2k-1} = g_{2k}, J g_{2k} = -g_{2k-1}.
  Matrix<K> J(dim, dim);
  const K one = scalar_traits<K>::from_int(1);
  for (std::size_t i = 0; i < s; ++i) {
    J(s + i, i) = one;
    J(i, s + i) = -one;
  }
  for (std::size_t k = 0; k < t; ++k) {
    const std::size_t u = 2 * s + 2 * k, v = u + 1;
    J(v, u) = one;
    J(u, v) = -one;
  }

  OTStructure<K> result{std::move(built.algebra), std::move(built.split), std::move(J),
                        std::nullopt, std::nullopt};

  if (t == 1) {
    GradedForm<K> omega(dim, 2);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        const K coeff = (i == j) ? scalar_traits<K>::from_int(2) : one;
        omega.add(Monomial((std::uint64_t{1} << i) | (std::uint64_t{1} << (s + j))),
                  coeff);
      }
    omega.add(Monomial((std::uint64_t{1} << (2 * s)) | (std::uint64_t{1} << (2 * s + 1))),
              one);
    GradedForm<K> theta(dim, 1);
    for (std::size_t i = 0; i < s; ++i) theta.add(Monomial(std::uint64_t{1} << i), one);
    result.omega = std::move(omega);
    result.theta = std::move(theta);
  }
  return result;
}

/// Convenience for the t = 1 family: b is forced to the all -1 column.
template <class K>
OTStructure<K> ot_surrogate(std::size_t s, const std::vector<K>& c_column) {
  Matrix<K> b(s, 1), c(s, 1);
  for (std::size_t i = 0; i < s; ++i) {
    b(i, 0) = scalar_traits<K>::from_int(-1);
    c(i, 0) = c_column[i];
  }
  return ot_structure<K>(s, 1, b, c);
}

}  // namespace solvlck
