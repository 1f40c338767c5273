#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "solvlck/cohomology.hpp"
#include "solvlck/errors.hpp"
#include "solvlck/exterior.hpp"
#include "solvlck/lck.hpp"
#include "solvlck/lie_algebra.hpp"
#include "solvlck/number_field.hpp"
#include "solvlck/scalar.hpp"

namespace solvlck::io {

using nlohmann::json;

/// Rounds to twelve significant digits so every emitted float is the same
/// bytes on every run.
inline double canonical_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

template <class K>
struct backend_name;
template <>
struct backend_name<Rational> {
  static constexpr const char* value = "rational";
};
template <>
struct backend_name<ApproxReal> {
  static constexpr const char* value = "float";
};

inline json scalar_to_json(const Rational& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}
inline json scalar_to_json(const ApproxReal& x) { return canonical_double(x.value()); }

template <class K>
K scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rational(j.get<std::string>());
    } catch (const std::exception&) {
      throw ValidationError("coeff: cannot parse rational '" + j.get<std::string>() + "'");
    }
  }
  if (j.is_number_float())
    throw ValidationError("coeff: rational backend requires exact coefficients");
  throw ValidationError("coeff: expected integer or \"num/den\" string");
}

template <>
inline ApproxReal scalar_from_json<ApproxReal>(const json& j) {
  if (j.is_number()) return ApproxReal(j.get<double>());
  if (j.is_string()) {
    try {
      return ApproxReal(static_cast<double>(Rational(j.get<std::string>())));
    } catch (const std::exception&) {
      throw ValidationError("coeff: cannot parse number '" + j.get<std::string>() + "'");
    }
  }
  throw ValidationError("coeff: expected a number");
}

template <class K>
json form_to_json(const GradedForm<K>& f) {
  std::vector<std::pair<std::size_t, const Monomial*>> order;
  for (const auto& [m, c] : f.terms()) order.emplace_back(monomial_rank(m, f.dim()), &m);
  std::sort(order.begin(), order.end());
  json terms = json::array();
  for (const auto& [r, m] : order) {
    json t;
    t["indices"] = m->indices();
    t["coeff"] = scalar_to_json(f.coefficient(*m));
    terms.push_back(std::move(t));
  }
  json j;
  j["kind"] = "form";
  j["grade"] = f.grade();
  j["terms"] = std::move(terms);
  return j;
}

template <class K>
GradedForm<K> form_from_json(const json& j, std::size_t dim) {
  if (!j.is_object() || !j.contains("grade") || !j.contains("terms"))
    throw ValidationError("form: expected {\"grade\", \"terms\"}");
  GradedForm<K> f(dim, j.at("grade").get<std::size_t>());
  for (const auto& t : j.at("terms")) {
    const auto idx = t.at("indices").get<std::vector<std::size_t>>();
    for (std::size_t i : idx)
      if (i >= dim) throw ValidationError("form: index out of range");
    const Monomial m = Monomial::from_indices(idx);
    if (m.grade() != idx.size()) throw ValidationError("form: repeated index");
    f.add(m, scalar_from_json<K>(t.at("coeff")));
  }
  return f;
}

template <class K>
json matrix_to_json(const Matrix<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class K>
Matrix<K> matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix: expected rows");
  const std::size_t rows = j.size(), cols = j.at(0).size();
  Matrix<K> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j.at(i).size() != cols) throw ValidationError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json<K>(j.at(i).at(c));
  }
  return m;
}

template <class K>
json split_to_json(const MetaAbelianSplit<K>& split) {
  json j;
  j["a_indices"] = split.a_indices;
  json blocks = json::array();
  for (const auto& b : split.blocks) {
    json bj;
    bj["kind"] = b.complex_pair ? "complex" : "real";
    bj["indices"] = b.indices;
    json lambda = json::array(), mu = json::array();
    for (const K& x : b.lambda) lambda.push_back(scalar_to_json(x));
    for (const K& x : b.mu) mu.push_back(scalar_to_json(x));
    bj["lambda"] = std::move(lambda);
    bj["mu"] = std::move(mu);
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

template <class K>
MetaAbelianSplit<K> split_from_json(const json& j) {
  MetaAbelianSplit<K> split;
  split.a_indices = j.at("a_indices").get<std::vector<std::size_t>>();
  for (const auto& bj : j.at("blocks")) {
    SplitBlock<K> b;
    const std::string kind = bj.at("kind").get<std::string>();
    if (kind != "real" && kind != "complex")
      throw ValidationError("split: block kind must be real or complex");
    b.complex_pair = kind == "complex";
    b.indices = bj.at("indices").get<std::vector<std::size_t>>();
    for (const auto& x : bj.at("lambda")) b.lambda.push_back(scalar_from_json<K>(x));
    if (bj.contains("mu"))
      for (const auto& x : bj.at("mu")) b.mu.push_back(scalar_from_json<K>(x));
    if (b.mu.empty()) b.mu.assign(b.lambda.size(), K{});
    split.blocks.push_back(std::move(b));
  }
  return split;
}

template <class K>
json algebra_to_json(const LieAlgebra<K>& g,
                     const MetaAbelianSplit<K>* split = nullptr) {
  json j;
  j["kind"] = "lie_algebra";
  j["dim"] = g.dim();
  j["scalar"] = backend_name<K>::value;
  j["basis"] = g.basis_names();
  json brackets = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t jdx = i + 1; jdx < g.dim(); ++jdx) {
      json terms = json::object();
      for (std::size_t k = 0; k < g.dim(); ++k)
        if (!scalar_traits<K>::is_zero(g.c(i, jdx, k)))
          terms[std::to_string(k)] = scalar_to_json(g.c(i, jdx, k));
      if (!terms.empty()) {
        json e;
        e["i"] = i;
        e["j"] = jdx;
        e["terms"] = std::move(terms);
        brackets.push_back(std::move(e));
      }
    }
  j["brackets"] = std::move(brackets);
  if (split) j["split"] = split_to_json(*split);
  return j;
}

template <class K>
struct AlgebraSpec {
  LieAlgebra<K> algebra;
  std::optional<MetaAbelianSplit<K>> split;
};

/// Bracket entries assign c[i][j][.] literally; the mirror entry is filled
/// with the negative only when the file does not set it itself, so files can
/// both rely on the convention and express antisymmetry violations.
template <class K>
AlgebraSpec<K> algebra_from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "") != std::string("lie_algebra"))
    throw ValidationError("spec: expected kind \"lie_algebra\"");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  if (dim == 0 || dim > 20) throw ValidationError("spec: dim out of range");
  std::vector<std::string> names;
  if (j.contains("basis")) names = j.at("basis").get<std::vector<std::string>>();

  std::vector<K> c(dim * dim * dim);
  std::vector<bool> given(dim * dim, false);
  for (const auto& e : j.at("brackets")) {
    const std::size_t i = e.at("i").get<std::size_t>();
    const std::size_t jj = e.at("j").get<std::size_t>();
    if (i >= dim || jj >= dim) throw ValidationError("brackets: index out of range");
    given[i * dim + jj] = true;
    for (const auto& [key, val] : e.at("terms").items()) {
      const std::size_t k = std::stoul(key);
      if (k >= dim) throw ValidationError("brackets: target index out of range");
      c[(i * dim + jj) * dim + k] = scalar_from_json<K>(val);
    }
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t jj = 0; jj < dim; ++jj)
      if (given[i * dim + jj] && !given[jj * dim + i])
        for (std::size_t k = 0; k < dim; ++k)
          c[(jj * dim + i) * dim + k] = -c[(i * dim + jj) * dim + k];

  AlgebraSpec<K> spec{LieAlgebra<K>(dim, std::move(c), std::move(names)), std::nullopt};
  if (j.contains("split")) spec.split = split_from_json<K>(j.at("split"));
  return spec;
}

inline json field_data_to_json(const OTFieldData& d) {
  json j;
  j["kind"] = "ot_field_data";
  j["poly"] = d.poly;
  j["s"] = d.s;
  j["t"] = d.t;
  j["coeff_bound"] = d.coeff_bound;
  json re = json::array();
  for (double x : d.real_embeddings) re.push_back(canonical_double(x));
  j["real_embeddings"] = std::move(re);
  json ce = json::array();
  for (const auto& z : d.complex_embeddings)
    ce.push_back({{"re", canonical_double(z.real())}, {"im", canonical_double(z.imag())}});
  j["complex_embeddings"] = std::move(ce);
  j["units"] = d.units;
  j["u_generators"] = d.u_generators;
  json vb = json::array();
  for (const auto& v : d.v_basis) {
    json row = json::array();
    for (double x : v) row.push_back(canonical_double(x));
    vb.push_back(std::move(row));
  }
  j["v_basis"] = std::move(vb);
  auto mat = [](const std::vector<std::vector<double>>& m) {
    json rows = json::array();
    for (const auto& r : m) {
      json row = json::array();
      for (double x : r) row.push_back(canonical_double(x));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["b"] = mat(d.b);
  j["c"] = mat(d.c);
  j["irreducibility_attested"] = d.irreducibility_attested;
  j["notes"] = d.notes;
  return j;
}

struct OTFieldRequest {
  std::vector<long long> poly;
  std::size_t s = 0, t = 0;
  long long coeff_bound = 0;
};

inline OTFieldRequest field_request_from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "ot_field") != std::string("ot_field"))
    throw ValidationError("field: expected kind \"ot_field\"");
  OTFieldRequest r;
  r.poly = j.at("poly").get<std::vector<long long>>();
  r.s = j.at("s").get<std::size_t>();
  r.t = j.at("t").get<std::size_t>();
  r.coeff_bound = j.at("coeff_bound").get<long long>();
  return r;
}

/// Atomic canonical write: two-space indentation, trailing newline, temp
/// file plus rename.
inline void write_json_atomic(const std::string& path, const json& j) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw PipelineError("cannot open output file: " + tmp.string());
    out << j.dump(2) << "\n";
  }
  fs::rename(tmp, target);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

}  // namespace solvlck::io
