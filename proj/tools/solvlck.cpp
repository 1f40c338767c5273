// Batch front end: cohomology, LCS/LCK checks, the Vaisman obstruction
// certificate, number-field pipeline and formality reports, all through
// single-JSON-envelope files. Exit codes: 0 ok, 2 input validation,
// 3 mathematical precondition, 4 pipeline failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "solvlck/solvlck.hpp"

namespace {

using solvlck::io::json;

struct RunConfig {
  std::string command;
  std::string backend;  // "rational", "float", or "" = follow the spec file
  double tolerance = 1e-9;
  std::vector<std::string> inputs;
  std::string out = "-";
  bool quiet = false;
};

json config_to_json(const RunConfig& cfg, const std::string& effective_backend) {
  json j;
  j["command"] = cfg.command;
  j["backend"] = effective_backend;
  j["tolerance"] = solvlck::io::canonical_double(cfg.tolerance);
  j["inputs"] = cfg.inputs;
  j["out"] = cfg.out;
  return j;
}

void emit(const RunConfig& cfg, const json& report, const std::string& summary) {
  if (cfg.out == "-") {
    std::cout << report.dump(2) << "\n";
  } else {
    solvlck::io::write_json_atomic(cfg.out, report);
    if (!cfg.quiet) std::cout << summary << " -> " << cfg.out << "\n";
  }
}

std::string spec_backend(const json& spec) {
  const std::string s = spec.value("scalar", "rational");
  if (s != "rational" && s != "float")
    throw solvlck::ValidationError("spec: scalar must be \"rational\" or \"float\"");
  return s;
}

std::string effective_backend(const RunConfig& cfg, const json& spec) {
  const std::string file_backend = spec_backend(spec);
  if (!cfg.backend.empty() && cfg.backend != file_backend)
    throw solvlck::ValidationError("backend mismatch: file is " + file_backend +
                                   ", flag requests " + cfg.backend);
  return file_backend;
}

template <class K>
json snapshot_report(const solvlck::ComplexSnapshot<K>& s, const RunConfig& cfg,
                     const std::string& backend) {
  json j;
  j["kind"] = "cohomology_report";
  j["config"] = config_to_json(cfg, backend);
  j["dims"] = s.betti;
  j["ranks"] = s.ranks;
  j["space_dims"] = s.space_dims;
  return j;
}

template <class K>
int cmd_betti(const RunConfig& cfg, const json& spec_json) {
  const auto spec = solvlck::io::algebra_from_json<K>(spec_json);
  const auto snap = solvlck::snapshot(spec.algebra);
  json report = snapshot_report(snap, cfg, solvlck::io::backend_name<K>::value);
  std::string dims;
  for (std::size_t b : snap.betti) dims += (dims.empty() ? "" : ",") + std::to_string(b);
  emit(cfg, report, "betti [" + dims + "]");
  return 0;
}

template <class K>
int cmd_twisted(const RunConfig& cfg, const json& spec_json, const json& theta_json) {
  const auto spec = solvlck::io::algebra_from_json<K>(spec_json);
  const auto theta = solvlck::io::form_from_json<K>(theta_json, spec.algebra.dim());
  const auto snap = solvlck::snapshot_twisted(spec.algebra, theta);
  json report = snapshot_report(snap, cfg, solvlck::io::backend_name<K>::value);
  report["theta"] = solvlck::io::form_to_json(theta);
  std::string dims;
  for (std::size_t b : snap.betti) dims += (dims.empty() ? "" : ",") + std::to_string(b);
  emit(cfg, report, "twisted dims [" + dims + "]");
  return 0;
}

template <class K>
int cmd_check_vaisman(const RunConfig& cfg, const json& spec_json, const json& omega_json,
                      const json& theta_json) {
  const auto spec = solvlck::io::algebra_from_json<K>(spec_json);
  if (!spec.split)
    throw solvlck::ValidationError("spec: check-vaisman needs a split block");
  const auto omega = solvlck::io::form_from_json<K>(omega_json, spec.algebra.dim());
  const auto theta = solvlck::io::form_from_json<K>(theta_json, spec.algebra.dim());
  const auto cert = solvlck::vaisman_obstruction(spec.algebra, *spec.split, omega, theta);

  json j;
  j["kind"] = "obstruction_certificate";
  j["config"] = config_to_json(cfg, solvlck::io::backend_name<K>::value);
  j["split"] = solvlck::io::split_to_json(cert.split);
  j["trivial_part_dim"] = cert.trivial_part_dim;
  j["dim_g"] = cert.dim_g;
  j["dim_derived"] = cert.dim_derived;
  j["hypothesis_ok"] = cert.hypothesis_ok;
  j["theta"] = solvlck::io::form_to_json(cert.theta);
  j["omega_prime"] = solvlck::io::form_to_json(cert.omega_prime);
  j["omega_double_prime"] = solvlck::io::form_to_json(cert.omega_double_prime);
  j["omega_dpp_nonzero"] = cert.omega_dpp_nonzero;
  j["theta_in_a"] = cert.theta_in_a;
  j["containment_ok"] = cert.containment_ok;
  j["d_theta_exact"] = cert.d_theta_exact;
  if (cert.witness) j["witness"] = solvlck::io::form_to_json(*cert.witness);
  const bool no_vaisman = cert.verdict == solvlck::ObstructionVerdict::kNoVaismanPossible;
  j["verdict"] = no_vaisman ? "NoVaismanPossible" : "Inconclusive";
  emit(cfg, j, std::string("verdict ") + (no_vaisman ? "NoVaismanPossible" : "Inconclusive"));
  return 0;
}

template <class K>
int cmd_formality(const RunConfig& cfg, const json& spec_json, const json& metric_json) {
  const auto spec = solvlck::io::algebra_from_json<K>(spec_json);
  if (!metric_json.is_object() || metric_json.value("kind", "") != std::string("metric"))
    throw solvlck::ValidationError("metric: expected kind \"metric\"");
  const auto m = solvlck::io::matrix_from_json<K>(metric_json.at("entries"));
  if (m.rows() != spec.algebra.dim())
    throw solvlck::ValidationError("metric: size does not match the algebra");
  solvlck::InvariantMetric<K> metric(m);
  const auto result = solvlck::formality_check(spec.algebra, metric);

  json j;
  j["kind"] = "formality_report";
  j["config"] = config_to_json(cfg, solvlck::io::backend_name<K>::value);
  j["formal"] = result.formal;
  json dims = json::array();
  for (std::size_t p = 0; p <= spec.algebra.dim(); ++p)
    dims.push_back(solvlck::harmonic_basis(spec.algebra, metric, p).size());
  j["harmonic_dims"] = std::move(dims);
  if (result.failing_pair) {
    j["failing_pair"] = {solvlck::io::form_to_json(result.failing_pair->first),
                         solvlck::io::form_to_json(result.failing_pair->second)};
  }
  emit(cfg, j, result.formal ? "formal" : "not formal");
  return 0;
}

int cmd_build_ot(const RunConfig& cfg, const json& field_json) {
  const auto request = solvlck::io::field_request_from_json(field_json);
  const auto data =
      solvlck::run_pipeline(request.poly, request.s, request.t, request.coeff_bound);
  const auto built = solvlck::build_ot(data);

  if (cfg.out == "-")
    throw solvlck::ValidationError("build-ot writes multiple files; pass --out <path>");
  const std::filesystem::path out(cfg.out);
  const std::string stem = (out.parent_path() / out.stem()).string();

  json spec = solvlck::io::algebra_to_json(built.algebra, &built.split);
  solvlck::io::write_json_atomic(cfg.out, spec);

  json field = solvlck::io::field_data_to_json(data);
  field["config"] = config_to_json(cfg, "float");
  solvlck::io::write_json_atomic(stem + ".field.json", field);

  if (built.omega) {
    solvlck::io::write_json_atomic(stem + ".omega.json",
                                   solvlck::io::form_to_json(*built.omega));
    solvlck::io::write_json_atomic(stem + ".theta.json",
                                   solvlck::io::form_to_json(*built.theta));
  }
  if (!cfg.quiet)
    std::cout << "built OT(" << data.s << "," << data.t << ") algebra, dim "
              << built.algebra.dim() << " -> " << cfg.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant cohomology and LCK geometry of solvable Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("SOLV_LCK_TOL")) cfg.tolerance = std::atof(env);
  app.add_option("--backend", cfg.backend, "scalar backend: rational|float")
      ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--tol", cfg.tolerance, "relative tolerance for the float backend");
  app.add_option("--out", cfg.out, "output path ('-' = stdout)");
  app.add_flag("--quiet", cfg.quiet, "suppress the summary line");

  std::string spec_path, theta_path, omega_path, metric_path, field_path;

  CLI::App* betti = app.add_subcommand("betti", "Betti numbers of (Lambda g*, d)");
  betti->add_option("spec", spec_path, "LieAlgebraSpec file")->required();

  CLI::App* twisted = app.add_subcommand("twisted", "twisted cohomology of d - theta^.");
  twisted->add_option("spec", spec_path, "LieAlgebraSpec file")->required();
  twisted->add_option("theta", theta_path, "closed one-form file")->required();

  CLI::App* vaisman =
      app.add_subcommand("check-vaisman", "invariant Vaisman obstruction certificate");
  vaisman->add_option("spec", spec_path, "LieAlgebraSpec file (with split)")->required();
  vaisman->add_option("omega", omega_path, "LCS two-form file")->required();
  vaisman->add_option("theta", theta_path, "Lee form file")->required();

  CLI::App* build = app.add_subcommand("build-ot", "number-field pipeline");
  build->add_option("field", field_path, "field input file")->required();

  CLI::App* formality = app.add_subcommand("formality", "harmonic formality check");
  formality->add_option("spec", spec_path, "LieAlgebraSpec file")->required();
  formality->add_option("metric", metric_path, "metric file")->required();

  CLI11_PARSE(app, argc, argv);
  solvlck::ApproxReal::tolerance() = cfg.tolerance;

  try {
    auto dispatch = [&](auto&& fn_rational, auto&& fn_float, const json& spec) -> int {
      if (effective_backend(cfg, spec) == "rational") return fn_rational();
      return fn_float();
    };

    if (betti->parsed()) {
      cfg.command = "betti";
      cfg.inputs = {spec_path};
      const json spec = solvlck::io::read_json_file(spec_path);
      return dispatch([&] { return cmd_betti<solvlck::Rational>(cfg, spec); },
                      [&] { return cmd_betti<solvlck::ApproxReal>(cfg, spec); }, spec);
    }
    if (twisted->parsed()) {
      cfg.command = "twisted";
      cfg.inputs = {spec_path, theta_path};
      const json spec = solvlck::io::read_json_file(spec_path);
      const json theta = solvlck::io::read_json_file(theta_path);
      return dispatch(
          [&] { return cmd_twisted<solvlck::Rational>(cfg, spec, theta); },
          [&] { return cmd_twisted<solvlck::ApproxReal>(cfg, spec, theta); }, spec);
    }
    if (vaisman->parsed()) {
      cfg.command = "check-vaisman";
      cfg.inputs = {spec_path, omega_path, theta_path};
      const json spec = solvlck::io::read_json_file(spec_path);
      const json omega = solvlck::io::read_json_file(omega_path);
      const json theta = solvlck::io::read_json_file(theta_path);
      return dispatch(
          [&] { return cmd_check_vaisman<solvlck::Rational>(cfg, spec, omega, theta); },
          [&] { return cmd_check_vaisman<solvlck::ApproxReal>(cfg, spec, omega, theta); },
          spec);
    }
    if (build->parsed()) {
      cfg.command = "build-ot";
      cfg.inputs = {field_path};
      const json field = solvlck::io::read_json_file(field_path);
      return cmd_build_ot(cfg, field);
    }
    if (formality->parsed()) {
      cfg.command = "formality";
      cfg.inputs = {spec_path, metric_path};
      const json spec = solvlck::io::read_json_file(spec_path);
      const json metric = solvlck::io::read_json_file(metric_path);
      return dispatch(
          [&] { return cmd_formality<solvlck::Rational>(cfg, spec, metric); },
          [&] { return cmd_formality<solvlck::ApproxReal>(cfg, spec, metric); }, spec);
    }
  } catch (const solvlck::Error& e) {
    json diag;
    diag["error"] = e.what();
    std::cerr << diag.dump() << "\n";
    switch (e.category()) {
      case solvlck::ErrorCategory::kValidation:
        return 2;
      case solvlck::ErrorCategory::kPrecondition:
        return 3;
      case solvlck::ErrorCategory::kPipeline:
        return 4;
    }
    return 1;
  } catch (const std::exception& e) {
    json diag;
    diag["error"] = e.what();
    std::cerr << diag.dump() << "\n";
    return 1;
  }
  return 1;
}
