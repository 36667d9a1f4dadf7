// delta-ideal: curvature delta-invariants, sharp submanifold inequality
// checks, discrete spectra, and ideal-embedding verdicts from one binary.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "deltaideal/curvature.hpp"
#include "deltaideal/delta.hpp"
#include "deltaideal/immersion.hpp"
#include "deltaideal/mesh.hpp"
#include "deltaideal/partitions.hpp"
#include "deltaideal/registry.hpp"
#include "deltaideal/serialization.hpp"
#include "deltaideal/spectral.hpp"
#include "deltaideal/verdict.hpp"

namespace di = deltaideal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

struct GlobalOptions {
  std::string format = "json";  // json | csv | text
  std::string output_path;      // empty = stdout
  std::string registry_path;    // empty = builtin
  std::uint64_t seed = 42;
  int restarts = 32;
  int max_iterations = 500;
  double gradient_tol = 1e-8;
  bool verbose = false;

  di::OptimizerOptions optimizer() const {
    di::OptimizerOptions o;
    o.restarts = restarts;
    o.max_iterations = max_iterations;
    o.gradient_tol = gradient_tol;
    o.rng_seed = seed;
    return o;
  }

  const di::SpaceRegistry& registry() const {
    if (registry_path.empty()) return di::SpaceRegistry::builtin();
    if (!loaded_registry_) {
      loaded_registry_ = di::SpaceRegistry::from_file(registry_path);
    }
    return *loaded_registry_;
  }

 private:
  mutable std::optional<di::SpaceRegistry> loaded_registry_;
};

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output_path);
  if (!out) throw di::Error("cannot open output file '" + g.output_path + "'");
  out << text;
}

void emit_json(const GlobalOptions& g, const di::Json& j) {
  emit(g, j.dump(2) + "\n");
}

// Tensor selection shared by `delta` and `delta-max`.
struct TensorArgs {
  std::string input_path;
  std::string model;
  int n = 0;
  double c0 = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input_path, "curvature tensor JSON file");
    cmd->add_option("--model", model, "built-in model: constant");
    cmd->add_option("--n", n, "dimension for --model");
    cmd->add_option("--c0", c0, "sectional curvature for --model constant");
  }

  di::CurvatureTensor resolve() const {
    if (!input_path.empty()) return di::tensor_from_file(input_path);
    if (model == "constant") {
      if (n < 2) throw di::DimensionError("--model constant needs --n >= 2");
      return di::constant_curvature_tensor(n, c0);
    }
    throw di::DomainError("provide --input FILE or --model constant --n N [--c0 X]");
  }
};

std::vector<int> parse_parts(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    parts.push_back(std::stoi(tok));
  }
  return parts;
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

// --- mesh name resolution ---------------------------------------------------

bool parse_mesh_spec(const std::string& spec, di::TriMesh& mesh) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    return parts;
  };
  const auto parts = split(spec);
  if (parts.empty()) return false;
  if (parts[0] == "icosphere") {
    const int level = parts.size() > 1 ? std::stoi(parts[1]) : 4;
    mesh = di::make_icosphere(level);
    return true;
  }
  if (parts[0] == "octahedron") {
    mesh = di::make_octahedron();
    return true;
  }
  if (parts[0] == "tetrahedron") {
    mesh = di::make_tetrahedron();
    return true;
  }
  if (parts[0] == "torus-grid") {
    const int nx = parts.size() > 1 ? std::stoi(parts[1]) : 64;
    const int ny = parts.size() > 2 ? std::stoi(parts[2]) : nx;
    mesh = di::make_flat_torus_grid(nx, ny);
    return true;
  }
  return false;
}

// --- subcommand payloads ----------------------------------------------------

int run_delta(const GlobalOptions& g, const TensorArgs& tensor_args,
              const std::string& partition_text) {
  const di::CurvatureTensor R = tensor_args.resolve();
  const di::Partition p(R.dimension(), parse_parts(partition_text));
  const di::DeltaResult result = di::delta_invariant(R, p, g.optimizer());
  if (g.format == "text") {
    std::ostringstream out;
    out << "delta" << p.to_string() << " = " << format_double(result.value)
        << "  (objective " << format_double(result.objective) << ", converged "
        << (result.converged ? "yes" : "no") << ")\n";
    emit(g, out.str());
  } else {
    emit_json(g, di::delta_result_to_json(result, g.verbose));
  }
  return kExitOk;
}

int run_delta_max(const GlobalOptions& g, const TensorArgs& tensor_args) {
  const di::CurvatureTensor R = tensor_args.resolve();
  const di::MaxNormalizedDelta result = di::max_normalized_delta(R, g.optimizer());
  if (g.format == "text") {
    std::ostringstream out;
    out << "partition    delta           coefficient     normalized\n";
    for (const auto& row : result.table) {
      out << std::left << std::setw(12) << row.partition.to_string() << " "
          << std::setw(15) << format_double(row.delta) << " " << std::setw(15)
          << format_double(row.coefficient) << " " << format_double(row.normalized)
          << "\n";
    }
    out << "max delta/c = " << format_double(result.value) << " at "
        << result.argmax.to_string() << "\n";
    emit(g, out.str());
  } else {
    emit_json(g, di::max_normalized_to_json(result));
  }
  return kExitOk;
}

int run_coeff(const GlobalOptions& g, int n) {
  const auto tuples = di::enumerate_tuples(n);
  if (g.format == "text") {
    std::ostringstream out;
    out << "partition    c\n";
    for (const auto& p : tuples) {
      out << std::left << std::setw(12) << p.to_string() << " "
          << format_double(di::c_coefficient(p)) << "\n";
    }
    emit(g, out.str());
  } else if (g.format == "csv") {
    std::ostringstream out;
    out << "partition,c\n";
    out.precision(17);
    for (const auto& p : tuples) {
      out << "\"" << p.to_string() << "\"," << di::c_coefficient(p) << "\n";
    }
    emit(g, out.str());
  } else {
    di::Json rows = di::Json::array();
    for (const auto& p : tuples) {
      di::Json row;
      row["partition"] = di::partition_to_json(p);
      row["c"] = di::c_coefficient(p);
      rows.push_back(std::move(row));
    }
    di::Json j;
    j["n"] = n;
    j["coefficients"] = std::move(rows);
    emit_json(g, j);
  }
  return kExitOk;
}

int run_lambda1(const GlobalOptions& g, const std::string& source,
                const std::string& quotient, bool check_pullback,
                const di::SpectralOptions& solver) {
  // Registered space names take priority, then generated meshes, then files.
  if (const di::SpaceDescriptor* s = g.registry().find(source)) {
    const double lambda1 = di::lambda1_closed_form(*s);
    if (g.format == "text") {
      emit(g, "lambda1(" + source + ") = " + format_double(lambda1) + " (registry)\n");
    } else {
      di::Json j;
      j["space"] = source;
      j["lambda1"] = lambda1;
      j["source"] = "registry";
      emit_json(g, j);
    }
    return kExitOk;
  }

  di::TriMesh mesh;
  if (!parse_mesh_spec(source, mesh)) mesh = di::mesh_from_file(source);

  if (!quotient.empty()) {
    if (quotient != "antipodal") {
      throw di::DomainError("unsupported quotient '" + quotient + "'");
    }
    const di::TriMesh cover = mesh;
    const di::TriMesh quotient_mesh = di::antipodal_quotient(cover);
    const di::SpectralResult base = di::lambda1_mesh(quotient_mesh, solver);
    di::Json j = di::spectral_result_to_json(base, g.verbose);
    j["quotient"] = "antipodal";
    if (check_pullback) {
      const di::SpectralResult cover_result = di::lambda1_mesh(cover, solver);
      di::PullbackDetail detail;
      const bool ok = di::verify_pullback(cover, cover_result, quotient_mesh, base,
                                          1e-6, &detail);
      j["cover_lambda1"] = cover_result.lambda1;
      j["pullback_verified"] = ok;
      j["lifted_rayleigh_deviation"] = detail.rayleigh_deviation;
    }
    if (g.format == "text") {
      emit(g, "lambda1 = " + format_double(base.lambda1) + " (antipodal quotient, " +
                  std::to_string(base.mesh_size.first) + " classes)\n");
    } else {
      emit_json(g, j);
    }
    return kExitOk;
  }

  const di::SpectralResult result = di::lambda1_mesh(mesh, solver);
  if (g.format == "text") {
    emit(g, "lambda1 = " + format_double(result.lambda1) + " (" +
                std::to_string(result.mesh_size.first) + " vertices, " +
                std::to_string(result.solver_iterations) + " iterations)\n");
  } else {
    emit_json(g, di::spectral_result_to_json(result, g.verbose));
  }
  return kExitOk;
}

int verdict_exit(const di::Verdict& v) {
  return v.outcome == di::Outcome::Inconclusive ? kExitInconclusive : kExitOk;
}

int run_check_ideal(const GlobalOptions& g, const std::string& name) {
  const di::SpaceDescriptor& s = g.registry().at(name);
  const double delta0 = di::space_delta0(s, g.optimizer());
  const di::Verdict v = di::ideality_criterion(s, delta0);
  if (g.format == "text") {
    std::ostringstream out;
    out << name << ": " << di::to_string(v.outcome) << "  (lambda1 "
        << format_double(v.evidence.lambda1) << ", n*delta0 "
        << format_double(v.evidence.n_delta0) << ")\n";
    emit(g, out.str());
  } else {
    emit_json(g, di::verdict_to_json(v));
  }
  return verdict_exit(v);
}

int run_obstruct(const GlobalOptions& g, const std::string& cover_name,
                 const std::string& base_name) {
  const di::SpaceDescriptor& cover = g.registry().at(cover_name);
  const di::SpaceDescriptor& base = g.registry().at(base_name);
  const di::Verdict v = di::covering_obstruction(cover, base, g.optimizer());
  if (g.format == "text") {
    std::ostringstream out;
    out << base_name << ": " << di::to_string(v.outcome);
    if (v.evidence.partner_lambda1) {
      out << "  (lambda1 " << format_double(*v.evidence.partner_lambda1) << " vs "
          << format_double(v.evidence.lambda1) << ")";
    }
    out << "\n";
    emit(g, out.str());
  } else {
    emit_json(g, di::verdict_to_json(v));
  }
  return verdict_exit(v);
}

int run_verify_inequality(const GlobalOptions& g, const std::string& shape,
                          const std::string& params_text, const std::string& grid_path,
                          int points, bool numeric) {
  std::vector<Eigen::VectorXd> sample_points;
  std::unique_ptr<di::ParametricImmersion> im;

  if (!grid_path.empty()) {
    di::GridImmersion grid = di::grid_immersion_from_file(grid_path);
    im = std::make_unique<di::ParametricImmersion>(std::move(grid.immersion));
    sample_points = std::move(grid.interior_points);
    if (points > 0 && points < static_cast<int>(sample_points.size())) {
      sample_points.resize(points);
    }
  } else {
    std::vector<double> params;
    {
      std::stringstream ss(params_text);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) params.push_back(std::stod(tok));
      }
    }
    di::ParametricImmersion built = di::builtin_immersion(shape, params);
    if (numeric) built = built.with_numeric_derivatives();
    im = std::make_unique<di::ParametricImmersion>(std::move(built));
    sample_points = di::sample_chart(*im, points, g.seed);
  }

  const di::InequalityReport inequality =
      di::verify_inequality(*im, sample_points, g.optimizer());
  const di::IdealityReport ideality =
      di::ideality_residual(*im, sample_points, g.optimizer());

  if (g.format == "csv") {
    emit(g, di::inequality_report_to_csv(inequality));
  } else if (g.format == "text") {
    std::ostringstream out;
    out << "points: " << sample_points.size() << "\n"
        << "min slack: " << format_double(inequality.min_slack) << "\n"
        << "violations: " << inequality.violations << "\n"
        << "max |residual|: " << format_double(ideality.max_abs_residual) << "\n"
        << "ideal: " << (ideality.ideal ? "yes" : "no") << "\n";
    emit(g, out.str());
  } else {
    di::Json j;
    j["inequality"] = di::inequality_report_to_json(inequality, g.verbose);
    j["ideality"] = di::ideality_report_to_json(ideality, g.verbose);
    emit_json(g, j);
  }
  return inequality.violations == 0 && ideality.violations == 0 ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointwise curvature delta-invariants, the sharp mean-curvature "
               "inequality for Euclidean submanifolds, discrete Laplace spectra, "
               "and ideal-embedding verdicts for registered homogeneous spaces"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--format", g.format, "output format: json, csv, or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("-o,--output", g.output_path, "write output to a file instead of stdout");
  app.add_option("--registry", g.registry_path, "space registry JSON (default: built-in)");
  app.add_option("--seed", g.seed, "RNG seed for restarts and samplers")
      ->capture_default_str();
  app.add_option("--restarts", g.restarts, "optimizer restarts")->capture_default_str();
  app.add_option("--max-iterations", g.max_iterations, "optimizer iteration cap")
      ->capture_default_str();
  app.add_option("--gradient-tol", g.gradient_tol, "first-order stationarity tolerance")
      ->capture_default_str();
  app.add_flag("--verbose", g.verbose, "include frames/eigenvectors/records in output");

  // delta
  auto* delta_cmd = app.add_subcommand(
      "delta",
      "Delta-invariant of a curvature tensor: scalar curvature minus the "
      "minimized sum of block scalar curvatures over mutually orthogonal "
      "subspace configurations of the given partition");
  TensorArgs delta_tensor;
  delta_tensor.attach(delta_cmd);
  std::string delta_partition;
  delta_cmd->add_option("--partition", delta_partition,
                        "comma-separated parts, e.g. 2,2 (empty = trivial tuple)");

  // delta-max
  auto* delta_max_cmd = app.add_subcommand(
      "delta-max",
      "Sweep of delta/c over every admissible tuple: the normalized maximum "
      "invariant that sets the ideality threshold");
  TensorArgs delta_max_tensor;
  delta_max_tensor.attach(delta_max_cmd);

  // coeff
  auto* coeff_cmd = app.add_subcommand(
      "coeff", "Table of the sharp inequality coefficients c for dimension n");
  int coeff_n = 0;
  coeff_cmd->add_option("--n", coeff_n, "ambient dimension")->required();

  // lambda1
  auto* lambda1_cmd = app.add_subcommand(
      "lambda1",
      "First positive Laplace eigenvalue: registry value for a registered "
      "space, or discrete cotangent-Laplacian value for a mesh (name, "
      "icosphere:L, octahedron, torus-grid:N, or OFF/JSON file)");
  std::string lambda1_source, lambda1_quotient;
  bool lambda1_check_pullback = false;
  di::SpectralOptions solver;
  lambda1_cmd->add_option("source", lambda1_source, "space name, mesh spec, or mesh file")
      ->required();
  lambda1_cmd->add_option("--quotient", lambda1_quotient,
                          "identify vertices before solving: antipodal");
  lambda1_cmd->add_flag("--check-pullback", lambda1_check_pullback,
                        "also solve the cover and verify the eigenfunction pullback");
  lambda1_cmd->add_option("--budget-factor", solver.budget_factor,
                          "solver iteration budget per vertex")
      ->capture_default_str();

  // check-ideal
  auto* check_cmd = app.add_subcommand(
      "check-ideal",
      "Ideal-embedding criterion for a registered irreducible space: compare "
      "lambda1 against dimension times the normalized maximum invariant");
  std::string check_name;
  check_cmd->add_option("space", check_name, "registered space name")->required();

  // obstruct
  auto* obstruct_cmd = app.add_subcommand(
      "obstruct",
      "Covering obstruction: a covering with a strict eigenvalue gap rules "
      "out ideal embeddings of the base space in every codimension");
  std::string obstruct_cover, obstruct_base;
  obstruct_cmd->add_option("cover", obstruct_cover, "covering space name")->required();
  obstruct_cmd->add_option("base", obstruct_base, "base space name")->required();

  // verify-inequality
  auto* verify_cmd = app.add_subcommand(
      "verify-inequality",
      "Pointwise check of the sharp inequality delta <= c H^2 and of the "
      "ideality residual H^2 - delta0 for a built-in shape or sampled grid");
  std::string verify_shape = "sphere", verify_params, verify_grid;
  int verify_points = 500;
  bool verify_numeric = false;
  verify_cmd->add_option("--shape", verify_shape,
                         "built-in shape: sphere, plane, cylinder, torus, ellipsoid, clifford");
  verify_cmd->add_option("--params", verify_params, "comma-separated shape parameters");
  verify_cmd->add_option("--grid", verify_grid, "sampled-grid immersion JSON file");
  verify_cmd->add_option("--points", verify_points, "number of sample points")
      ->capture_default_str();
  verify_cmd->add_flag("--numeric", verify_numeric,
                       "use finite-difference derivatives even for built-ins");

  // Accept global options after the subcommand name too.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*delta_cmd) return run_delta(g, delta_tensor, delta_partition);
    if (*delta_max_cmd) return run_delta_max(g, delta_max_tensor);
    if (*coeff_cmd) return run_coeff(g, coeff_n);
    if (*lambda1_cmd) {
      solver.rng_seed = g.seed;
      return run_lambda1(g, lambda1_source, lambda1_quotient, lambda1_check_pullback,
                         solver);
    }
    if (*check_cmd) return run_check_ideal(g, check_name);
    if (*obstruct_cmd) return run_obstruct(g, obstruct_cover, obstruct_base);
    if (*verify_cmd) {
      return run_verify_inequality(g, verify_shape, verify_params, verify_grid,
                                   verify_points, verify_numeric);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
