#include "bergman/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bergman/certify.h"
#include "bergman/quadrature.h"
#include "bergman/solver.h"

namespace bergman {

namespace {

constexpr const char* kVersion = "0.1.0";

const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"solve",           "converge", "perturb-functional",
                                          "perturb-element", "ryabykh",  "certify"};
  return k;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json grid_metadata(const DiskGrid& grid) {
  return json{{"radial_nodes", grid.radial_nodes().size()},
              {"angular_nodes", grid.angular_count()},
              {"total_nodes", grid.size()}};
}

json tolerance_metadata() {
  const SolverOptions defaults;
  return json{{"grad_tol", defaults.grad_tol},
              {"monotone_slack", kMonotoneSlack},
              {"limit_threshold", kLimitThreshold},
              {"small_epsilon", kSmallEpsilon},
              {"residual_tol", kResidualTol},
              {"ryabykh_slack", kRyabykhSlack}};
}

RunRecord make_record(const ExperimentConfig& cfg, std::vector<std::string> columns) {
  RunRecord rec;
  rec.kind = cfg.kind;
  rec.columns = std::move(columns);
  if (cfg.timing) rec.columns.push_back("wall_time");
  rec.metadata = json{{"tolerances", tolerance_metadata()}, {"version", kVersion}};
  return rec;
}

SolverOptions solver_options(const ExperimentConfig& cfg) {
  SolverOptions opts;
  opts.multistart_count = cfg.multistart;
  opts.seed = cfg.seed;
  return opts;
}

// Solve, turning solver errors into a status row entry. Returns nullopt on error.
std::optional<ExtremalSolution> guarded_solve(const KernelFunctional& phi, int n,
                                              const DiskGrid& grid, const SolverOptions& opts,
                                              json& row, RunRecord& rec) {
  try {
    auto sol = solve(phi, n, grid, opts);
    row["status"] = "ok";
    return sol;
  } catch (const NoAdmissiblePoint& e) {
    row["status"] = "NoAdmissiblePoint";
    row["error"] = e.what();
  } catch (const NotConverged& e) {
    row["status"] = "NotConverged";
    row["error"] = e.what();
    row["grad_norm"] = e.partial().grad_norm;
    row["iterations"] = e.partial().iterations;
  }
  rec.fail("row_error", row.dump());
  return std::nullopt;
}

void finish_row(const ExperimentConfig& cfg, json& row, const Stopwatch& sw) {
  if (cfg.timing) row["wall_time"] = sw.seconds();
}

// Column values of the rows whose status is ok.
std::vector<double> column(const RunRecord& rec, const std::string& name) {
  std::vector<double> out;
  for (const auto& r : rec.rows)
    if (r.value("status", "ok") == "ok" && r.contains(name) && r[name].is_number())
      out.push_back(r[name].get<double>());
  return out;
}

void check_nondecreasing(RunRecord& rec, const std::string& name) {
  const auto v = column(rec, name);
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1] - kMonotoneSlack)
      rec.fail(name + "_nondecreasing", "row " + std::to_string(i) + ": " + format_number(v[i]) +
                                            " < " + format_number(v[i - 1]));
}

void check_nonincreasing(RunRecord& rec, const std::string& name) {
  const auto v = column(rec, name);
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + kMonotoneSlack)
      rec.fail(name + "_nonincreasing", "row " + std::to_string(i) + ": " + format_number(v[i]) +
                                            " > " + format_number(v[i - 1]));
}

void check_strictly_decreasing(RunRecord& rec, const std::string& name) {
  const auto v = column(rec, name);
  for (size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1]))
      rec.fail(name + "_decreasing", "row " + std::to_string(i) + ": " + format_number(v[i]) +
                                         " >= " + format_number(v[i - 1]));
}

// Limit assertion for the epsilon sweeps.
void check_limit(RunRecord& rec, const ExperimentConfig& cfg, const std::string& name) {
  const double smallest = *std::min_element(cfg.epsilons.begin(), cfg.epsilons.end());
  if (smallest > kSmallEpsilon) return;
  const auto v = column(rec, name);
  if (v.empty() || !(v.back() < kLimitThreshold))
    rec.fail(name + "_limit", "final entry " + (v.empty() ? std::string("missing") : format_number(v.back())) +
                                  " not below " + format_number(kLimitThreshold));
}

int sweep_degree(const ExperimentConfig& cfg) { return cfg.degrees.back(); }

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const {
  if (std::find(kinds().begin(), kinds().end(), kind) == kinds().end())
    throw ConfigError("unknown experiment kind '" + kind + "'");
  if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p must satisfy 1 < p < inf");
  if (kernel.is_zero()) throw ConfigError("kernel must be a nonzero polynomial");
  if (degrees.empty()) throw ConfigError("at least one degree is required");
  for (size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 0) throw ConfigError("degrees must be nonnegative");
    if (i > 0 && degrees[i] <= degrees[i - 1]) throw ConfigError("degrees must be strictly increasing");
  }
  const bool sweeps_eps = kind == "perturb-functional" || kind == "perturb-element";
  if (sweeps_eps && epsilons.empty()) throw ConfigError(kind + " needs at least one epsilon");
  for (size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0)) throw ConfigError("epsilons must be nonnegative");
    if (i > 0 && epsilons[i] >= epsilons[i - 1]) throw ConfigError("epsilons must be strictly decreasing");
  }
  if (sweeps_eps && perturbation.is_zero()) throw ConfigError(kind + " needs a nonzero perturbation");
  for (double r : radii)
    if (!(r > 0.0 && r <= 1.0)) throw ConfigError("radii must lie in (0, 1]");
  if (multistart < 1) throw ConfigError("multistart must be >= 1");
  if (!format.empty() && format != "csv" && format != "json") throw ConfigError("format must be csv or json");
}

std::string ExperimentConfig::effective_format() const {
  if (!format.empty()) return format;
  return (kind == "solve" || kind == "certify") ? "json" : "csv";
}

json config_to_json(const ExperimentConfig& cfg) {
  json j{{"kind", cfg.kind},         {"p", cfg.p},           {"kernel", cfg.kernel},
         {"degrees", cfg.degrees},   {"epsilons", cfg.epsilons}, {"perturbation", cfg.perturbation},
         {"radii", cfg.radii},       {"seed", cfg.seed},     {"multistart", cfg.multistart}};
  return j;
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  std::mt19937_64 rng(j.value("seed", base.seed));
  auto poly_field = [&](const char* key, Poly& out) {
    if (!j.contains(key)) return;
    if (j[key].is_string()) {
      out = parse_coefficients(j[key].get<std::string>(), rng);
    } else {
      try {
        out = j[key].get<Poly>();
      } catch (const std::exception& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
      }
    }
  };
  try {
    if (j.contains("kind")) base.kind = j["kind"].get<std::string>();
    if (j.contains("p")) base.p = j["p"].get<double>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    poly_field("kernel", base.kernel);
    poly_field("perturbation", base.perturbation);
    if (j.contains("degrees")) base.degrees = j["degrees"].get<std::vector<int>>();
    if (j.contains("epsilons")) base.epsilons = j["epsilons"].get<std::vector<double>>();
    if (j.contains("radii")) base.radii = j["radii"].get<std::vector<double>>();
    if (j.contains("multistart")) base.multistart = j["multistart"].get<int>();
    if (j.contains("output_path")) base.output_path = j["output_path"].get<std::string>();
    if (j.contains("format")) base.format = j["format"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  return base;
}

Poly random_kernel(int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> c(static_cast<size_t>(degree + 1));
  double norm = 0.0;
  for (auto& x : c) {
    const double re = unit(rng);
    x = {re, unit(rng)};
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : c) x /= norm;
  return Poly(std::move(c));
}

Poly parse_coefficients(const std::string& text, std::mt19937_64& rng) {
  const std::string t = trim(text);
  if (t.rfind("random:", 0) == 0) {
    const double d = parse_double(t.substr(7));
    if (d < 0 || d != std::floor(d)) throw ConfigError("random degree must be a nonnegative integer");
    return random_kernel(static_cast<int>(d), rng);
  }
  std::vector<cplx> c;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty coefficient in '" + text + "'");
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      c.emplace_back(parse_double(item), 0.0);
    } else {
      c.emplace_back(parse_double(trim(item.substr(0, colon))), parse_double(trim(item.substr(colon + 1))));
    }
  }
  if (c.empty()) throw ConfigError("no coefficients in '" + text + "'");
  return Poly(std::move(c));
}

// ---------------------------------------------------------------------------
// Records

void RunRecord::fail(std::string check, std::string detail) {
  failures.push_back(json{{"check", std::move(check)}, {"detail", std::move(detail)}});
}

std::string RunRecord::to_csv() const {
  std::string out;
  for (size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      if (!r.contains(columns[i])) continue;
      const auto& v = r[columns[i]];
      if (v.is_number_float()) out += format_number(v.get<double>());
      else if (v.is_number()) out += v.dump();
      else if (v.is_string()) out += v.get<std::string>();
      else out += "\"" + v.dump() + "\"";
    }
    out += "\n";
  }
  return out;
}

json RunRecord::to_json(const ExperimentConfig& cfg) const {
  return json{{"config", config_to_json(cfg)},
              {"rows", rows},
              {"failures", failures},
              {"metadata", metadata}};
}

// ---------------------------------------------------------------------------
// Experiments

RunRecord run_solve(const ExperimentConfig& cfg) {
  cfg.validate();
  RunRecord rec = make_record(cfg, {"degree", "status", "phi_norm_n", "grad_norm", "iterations", "max_residual"});
  const KernelFunctional phi(cfg.kernel, Exponent(cfg.p));
  json grids = json::array();
  for (int n : cfg.degrees) {
    Stopwatch sw;
    const DiskGrid grid = make_disk_grid(n, phi.exponent());
    grids.push_back(grid_metadata(grid));
    json row{{"degree", n}};
    if (auto sol = guarded_solve(phi, n, grid, solver_options(cfg), row, rec)) {
      const auto cert = extremality_residual(sol->f_hat, phi, sol->phi_norm_n, n, grid);
      json s = *sol;
      for (auto& [k, v] : s.items()) row[k] = v;
      row["max_residual"] = cert.max_residual;
      row["multistart_spread"] = sol->multistart_spread;
    }
    finish_row(cfg, row, sw);
    rec.rows.push_back(std::move(row));
  }
  rec.metadata["grids"] = grids;
  return rec;
}

RunRecord run_converge(const ExperimentConfig& cfg) {
  cfg.validate();
  RunRecord rec = make_record(cfg, {"n", "status", "phi_norm_n", "increment", "dist_f_hat", "dist_f_star",
                                    "max_residual", "grad_norm", "iterations"});
  const KernelFunctional phi(cfg.kernel, Exponent(cfg.p));
  const int top = cfg.degrees.back();
  // One grid for the whole sweep keeps the discretized subspace problems nested.
  const DiskGrid grid = make_disk_grid(top, phi.exponent());
  rec.metadata["grid"] = grid_metadata(grid);

  std::vector<std::optional<ExtremalSolution>> sols;
  std::vector<double> times;
  for (int n : cfg.degrees) {
    Stopwatch sw;
    json row{{"n", n}};
    sols.push_back(guarded_solve(phi, n, grid, solver_options(cfg), row, rec));
    times.push_back(sw.seconds());
    rec.rows.push_back(std::move(row));
  }

  const auto& last = sols.back();
  std::optional<double> prev_norm;
  for (size_t i = 0; i < sols.size(); ++i) {
    json& row = rec.rows[i];
    if (!sols[i]) continue;
    const auto& s = *sols[i];
    row["phi_norm_n"] = s.phi_norm_n;
    row["increment"] = prev_norm ? s.phi_norm_n - *prev_norm : 0.0;
    prev_norm = s.phi_norm_n;
    if (last) {
      row["dist_f_hat"] = ap_norm(s.f_hat - last->f_hat, phi.exponent(), grid);
      row["dist_f_star"] = ap_norm(s.f_star - last->f_star, phi.exponent(), grid);
    }
    row["max_residual"] = extremality_residual(s.f_hat, phi, s.phi_norm_n, s.degree, grid).max_residual;
    row["grad_norm"] = s.grad_norm;
    row["iterations"] = s.iterations;
    if (cfg.timing) row["wall_time"] = times[i];
  }

  check_nondecreasing(rec, "phi_norm_n");
  check_nonincreasing(rec, "dist_f_hat");
  check_nonincreasing(rec, "dist_f_star");
  // For p = 2 the extremal is the normalized kernel, so it lies in every
  // subspace that contains the kernel and the sweep must stabilize.
  const bool stabilizes = std::abs(cfg.p - 2.0) < 1e-15 && cfg.kernel.degree() <= cfg.degrees.front();
  rec.metadata["stabilization_asserted"] = stabilizes;
  if (stabilizes && rec.rows.size() >= 2) {
    const json& row = rec.rows[rec.rows.size() - 2];
    for (const char* name : {"dist_f_hat", "dist_f_star"}) {
      if (!row.contains(name) || !(row[name].get<double>() < kLimitThreshold))
        rec.fail(std::string(name) + "_stabilized", row.dump());
    }
  }
  return rec;
}

RunRecord run_perturb_functional(const ExperimentConfig& cfg) {
  cfg.validate();
  RunRecord rec = make_record(cfg, {"epsilon", "status", "phi_norm_n", "dist_f_hat", "dist_f_star"});
  const Exponent p(cfg.p);
  const int n = sweep_degree(cfg);
  const DiskGrid grid = make_disk_grid(n, p);
  rec.metadata["grid"] = grid_metadata(grid);
  rec.metadata["degree"] = n;

  const KernelFunctional phi0(cfg.kernel, p);
  json base_row{{"epsilon", 0.0}};
  const auto base = guarded_solve(phi0, n, grid, solver_options(cfg), base_row, rec);
  if (!base) {
    rec.rows.push_back(std::move(base_row));
    return rec;
  }
  rec.metadata["base_phi_norm_n"] = base->phi_norm_n;

  for (double eps : cfg.epsilons) {
    Stopwatch sw;
    json row{{"epsilon", eps}};
    const Poly g = cfg.kernel + cplx(eps) * cfg.perturbation;
    if (g.is_zero()) {
      row["status"] = "ZeroKernel";
      rec.fail("row_error", row.dump());
    } else if (auto s = guarded_solve(KernelFunctional(g, p), n, grid, solver_options(cfg), row, rec)) {
      row["phi_norm_n"] = s->phi_norm_n;
      row["dist_f_hat"] = ap_norm(s->f_hat - base->f_hat, p, grid);
      row["dist_f_star"] = ap_norm(s->f_star - base->f_star, p, grid);
    }
    finish_row(cfg, row, sw);
    rec.rows.push_back(std::move(row));
  }
  check_strictly_decreasing(rec, "dist_f_hat");
  check_strictly_decreasing(rec, "dist_f_star");
  check_limit(rec, cfg, "dist_f_hat");
  check_limit(rec, cfg, "dist_f_star");
  return rec;
}

RunRecord run_perturb_element(const ExperimentConfig& cfg) {
  cfg.validate();
  RunRecord rec = make_record(cfg, {"epsilon", "status", "moment_dist"});
  const Exponent p(cfg.p);
  const int n = sweep_degree(cfg);
  const DiskGrid grid = make_disk_grid(n, p);
  rec.metadata["grid"] = grid_metadata(grid);
  rec.metadata["degree"] = n;

  const KernelFunctional phi(cfg.kernel, p);
  json base_row{{"epsilon", 0.0}};
  const auto base = guarded_solve(phi, n, grid, solver_options(cfg), base_row, rec);
  if (!base) {
    rec.rows.push_back(std::move(base_row));
    return rec;
  }
  const Poly& f0 = base->f_star;
  const RecoveredFunctional psi0 = recover_functional(f0, p, n, grid);
  double round_trip = 0.0;
  for (int j = 0; j <= n; ++j) round_trip = std::max(round_trip, std::abs(psi0.moments[j] - apply_monomial(phi, j)));
  rec.metadata["round_trip_error"] = round_trip;
  if (!(round_trip <= kResidualTol)) rec.fail("round_trip", format_number(round_trip));

  for (double eps : cfg.epsilons) {
    Stopwatch sw;
    json row{{"epsilon", eps}};
    const Poly f = f0 + cplx(eps) * cfg.perturbation.truncated(n);
    if (f.is_zero()) {
      row["status"] = "ZeroElement";
      rec.fail("row_error", row.dump());
    } else {
      const RecoveredFunctional psi = recover_functional(f, p, n, grid);
      double d = 0.0;
      for (int j = 0; j <= n; ++j) d = std::max(d, std::abs(psi.moments[j] - psi0.moments[j]));
      row["status"] = "ok";
      row["moment_dist"] = d;
    }
    finish_row(cfg, row, sw);
    rec.rows.push_back(std::move(row));
  }
  check_strictly_decreasing(rec, "moment_dist");
  check_limit(rec, cfg, "moment_dist");
  return rec;
}

RunRecord run_ryabykh(const ExperimentConfig& cfg) {
  cfg.validate();
  RunRecord rec = make_record(cfg, {"degree", "status", "r", "lhs", "rhs", "slack"});
  const KernelFunctional phi(cfg.kernel, Exponent(cfg.p));
  const auto mink = minkowski_check(cfg.kernel, phi.exponent().q());
  rec.metadata["minkowski"] = json{{"G_hq_norm", mink.first}, {"g_hq_norm", mink.second}};
  for (int n : cfg.degrees) {
    Stopwatch sw;
    const DiskGrid grid = make_disk_grid(n, phi.exponent());
    json status_row{{"degree", n}};
    const auto sol = guarded_solve(phi, n, grid, solver_options(cfg), status_row, rec);
    if (!sol) {
      finish_row(cfg, status_row, sw);
      rec.rows.push_back(std::move(status_row));
      continue;
    }
    const BoundReport rep = ryabykh_check(*sol, phi, cfg.radii);
    for (size_t i = 0; i < rep.r_values.size(); ++i) {
      json row{{"degree", n},        {"status", "ok"},  {"r", rep.r_values[i]},
               {"lhs", rep.lhs[i]},  {"rhs", rep.rhs},  {"slack", rep.rhs - rep.lhs[i]}};
      finish_row(cfg, row, sw);
      rec.rows.push_back(std::move(row));
    }
    if (rep.slack < kRyabykhSlack)
      rec.fail("ryabykh_slack", "degree " + std::to_string(n) + ": slack " + format_number(rep.slack));
  }
  return rec;
}

RunRecord run_certify(const ExperimentConfig& cfg) {
  cfg.validate();
  RunRecord rec = make_record(cfg, {"degree", "status", "phi_norm_n", "max_residual", "recovery_error"});
  const KernelFunctional phi(cfg.kernel, Exponent(cfg.p));
  for (int n : cfg.degrees) {
    Stopwatch sw;
    const DiskGrid grid = make_disk_grid(n, phi.exponent());
    json row{{"degree", n}};
    if (auto sol = guarded_solve(phi, n, grid, solver_options(cfg), row, rec)) {
      const Certificate cert = extremality_residual(sol->f_hat, phi, sol->phi_norm_n, n, grid);
      const RecoveredFunctional psi = recover_functional(sol->f_star, phi.exponent(), n, grid);
      double rec_err = 0.0;
      for (int j = 0; j <= n; ++j) rec_err = std::max(rec_err, std::abs(psi.moments[j] - apply_monomial(phi, j)));
      row["phi_norm_n"] = sol->phi_norm_n;
      row["max_residual"] = cert.max_residual;
      row["recovery_error"] = rec_err;
      row["certificate"] = cert;
      row["recovered"] = psi;
      if (!(cert.max_residual <= kResidualTol))
        rec.fail("extremality_residual", "degree " + std::to_string(n) + ": " + format_number(cert.max_residual));
      if (!(rec_err <= kResidualTol))
        rec.fail("recovery_error", "degree " + std::to_string(n) + ": " + format_number(rec_err));
    }
    finish_row(cfg, row, sw);
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

RunRecord run_experiment(const ExperimentConfig& cfg) {
  static const std::vector<std::pair<std::string, std::function<RunRecord(const ExperimentConfig&)>>> table{
      {"solve", run_solve},
      {"converge", run_converge},
      {"perturb-functional", run_perturb_functional},
      {"perturb-element", run_perturb_element},
      {"ryabykh", run_ryabykh},
      {"certify", run_certify}};
  for (const auto& [name, fn] : table)
    if (name == cfg.kind) return fn(cfg);
  throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
}

// ---------------------------------------------------------------------------
// CLI

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal problems for linear functionals on Bergman spaces"};
  app.name("bergman_lab");

  std::string command, config_path, p_text, kernel_text, perturbation_text, format, out_path;
  std::vector<int> degrees;
  std::vector<double> epsilons, radii;
  std::uint64_t seed = 0;
  int multistart = 1;
  bool timing = false;

  app.add_option("command", command, "solve | converge | perturb-functional | perturb-element | ryabykh | certify")
      ->required()
      ->check(CLI::IsMember(kinds()));
  app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--p", p_text, "Bergman exponent, 1 < p < inf");
  app.add_option("--kernel", kernel_text, "kernel coefficients re:im,... or random:DEG");
  app.add_option("--perturbation", perturbation_text, "perturbation coefficients re:im,... or random:DEG");
  app.add_option("--degrees", degrees, "comma-separated strictly increasing degrees")->delimiter(',');
  app.add_option("--epsilons", epsilons, "comma-separated strictly decreasing epsilons")->delimiter(',');
  app.add_option("--radii", radii, "radii in (0,1] for ryabykh")->delimiter(',');
  auto* seed_opt = app.add_option("--seed", seed, "seed for random kernels and multistart");
  auto* ms_opt = app.add_option("--multistart", multistart, "number of solver starts");
  app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--timing", timing, "add a wall_time column");

  std::vector<const char*> argv{"bergman_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("cannot parse config: ") + e.what());
      }
      cfg = config_from_json(j);
      if (!cfg.kind.empty() && cfg.kind != command)
        throw ConfigError("config kind '" + cfg.kind + "' does not match command '" + command + "'");
    }
    cfg.kind = command;
    if (*seed_opt) cfg.seed = seed;
    if (*ms_opt) cfg.multistart = multistart;
    if (!p_text.empty()) cfg.p = parse_double(p_text);
    else if (config_path.empty()) throw ConfigError("--p is required");
    std::mt19937_64 rng(cfg.seed);
    if (!kernel_text.empty()) cfg.kernel = parse_coefficients(kernel_text, rng);
    if (!perturbation_text.empty()) cfg.perturbation = parse_coefficients(perturbation_text, rng);
    if (!degrees.empty()) cfg.degrees = degrees;
    if (!epsilons.empty()) cfg.epsilons = epsilons;
    if (!radii.empty()) cfg.radii = radii;
    if (!out_path.empty()) cfg.output_path = out_path;
    if (!format.empty()) cfg.format = format;
    cfg.timing = timing;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    err << "bad config: " << e.what() << "\n" << app.help();
    return 2;
  }

  RunRecord rec;
  try {
    rec = run_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    err << "bad config: " << e.what() << "\n";
    return 2;
  }

  const std::string text =
      cfg.effective_format() == "json" ? rec.to_json(cfg).dump(2) + "\n" : rec.to_csv();
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "cannot write " << cfg.output_path << "\n";
      return 2;
    }
    file << text;
  }
  if (!rec.ok()) {
    err << json{{"failures", rec.failures}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace bergman
