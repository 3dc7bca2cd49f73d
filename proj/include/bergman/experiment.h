#pragma once

// Reproducible desk-scale experiments and the command-line driver around them.

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergman/json_io.h"
#include "bergman/poly.h"

namespace bergman {

/// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct ExperimentConfig {
  std::string kind;  // solve, converge, perturb-functional, perturb-element, ryabykh, certify
  double p = 2.0;
  Poly kernel;
  std::vector<int> degrees;
  std::vector<double> epsilons;
  Poly perturbation;
  std::vector<double> radii{0.5, 0.9, 0.99, 1.0};
  std::uint64_t seed = 0;
  int multistart = 1;
  std::string output_path;  // empty: standard output
  std::string format;       // csv or json; empty: per-kind default
  bool timing = false;      // adds a wall_time column (breaks byte-for-byte reproducibility)

  /// Throws ConfigError on any violated invariant.
  void validate() const;
  std::string effective_format() const;
};

json config_to_json(const ExperimentConfig& cfg);
/// Fields missing from `j` keep their value in `base`.
ExperimentConfig config_from_json(const json& j, ExperimentConfig base = {});

/// Parse "re:im,re:im,..." (a bare number is a real coefficient), or
/// "random:DEG" which draws a kernel from `rng`.
Poly parse_coefficients(const std::string& text, std::mt19937_64& rng);

/// Coefficients uniform in the complex unit square [0,1) x [0,1), scaled to
/// unit Euclidean coefficient norm.
Poly random_kernel(int degree, std::mt19937_64& rng);

struct RunRecord {
  std::string kind;
  std::vector<std::string> columns;  // scalar columns written to CSV
  std::vector<json> rows;
  std::vector<json> failures;        // violated runtime assertions
  json metadata;

  bool ok() const { return failures.empty(); }
  void fail(std::string check, std::string detail);

  std::string to_csv() const;
  json to_json(const ExperimentConfig& cfg) const;
};

// Runtime assertion thresholds, also reported in output metadata.
inline constexpr double kMonotoneSlack = 1e-10;
inline constexpr double kLimitThreshold = 1e-6;
inline constexpr double kSmallEpsilon = 1e-7;
inline constexpr double kResidualTol = 1e-7;
inline constexpr double kRyabykhSlack = -1e-8;

RunRecord run_solve(const ExperimentConfig& cfg);
RunRecord run_converge(const ExperimentConfig& cfg);
RunRecord run_perturb_functional(const ExperimentConfig& cfg);
RunRecord run_perturb_element(const ExperimentConfig& cfg);
RunRecord run_ryabykh(const ExperimentConfig& cfg);
RunRecord run_certify(const ExperimentConfig& cfg);

/// Dispatch on cfg.kind.
RunRecord run_experiment(const ExperimentConfig& cfg);

/// Full command-line entry point. Returns 0 on success, 1 when a runtime
/// assertion fails, 2 on a bad configuration.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bergman
