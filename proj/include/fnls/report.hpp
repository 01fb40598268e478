#pragma once

//============================================================================
// report.hpp
//
// Run configuration and structured reporting for the CLI.
//
//   * RunConfig: the full parameter tree (grid / phys / potential / solver /
//     output blocks), loadable from a JSON file; CLI flags override file
//     values field by field.  Validation failures raise ConfigError, which
//     the CLI maps to its dedicated exit code.
//
//   * Reports are ordered JSON trees under the schema tag "fnls-report/1".
//     All volatile content lives under exactly two keys -- "generated_at"
//     and "timing" -- so identical configs on identical builds produce
//     byte-identical reports once those keys are dropped.
//
//   * Writes are atomic: temp file in the target directory, then rename.
//
//   * Solver trajectories serialize to CSV with the fixed header
//     iteration,reduced_value,tangent_res,pohozaev_res,lambda.
//============================================================================

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "fnls/boundstate.hpp"
#include "fnls/params.hpp"
#include "fnls/potential.hpp"

namespace fnls {

using ordered_json = nlohmann::ordered_json;

// Malformed or out-of-window configuration; the CLI exits 3 on this.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct PotentialConfig {
  std::string family = "constant";  // "constant" | "inverse_power_well"
  double a0 = 1.0;                  // constant family
  double mu = 0.0;                  // well family
  double q = 1.0;
};

struct GridConfig {
  int d = 1;
  unsigned n = 256;
  double L = 30.0;
};

struct PhysConfig {
  double s = 1.0;
  double p = 3.0;
  double c_over_c0 = 1.0;
};

struct SolverBlock {
  double tol_grad = 1e-6;
  double tol_pohozaev = 1e-6;
  int max_iter = 3000;
  double h_max = 6.0;
  double linking_eps = 0.1;  // boundary headroom as a fraction of m_c
  int sampling_radial = 9;
  int sampling_h = 21;
  double petv_tol = 1e-10;
  int petv_max_iter = 2000;
};

struct OutputBlock {
  std::string out;     // field file
  std::string report;  // JSON report
  std::string csv;     // iteration series
  std::string svg;     // plot
};

struct RunConfig {
  GridConfig grid;
  PhysConfig phys;
  PotentialConfig potential;
  SolverBlock solver;
  OutputBlock output;
  unsigned seed = 0;
  int threads = 1;
};

// Parse a JSON config file; unknown keys are rejected (typo protection);
// every present field must have the right type.  Throws ConfigError.
RunConfig parse_config_file(const std::string& path);

// Same validation applied to an in-memory tree (the file loader calls this).
RunConfig parse_config_json(const ordered_json& j);

// Range/window validation beyond shape: grid constraints, tolerance
// positivity, potential parameter domains.  Throws ConfigError.
void validate_config(const RunConfig& cfg);

Potential make_potential(const PotentialConfig& pc);  // throws ConfigError

ordered_json config_to_json(const RunConfig& cfg);

// Report skeleton: {"schema": "fnls-report/1", "tool": ..., "generated_at":
// ..., "config": <echo>}.  generated_at is the one timestamp field.
ordered_json report_skeleton(const std::string& tool, const RunConfig& cfg);

// Serialize with 2-space indentation and a trailing newline, atomically
// (temp file + rename).  Throws on I/O failure.
void write_report_atomic(const std::string& path, const ordered_json& report);

// CSV with the fixed trajectory header; atomic like the report.
void write_trajectory_csv(const std::string& path,
                          const std::vector<IterRow>& rows);

// Strip the volatile keys ("generated_at" top-level, "timing" anywhere) so
// two reports can be compared for byte identity.
ordered_json strip_volatile(const ordered_json& report);

}  // namespace fnls
