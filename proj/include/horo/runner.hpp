#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "horo/admissibility.hpp"

namespace horo {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Invalid configuration (unknown check, bad schema, bad parameters).
/// Mapped to exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One verification suite configuration, parsed from schema-1 JSON.
struct RunConfig {
  int n = 3;
  std::uint64_t seed = 1;
  int grid = 200;                      // samples per check
  std::optional<double> tol_override;  // forces every tolerance
  std::vector<std::string> checks;     // empty = all registered checks
  std::map<std::string, double> tolerances;

  // surface fixture
  std::string family = "geodesic_sphere";
  Vec center;         // sphere center (ambient), defaults to the base point
  double radius = 1.0;
  Vec pole;           // hyperplane / equidistant pole (ambient)
  double distance = 0.5;
  Vec semi_axes;      // klein_quadric

  bool has_factor = false;
  std::vector<ConformalFactor::Term> factor_terms;

  // outputs
  std::string report_json, report_csv, mesh_off;
  std::string mesh_model = "poincare";
  int mesh_rows = 20, mesh_cols = 40;

  nlohmann::json echo;  // the raw config, echoed into reports

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);

  SurfaceFamily build_surface() const;
  ConformalFactor build_factor() const;  // seeded default when absent
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  double timing_ms = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  bool overall_pass = true;
  nlohmann::json extra;  // verb-specific payload (admissibility, roundtrip, ...)

  nlohmann::json to_json(const RunConfig& cfg, double total_ms) const;
  std::string to_csv() const;
  void write(const RunConfig& cfg, double total_ms) const;
};

/// Names of all registered verification checks, in execution order.
const std::vector<std::string>& registered_checks();

/// Run the configured identity checks; deterministic given the seed.
Report run_verify(const RunConfig& cfg);

/// Dualize the configured surface over a sample grid; extra payload holds
/// per-sample dual data summaries.
Report run_dualize(const RunConfig& cfg);

/// Admissibility report of the configured factor.
Report run_admissible(const RunConfig& cfg);

/// Admissibility + reconstruction + round trip (+ optional mesh export).
Report run_reconstruct(const RunConfig& cfg);

/// Write an OFF mesh of the surface in the chosen ball model; the vertex
/// count equals rows*cols.
void export_mesh(const SurfaceFamily& fam, const std::string& path,
                 const std::string& model, int rows, int cols);

}  // namespace horo
