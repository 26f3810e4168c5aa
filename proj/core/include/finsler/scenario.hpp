#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finsler/field.hpp"
#include "finsler/immersion.hpp"
#include "finsler/isoparametric.hpp"
#include "finsler/metric.hpp"
#include "finsler/shape.hpp"

namespace finsler {

inline constexpr const char* kToolVersion = "0.1.0";

struct GridSpec {
  double lo = 0.0, hi = 1.0;
  int count = 5;
  Vec values() const {
    Vec v(count);
    for (int i = 0; i < count; ++i)
      v[i] = (count == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (count - 1);
    return v;
  }
};

/// A declarative job: metric, optional volume/surface/field, grids, tolerance,
/// and the seed that makes every sampled sub-check reproducible.
struct Scenario {
  uint64_t seed = 42;
  double tol = 1e-6;
  DerivMode mode = DerivMode::exact;
  ModelPtr model;
  std::optional<VolumeForm> volume;
  std::optional<Immersion> surface;
  GridSpec ugrid, vgrid;
  CoOrientation orientation = CoOrientation::frame();
  std::optional<ScalarField> field;
  Vec levels;
  int samples_per_level = 10;
  SeedBox box;
  std::string echo;  // canonical JSON echo of the parsed input
};

/// Parses a scenario from JSON text. BadScenario on malformed input.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_dev = 0.0;
  double tol = 0.0;
  std::string detail;
  std::vector<std::string> warnings;
  /// numeric payload rows (e.g. per-sample principal curvatures)
  std::vector<std::pair<std::string, Vec>> payload;
  /// offending sample and the two compared values, set on failure
  std::string failure;
};

struct RunReport {
  std::string command;
  bool pass = false;
  int exit_code = 0;
  std::vector<CheckResult> checks;
  double wall_ms = 0.0;
  std::string scenario_echo;
  std::string to_json() const;
};

/// Commands: validate-metric, surface-report, isoparametric-check,
/// kropina-compare, reproduce-paper. Exit code 0 pass / 1 failed checks /
/// 2 configuration error (the thrower reports through the Error code).
RunReport run_command(const std::string& command, const Scenario& scenario);

}  // namespace finsler
