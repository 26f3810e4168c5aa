#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "finsler/metric.hpp"

namespace finsler {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;
  double max_dev = 0.0;
  double tol = 0.0;
  std::string detail;
};

struct AcceptanceSummary {
  std::vector<CriterionResult> criteria;
  bool all_pass() const {
    for (const auto& c : criteria)
      if (!c.skipped && !c.pass) return false;
    return true;
  }
};

/// Runs the fixed verification suite (helicoid curvatures and internals,
/// Minkowski instances, navigation equivalence, constant flag curvature,
/// calculus core, the isoparametric verifier, and the classification rows).
/// Prints one PASS/FAIL/SKIP line per criterion to `log` when given.
/// In finite-difference mode each tolerance is relaxed to at least 1e-4.
AcceptanceSummary reproduce_paper(DerivMode mode = DerivMode::exact, std::ostream* log = nullptr);

}  // namespace finsler
