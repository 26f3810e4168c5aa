#pragma once

#include <memory>
#include <span>

#include "finsler/chart.hpp"
#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler {

/// Builds the unit-wind navigation metric from (h, W), probing the unit-wind
/// condition at the chart origin up front (NotUnitWind on failure). Per-point
/// checks continue at every later query.
std::shared_ptr<const KropinaModel> kropina_from_navigation(RiemannianChart chart, WindField wind);

/// Unit normal composition for metrics whose dual has (alpha,beta) shape:
/// given the base-metric unit normal nbar, returns
///   n = (phi - s phi') nbar + phi' beta*,   s = beta(nbar),
/// which is the F-unit normal annihilating the same tangent plane.
/// DomainViolation when s leaves the profile's admissible range.
Vec alpha_beta_normal(const MetricModel& model, std::span<const double> x,
                      std::span<const double> nbar);

/// Covariant-derivative split tensors of a wind field on (M, h) at x:
///   w_cov(i,j) = W_{i|j},  r = symmetric part,  s = skew part,
///   s_mixed(i,j) = h^{ik} s_kj.
struct NavTensors {
  Mat w_cov, r, s, s_mixed;
};
NavTensors nav_tensors(const RiemannianChart& chart, const WindField& wind,
                       std::span<const double> x);

struct KillingReport {
  bool pass = false;
  double max_r = 0.0;  // max |r_ij| over the samples
  std::vector<NavTensors> samples;
};

/// Checks that W generates isometries of h over the sample set: the
/// symmetrized covariant derivative must vanish (tolerance `tol`).
KillingReport killing_check(const RiemannianChart& chart, const WindField& wind,
                            std::span<const Vec> points, double tol = 1e-8);

}  // namespace finsler
