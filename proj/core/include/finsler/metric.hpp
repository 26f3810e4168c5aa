#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "finsler/chart.hpp"
#include "finsler/errors.hpp"
#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"
#include "finsler/phi.hpp"
#include "finsler/rng.hpp"

namespace finsler {

enum class DerivMode { exact, finite_difference };

/// Data needed to compose a unit normal out of a base-metric normal when the
/// dual metric has (alpha,beta) shape F* = alpha* phi(beta*/alpha*):
/// the base chart (alpha), the beta* vector field value, the profile, and the
/// profile's s-range half-width.
struct AlphaBetaDualView {
  const RiemannianChart* chart;
  Vec beta_star;  // vector components of beta* at the queried point
  PhiFamily phi;
  double b0;
};

/// A conic Finsler metric in a single coordinate chart. Concrete variants
/// implement whichever sides have closed forms:
///   - primal side:  F^2(x, y) on the cone
///   - dual side:    F*^2(x, xi) on the dual cone
/// At least one side is always evaluable; the Legendre machinery bridges the
/// missing one with a damped Newton solve.
class MetricModel {
 public:
  virtual ~MetricModel() = default;

  int dim() const { return dim_; }
  const std::string& kind() const { return kind_; }

  void check_dim(std::span<const double> v, const char* what) const {
    require(static_cast<int>(v.size()) == dim_, Err::dimension_mismatch, what);
  }

  // --- primal side ---
  virtual bool primal_evaluable() const = 0;
  /// Strict cone membership; the zero vector is never a member.
  virtual bool in_cone(std::span<const double> x, std::span<const double> y) const = 0;
  virtual double f2(std::span<const double> x, std::span<const double> y) const;
  virtual Jet f2_jet(std::span<const Jet> x, std::span<const Jet> y) const;

  // --- dual side ---
  virtual bool has_closed_dual() const = 0;
  virtual bool in_dual_cone(std::span<const double> x, std::span<const double> xi) const;
  virtual double dual_f2(std::span<const double> x, std::span<const double> xi) const;
  virtual Jet dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const;

  /// True when F has no x-dependence (Minkowski): spray and curvature vanish.
  virtual bool x_independent() const = 0;

  virtual const RiemannianChart* base_chart() const { return nullptr; }
  virtual const WindField* navigation_wind() const { return nullptr; }
  virtual std::optional<AlphaBetaDualView> dual_view(std::span<const double> x) const {
    (void)x;
    return std::nullopt;
  }

  /// Newton seeds for the side lacking a closed form.
  virtual Vec dual_seed(std::span<const double> x, std::span<const double> y) const;
  virtual Vec primal_seed(std::span<const double> x, std::span<const double> xi) const;

  /// Draw a vector strictly inside the cone at x (rejection by default).
  virtual Vec sample_cone(std::span<const double> x, Rng& rng) const;
  virtual Vec sample_dual_cone(std::span<const double> x, Rng& rng) const;

 protected:
  MetricModel(std::string kind, int dim) : kind_(std::move(kind)), dim_(dim) {
    require(dim >= 2, Err::dimension_mismatch, "metric dimension must be >= 2");
  }

 private:
  std::string kind_;
  int dim_;
};

using ModelPtr = std::shared_ptr<const MetricModel>;

/// F(x,y) = |y| on R^m.
class EuclideanModel final : public MetricModel {
 public:
  explicit EuclideanModel(int dim);
  bool primal_evaluable() const override { return true; }
  bool in_cone(std::span<const double> x, std::span<const double> y) const override;
  double f2(std::span<const double> x, std::span<const double> y) const override;
  Jet f2_jet(std::span<const Jet> x, std::span<const Jet> y) const override;
  bool has_closed_dual() const override { return true; }
  bool in_dual_cone(std::span<const double> x, std::span<const double> xi) const override;
  double dual_f2(std::span<const double> x, std::span<const double> xi) const override;
  Jet dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const override;
  bool x_independent() const override { return true; }
  const RiemannianChart* base_chart() const override { return &chart_; }
  std::optional<AlphaBetaDualView> dual_view(std::span<const double> x) const override;

 private:
  RiemannianChart chart_;
};

/// F(x,y) = sqrt(h_ij(x) y^i y^j) for a chart metric h.
class RiemannianModel final : public MetricModel {
 public:
  explicit RiemannianModel(RiemannianChart chart);
  bool primal_evaluable() const override { return true; }
  bool in_cone(std::span<const double> x, std::span<const double> y) const override;
  double f2(std::span<const double> x, std::span<const double> y) const override;
  Jet f2_jet(std::span<const Jet> x, std::span<const Jet> y) const override;
  bool has_closed_dual() const override { return true; }
  bool in_dual_cone(std::span<const double> x, std::span<const double> xi) const override;
  double dual_f2(std::span<const double> x, std::span<const double> xi) const override;
  Jet dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const override;
  bool x_independent() const override { return chart_.flat(); }
  const RiemannianChart* base_chart() const override { return &chart_; }
  std::optional<AlphaBetaDualView> dual_view(std::span<const double> x) const override;

 private:
  RiemannianChart chart_;
};

/// Unit-wind navigation metric F = h^2 / (2 W_0) with cone {W_0 > 0} and
/// closed dual F* = h* + W^0. The wind must have unit h-length; this is
/// checked at every queried point (tolerance 1e-9) and violations raise
/// NotUnitWind instead of silently renormalizing.
class KropinaModel final : public MetricModel {
 public:
  KropinaModel(RiemannianChart chart, WindField wind);
  bool primal_evaluable() const override { return true; }
  bool in_cone(std::span<const double> x, std::span<const double> y) const override;
  double f2(std::span<const double> x, std::span<const double> y) const override;
  Jet f2_jet(std::span<const Jet> x, std::span<const Jet> y) const override;
  bool has_closed_dual() const override { return true; }
  bool in_dual_cone(std::span<const double> x, std::span<const double> xi) const override;
  double dual_f2(std::span<const double> x, std::span<const double> xi) const override;
  Jet dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const override;
  bool x_independent() const override { return chart_.flat() && wind_.is_constant(); }
  const RiemannianChart* base_chart() const override { return &chart_; }
  const WindField* navigation_wind() const override { return &wind_; }
  std::optional<AlphaBetaDualView> dual_view(std::span<const double> x) const override;
  Vec sample_cone(std::span<const double> x, Rng& rng) const override;
  Vec sample_dual_cone(std::span<const double> x, Rng& rng) const override;

  void check_unit_wind(std::span<const double> x) const;
  /// W_0(x, y) = h(W, y)
  double wind_pairing(std::span<const double> x, std::span<const double> y) const;

 private:
  RiemannianChart chart_;
  WindField wind_;
};

/// Conic (alpha,beta) metric F = alpha phi(beta/alpha) given by a base chart,
/// a constant 1-form beta, a profile family, and the bound b0.
class AlphaBetaModel final : public MetricModel {
 public:
  AlphaBetaModel(RiemannianChart chart, Vec beta_covector, PhiFamily phi, double b0);
  bool primal_evaluable() const override { return true; }
  bool in_cone(std::span<const double> x, std::span<const double> y) const override;
  double f2(std::span<const double> x, std::span<const double> y) const override;
  Jet f2_jet(std::span<const Jet> x, std::span<const Jet> y) const override;
  bool has_closed_dual() const override;
  bool in_dual_cone(std::span<const double> x, std::span<const double> xi) const override;
  double dual_f2(std::span<const double> x, std::span<const double> xi) const override;
  Jet dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const override;
  bool x_independent() const override { return chart_.flat(); }
  const RiemannianChart* base_chart() const override { return &chart_; }
  Vec primal_seed(std::span<const double> x, std::span<const double> xi) const override;
  Vec sample_cone(std::span<const double> x, Rng& rng) const override;

  const PhiFamily& profile() const { return phi_; }
  double b0() const { return b0_; }
  /// s = beta(y)/alpha(y)
  double s_value(std::span<const double> x, std::span<const double> y) const;
  void check_beta_bound(std::span<const double> x) const;

 private:
  RiemannianChart chart_;
  Vec beta_;
  PhiFamily phi_;
  double b0_;
};

/// The screw-invariant Minkowski metric on R^3 given through its explicit
/// dual norm
///   F*(xi) = sqrt(P) - a xi_3 atan(sqrt(P)/(a xi_3)),  P = xi_1^2+xi_2^2-a^2 xi_3^2,
/// on the dual cone {P > 0, xi_3 != 0}. The primal cone is the open shell
///   0 < (4/(pi^2 a^2)) (y^3)^2 < (y^1)^2+(y^2)^2 < (1/a^2)(y^3)^2.
/// Primal evaluations run through the Newton bridge; the metric is
/// x-independent so all connection data vanishes.
class HelicoidMetric final : public MetricModel {
 public:
  HelicoidMetric(double a, double b);
  bool primal_evaluable() const override { return false; }
  bool in_cone(std::span<const double> x, std::span<const double> y) const override;
  bool has_closed_dual() const override { return true; }
  bool in_dual_cone(std::span<const double> x, std::span<const double> xi) const override;
  double dual_f2(std::span<const double> x, std::span<const double> xi) const override;
  Jet dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const override;
  bool x_independent() const override { return true; }
  const RiemannianChart* base_chart() const override { return &chart_; }
  std::optional<AlphaBetaDualView> dual_view(std::span<const double> x) const override;
  Vec dual_seed(std::span<const double> x, std::span<const double> y) const override;
  Vec sample_cone(std::span<const double> x, Rng& rng) const override;
  Vec sample_dual_cone(std::span<const double> x, Rng& rng) const override;

  double a() const { return a_; }
  double b() const { return b_; }
  const PhiFamily& profile() const { return phi_; }

 private:
  double a_, b_;
  PhiFamily phi_;
  RiemannianChart chart_;
};

/// F*(xi) of the screw-space metric as a free function (also exposed on the
/// model). Throws DualConeViolation outside {xi_1^2+xi_2^2 > a^2 xi_3^2, xi_3 != 0}.
double helicoid_dual_metric(double a, std::span<const double> xi);

}  // namespace finsler
