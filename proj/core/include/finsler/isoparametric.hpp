#pragma once

#include <span>
#include <string>
#include <vector>

#include "finsler/field.hpp"
#include "finsler/metric.hpp"
#include "finsler/rng.hpp"

namespace finsler {

/// Sampling box for the level-set point generator.
struct SeedBox {
  Vec lo, hi;
};

struct LevelSetSample {
  double level = 0.0;
  std::vector<Vec> points;
  Vec grad_norm;   // F(grad f) per point
  Vec lap_hat;     // reference-Hessian trace per point
  Vec lap_sigma;   // hat - S(grad f)
  Vec div_sigma;   // independent divergence form
  double spread_grad = 0.0, spread_hat = 0.0, spread_sigma = 0.0;
  double mean_grad = 0.0, mean_hat = 0.0, mean_sigma = 0.0;
};

struct IsoparametricVerdict {
  bool transnormal = false;
  bool isoparametric_sigma = false;  // with the sigma-Laplacian
  bool isoparametric_hat = false;    // with the reference-Hessian Laplacian
  double max_spread_grad = 0.0, max_spread_sigma = 0.0, max_spread_hat = 0.0;
  std::vector<LevelSetSample> levels;
  std::vector<std::string> notes;
};

inline const char* kSamplingScopeNote =
    "constancy verified on sampled levels only; smoothness of a(t) and continuity of b(t) "
    "are not certified by finite sampling";

/// Solves f(x) = t along random rays from the seed box (bisection to 1e-12)
/// and keeps points whose differential is applicable. InsufficientSamples when
/// a level collects fewer than 5 points.
std::vector<Vec> sample_level_set(const MetricModel& model, const ScalarField& field,
                                  double level, int count, const SeedBox& box, Rng& rng);

/// Per-level constancy of F(grad f): pass iff spread <= tol * (1 + |mean|) on
/// every level.
IsoparametricVerdict transnormal_check(const MetricModel& model, const ScalarField& field,
                                       std::span<const double> levels, int samples_per_level,
                                       double tol, const SeedBox& box, Rng& rng,
                                       DerivMode mode = DerivMode::exact);

/// Adds per-level constancy of both Laplacians on top of the transnormal
/// fragment; notes when the S-curvature vanishes (the two flavors must agree).
IsoparametricVerdict isoparametric_check(const MetricModel& model, const VolumeForm& volume,
                                         const ScalarField& field, std::span<const double> levels,
                                         int samples_per_level, double tol, const SeedBox& box,
                                         Rng& rng, DerivMode mode = DerivMode::exact);

/// Dual-form verdict for x-independent metrics with a closed dual: per sample
/// a = F*(df) and b = g*^{ij}(df) f_ij, no Legendre inversion involved.
IsoparametricVerdict minkowski_dual_check(const MetricModel& model, const ScalarField& field,
                                          std::span<const double> levels, int samples_per_level,
                                          double tol, const SeedBox& box, Rng& rng,
                                          DerivMode mode = DerivMode::exact);

}  // namespace finsler
