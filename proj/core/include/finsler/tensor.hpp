#pragma once

#include <span>

#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler {

/// Pointwise metric data at (x, y): the fundamental tensor (half y-Hessian of
/// F^2), its inverse, and the Cartan tensor (half its y-derivative).
struct TensorPack {
  Mat g;
  Mat g_inv;
  std::vector<double> cartan;  // C_ijk, totally symmetric, size m^3
  double f2 = 0.0;
  double cartan_at(int i, int j, int k, int m) const { return cartan[(i * m + j) * m + k]; }
};

/// Taylor table of F^2 in the y variables only (vars 0..m-1 = y).
Jet f2_taylor_y(const MetricModel& model, std::span<const double> x, std::span<const double> y,
                int order, DerivMode mode);

/// Taylor table of F^2 in (x, y) (vars 0..m-1 = x, m..2m-1 = y).
Jet f2_taylor_xy(const MetricModel& model, std::span<const double> x, std::span<const double> y,
                 int order, DerivMode mode);

/// Taylor table of F*^2 in the xi variables only.
Jet dual_f2_taylor_xi(const MetricModel& model, std::span<const double> x,
                      std::span<const double> xi, int order, DerivMode mode);

/// Taylor table of F*^2 in (x, xi) (vars 0..m-1 = x, m..2m-1 = xi).
Jet dual_f2_taylor_xxi(const MetricModel& model, std::span<const double> x,
                       std::span<const double> xi, int order, DerivMode mode);

bool in_cone(const MetricModel& model, std::span<const double> x, std::span<const double> y);

/// F(x, y); checks cone membership first. For dual-only models the value is
/// bridged through the Legendre solve.
double eval_metric(const MetricModel& model, std::span<const double> x, std::span<const double> y,
                   DerivMode mode = DerivMode::exact);

/// Fundamental + Cartan tensors at (x, y). Positive definiteness is enforced
/// (SingularTensor otherwise). For dual-only models the pack is produced from
/// the dual tensor at the Legendre image, using
///   g(y) = [g*(L(y))]^{-1},  C_ijk = -g_ia g_jb g_kl C*^{abl}.
TensorPack fundamental_tensor(const MetricModel& model, std::span<const double> x,
                              std::span<const double> y, DerivMode mode = DerivMode::exact,
                              bool with_cartan = true);

/// Dual fundamental tensor g*^{ij} = half xi-Hessian of F*^2 (optionally the
/// dual Cartan C*^{ijk}).
Mat dual_fundamental(const MetricModel& model, std::span<const double> x,
                     std::span<const double> xi, DerivMode mode = DerivMode::exact,
                     std::vector<double>* cartan_star = nullptr);

}  // namespace finsler
