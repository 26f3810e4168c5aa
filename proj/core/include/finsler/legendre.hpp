#pragma once

#include <span>

#include "finsler/field.hpp"
#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler {

/// Fiberwise Legendre image of a cone vector: xi_i = half gradient of F^2 in y.
/// For dual-only models this is a damped Newton solve on the dual side
/// (tolerance 1e-12, at most 50 iterations, step halving on cone exit).
Vec legendre(const MetricModel& model, std::span<const double> x, std::span<const double> y,
             DerivMode mode = DerivMode::exact);

/// Inverse transform: y^i = half gradient of F*^2 in xi when a closed dual is
/// available, otherwise a damped Newton solve of L(y) = xi on the primal side.
Vec legendre_inverse(const MetricModel& model, std::span<const double> x,
                     std::span<const double> xi, DerivMode mode = DerivMode::exact);

/// Dual norm F*(xi); closed form when available, else F(legendre_inverse(xi)).
double eval_dual_metric(const MetricModel& model, std::span<const double> x,
                        std::span<const double> xi, DerivMode mode = DerivMode::exact);

/// Conic gradient of a scalar field: L^{-1}(df). OutOfDomain when df vanishes
/// or lies outside the applicable dual cone.
Vec gradient(const MetricModel& model, const ScalarField& field, std::span<const double> x,
             DerivMode mode = DerivMode::exact);

}  // namespace finsler
