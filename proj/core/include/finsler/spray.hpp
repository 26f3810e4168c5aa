#pragma once

#include <span>

#include "finsler/field.hpp"
#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler {

/// Geodesic coefficients and connection data at (x, y):
///   G^i            spray coefficients
///   N^i_j          nonlinear connection, the y-gradient of G^i
///   Gamma^i_jk     connection coefficients at reference vector y, computed
///                  from horizontal derivatives of the fundamental tensor
struct SprayData {
  Vec G;
  Mat N;
  std::vector<double> gamma;  // m^3, [i][j][k]
  double gamma_at(int i, int j, int k, int m) const { return gamma[(i * m + j) * m + k]; }
  double trace_N() const {
    double t = 0.0;
    for (int i = 0; i < N.rows(); ++i) t += N(i, i);
    return t;
  }
};

SprayData spray(const MetricModel& model, std::span<const double> x, std::span<const double> y,
                DerivMode mode = DerivMode::exact);

/// Spray curvature matrix R^i_k at (x, y):
/// R^i_k = 2 dG^i/dx^k - y^j d2G^i/dx^j dy^k + 2 G^j d2G^i/dy^j dy^k
///         - dG^i/dy^j dG^j/dy^k.
Mat spray_curvature(const MetricModel& model, std::span<const double> x,
                    std::span<const double> y, DerivMode mode = DerivMode::exact);

/// Flag curvature of the plane span{y, v} with flagpole y, via the spray
/// curvature contraction K = g(R_y v, v) / (F^2 g(v,v) - g(y,v)^2).
/// DegenerateFlag when the denominator falls below 1e-14.
double flag_curvature(const MetricModel& model, std::span<const double> x,
                      std::span<const double> y, std::span<const double> v,
                      DerivMode mode = DerivMode::exact);

/// Covariant derivative of the vector field X along v with reference vector w.
Vec covariant_derivative(const MetricModel& model, std::span<const double> w,
                         std::span<const double> v, const WindField& X,
                         std::span<const double> x, DerivMode mode = DerivMode::exact);

/// S(x, y) = dG^i/dy^i - y^i d_i log sigma.
double s_curvature(const MetricModel& model, const VolumeForm& volume, std::span<const double> x,
                   std::span<const double> y, DerivMode mode = DerivMode::exact);

struct LaplacianResult {
  Vec grad;          // conic gradient of the field
  double hat;        // trace of the reference-vector Hessian
  double sigma;      // hat - S(grad)
  double div_sigma;  // independent divergence-form value of the sigma-Laplacian
  double s_at_grad;  // S-curvature at the gradient
};

/// Both Laplacians of a scalar field at x. `hat` comes from the covariant
/// Hessian with reference vector grad f; `div_sigma` is computed independently
/// as (1/sigma) d_i(sigma (grad f)^i) so the relation sigma = hat - S(grad f)
/// is checkable. OutOfDomain when df is not applicable at x.
LaplacianResult laplacians(const MetricModel& model, const VolumeForm& volume,
                           const ScalarField& field, std::span<const double> x,
                           DerivMode mode = DerivMode::exact);

/// Jacobian d(grad f)^i/dx^j of the conic gradient field, from the implicit
/// function theorem applied to L(y(x)) = df(x).
Mat gradient_field_jacobian(const MetricModel& model, const ScalarField& field,
                            std::span<const double> x, std::span<const double> grad,
                            DerivMode mode = DerivMode::exact);

}  // namespace finsler
