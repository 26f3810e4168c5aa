#include "finsler/legendre.hpp"

#include <cmath>

#include "finsler/tensor.hpp"

namespace finsler {

namespace {

constexpr int kNewtonMaxIter = 50;
constexpr double kNewtonTol = 1e-14;
constexpr double kNewtonStallTol = 1e-12;

/// Half-gradient of a side's squared norm from its order-1 Taylor table.
Vec half_gradient(const Jet& t, int m) {
  Vec g(m);
  for (int i = 0; i < m; ++i) g[i] = 0.5 * t.partial({i});
  return g;
}

/// Damped Newton for L_side(z) = target, where L_side is the half-gradient of
/// the given side's squared norm and its Jacobian is that side's fundamental
/// tensor. `table` yields an order-2 Taylor table at z; `member` the side's
/// cone predicate.
Vec newton_transform(std::span<const double> target, Vec z,
                     const std::function<Jet(std::span<const double>)>& table,
                     const std::function<bool(std::span<const double>)>& member) {
  int m = static_cast<int>(target.size());
  double scale = std::max(1.0, norm2(target));
  require(member(z), Err::newton_divergence, "newton seed outside the admissible cone");
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    Jet t = table(z);
    Vec image = half_gradient(t, m);
    Vec residual(m);
    for (int i = 0; i < m; ++i) residual[i] = image[i] - target[i];
    double res = norm2(residual);
    // quadratic tail: accept at the tight target, or once rounding stalls
    // the contraction below the loose one
    if (res <= kNewtonTol * scale) return z;
    if (res <= kNewtonStallTol * scale && res >= 0.25 * prev) return z;
    prev = res;
    Mat jac(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) jac(i, j) = 0.5 * t.partial({i, j});
    Vec step = solve(jac, residual);
    double damping = 1.0;
    Vec cand(m);
    for (int half = 0; half < 40; ++half) {
      for (int i = 0; i < m; ++i) cand[i] = z[i] - damping * step[i];
      if (member(cand)) break;
      damping *= 0.5;
    }
    if (!member(cand))
      raise(Err::newton_divergence, "newton step could not stay inside the cone");
    z = cand;
  }
  raise(Err::newton_divergence,
        "legendre solve did not converge (target near the cone boundary?)");
}

}  // namespace

Vec legendre(const MetricModel& model, std::span<const double> x, std::span<const double> y,
             DerivMode mode) {
  model.check_dim(x, "legendre point");
  model.check_dim(y, "legendre vector");
  require(model.in_cone(x, y), Err::cone_violation, "vector outside the cone");
  int m = model.dim();
  if (model.primal_evaluable()) {
    Jet t = f2_taylor_y(model, x, y, 1, mode);
    return half_gradient(t, m);
  }
  // dual-only model: find xi with L*(xi) = y; then L(y) = xi
  return newton_transform(
      y, model.dual_seed(x, y),
      [&](std::span<const double> z) { return dual_f2_taylor_xi(model, x, z, 2, mode); },
      [&](std::span<const double> z) { return model.in_dual_cone(x, z); });
}

Vec legendre_inverse(const MetricModel& model, std::span<const double> x,
                     std::span<const double> xi, DerivMode mode) {
  model.check_dim(x, "legendre_inverse point");
  model.check_dim(xi, "legendre_inverse covector");
  int m = model.dim();
  if (model.has_closed_dual()) {
    require(model.in_dual_cone(x, xi), Err::dual_cone_violation,
            "covector outside the dual cone");
    Jet t = dual_f2_taylor_xi(model, x, xi, 1, mode);
    return half_gradient(t, m);
  }
  return newton_transform(
      xi, model.primal_seed(x, xi),
      [&](std::span<const double> z) { return f2_taylor_y(model, x, z, 2, mode); },
      [&](std::span<const double> z) { return model.in_cone(x, z); });
}

double eval_dual_metric(const MetricModel& model, std::span<const double> x,
                        std::span<const double> xi, DerivMode mode) {
  if (model.has_closed_dual()) {
    require(model.in_dual_cone(x, xi), Err::dual_cone_violation,
            "covector outside the dual cone");
    return std::sqrt(model.dual_f2(x, xi));
  }
  Vec y = legendre_inverse(model, x, xi, mode);
  return std::sqrt(model.f2(x, y));
}

Vec gradient(const MetricModel& model, const ScalarField& field, std::span<const double> x,
             DerivMode mode) {
  model.check_dim(x, "gradient point");
  require(field.dim() == model.dim(), Err::dimension_mismatch, "field dimension");
  Vec df = field.grad(x);
  double n = norm2(df);
  require(n > 0.0, Err::out_of_domain, "df vanishes at the queried point");
  if (model.has_closed_dual())
    require(model.in_dual_cone(x, df), Err::out_of_domain,
            "df outside the applicable dual cone");
  try {
    return legendre_inverse(model, x, df, mode);
  } catch (const Error& e) {
    if (e.code() == Err::dual_cone_violation || e.code() == Err::newton_divergence)
      raise(Err::out_of_domain, "df outside the applicable dual cone");
    throw;
  }
}

}  // namespace finsler
