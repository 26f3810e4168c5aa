#include "finsler/tensor.hpp"

#include <cmath>

#include "finsler/legendre.hpp"

namespace finsler {

namespace {

std::vector<Jet> make_vars(const JetSpec& s, std::span<const double> vals, int offset) {
  std::vector<Jet> v(vals.size());
  for (size_t i = 0; i < vals.size(); ++i)
    v[i] = Jet::variable(s, offset + static_cast<int>(i), vals[i]);
  return v;
}

std::vector<Jet> make_consts(const JetSpec& s, std::span<const double> vals) {
  std::vector<Jet> v(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) v[i] = Jet::constant(s, vals[i]);
  return v;
}

}  // namespace

Jet f2_taylor_y(const MetricModel& model, std::span<const double> x, std::span<const double> y,
                int order, DerivMode mode) {
  int m = model.dim();
  if (mode == DerivMode::finite_difference) {
    Vec xb(x.begin(), x.end());
    return fd_jet(
        [&](std::span<const double> z) {
          require(model.in_cone(xb, z), Err::cone_violation, "fd stencil exited the cone");
          return model.f2(xb, z);
        },
        y, order);
  }
  const JetSpec& s = JetSpec::get(m, order);
  auto xj = make_consts(s, x);
  auto yj = make_vars(s, y, 0);
  return model.f2_jet(xj, yj);
}

Jet f2_taylor_xy(const MetricModel& model, std::span<const double> x, std::span<const double> y,
                 int order, DerivMode mode) {
  int m = model.dim();
  if (mode == DerivMode::finite_difference) {
    Vec z(2 * m);
    for (int i = 0; i < m; ++i) z[i] = x[i];
    for (int i = 0; i < m; ++i) z[m + i] = y[i];
    return fd_jet(
        [&](std::span<const double> zz) {
          std::span<const double> xs = zz.subspan(0, m), ys = zz.subspan(m, m);
          require(model.in_cone(xs, ys), Err::cone_violation, "fd stencil exited the cone");
          return model.f2(xs, ys);
        },
        z, order);
  }
  const JetSpec& s = JetSpec::get(2 * m, order);
  auto xj = make_vars(s, x, 0);
  auto yj = make_vars(s, y, m);
  return model.f2_jet(xj, yj);
}

Jet dual_f2_taylor_xi(const MetricModel& model, std::span<const double> x,
                      std::span<const double> xi, int order, DerivMode mode) {
  int m = model.dim();
  if (mode == DerivMode::finite_difference) {
    Vec xb(x.begin(), x.end());
    return fd_jet(
        [&](std::span<const double> z) {
          require(model.in_dual_cone(xb, z), Err::dual_cone_violation,
                  "fd stencil exited the dual cone");
          return model.dual_f2(xb, z);
        },
        xi, order);
  }
  const JetSpec& s = JetSpec::get(m, order);
  auto xj = make_consts(s, x);
  auto xij = make_vars(s, xi, 0);
  return model.dual_f2_jet(xj, xij);
}

Jet dual_f2_taylor_xxi(const MetricModel& model, std::span<const double> x,
                       std::span<const double> xi, int order, DerivMode mode) {
  int m = model.dim();
  if (mode == DerivMode::finite_difference) {
    Vec z(2 * m);
    for (int i = 0; i < m; ++i) z[i] = x[i];
    for (int i = 0; i < m; ++i) z[m + i] = xi[i];
    return fd_jet(
        [&](std::span<const double> zz) {
          std::span<const double> xs = zz.subspan(0, m), xis = zz.subspan(m, m);
          require(model.in_dual_cone(xs, xis), Err::dual_cone_violation,
                  "fd stencil exited the dual cone");
          return model.dual_f2(xs, xis);
        },
        z, order);
  }
  const JetSpec& s = JetSpec::get(2 * m, order);
  auto xj = make_vars(s, x, 0);
  auto xij = make_vars(s, xi, m);
  return model.dual_f2_jet(xj, xij);
}

bool in_cone(const MetricModel& model, std::span<const double> x, std::span<const double> y) {
  model.check_dim(x, "in_cone point");
  model.check_dim(y, "in_cone vector");
  return model.in_cone(x, y);
}

double eval_metric(const MetricModel& model, std::span<const double> x, std::span<const double> y,
                   DerivMode mode) {
  model.check_dim(x, "eval_metric point");
  model.check_dim(y, "eval_metric vector");
  require(model.in_cone(x, y), Err::cone_violation, "vector outside the cone");
  if (model.primal_evaluable()) return std::sqrt(model.f2(x, y));
  Vec xi = legendre(model, x, y, mode);
  return std::sqrt(model.dual_f2(x, xi));
}

namespace {

TensorPack pack_from_taylor(const Jet& t, int m, bool with_cartan) {
  TensorPack p;
  p.f2 = t.value();
  p.g = Mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) p.g(i, j) = 0.5 * t.partial({i, j});
  Mat chol = p.g;
  if (!cholesky(chol))
    raise(Err::singular_tensor, "fundamental tensor is not positive definite");
  p.g_inv = inverse(p.g);
  if (with_cartan) {
    p.cartan.assign(m * m * m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) p.cartan[(i * m + j) * m + k] = 0.25 * t.partial({i, j, k});
  }
  return p;
}

}  // namespace

TensorPack fundamental_tensor(const MetricModel& model, std::span<const double> x,
                              std::span<const double> y, DerivMode mode, bool with_cartan) {
  model.check_dim(x, "fundamental_tensor point");
  model.check_dim(y, "fundamental_tensor vector");
  require(model.in_cone(x, y), Err::cone_violation, "vector outside the cone");
  int m = model.dim();
  if (model.primal_evaluable()) {
    Jet t = f2_taylor_y(model, x, y, with_cartan ? 3 : 2, mode);
    return pack_from_taylor(t, m, with_cartan);
  }
  // dual-only model: invert the dual tensor at the Legendre image
  Vec xi = legendre(model, x, y, mode);
  std::vector<double> cstar;
  Mat gstar = dual_fundamental(model, x, xi, mode, with_cartan ? &cstar : nullptr);
  TensorPack p;
  p.g = inverse(gstar);
  Mat chol = p.g;
  if (!cholesky(chol))
    raise(Err::singular_tensor, "fundamental tensor is not positive definite");
  p.g_inv = gstar;
  p.f2 = model.dual_f2(x, xi);
  if (with_cartan) {
    p.cartan.assign(m * m * m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double s = 0.0;
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
              for (int l = 0; l < m; ++l)
                s += p.g(i, a) * p.g(j, b) * p.g(k, l) * cstar[(a * m + b) * m + l];
          p.cartan[(i * m + j) * m + k] = -s;
        }
  }
  return p;
}

Mat dual_fundamental(const MetricModel& model, std::span<const double> x,
                     std::span<const double> xi, DerivMode mode, std::vector<double>* cartan_star) {
  model.check_dim(xi, "dual_fundamental covector");
  require(model.has_closed_dual(), Err::unsupported, "dual tensor needs a closed dual form");
  require(model.in_dual_cone(x, xi), Err::dual_cone_violation, "covector outside the dual cone");
  int m = model.dim();
  Jet t = dual_f2_taylor_xi(model, x, xi, cartan_star ? 3 : 2, mode);
  Mat gstar(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gstar(i, j) = 0.5 * t.partial({i, j});
  if (cartan_star) {
    cartan_star->assign(m * m * m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          (*cartan_star)[(i * m + j) * m + k] = 0.25 * t.partial({i, j, k});
  }
  return gstar;
}

}  // namespace finsler
