#include "finsler/spray.hpp"

#include <cmath>

#include "finsler/legendre.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

namespace {

struct SprayJets {
  std::vector<Jet> G;           // order >= 1 jets of G^i in (x, y)
  std::vector<Jet> g;           // order >= 1 jets of g_ij (row-major)
  const JetSpec* spec = nullptr;
};

/// Spray coefficients as jets in (x, y), derived from the Taylor table of F^2:
/// G^i = 1/4 g^{il} ( [F^2]_{x^k y^l} y^k - [F^2]_{x^l} ).
SprayJets spray_jets(const MetricModel& model, std::span<const double> x,
                     std::span<const double> y, int g_order, DerivMode mode) {
  int m = model.dim();
  Jet t = f2_taylor_xy(model, x, y, g_order + 2, mode);
  SprayJets out;
  out.g.resize(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.g[i * m + j] = t.derivative(m + i).derivative(m + j) * 0.5;
  out.spec = &out.g[0].spec();
  const JetSpec& s = *out.spec;
  std::vector<Jet> v(m);
  for (int l = 0; l < m; ++l) {
    Jet acc(s);
    for (int k = 0; k < m; ++k) {
      Jet yk = Jet::variable(s, m + k, y[k]);
      acc += t.derivative(k).derivative(m + l) * yk;
    }
    acc -= t.derivative(l).truncated(g_order);
    v[l] = acc;
  }
  Jet zero(s), one = Jet::constant(s, 1.0);
  std::vector<Jet> ginv = invert_generic<Jet>(out.g, m, zero, one);
  out.G.resize(m);
  for (int i = 0; i < m; ++i) {
    Jet acc(s);
    for (int l = 0; l < m; ++l) acc += ginv[i * m + l] * v[l];
    out.G[i] = acc * 0.25;
  }
  return out;
}

SprayData zero_spray(int m) {
  SprayData d;
  d.G.assign(m, 0.0);
  d.N = Mat(m, m);
  d.gamma.assign(m * m * m, 0.0);
  return d;
}

}  // namespace

SprayData spray(const MetricModel& model, std::span<const double> x, std::span<const double> y,
                DerivMode mode) {
  model.check_dim(x, "spray point");
  model.check_dim(y, "spray vector");
  require(model.in_cone(x, y), Err::cone_violation, "vector outside the cone");
  int m = model.dim();
  if (!model.primal_evaluable()) {
    require(model.x_independent(), Err::unsupported,
            "spray of a dual-only x-dependent metric");
    return zero_spray(m);
  }
  SprayJets sj = spray_jets(model, x, y, 1, mode);
  SprayData d;
  d.G.resize(m);
  d.N = Mat(m, m);
  for (int i = 0; i < m; ++i) {
    d.G[i] = sj.G[i].value();
    for (int j = 0; j < m; ++j) d.N(i, j) = sj.G[i].partial({m + j});
  }
  // Gamma^i_jk = 1/2 g^{il} (delta_k g_lj + delta_j g_lk - delta_l g_jk),
  // delta_j = d/dx^j - N^r_j d/dy^r
  std::vector<double> dgx(m * m * m), dgy(m * m * m);
  Mat gval(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Jet& gij = sj.g[i * m + j];
      gval(i, j) = gij.value();
      for (int k = 0; k < m; ++k) {
        dgx[(k * m + i) * m + j] = gij.partial({k});
        dgy[(k * m + i) * m + j] = gij.partial({m + k});
      }
    }
  Mat ginv = inverse(gval);
  auto delta = [&](int j, int a, int b) {
    double v = dgx[(j * m + a) * m + b];
    for (int r = 0; r < m; ++r) v -= d.N(r, j) * dgy[(r * m + a) * m + b];
    return v;
  };
  d.gamma.assign(m * m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int l = 0; l < m; ++l)
          s += ginv(i, l) * (delta(k, l, j) + delta(j, l, k) - delta(l, j, k));
        d.gamma[(i * m + j) * m + k] = 0.5 * s;
      }
  return d;
}

Mat spray_curvature(const MetricModel& model, std::span<const double> x,
                    std::span<const double> y, DerivMode mode) {
  model.check_dim(y, "curvature vector");
  require(model.in_cone(x, y), Err::cone_violation, "vector outside the cone");
  int m = model.dim();
  if (!model.primal_evaluable()) {
    require(model.x_independent(), Err::unsupported,
            "curvature of a dual-only x-dependent metric");
    return Mat(m, m);
  }
  SprayJets sj = spray_jets(model, x, y, 2, mode);
  Vec g0(m);
  Mat dgx(m, m), dgy(m, m);
  std::vector<double> d2xy(m * m * m), d2yy(m * m * m);
  for (int i = 0; i < m; ++i) {
    g0[i] = sj.G[i].value();
    for (int j = 0; j < m; ++j) {
      dgx(i, j) = sj.G[i].partial({j});
      dgy(i, j) = sj.G[i].partial({m + j});
      for (int k = 0; k < m; ++k) {
        d2xy[(i * m + j) * m + k] = sj.G[i].partial({j, m + k});
        d2yy[(i * m + j) * m + k] = sj.G[i].partial({m + j, m + k});
      }
    }
  }
  Mat r(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      double v = 2.0 * dgx(i, k);
      for (int j = 0; j < m; ++j) {
        v -= y[j] * d2xy[(i * m + j) * m + k];
        v += 2.0 * g0[j] * d2yy[(i * m + j) * m + k];
        v -= dgy(i, j) * dgy(j, k);
      }
      r(i, k) = v;
    }
  return r;
}

double flag_curvature(const MetricModel& model, std::span<const double> x,
                      std::span<const double> y, std::span<const double> v, DerivMode mode) {
  model.check_dim(v, "flag transverse vector");
  int m = model.dim();
  Mat r = spray_curvature(model, x, y, mode);
  TensorPack pack = fundamental_tensor(model, x, y, mode, false);
  Vec rv = matvec(r, v);
  double num = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) num += pack.g(i, j) * v[i] * rv[j];
  double gvv = 0.0, gyv = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      gvv += pack.g(i, j) * v[i] * v[j];
      gyv += pack.g(i, j) * y[i] * v[j];
    }
  double den = pack.f2 * gvv - gyv * gyv;
  require(std::abs(den) > 1e-14, Err::degenerate_flag, "flag plane is degenerate");
  return num / den;
}

Vec covariant_derivative(const MetricModel& model, std::span<const double> w,
                         std::span<const double> v, const WindField& X,
                         std::span<const double> x, DerivMode mode) {
  int m = model.dim();
  SprayData sd = spray(model, x, w, mode);
  const JetSpec& s = JetSpec::get(m, 1);
  std::vector<Jet> xj(m);
  for (int i = 0; i < m; ++i) xj[i] = Jet::variable(s, i, x[i]);
  std::vector<Jet> Xj(m);
  X.eval<Jet>(xj, Xj.data());
  Vec out(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out[i] += v[j] * Xj[i].partial({j});
      for (int k = 0; k < m; ++k) out[i] += sd.gamma_at(i, j, k, m) * v[j] * Xj[k].value();
    }
  }
  return out;
}

double s_curvature(const MetricModel& model, const VolumeForm& volume, std::span<const double> x,
                   std::span<const double> y, DerivMode mode) {
  SprayData sd = spray(model, x, y, mode);
  Vec dls = volume.dlog_sigma(x);
  return sd.trace_N() - dot(y, dls);
}

Mat gradient_field_jacobian(const MetricModel& model, const ScalarField& field,
                            std::span<const double> x, std::span<const double> grad,
                            DerivMode mode) {
  int m = model.dim();
  Mat hf = field.hessian(x);
  Mat b(m, m);
  if (!model.x_independent()) {
    Jet t = f2_taylor_xy(model, x, grad, 2, mode);
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) b(k, j) = 0.5 * t.partial({j, m + k});
  }
  TensorPack pack = fundamental_tensor(model, x, grad, mode, false);
  Mat rhs(m, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) rhs(k, j) = hf(k, j) - b(k, j);
  return matmul(pack.g_inv, rhs);
}

LaplacianResult laplacians(const MetricModel& model, const VolumeForm& volume,
                           const ScalarField& field, std::span<const double> x, DerivMode mode) {
  int m = model.dim();
  LaplacianResult res;
  res.grad = gradient(model, field, x, mode);
  Mat jac = gradient_field_jacobian(model, field, x, res.grad, mode);
  double tr_jac = 0.0;
  for (int i = 0; i < m; ++i) tr_jac += jac(i, i);
  SprayData sd = spray(model, x, res.grad, mode);
  res.hat = tr_jac + sd.trace_N();
  Vec dls = volume.dlog_sigma(x);
  res.s_at_grad = sd.trace_N() - dot(res.grad, dls);
  res.sigma = res.hat - res.s_at_grad;

  // Independent divergence form (1/sigma) d_i(sigma (grad f)^i). With a closed
  // dual the gradient field is the covector-gradient of F*^2/2 composed with
  // df(x), so one jet evaluation in (x, eta) carries the divergence; otherwise
  // fall back to central differences of the pointwise solve.
  if (model.has_closed_dual() && mode == DerivMode::exact) {
    const JetSpec& s = JetSpec::get(2 * m, 2);
    std::vector<Jet> xj(m), xij(m);
    for (int i = 0; i < m; ++i) xj[i] = Jet::variable(s, i, x[i]);
    Jet fj = field.eval<Jet>(xj);
    for (int i = 0; i < m; ++i) xij[i] = fj.derivative(i).promoted(2) + Jet::variable(s, m + i, 0.0);
    Jet d = model.dual_f2_jet(xj, xij) * 0.5;
    double div = 0.0;
    for (int i = 0; i < m; ++i) div += d.partial({i, m + i});
    for (int i = 0; i < m; ++i) div += res.grad[i] * dls[i];
    res.div_sigma = div;
  } else {
    double div = 0.0;
    Vec xx(x.begin(), x.end());
    for (int i = 0; i < m; ++i) {
      double h = std::cbrt(2.220446049250313e-16) * std::max(1.0, std::abs(x[i]));
      auto comp = [&](double xi_val) {
        xx[i] = xi_val;
        Vec g = gradient(model, field, xx, mode);
        double sg = volume.sigma_value(xx);
        xx[i] = x[i];
        return sg * g[i];
      };
      div += (comp(x[i] + h) - comp(x[i] - h)) / (2.0 * h);
    }
    res.div_sigma = div / volume.sigma_value(x);
  }
  return res;
}

}  // namespace finsler
