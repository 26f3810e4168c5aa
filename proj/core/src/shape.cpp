#include "finsler/shape.hpp"

#include <cmath>

#include "finsler/legendre.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"
#include "finsler/zoo.hpp"

namespace finsler {

namespace {

Vec cross3(std::span<const double> a, std::span<const double> b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<Jet> cross3_jets(const std::vector<Jet>& a, const std::vector<Jet>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double orientation_sign(const CoOrientation& co, std::span<const double> nu,
                        std::span<const double> x) {
  switch (co.kind) {
    case CoOrientation::Kind::frame: return 1.0;
    case CoOrientation::Kind::vector: return dot(nu, co.v) >= 0.0 ? 1.0 : -1.0;
    case CoOrientation::Kind::radial: {
      Vec out(x.size());
      for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - co.center[i];
      return dot(nu, out) >= 0.0 ? 1.0 : -1.0;
    }
  }
  return 1.0;
}

/// Chooses the conormal ray: the prescribed one if it meets the dual cone,
/// else the opposite (recorded as a flip), else NoConicNormal.
double pick_ray(const MetricModel& model, std::span<const double> x, std::span<const double> nu,
                double sign, bool& flipped) {
  Vec cand = scaled(sign, nu);
  bool dual_known = true;
  auto member = [&](std::span<const double> xi) {
    if (model.has_closed_dual()) return model.in_dual_cone(x, xi);
    dual_known = false;
    try {
      legendre_inverse(model, x, xi);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  if (member(cand)) {
    flipped = false;
    return sign;
  }
  Vec opp = scaled(-sign, nu);
  if (member(opp)) {
    flipped = true;
    return -sign;
  }
  raise(Err::no_conic_normal,
        std::string("neither conormal ray lies in the dual cone (prescribed ray ") +
            (dual_known ? "and its opposite both fail the cone predicate)"
                        : "and its opposite both fail the Legendre solve)"));
}

Vec base_unit_normal(const RiemannianChart* chart, std::span<const double> x,
                     std::span<const double> nu) {
  if (!chart) return {};
  Vec raised(x.size());
  chart->raise<double>(x, nu, raised.data());
  double len = std::sqrt(chart->dual_norm2<double>(x, nu));
  for (double& c : raised) c /= len;
  return raised;
}

struct PipelineData {
  Vec x;
  Mat frame;    // m x n
  Vec nu;       // normalized conormal
  Vec n;        // unit normal
  Vec nbar;
  bool flipped = false;
  Mat dn;       // plain u-derivatives of n (m x n)
  Mat gref;     // g_ij at reference n
};

/// Exact-jet path: requires a closed dual. All u-derivatives flow through
/// first-order jets of the immersion and the dual tensor table at (x, nu).
PipelineData pipeline_exact(const MetricModel& model, const Immersion& imm,
                            std::span<const double> u, const CoOrientation& co, DerivMode mode) {
  int m = model.dim();
  const int n = imm.param_dim();
  const JetSpec& s = JetSpec::get(n, 2);
  std::vector<Jet> uj(n);
  for (int a = 0; a < n; ++a) uj[a] = Jet::variable(s, a, u[a]);
  std::vector<Jet> xj(m, Jet(s));
  imm.eval<Jet>(uj, xj.data());

  PipelineData pd;
  pd.x.resize(m);
  for (int i = 0; i < m; ++i) pd.x[i] = xj[i].value();
  std::vector<std::vector<Jet>> framej(n);  // framej[a][i] = dPhi^i/du^a as order-1 jets
  for (int a = 0; a < n; ++a) {
    framej[a].resize(m);
    for (int i = 0; i < m; ++i) framej[a][i] = xj[i].derivative(a);
  }
  pd.frame = Mat(m, n);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < n; ++a) pd.frame(i, a) = framej[a][i].value();

  std::vector<Jet> nuj = cross3_jets(framej[0], framej[1]);
  Vec nuval(m);
  for (int i = 0; i < m; ++i) nuval[i] = nuj[i].value();
  double col0 = 0.0, col1 = 0.0;
  for (int i = 0; i < m; ++i) {
    col0 += pd.frame(i, 0) * pd.frame(i, 0);
    col1 += pd.frame(i, 1) * pd.frame(i, 1);
  }
  require(norm2(nuval) > 1e-12 * std::sqrt(std::max(col0 * col1, 1e-300)),
          Err::frame_degenerate, "tangent frame is rank deficient");

  double sign = orientation_sign(co, nuval, pd.x);
  sign = pick_ray(model, pd.x, nuval, sign, pd.flipped);
  for (auto& j : nuj) j *= sign;
  for (int i = 0; i < m; ++i) nuval[i] *= sign;

  // normalize to F*(nu) = 1 along the parametrization
  std::vector<Jet> xj1(m);
  for (int i = 0; i < m; ++i) xj1[i] = xj[i].truncated(1);
  std::vector<Jet> nuj1(m);
  for (int i = 0; i < m; ++i) nuj1[i] = nuj[i].truncated(1);
  Jet fstar = sqrt(model.dual_f2_jet(xj1, nuj1));
  std::vector<Jet> nuhat(m);
  for (int i = 0; i < m; ++i) nuhat[i] = nuj1[i] / fstar;
  pd.nu.resize(m);
  for (int i = 0; i < m; ++i) pd.nu[i] = nuhat[i].value();
  pd.nbar = base_unit_normal(model.base_chart(), pd.x, pd.nu);

  // n and dn/du from the dual table at (x, nu):
  // n^i(u) = (F*^2/2)_{xi_i}(x(u), nu(u))
  Jet tstar = dual_f2_taylor_xxi(model, pd.x, pd.nu, 2, mode);
  pd.n.resize(m);
  for (int i = 0; i < m; ++i) pd.n[i] = 0.5 * tstar.partial({m + i});
  Mat gstar(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gstar(i, j) = 0.5 * tstar.partial({m + i, m + j});
  pd.dn = Mat(m, n);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < n; ++a) {
      double v = 0.0;
      for (int j = 0; j < m; ++j) {
        v += 0.5 * tstar.partial({m + i, j}) * pd.frame(j, a);
        v += gstar(i, j) * nuhat[j].partial({a});
      }
      pd.dn(i, a) = v;
    }
  pd.gref = inverse(gstar);
  return pd;
}

/// Pointwise normal for the finite-difference fallback; the ray flip decision
/// is made once at the center and pinned for stencil evaluations.
Vec pointwise_normal(const MetricModel& model, const Immersion& imm, std::span<const double> u,
                     double sign, DerivMode mode, Vec* nu_out = nullptr, Vec* x_out = nullptr) {
  Vec x = imm.point(u);
  Mat frame = imm.tangent_frame(u);
  Vec e1(3), e2(3);
  for (int i = 0; i < 3; ++i) {
    e1[i] = frame(i, 0);
    e2[i] = frame(i, 1);
  }
  Vec nu = cross3(e1, e2);
  for (double& c : nu) c *= sign;
  double fstar = eval_dual_metric(model, x, nu, mode);
  for (double& c : nu) c /= fstar;
  if (nu_out) *nu_out = nu;
  if (x_out) *x_out = x;
  return legendre_inverse(model, x, nu, mode);
}

/// Fallback path for models without a closed dual (or finite-difference mode):
/// pointwise solves plus a 5-point stencil in u for dn/du.
PipelineData pipeline_pointwise(const MetricModel& model, const Immersion& imm,
                                std::span<const double> u, const CoOrientation& co,
                                DerivMode mode) {
  int m = model.dim();
  const int n = imm.param_dim();
  PipelineData pd;
  pd.x = imm.point(u);
  pd.frame = imm.tangent_frame(u);
  Vec e1(3), e2(3);
  for (int i = 0; i < 3; ++i) {
    e1[i] = pd.frame(i, 0);
    e2[i] = pd.frame(i, 1);
  }
  Vec nuraw = cross3(e1, e2);
  require(norm2(nuraw) > 1e-12, Err::frame_degenerate, "tangent frame is rank deficient");
  double sign = orientation_sign(co, nuraw, pd.x);
  sign = pick_ray(model, pd.x, nuraw, sign, pd.flipped);

  pd.n = pointwise_normal(model, imm, u, sign, mode, &pd.nu, nullptr);
  pd.nbar = base_unit_normal(model.base_chart(), pd.x, pd.nu);

  pd.dn = Mat(m, n);
  Vec uu(u.begin(), u.end());
  for (int a = 0; a < n; ++a) {
    double h = 1e-5 * std::max(1.0, std::abs(u[a]));
    auto at = [&](double off) {
      uu[a] = u[a] + off;
      Vec nn = pointwise_normal(model, imm, uu, sign, mode);
      uu[a] = u[a];
      return nn;
    };
    Vec p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
    for (int i = 0; i < m; ++i)
      pd.dn(i, a) = (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h);
  }
  TensorPack pack = fundamental_tensor(model, pd.x, pd.n, mode, false);
  pd.gref = pack.g;
  return pd;
}

PipelineData run_pipeline(const MetricModel& model, const Immersion& imm,
                          std::span<const double> u, const CoOrientation& co, DerivMode mode) {
  require(imm.ambient_dim() == model.dim(), Err::dimension_mismatch,
          "immersion ambient dimension vs metric");
  if (model.has_closed_dual() && mode == DerivMode::exact)
    return pipeline_exact(model, imm, u, co, mode);
  return pipeline_pointwise(model, imm, u, co, mode);
}

void add_boundary_warnings(const MetricModel& model, const PipelineData& pd,
                           std::vector<std::string>& warnings) {
  auto view = model.dual_view(pd.x);
  if (!view || view->phi.kind() == PhiFamily::Kind::constant_one) return;
  double alpha = std::sqrt(view->chart->dual_norm2<double>(pd.x, pd.nu));
  double beta = dot(view->beta_star, pd.nu);
  double s = beta / alpha;
  if (view->phi.boundary_distance(s, view->b0) < 1e-6)
    warnings.push_back("profile parameter s=" + std::to_string(s) +
                       " within 1e-6 of the admissible boundary");
}

}  // namespace

NormalPair finsler_unit_normal(const MetricModel& model, const Immersion& imm,
                               std::span<const double> u, const CoOrientation& co,
                               DerivMode mode) {
  PipelineData pd = run_pipeline(model, imm, u, co, mode);
  return {pd.x, pd.nu, pd.n, pd.nbar, pd.flipped};
}

Mat induced_metric(const MetricModel& model, const Immersion& imm, std::span<const double> u,
                   std::span<const double> n, DerivMode mode) {
  Vec x = imm.point(u);
  Mat frame = imm.tangent_frame(u);
  TensorPack pack = fundamental_tensor(model, x, n, mode, false);
  int m = model.dim(), nn = imm.param_dim();
  Mat ghat(nn, nn);
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b) {
      double v = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) v += pack.g(i, j) * frame(i, a) * frame(j, b);
      ghat(a, b) = v;
    }
  return ghat;
}

ShapeReport shape_operator(const MetricModel& model, const Immersion& imm,
                           std::span<const double> u, const CoOrientation& co,
                           const VolumeForm* volume, DerivMode mode) {
  PipelineData pd = run_pipeline(model, imm, u, co, mode);
  int m = model.dim();
  const int n = imm.param_dim();

  ShapeReport rep;
  rep.u.assign(u.begin(), u.end());
  rep.x = pd.x;
  rep.nu = pd.nu;
  rep.n = pd.n;
  rep.nbar = pd.nbar;
  rep.flipped = pd.flipped;
  add_boundary_warnings(model, pd, rep.warnings);

  // covariant correction with reference vector n
  std::vector<double> gamma;
  if (!model.x_independent()) gamma = spray(model, pd.x, pd.n, mode).gamma;
  rep.dnormal = Mat(m, n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < m; ++i) {
      double v = pd.dn(i, a);
      if (!gamma.empty())
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k)
            v += gamma[(i * m + j) * m + k] * pd.frame(j, a) * pd.n[k];
      rep.dnormal(i, a) = v;
    }

  rep.ghat = Mat(n, n);
  Mat L(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double gh = 0.0, l = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          gh += pd.gref(i, j) * pd.frame(i, a) * pd.frame(j, b);
          l += pd.gref(i, j) * rep.dnormal(i, a) * pd.frame(j, b);
        }
      rep.ghat(a, b) = gh;
      L(a, b) = l;
    }

  double lnorm = 0.0, lasym = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      lnorm = std::max(lnorm, std::abs(L(a, b)));
      lasym = std::max(lasym, std::abs(L(a, b) - L(b, a)));
    }
  rep.self_adjoint_resid = lasym / std::max(lnorm, 1e-300);

  rep.second_fund = Mat(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rep.second_fund(a, b) = -0.5 * (L(a, b) + L(b, a));
  Mat vecs;
  gen_sym_eig(rep.second_fund, rep.ghat, rep.principal, vecs);
  rep.multiplicity = multiplicities(rep.principal, 1e-6);
  rep.shape = matmul(inverse(rep.ghat), rep.second_fund);
  rep.mean_hat = 0.0;
  for (double k : rep.principal) rep.mean_hat += k;

  VolumeForm bh;
  const VolumeForm* vol = volume;
  if (!vol) {
    bh = VolumeForm::busemann_hausdorff(model);
    vol = &bh;
  }
  rep.mean = rep.mean_hat + s_curvature(model, *vol, pd.x, pd.n, mode);
  return rep;
}

UmbilicFlags umbilic_minimal_flags(const ShapeReport& report, double tol) {
  UmbilicFlags f;
  double spread = report.principal.back() - report.principal.front();
  f.totally_umbilic = spread <= tol * (1.0 + std::abs(report.principal.front()));
  f.minimal = std::abs(report.mean_hat) <= tol;
  return f;
}

EquivalenceReport kropina_equivalence_report(const KropinaModel& model, const Immersion& imm,
                                             std::span<const Vec> us, double tol,
                                             const CoOrientation& co, DerivMode mode) {
  const RiemannianChart& chart = *model.base_chart();
  const WindField& wind = *model.navigation_wind();
  std::vector<Vec> points;
  for (const Vec& u : us) points.push_back(imm.point(u));
  KillingReport kr = killing_check(chart, wind, points);
  require(kr.pass, Err::not_killing,
          "wind is not Killing over the sample set (max |r| = " + std::to_string(kr.max_r) + ")");

  RiemannianModel base(chart);
  VolumeForm bh = VolumeForm::busemann_hausdorff(model);
  EquivalenceReport rep;
  rep.killing_max_r = kr.max_r;
  int n = imm.param_dim();
  for (const Vec& u : us) {
    ShapeReport rf = shape_operator(model, imm, u, co, &bh, mode);
    ShapeReport rh = shape_operator(base, imm, u, co, nullptr, mode);
    double w0 = model.wind_pairing(rf.x, rf.nbar) + 1.0;
    require(w0 > 0.0, Err::normal_excluded, "base normal opposes the wind at a sample");

    EquivalenceSample es;
    es.u = u;
    es.principal_f = rf.principal;
    es.principal_h = rh.principal;
    for (int i = 0; i < n; ++i)
      es.eig_dev = std::max(es.eig_dev, std::abs(rf.principal[i] - rh.principal[i]));

    // principal directions compared in the base-induced metric for groups of
    // multiplicity one on both sides
    if (rf.multiplicity.size() == rh.multiplicity.size() &&
        rf.multiplicity == std::vector<int>(n, 1) && rh.multiplicity == std::vector<int>(n, 1)) {
      Mat vf, vh;
      Vec wf, wh;
      gen_sym_eig(rf.second_fund, rf.ghat, wf, vf);
      gen_sym_eig(rh.second_fund, rh.ghat, wh, vh);
      for (int c = 0; c < n; ++c) {
        double num = 0.0, nf = 0.0, nh = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            num += rh.ghat(a, b) * vf(a, c) * vh(b, c);
            nf += rh.ghat(a, b) * vf(a, c) * vf(b, c);
            nh += rh.ghat(a, b) * vh(a, c) * vh(b, c);
          }
        double cosang = std::min(1.0, std::abs(num) / std::sqrt(nf * nh));
        es.vec_angle = std::max(es.vec_angle, std::acos(cosang));
      }
    }

    // conformal relation ghat = hbar / W0(n)
    double w0n = model.wind_pairing(rf.x, rf.n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        es.conformal_resid =
            std::max(es.conformal_resid, std::abs(rf.ghat(a, b) - rh.ghat(a, b) / w0n));

    // derivative identity: D^n_X n equals the base covariant derivative of nbar
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < model.dim(); ++i)
        es.deriv_resid =
            std::max(es.deriv_resid, std::abs(rf.dnormal(i, a) - rh.dnormal(i, a)));

    // n = nbar + W
    Vec w = wind.eval_values(rf.x);
    for (int i = 0; i < model.dim(); ++i)
      es.n_formula_resid =
          std::max(es.n_formula_resid, std::abs(rf.n[i] - (rf.nbar[i] + w[i])));

    rep.max_eig_dev = std::max(rep.max_eig_dev, es.eig_dev);
    rep.max_vec_angle = std::max(rep.max_vec_angle, es.vec_angle);
    rep.max_conformal_resid = std::max(rep.max_conformal_resid, es.conformal_resid);
    rep.max_deriv_resid = std::max(rep.max_deriv_resid, es.deriv_resid);
    rep.max_n_formula_resid = std::max(rep.max_n_formula_resid, es.n_formula_resid);
    rep.samples.push_back(std::move(es));
  }
  rep.pass = rep.max_eig_dev <= tol && rep.max_vec_angle <= tol;
  return rep;
}

}  // namespace finsler
