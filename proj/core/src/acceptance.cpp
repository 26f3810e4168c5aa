#include "finsler/acceptance.hpp"

#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

#include "finsler/isoparametric.hpp"
#include "finsler/legendre.hpp"
#include "finsler/scenario.hpp"
#include "finsler/shape.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"
#include "finsler/zoo.hpp"

namespace finsler {

namespace {

double relax(DerivMode mode, double tol) {
  return mode == DerivMode::finite_difference ? std::max(tol, 1e-4) : tol;
}

struct Acc {
  double dev = 0.0;
  void add(double d) { dev = std::max(dev, std::abs(d)); }
};

Vec grid(double lo, double hi, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = (n == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
  return v;
}

CriterionResult helicoid_curvatures(DerivMode mode) {
  CriterionResult c{.index = 1, .name = "helicoid-principal-curvatures"};
  c.tol = relax(mode, 1e-6);
  Acc acc;
  std::ostringstream detail;
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    HelicoidMetric model(a, b);
    Immersion surf = Immersion::helicoid(a);
    double hmax = 0.0, kmax = 0.0;
    for (double u : grid(0.05, 0.95, 5))
      for (double v : grid(0.0, 6.28, 5)) {
        ShapeReport rep = shape_operator(model, surf, Vec{u, v}, CoOrientation::frame(),
                                         nullptr, mode);
        kmax = std::max({kmax, std::abs(rep.principal[0] + 1.0),
                         std::abs(rep.principal[1] - 1.0)});
        hmax = std::max(hmax, std::abs(rep.mean_hat));
      }
    acc.add(kmax);
    acc.add(hmax);
    detail << "(a=" << a << ",b=" << b << ") |k-{-1,1}|<=" << kmax << " |H|<=" << hmax << "  ";
  }
  c.max_dev = acc.dev;
  c.pass = acc.dev <= c.tol;
  c.detail = detail.str();
  return c;
}

CriterionResult helicoid_internals(DerivMode mode) {
  CriterionResult c{.index = 2, .name = "helicoid-profile-internals"};
  double ode_tol = 1e-8, omega_tol = relax(mode, 1e-6);
  Acc ode_acc, convex_acc, omega_acc;
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    PhiFamily fam = PhiFamily::helicoid(a, b);
    double cc = fam.cutoff();
    // profile ODE: f' - 2s/(b^2-s^2) f + 2 a^2 b^4 s/(b^2-s^2)^3 = 0, f = varphi^2
    for (double sgn : {-1.0, 1.0})
      for (double s0 : grid(0.02 * cc, 0.98 * cc, 50)) {
        double s = sgn * s0;
        double f = fam.varphi(s) * fam.varphi(s);
        double fp = 2.0 * fam.varphi(s) * fam.dvarphi(s);
        double d = b * b - s * s;
        double res = fp - 2.0 * s / d * f + 2.0 * a * a * std::pow(b, 4) * s / (d * d * d);
        ode_acc.add(res);
        double conv = fam.varphi(s) + (b * b - s * s) * fam.ddphi(s);
        convex_acc.add(conv > 0 ? 0.0 : 1.0);
        double first = fam.varphi(s);
        convex_acc.add(first > 0 ? 0.0 : 1.0);
      }
    // f extends to 1 at s = 0
    ode_acc.add(fam.varphi(1e-7) * fam.varphi(1e-7) - 1.0);

    // shape matrix of the generic pipeline against the closed-form
    // antisymmetric coefficient matrix in the (r_u, r_v) basis
    HelicoidMetric model(a, b);
    Immersion surf = Immersion::helicoid(a);
    for (double u : grid(0.1, 0.9, 5))
      for (double v : grid(0.0, 6.0, 5)) {
        ShapeReport rep = shape_operator(model, surf, Vec{u, v}, CoOrientation::frame(),
                                         nullptr, mode);
        double G = u * u + a * a;
        double mu1 = a / std::pow(G, 1.5), mu2 = a / std::sqrt(G);
        double s = b * u / std::sqrt(G);
        double vph = fam.varphi(s), ddp = fam.ddphi(s);
        double omega[2][2] = {{0.0, -mu1 * (vph + ddp * a * a * b * b / G)},
                              {-mu2 * vph, 0.0}};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) omega_acc.add(rep.shape(j, i) - omega[i][j]);
      }
  }
  c.max_dev = std::max({ode_acc.dev, convex_acc.dev, omega_acc.dev});
  c.tol = std::max(ode_tol, omega_tol);
  c.pass = ode_acc.dev <= ode_tol && convex_acc.dev == 0.0 && omega_acc.dev <= omega_tol;
  std::ostringstream detail;
  detail << "ode residual " << ode_acc.dev << ", convexity positive, |shape - closed form| "
         << omega_acc.dev;
  c.detail = detail.str();
  return c;
}

CriterionResult minkowski_instances(DerivMode mode) {
  CriterionResult c{.index = 3, .name = "minkowski-instances"};
  c.tol = relax(mode, 1e-6);
  double zero_tol = relax(mode, 1e-8);
  auto model = kropina_from_navigation(RiemannianChart::euclidean(3),
                                       WindField::constant({0, 0, 1}));
  std::ostringstream detail;
  Acc acc;
  bool pass = true;

  {  // hyperplane: all curvatures vanish
    Immersion plane = Immersion::hyperplane({0, 0, 1}, {1, 0, 0}, {0, 1, 0});
    Acc dev;
    for (double u : grid(-1.0, 1.0, 5))
      for (double v : grid(-1.0, 1.0, 5)) {
        ShapeReport rep = shape_operator(*model, plane, Vec{u, v}, CoOrientation::frame(),
                                         nullptr, mode);
        dev.add(rep.principal[0]);
        dev.add(rep.principal[1]);
      }
    pass = pass && dev.dev <= zero_tol;
    acc.add(dev.dev);
    detail << "plane |k| <= " << dev.dev << "; ";
  }
  {  // sphere of radius 2: one repeated value, constant across samples
    Immersion sph = Immersion::sphere({0, 0, 0}, 2.0);
    Acc umbilic;
    double lo = 1e300, hi = -1e300;
    for (double u : grid(0.4, 2.2, 5))
      for (double v : grid(0.1, 6.1, 5)) {
        ShapeReport rep = shape_operator(*model, sph, Vec{u, v},
                                         CoOrientation::radial({0, 0, 0}), nullptr, mode);
        umbilic.add(rep.principal[1] - rep.principal[0]);
        lo = std::min(lo, rep.principal[0]);
        hi = std::max(hi, rep.principal[1]);
      }
    double spread = hi - lo;
    pass = pass && umbilic.dev <= c.tol && spread <= c.tol;
    acc.add(umbilic.dev);
    acc.add(spread);
    detail << "sphere umbilic dev " << umbilic.dev << " spread " << spread << "; ";
  }
  {  // cylinder of radius 1: two values, one of them zero
    Immersion cyl = Immersion::cylinder(1.0);
    Acc zero_dev;
    double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
    for (double u : grid(0.1, 6.1, 5))
      for (double v : grid(-1.0, 1.0, 5)) {
        ShapeReport rep = shape_operator(*model, cyl, Vec{u, v}, CoOrientation::frame(),
                                         nullptr, mode);
        zero_dev.add(rep.principal[1]);  // ascending: {-1/r, 0}
        lo0 = std::min(lo0, rep.principal[0]);
        hi0 = std::max(hi0, rep.principal[0]);
        lo1 = std::min(lo1, rep.principal[1]);
        hi1 = std::max(hi1, rep.principal[1]);
      }
    double spread = std::max(hi0 - lo0, hi1 - lo1);
    pass = pass && zero_dev.dev <= zero_tol && spread <= c.tol &&
           std::abs(lo0 + 1.0) <= c.tol;
    acc.add(zero_dev.dev);
    acc.add(spread);
    detail << "cylinder |k_flat| <= " << zero_dev.dev << " spread " << spread;
  }
  c.max_dev = acc.dev;
  c.pass = pass;
  c.detail = detail.str();
  return c;
}

CriterionResult navigation_equivalence(DerivMode mode) {
  CriterionResult c{.index = 4, .name = "navigation-equivalence"};
  c.tol = relax(mode, 1e-6);
  double conf_tol = relax(mode, 1e-8);
  std::ostringstream detail;
  bool pass = true;
  Acc acc;
  {  // flat chart, constant wind, sphere of radius 2
    auto model = kropina_from_navigation(RiemannianChart::euclidean(3),
                                         WindField::constant({0, 0, 1}));
    Immersion sph = Immersion::sphere({0, 0, 0}, 2.0);
    std::vector<Vec> us;
    for (double u : grid(0.4, 2.2, 5))
      for (double v : grid(0.1, 6.1, 5)) us.push_back(Vec{u, v});
    EquivalenceReport rep = kropina_equivalence_report(*model, sph, us, c.tol,
                                                       CoOrientation::radial({0, 0, 0}), mode);
    pass = pass && rep.max_eig_dev <= c.tol && rep.max_conformal_resid <= conf_tol &&
           rep.max_deriv_resid <= relax(mode, 1e-6);
    acc.add(rep.max_eig_dev);
    acc.add(rep.max_conformal_resid);
    acc.add(rep.max_deriv_resid);
    detail << "flat/sphere eig dev " << rep.max_eig_dev << " conf " << rep.max_conformal_resid
           << "; ";
  }
  {  // round chart, rotation wind, product torus
    auto model = kropina_from_navigation(RiemannianChart::round_sphere(3), WindField::hopf());
    double r = 1.0 / std::sqrt(2.0);
    Immersion torus = Immersion::clifford_torus(r, r);
    std::vector<Vec> us;
    for (double u : grid(0.1, 6.1, 5))
      for (double v : grid(0.1, 6.1, 5)) us.push_back(Vec{u, v});
    EquivalenceReport rep =
        kropina_equivalence_report(*model, torus, us, c.tol, CoOrientation::frame(), mode);
    pass = pass && rep.max_eig_dev <= c.tol && rep.max_conformal_resid <= conf_tol &&
           rep.max_deriv_resid <= relax(mode, 1e-6);
    acc.add(rep.max_eig_dev);
    acc.add(rep.max_conformal_resid);
    acc.add(rep.max_deriv_resid);
    detail << "round/torus eig dev " << rep.max_eig_dev << " conf " << rep.max_conformal_resid;
  }
  c.max_dev = acc.dev;
  c.pass = pass;
  c.detail = detail.str();
  return c;
}

CriterionResult constant_flag_curvature(DerivMode mode) {
  CriterionResult c{.index = 5, .name = "constant-flag-curvature"};
  double round_tol = relax(mode, 1e-3), flat_tol = relax(mode, 1e-6);
  c.tol = round_tol;
  Rng rng(20240801u);
  Acc round_acc, flat_acc;
  {
    auto model = kropina_from_navigation(RiemannianChart::round_sphere(3), WindField::hopf());
    Rng r = rng.child("round-flags");
    int done = 0;
    while (done < 10) {
      Vec x = r.uniform_vec(3, -0.5, 0.5);
      // K is invariant under scaling of y, so unit flagpoles with a healthy
      // wind pairing are fully general and keep the stencils conditioned
      Vec y = model->sample_cone(x, r);
      double len = norm2(y);
      for (double& c : y) c /= len;
      double margin = mode == DerivMode::finite_difference ? 0.4 : 0.25;
      if (model->wind_pairing(x, y) < margin) continue;
      Vec v = r.unit_vec(3);
      try {
        round_acc.add(flag_curvature(*model, x, y, v, mode) - 1.0);
        ++done;
      } catch (const Error& e) {
        if (e.code() != Err::degenerate_flag) throw;
      }
    }
  }
  {
    auto model = kropina_from_navigation(RiemannianChart::euclidean(3),
                                         WindField::constant({0, 0, 1}));
    Rng r = rng.child("flat-flags");
    int done = 0;
    while (done < 10) {
      Vec x = r.uniform_vec(3, -1.0, 1.0);
      Vec y = model->sample_cone(x, r);
      Vec v = r.unit_vec(3);
      try {
        flat_acc.add(flag_curvature(*model, x, y, v, mode));
        ++done;
      } catch (const Error& e) {
        if (e.code() != Err::degenerate_flag) throw;
      }
    }
  }
  c.max_dev = std::max(round_acc.dev, flat_acc.dev);
  c.pass = round_acc.dev <= round_tol && flat_acc.dev <= flat_tol;
  std::ostringstream detail;
  detail << "|K-1| <= " << round_acc.dev << " (round wind), |K| <= " << flat_acc.dev
         << " (flat wind)";
  c.detail = detail.str();
  return c;
}

CriterionResult calculus_core(DerivMode mode) {
  CriterionResult c{.index = 6, .name = "calculus-core"};
  double rt_tol = relax(mode, 1e-8), tensor_tol = relax(mode, 1e-6),
         spray_tol = relax(mode, 1e-5), lap_tol = relax(mode, 1e-6),
         s_tol = relax(mode, 1e-8);
  c.tol = tensor_tol;
  Rng rng(911u);
  std::ostringstream detail;
  bool pass = true;

  // Legendre round trips per metric family
  std::vector<std::pair<std::string, ModelPtr>> zoo;
  zoo.emplace_back("euclidean", std::make_shared<EuclideanModel>(3));
  zoo.emplace_back("round-riemannian",
                   std::make_shared<RiemannianModel>(RiemannianChart::round_sphere(3)));
  zoo.emplace_back("kropina-flat", kropina_from_navigation(RiemannianChart::euclidean(3),
                                                           WindField::constant({0, 0, 1})));
  zoo.emplace_back("kropina-round",
                   kropina_from_navigation(RiemannianChart::round_sphere(3), WindField::hopf()));
  zoo.emplace_back("helicoid-1-1", std::make_shared<HelicoidMetric>(1.0, 1.0));
  zoo.emplace_back("helicoid-05-2", std::make_shared<HelicoidMetric>(0.5, 2.0));
  Acc rt_acc;
  for (auto& [name, model] : zoo) {
    Rng r = rng.child("roundtrip-" + name);
    for (int k = 0; k < 100; ++k) {
      Vec x = model->base_chart() && !model->base_chart()->flat() ? r.uniform_vec(3, -0.6, 0.6)
                                                                  : r.uniform_vec(3, -1.0, 1.0);
      Vec y = model->sample_cone(x, r);
      Vec xi = legendre(*model, x, y, mode);
      Vec back = legendre_inverse(*model, x, xi, mode);
      double scale = std::max(1.0, norm2(y));
      for (int i = 0; i < 3; ++i) rt_acc.add((back[i] - y[i]) / scale);
      Vec zeta = model->sample_dual_cone(x, r);
      Vec yz = legendre_inverse(*model, x, zeta, mode);
      Vec zback = legendre(*model, x, yz, mode);
      double zscale = std::max(1.0, norm2(zeta));
      for (int i = 0; i < 3; ++i) rt_acc.add((zback[i] - zeta[i]) / zscale);
    }
  }
  pass = pass && rt_acc.dev <= rt_tol;
  detail << "round trips " << rt_acc.dev << "; ";

  // navigation closed-form tensor vs exact Hessian
  Acc tensor_acc;
  for (auto& [name, model] :
       {std::pair<std::string, ModelPtr>{"kropina-flat", zoo[2].second},
        std::pair<std::string, ModelPtr>{"kropina-round", zoo[3].second}}) {
    auto km = std::static_pointer_cast<const KropinaModel>(model);
    const RiemannianChart& chart = *km->base_chart();
    const WindField& wind = *km->navigation_wind();
    Rng r = rng.child("tensor-" + name);
    for (int k = 0; k < 20; ++k) {
      Vec x = chart.flat() ? r.uniform_vec(3, -1.0, 1.0) : r.uniform_vec(3, -0.6, 0.6);
      Vec y = km->sample_cone(x, r);
      TensorPack pack = fundamental_tensor(*km, x, y, mode);
      Mat h = chart.metric_matrix(x);
      Vec w = wind.eval_values(x);
      Vec wl(3), yl(3);
      chart.lower<double>(x, w, wl.data());
      chart.lower<double>(x, y, yl.data());
      double h2 = dot(yl, y);
      double hn = std::sqrt(h2);
      double w0 = dot(wl, y);
      double f = h2 / (2.0 * w0);
      double scale = 0.0, dev = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double hyi = yl[i] / hn, hyj = yl[j] / hn;
          double fyi = hn * hyi / w0 - h2 * wl[i] / (2.0 * w0 * w0);
          double fyj = hn * hyj / w0 - h2 * wl[j] / (2.0 * w0 * w0);
          double closed = f / w0 *
                              (h(i, j) - (hn * hyi * wl[j] + hn * hyj * wl[i]) / w0 +
                               h2 * wl[i] * wl[j] / (w0 * w0)) +
                          fyi * fyj;
          scale = std::max(scale, std::abs(closed));
          dev = std::max(dev, std::abs(closed - pack.g(i, j)));
        }
      tensor_acc.add(dev / scale);
    }
  }
  pass = pass && tensor_acc.dev <= tensor_tol;
  detail << "closed-form tensor " << tensor_acc.dev << "; ";

  // spray decomposition against the base spray and the skew tensor
  Acc spray_acc;
  {
    auto km = std::static_pointer_cast<const KropinaModel>(zoo[3].second);
    RiemannianModel base(*km->base_chart());
    Rng r = rng.child("spray");
    for (int k = 0; k < 10; ++k) {
      Vec x = r.uniform_vec(3, -0.6, 0.6);
      Vec y = km->sample_cone(x, r);
      SprayData gf = spray(*km, x, y, mode);
      SprayData gh = spray(base, x, y, mode);
      NavTensors nt = nav_tensors(*km->base_chart(), *km->navigation_wind(), x);
      double f = eval_metric(*km, x, y, mode);
      double gnorm = norm2(gf.G);
      for (int i = 0; i < 3; ++i) {
        double s0 = 0.0;
        for (int j = 0; j < 3; ++j) s0 += nt.s_mixed(i, j) * y[j];
        spray_acc.add((gf.G[i] - (gh.G[i] - f * s0)) / (1.0 + gnorm));
      }
    }
  }
  pass = pass && spray_acc.dev <= spray_tol;
  detail << "spray split " << spray_acc.dev << "; ";

  // Laplacian relation: divergence form vs Hessian-trace minus S
  Acc lap_acc;
  {
    Rng r = rng.child("laplacian");
    for (auto& model : {zoo[2].second, zoo[3].second}) {
      VolumeForm vol = VolumeForm::busemann_hausdorff(*model);
      for (int k = 0; k < 10; ++k) {
        Mat q(3, 3);
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j) q(i, j) = q(j, i) = r.uniform(-0.3, 0.3);
        ScalarField f = ScalarField::quadratic(q, r.uniform_vec(3, -1.0, 1.0));
        for (int t = 0; t < 40; ++t) {
          Vec x = model->base_chart()->flat() ? r.uniform_vec(3, -1.0, 1.0)
                                              : r.uniform_vec(3, -0.5, 0.5);
          Vec df = f.grad(x);
          double dual_margin = mode == DerivMode::finite_difference ? 0.55 : 0.3;
          double hstar = std::sqrt(model->base_chart()->dual_norm2<double>(x, df));
          if (hstar == 0.0 || std::sqrt(model->dual_f2(x, df)) < dual_margin * hstar) continue;
          try {
            LaplacianResult lap = laplacians(*model, vol, f, x, mode);
            lap_acc.add(lap.div_sigma - (lap.hat - lap.s_at_grad));
            break;
          } catch (const Error& e) {
            // resample when df is inapplicable or too close to the cone
            // boundary for the stencil
            if (e.code() != Err::out_of_domain && e.code() != Err::cone_violation &&
                e.code() != Err::dual_cone_violation)
              throw;
          }
        }
      }
    }
  }
  pass = pass && lap_acc.dev <= lap_tol;
  detail << "laplacian identity " << lap_acc.dev << "; ";

  // vanishing S-curvature rows, plus the weighted-volume closed form
  Acc s_acc, sexp_acc;
  {
    Rng r = rng.child("s-curvature");
    double wind_margin = mode == DerivMode::finite_difference ? 0.55 : 0.25;
    for (auto& model : {zoo[2].second, zoo[3].second}) {
      auto km = std::static_pointer_cast<const KropinaModel>(model);
      VolumeForm vol = VolumeForm::busemann_hausdorff(*model);
      for (int k = 0; k < 10; ++k) {
        Vec x = model->base_chart()->flat() ? r.uniform_vec(3, -1.0, 1.0)
                                            : r.uniform_vec(3, -0.6, 0.6);
        Vec y;
        do {
          y = km->sample_cone(x, r);
        } while (km->wind_pairing(x, y) < wind_margin * norm2(y));
        s_acc.add(s_curvature(*model, vol, x, y, mode));
      }
    }
    HelicoidMetric heli(1.0, 1.0);
    VolumeForm leb = VolumeForm::lebesgue();
    for (int k = 0; k < 10; ++k) {
      Vec x = r.uniform_vec(3, -1.0, 1.0);
      Vec y = heli.sample_cone(x, r);
      s_acc.add(s_curvature(heli, leb, x, y, mode));
    }
    EuclideanModel eu(3);
    VolumeForm vexp = VolumeForm::exp_linear({1.0, 0.0, 0.0});
    for (int k = 0; k < 10; ++k) {
      Vec x = r.uniform_vec(3, -1.0, 1.0);
      Vec y = eu.sample_cone(x, r);
      sexp_acc.add(s_curvature(eu, vexp, x, y, mode) + y[0]);
    }
  }
  pass = pass && s_acc.dev <= s_tol && sexp_acc.dev <= relax(mode, 1e-10);
  detail << "S vanishing " << s_acc.dev << ", weighted " << sexp_acc.dev;

  c.max_dev = std::max({rt_acc.dev, tensor_acc.dev, spray_acc.dev, lap_acc.dev, s_acc.dev});
  c.pass = pass;
  c.detail = detail.str();
  return c;
}

CriterionResult isoparametric_verifier(DerivMode mode) {
  CriterionResult c{.index = 7, .name = "isoparametric-verifier"};
  c.tol = relax(mode, 1e-6);
  double agree_tol = relax(mode, 1e-8);
  Rng rng(777u);
  std::ostringstream detail;
  bool pass = true;
  Acc acc;

  {  // x-independent metric, linear field
    HelicoidMetric model(1.0, 1.0);
    ScalarField f = ScalarField::linear({1.0, 0.0, 0.1});
    Vec levels{0.3, 0.8};
    SeedBox box{Vec(3, -2.0), Vec(3, 2.0)};
    Rng r1 = rng.child("heli-primal"), r2 = rng.child("heli-dual");
    VolumeForm vol = VolumeForm::lebesgue();
    IsoparametricVerdict v =
        isoparametric_check(model, vol, f, levels, 10, c.tol, box, r1, mode);
    IsoparametricVerdict d = minkowski_dual_check(model, f, levels, 10, c.tol, box, r2, mode);
    pass = pass && v.isoparametric_sigma && v.isoparametric_hat && d.isoparametric_sigma;
    for (size_t i = 0; i < levels.size(); ++i) {
      acc.add(v.levels[i].mean_grad - d.levels[i].mean_grad);
      acc.add(v.levels[i].mean_sigma - d.levels[i].mean_sigma);
    }
    detail << "minkowski-linear " << (v.isoparametric_sigma ? "pass" : "FAIL") << "; ";
  }
  {  // navigation metric, linear field along the wind
    auto model = kropina_from_navigation(RiemannianChart::euclidean(3),
                                         WindField::constant({0, 0, 1}));
    ScalarField f = ScalarField::linear({0.0, 0.0, 1.0});
    Vec levels{0.5, 1.5};
    SeedBox box{Vec(3, -1.5), Vec(3, 1.5)};
    Rng r = rng.child("kropina-linear");
    VolumeForm vol = VolumeForm::busemann_hausdorff(*model);
    IsoparametricVerdict v = isoparametric_check(*model, vol, f, levels, 10, c.tol, box, r, mode);
    pass = pass && v.isoparametric_sigma && v.isoparametric_hat;
    for (const auto& ls : v.levels) {
      acc.add(ls.mean_grad - 2.0);
      acc.add(ls.mean_sigma);
    }
    detail << "wind-linear " << (v.isoparametric_sigma ? "pass" : "FAIL") << "; ";
  }
  {  // distance function in the flat metric
    EuclideanModel model(3);
    ScalarField f = ScalarField::norm(3);
    Vec levels{1.0, 2.0};
    SeedBox box{Vec(3, -2.5), Vec(3, 2.5)};
    Rng r1 = rng.child("norm-primal"), r2 = rng.child("norm-dual");
    VolumeForm vol = VolumeForm::lebesgue();
    IsoparametricVerdict v = isoparametric_check(model, vol, f, levels, 10, c.tol, box, r1, mode);
    IsoparametricVerdict d = minkowski_dual_check(model, f, levels, 10, c.tol, box, r2, mode);
    pass = pass && v.isoparametric_sigma && d.isoparametric_sigma;
    for (size_t i = 0; i < levels.size(); ++i) {
      acc.add(v.levels[i].mean_grad - 1.0);
      acc.add(v.levels[i].mean_hat - 2.0 / levels[i]);
      acc.add(v.levels[i].mean_sigma - d.levels[i].mean_sigma);
    }
    detail << "distance " << (v.isoparametric_sigma ? "pass" : "FAIL") << "; ";
  }
  {  // negative control: both paths must fail identically
    EuclideanModel model(3);
    Mat q(3, 3);
    q(1, 1) = 2.0;
    ScalarField f = ScalarField::quadratic(q, {1.0, 0.0, 0.0});
    Vec levels{0.5};
    SeedBox box{Vec(3, -1.5), Vec(3, 1.5)};
    Rng r1 = rng.child("neg-primal"), r2 = rng.child("neg-dual");
    IsoparametricVerdict v =
        transnormal_check(model, f, levels, 12, c.tol, box, r1, mode);
    IsoparametricVerdict d = minkowski_dual_check(model, f, levels, 12, c.tol, box, r2, mode);
    pass = pass && !v.transnormal && !d.transnormal;
    detail << "negative-control " << (!v.transnormal ? "rejected" : "NOT-REJECTED");
  }
  pass = pass && acc.dev <= agree_tol;
  c.max_dev = acc.dev;
  c.pass = pass;
  c.detail = detail.str();
  return c;
}

CriterionResult classification_rows(DerivMode mode) {
  CriterionResult c{.index = 8, .name = "classification-rows-g12"};
  c.tol = relax(mode, 1e-6);
  auto model = kropina_from_navigation(RiemannianChart::round_sphere(3), WindField::hopf());
  std::ostringstream detail;
  bool pass = true;
  Acc acc;

  auto run_sphere = [&](double radius, const char* label, bool expect_zero) {
    Immersion sph = Immersion::sphere({0, 0, 0}, radius);
    std::vector<Vec> us;
    for (double u : grid(0.4, 2.2, 5))
      for (double v : grid(0.2, 6.0, 5)) us.push_back(Vec{u, v});
    EquivalenceReport rep = kropina_equivalence_report(*model, sph, us, c.tol,
                                                       CoOrientation::radial({0, 0, 0}), mode);
    double umb = 0.0, lo = 1e300, hi = -1e300;
    for (const auto& es : rep.samples) {
      umb = std::max(umb, std::abs(es.principal_f[1] - es.principal_f[0]));
      lo = std::min(lo, es.principal_f[0]);
      hi = std::max(hi, es.principal_f[1]);
    }
    double spread = hi - lo;
    bool ok = rep.max_eig_dev <= c.tol && umb <= c.tol && spread <= c.tol;
    if (expect_zero) ok = ok && std::abs(lo) <= c.tol;
    pass = pass && ok;
    acc.add(rep.max_eig_dev);
    acc.add(umb);
    acc.add(spread);
    detail << label << " umbilic dev " << umb << " value ~ " << 0.5 * (lo + hi) << "; ";
  };
  run_sphere(1.0, "great-sphere", true);
  run_sphere(0.6, "small-sphere", false);

  {  // two distinct constant values on the product torus
    double r = 1.0 / std::sqrt(2.0);
    Immersion torus = Immersion::clifford_torus(r, r);
    std::vector<Vec> us;
    for (double u : grid(0.1, 6.1, 5))
      for (double v : grid(0.1, 6.1, 5)) us.push_back(Vec{u, v});
    EquivalenceReport rep =
        kropina_equivalence_report(*model, torus, us, c.tol, CoOrientation::frame(), mode);
    Acc tdev;
    for (const auto& es : rep.samples) {
      tdev.add(std::abs(es.principal_f[0]) - 1.0);
      tdev.add(std::abs(es.principal_f[1]) - 1.0);
      tdev.add(es.principal_f[0] + es.principal_f[1]);
    }
    pass = pass && rep.max_eig_dev <= c.tol && tdev.dev <= c.tol;
    acc.add(rep.max_eig_dev);
    acc.add(tdev.dev);
    detail << "torus |k|-1 dev " << tdev.dev;
  }
  c.max_dev = acc.dev;
  c.pass = pass;
  c.detail = detail.str();
  return c;
}

CriterionResult higher_g_rows() {
  CriterionResult c{.index = 8, .name = "classification-rows-g346"};
  c.skipped = true;
  c.pass = true;
  c.detail = "rows with three, four or six distinct curvatures (tube and homogeneous "
             "families) are out of scope and intentionally skipped";
  return c;
}

}  // namespace

AcceptanceSummary reproduce_paper(DerivMode mode, std::ostream* log) {
  AcceptanceSummary summary;
  auto guarded = [&](int index, const char* name, auto&& fn) {
    try {
      summary.criteria.push_back(fn(mode));
    } catch (const std::exception& e) {
      CriterionResult c{.index = index, .name = name};
      c.pass = false;
      c.detail = std::string("aborted: ") + e.what();
      summary.criteria.push_back(std::move(c));
    }
  };
  guarded(1, "helicoid-principal-curvatures", helicoid_curvatures);
  guarded(2, "helicoid-profile-internals", helicoid_internals);
  guarded(3, "minkowski-instances", minkowski_instances);
  guarded(4, "navigation-equivalence", navigation_equivalence);
  guarded(5, "constant-flag-curvature", constant_flag_curvature);
  guarded(6, "calculus-core", calculus_core);
  guarded(7, "isoparametric-verifier", isoparametric_verifier);
  guarded(8, "classification-rows-g12", classification_rows);
  summary.criteria.push_back(higher_g_rows());
  if (log) {
    for (const auto& c : summary.criteria) {
      *log << (c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL")) << "  [" << c.index << "] "
           << c.name;
      if (!c.skipped) *log << "  (max dev " << c.max_dev << ", tol " << c.tol << ")";
      *log << "\n      " << c.detail << "\n";
    }
    *log << (summary.all_pass() ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
  }
  return summary;
}

}  // namespace finsler
