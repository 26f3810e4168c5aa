#include "finsler/metric.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

namespace {

template <class S>
S sum_sq(std::span<const S> v) {
  S s = v[0] * v[0];
  for (size_t i = 1; i < v.size(); ++i) s = s + v[i] * v[i];
  return s;
}

template <class S>
S pairing(std::span<const S> a, std::span<const S> b) {
  S s = a[0] * b[0];
  for (size_t i = 1; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

bool is_zero(std::span<const double> v) {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

}  // namespace

// --- base ---

double MetricModel::f2(std::span<const double>, std::span<const double>) const {
  raise(Err::unsupported, kind() + ": no closed primal form");
}
Jet MetricModel::f2_jet(std::span<const Jet>, std::span<const Jet>) const {
  raise(Err::unsupported, kind() + ": no closed primal form");
}
bool MetricModel::in_dual_cone(std::span<const double>, std::span<const double>) const {
  raise(Err::unsupported, kind() + ": no closed dual cone predicate");
}
double MetricModel::dual_f2(std::span<const double>, std::span<const double>) const {
  raise(Err::unsupported, kind() + ": no closed dual form");
}
Jet MetricModel::dual_f2_jet(std::span<const Jet>, std::span<const Jet>) const {
  raise(Err::unsupported, kind() + ": no closed dual form");
}
Vec MetricModel::dual_seed(std::span<const double>, std::span<const double>) const {
  raise(Err::unsupported, kind() + ": no dual Newton seed");
}
Vec MetricModel::primal_seed(std::span<const double>, std::span<const double>) const {
  raise(Err::unsupported, kind() + ": no primal Newton seed");
}

Vec MetricModel::sample_cone(std::span<const double> x, Rng& rng) const {
  for (int tries = 0; tries < 2000; ++tries) {
    Vec y = rng.unit_vec(dim());
    double scale = rng.uniform(0.5, 2.0);
    for (double& c : y) c *= scale;
    if (in_cone(x, y)) return y;
  }
  raise(Err::empty_domain, "cone sampling failed at the given point");
}

Vec MetricModel::sample_dual_cone(std::span<const double> x, Rng& rng) const {
  for (int tries = 0; tries < 2000; ++tries) {
    Vec xi = rng.unit_vec(dim());
    double scale = rng.uniform(0.5, 2.0);
    for (double& c : xi) c *= scale;
    if (in_dual_cone(x, xi)) return xi;
  }
  raise(Err::empty_domain, "dual cone sampling failed at the given point");
}

// --- Euclidean ---

EuclideanModel::EuclideanModel(int dim)
    : MetricModel("euclidean", dim), chart_(RiemannianChart::euclidean(dim)) {}

bool EuclideanModel::in_cone(std::span<const double>, std::span<const double> y) const {
  return !is_zero(y);
}
double EuclideanModel::f2(std::span<const double>, std::span<const double> y) const {
  return sum_sq(y);
}
Jet EuclideanModel::f2_jet(std::span<const Jet>, std::span<const Jet> y) const {
  return sum_sq(y);
}
bool EuclideanModel::in_dual_cone(std::span<const double>, std::span<const double> xi) const {
  return !is_zero(xi);
}
double EuclideanModel::dual_f2(std::span<const double>, std::span<const double> xi) const {
  return sum_sq(xi);
}
Jet EuclideanModel::dual_f2_jet(std::span<const Jet>, std::span<const Jet> xi) const {
  return sum_sq(xi);
}
std::optional<AlphaBetaDualView> EuclideanModel::dual_view(std::span<const double>) const {
  return AlphaBetaDualView{&chart_, Vec(dim(), 0.0), PhiFamily::constant_one(), 0.0};
}

// --- Riemannian chart ---

RiemannianModel::RiemannianModel(RiemannianChart chart)
    : MetricModel("riemannian", chart.dim()), chart_(chart) {}

bool RiemannianModel::in_cone(std::span<const double>, std::span<const double> y) const {
  return !is_zero(y);
}
double RiemannianModel::f2(std::span<const double> x, std::span<const double> y) const {
  return chart_.norm2(x, y);
}
Jet RiemannianModel::f2_jet(std::span<const Jet> x, std::span<const Jet> y) const {
  return chart_.norm2(x, y);
}
bool RiemannianModel::in_dual_cone(std::span<const double>, std::span<const double> xi) const {
  return !is_zero(xi);
}
double RiemannianModel::dual_f2(std::span<const double> x, std::span<const double> xi) const {
  return chart_.dual_norm2(x, xi);
}
Jet RiemannianModel::dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const {
  return chart_.dual_norm2(x, xi);
}
std::optional<AlphaBetaDualView> RiemannianModel::dual_view(std::span<const double>) const {
  return AlphaBetaDualView{&chart_, Vec(dim(), 0.0), PhiFamily::constant_one(), 0.0};
}

// --- Kropina / unit-wind navigation ---

KropinaModel::KropinaModel(RiemannianChart chart, WindField wind)
    : MetricModel("kropina", chart.dim()), chart_(chart), wind_(std::move(wind)) {}

void KropinaModel::check_unit_wind(std::span<const double> x) const {
  Vec w(dim());
  wind_.eval<double>(x, w.data());
  double n2 = chart_.norm2<double>(x, w);
  if (std::abs(n2 - 1.0) > 1e-9)
    raise(Err::not_unit_wind,
          "wind has h-length^2 = " + std::to_string(n2) + " at a queried point");
}

double KropinaModel::wind_pairing(std::span<const double> x, std::span<const double> y) const {
  Vec w(dim());
  wind_.eval<double>(x, w.data());
  return chart_.inner<double>(x, w, y);
}

bool KropinaModel::in_cone(std::span<const double> x, std::span<const double> y) const {
  check_dim(y, "in_cone vector");
  if (is_zero(y)) return false;
  check_unit_wind(x);
  return wind_pairing(x, y) > 0.0;
}

namespace {
template <class S>
S kropina_f2(const RiemannianChart& chart, const WindField& wind, std::span<const S> x,
             std::span<const S> y) {
  std::vector<S> w(x.size());
  wind.eval<S>(x, w.data());
  S h2 = chart.norm2(x, y);
  S w0 = chart.inner(x, std::span<const S>(w), y);
  S f = h2 / (2.0 * w0);
  return f * f;
}
template <class S>
S kropina_dual_f2(const RiemannianChart& chart, const WindField& wind, std::span<const S> x,
                  std::span<const S> xi) {
  std::vector<S> w(x.size());
  wind.eval<S>(x, w.data());
  S fstar = sqrt(chart.dual_norm2(x, xi)) + pairing(std::span<const S>(w), xi);
  return fstar * fstar;
}
}  // namespace

double KropinaModel::f2(std::span<const double> x, std::span<const double> y) const {
  check_unit_wind(x);
  return kropina_f2<double>(chart_, wind_, x, y);
}
Jet KropinaModel::f2_jet(std::span<const Jet> x, std::span<const Jet> y) const {
  return kropina_f2<Jet>(chart_, wind_, x, y);
}
bool KropinaModel::in_dual_cone(std::span<const double> x, std::span<const double> xi) const {
  check_dim(xi, "in_dual_cone covector");
  if (is_zero(xi)) return false;
  check_unit_wind(x);
  Vec w(dim());
  wind_.eval<double>(x, w.data());
  double fstar = std::sqrt(chart_.dual_norm2<double>(x, xi)) + dot(w, xi);
  return fstar > 0.0;
}
double KropinaModel::dual_f2(std::span<const double> x, std::span<const double> xi) const {
  check_unit_wind(x);
  return kropina_dual_f2<double>(chart_, wind_, x, xi);
}
Jet KropinaModel::dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const {
  return kropina_dual_f2<Jet>(chart_, wind_, x, xi);
}
std::optional<AlphaBetaDualView> KropinaModel::dual_view(std::span<const double> x) const {
  Vec w(dim());
  wind_.eval<double>(x, w.data());
  return AlphaBetaDualView{&chart_, std::move(w), PhiFamily::randers(), 1.0};
}
Vec KropinaModel::sample_cone(std::span<const double> x, Rng& rng) const {
  for (int tries = 0; tries < 2000; ++tries) {
    Vec y = rng.unit_vec(dim());
    double w0 = wind_pairing(x, y);
    if (std::abs(w0) < 0.25) continue;  // keep clear of the cone boundary
    if (w0 < 0.0)
      for (double& c : y) c = -c;
    double scale = rng.uniform(0.5, 2.0);
    for (double& c : y) c *= scale;
    return y;
  }
  raise(Err::empty_domain, "cone sampling failed");
}

Vec KropinaModel::sample_dual_cone(std::span<const double> x, Rng& rng) const {
  for (int tries = 0; tries < 2000; ++tries) {
    Vec xi = rng.unit_vec(dim());
    double hstar = std::sqrt(chart_.dual_norm2<double>(x, xi));
    Vec w(dim());
    wind_.eval<double>(x, w.data());
    double fstar = hstar + dot(w, xi);
    if (fstar < 0.25 * hstar) continue;
    double scale = rng.uniform(0.5, 2.0);
    for (double& c : xi) c *= scale;
    return xi;
  }
  raise(Err::empty_domain, "dual cone sampling failed");
}

// --- conic (alpha,beta) ---

AlphaBetaModel::AlphaBetaModel(RiemannianChart chart, Vec beta_covector, PhiFamily phi, double b0)
    : MetricModel("alpha-beta", chart.dim()),
      chart_(chart),
      beta_(std::move(beta_covector)),
      phi_(phi),
      b0_(b0) {
  require(static_cast<int>(beta_.size()) == chart.dim(), Err::dimension_mismatch,
          "beta covector dimension");
  require(b0 > 0.0, Err::bad_scenario, "alpha-beta needs b0 > 0");
}

void AlphaBetaModel::check_beta_bound(std::span<const double> x) const {
  double n2 = chart_.dual_norm2<double>(x, beta_);
  if (n2 > b0_ * b0_ * (1.0 + 1e-12))
    raise(Err::domain_violation, "||beta||_alpha exceeds b0 at a queried point");
}

double AlphaBetaModel::s_value(std::span<const double> x, std::span<const double> y) const {
  double alpha = std::sqrt(chart_.norm2<double>(x, y));
  double beta = dot(beta_, y);
  return beta / alpha;
}

bool AlphaBetaModel::in_cone(std::span<const double> x, std::span<const double> y) const {
  check_dim(y, "in_cone vector");
  if (is_zero(y)) return false;
  check_beta_bound(x);
  return phi_.admissible(s_value(x, y), b0_);
}

namespace {
template <class S>
S alpha_beta_f2(const RiemannianChart& chart, const Vec& beta, const PhiFamily& phi,
                std::span<const S> x, std::span<const S> y) {
  S a2 = chart.norm2(x, y);
  S alpha = sqrt(a2);
  S b = y[0] * beta[0];
  for (size_t i = 1; i < y.size(); ++i) b = b + y[i] * beta[i];
  S p = phi.eval(b / alpha);
  return a2 * p * p;
}
}  // namespace

double AlphaBetaModel::f2(std::span<const double> x, std::span<const double> y) const {
  check_beta_bound(x);
  return alpha_beta_f2<double>(chart_, beta_, phi_, x, y);
}
Jet AlphaBetaModel::f2_jet(std::span<const Jet> x, std::span<const Jet> y) const {
  return alpha_beta_f2<Jet>(chart_, beta_, phi_, x, y);
}
bool AlphaBetaModel::has_closed_dual() const {
  return phi_.kind() == PhiFamily::Kind::constant_one;
}
bool AlphaBetaModel::in_dual_cone(std::span<const double> x, std::span<const double> xi) const {
  if (!has_closed_dual()) return MetricModel::in_dual_cone(x, xi);
  return !is_zero(xi);
}
double AlphaBetaModel::dual_f2(std::span<const double> x, std::span<const double> xi) const {
  if (!has_closed_dual()) return MetricModel::dual_f2(x, xi);
  return chart_.dual_norm2(x, xi);
}
Jet AlphaBetaModel::dual_f2_jet(std::span<const Jet> x, std::span<const Jet> xi) const {
  if (!has_closed_dual()) return MetricModel::dual_f2_jet(x, xi);
  return chart_.dual_norm2(x, xi);
}

Vec AlphaBetaModel::primal_seed(std::span<const double> x, std::span<const double> xi) const {
  Vec y(dim());
  chart_.raise<double>(x, xi, y.data());
  if (in_cone(x, y)) return y;
  // push along the beta vector until the ray direction is admissible
  Vec bsharp(dim());
  chart_.raise<double>(x, beta_, bsharp.data());
  double scale = std::max(norm2(y), 1e-8);
  for (double sgn : {1.0, -1.0}) {
    for (double t = 0.1; t <= 204.8; t *= 2.0) {
      Vec cand = axpy(sgn * t * scale, bsharp, y);
      if (in_cone(x, cand)) return cand;
    }
  }
  raise(Err::dual_cone_violation, "no admissible Newton seed for the covector");
}

Vec AlphaBetaModel::sample_cone(std::span<const double> x, Rng& rng) const {
  for (int tries = 0; tries < 5000; ++tries) {
    Vec y = rng.unit_vec(dim());
    double s = s_value(x, y);
    if (!phi_.admissible(s, b0_)) continue;
    if (phi_.boundary_distance(s, b0_) < 0.15) continue;
    double scale = rng.uniform(0.5, 2.0);
    for (double& c : y) c *= scale;
    return y;
  }
  raise(Err::empty_domain, "cone sampling failed");
}

// --- screw-space Minkowski metric (explicit dual) ---

HelicoidMetric::HelicoidMetric(double a, double b)
    : MetricModel("helicoid-dual", 3),
      a_(a),
      b_(b),
      phi_(PhiFamily::helicoid(a, b)),
      chart_(RiemannianChart::euclidean(3)) {
  require(a > 0 && b > 0, Err::bad_scenario, "helicoid metric needs a, b > 0");
}

bool HelicoidMetric::in_cone(std::span<const double>, std::span<const double> y) const {
  double rho2 = y[0] * y[0] + y[1] * y[1];
  double t2 = y[2] * y[2];
  const double pi = 3.14159265358979323846;
  double lower = 4.0 / (pi * pi * a_ * a_) * t2;
  double upper = t2 / (a_ * a_);
  return 0.0 < lower && lower < rho2 && rho2 < upper;
}

bool HelicoidMetric::in_dual_cone(std::span<const double>, std::span<const double> xi) const {
  double p = xi[0] * xi[0] + xi[1] * xi[1] - a_ * a_ * xi[2] * xi[2];
  return p > 0.0 && xi[2] != 0.0;
}

namespace {
template <class S>
S helicoid_fstar(double a, std::span<const S> xi) {
  S p = xi[0] * xi[0] + xi[1] * xi[1] - (a * a) * (xi[2] * xi[2]);
  S q = sqrt(p);
  return q - a * xi[2] * atan(q / (a * xi[2]));
}
}  // namespace

double HelicoidMetric::dual_f2(std::span<const double> x, std::span<const double> xi) const {
  require(in_dual_cone(x, xi), Err::dual_cone_violation, "covector outside the dual cone");
  double f = helicoid_fstar<double>(a_, xi);
  return f * f;
}
Jet HelicoidMetric::dual_f2_jet(std::span<const Jet>, std::span<const Jet> xi) const {
  Jet f = helicoid_fstar<Jet>(a_, xi);
  return f * f;
}
std::optional<AlphaBetaDualView> HelicoidMetric::dual_view(std::span<const double>) const {
  return AlphaBetaDualView{&chart_, Vec{0.0, 0.0, b_}, phi_, b_};
}

Vec HelicoidMetric::dual_seed(std::span<const double>, std::span<const double> y) const {
  // The unit dual sphere is a surface of revolution; matching the slope
  // |y3|/|y_h| pins the profile parameter s by bisection, after which the
  // scale follows from 1-homogeneity.
  double yh = std::hypot(y[0], y[1]);
  require(yh > 0.0, Err::cone_violation, "seed target outside the cone");
  double target = std::abs(y[2]) / yh;
  double c = phi_.cutoff();
  auto ratio = [&](double sigma) {
    double q = std::sqrt(b_ * b_ - (1.0 + a_ * a_) * sigma * sigma);
    return a_ * std::atan(q / (a_ * sigma)) * std::sqrt(b_ * b_ - sigma * sigma) / q;
  };
  double lo = 1e-12 * c, hi = (1.0 - 1e-12) * c;
  // ratio decreases from a*pi/2 to a on (0, c)
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (ratio(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  double sigma = 0.5 * (lo + hi);
  double s = (y[2] > 0.0) ? -sigma : sigma;
  double hfrac = std::sqrt(1.0 - (s / b_) * (s / b_));
  Vec xihat{hfrac * y[0] / yh, hfrac * y[1] / yh, s / b_};
  // scale by matching the image length along y
  double q = std::sqrt(b_ * b_ - (1.0 + a_ * a_) * s * s);
  double varphi = b_ * q / (b_ * b_ - s * s);
  double dphi = phi_.dphi(s);
  double fstar = helicoid_fstar<double>(a_, xihat);
  Vec image{fstar * varphi * xihat[0], fstar * varphi * xihat[1],
            fstar * (varphi * xihat[2] + dphi * b_)};
  double t = dot(y, y) / dot(image, y);
  require(t > 0.0, Err::newton_divergence, "dual seed scaling failed");
  return scaled(t, xihat);
}

Vec HelicoidMetric::sample_cone(std::span<const double>, Rng& rng) const {
  const double pi = 3.14159265358979323846;
  double t = rng.uniform(0.5, 1.5) * (rng.uniform01() < 0.5 ? -1.0 : 1.0);
  double rlo = 2.0 * std::abs(t) / (pi * a_) * 1.12;
  double rhi = std::abs(t) / a_ * 0.9;
  double r = rng.uniform(rlo, rhi);
  double th = rng.uniform(0.0, 2.0 * pi);
  return {r * std::cos(th), r * std::sin(th), t};
}

Vec HelicoidMetric::sample_dual_cone(std::span<const double>, Rng& rng) const {
  const double pi = 3.14159265358979323846;
  double t = rng.uniform(0.5, 1.5) * (rng.uniform01() < 0.5 ? -1.0 : 1.0);
  double r = rng.uniform(1.3, 3.0) * a_ * std::abs(t);
  double th = rng.uniform(0.0, 2.0 * pi);
  return {r * std::cos(th), r * std::sin(th), t};
}

double helicoid_dual_metric(double a, std::span<const double> xi) {
  require(xi.size() == 3, Err::dimension_mismatch, "screw-space dual norm is 3d");
  double p = xi[0] * xi[0] + xi[1] * xi[1] - a * a * xi[2] * xi[2];
  require(p > 0.0 && xi[2] != 0.0, Err::dual_cone_violation, "covector outside the dual cone");
  return helicoid_fstar<double>(a, xi);
}

}  // namespace finsler
