#include <doctest.h>

#include <cmath>

#include "finsler/legendre.hpp"
#include "finsler/tensor.hpp"
#include "finsler/zoo.hpp"
#include "test_helpers.hpp"

using namespace finsler;
using namespace finsler::testing;

namespace {

// 64-point Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration
void gauss_legendre(int n, Vec& nodes, Vec& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    nodes[i] = t;
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

double integrate(const std::function<double(double)>& f, double lo, double hi) {
  static Vec nodes, weights;
  if (nodes.empty()) gauss_legendre(64, nodes, weights);
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(mid + half * nodes[i]);
  return acc * half;
}

// profile integrand b sqrt(b^2-(1+a^2)t^2) / ((b^2-t^2) t^2)
double integrand(double a, double b, double t) {
  return b * std::sqrt(b * b - (1.0 + a * a) * t * t) / ((b * b - t * t) * t * t);
}

/// Piecewise quadrature definition of the screw profile, independent of the
/// closed form. The square-root endpoint is regularized by t = c sin(theta).
double phi_quadrature(double a, double b, double s) {
  double c = b / std::sqrt(1.0 + a * a);
  auto theta_form = [&](double tlo) {
    // integral over [tlo, c] of integrand dt with t = c sin(theta)
    double th_lo = std::asin(tlo / c);
    return integrate(
        [&](double th) {
          double t = c * std::sin(th);
          double root = std::sqrt(1.0 + a * a) * c * std::cos(th);
          return b * root / ((b * b - t * t) * t * t) * c * std::cos(th);
        },
        th_lo, 3.14159265358979323846 / 2.0);
  };
  if (s > 0.0) return s * theta_form(s);
  // lower branch: -s * integral over [-c, s], mapped through t -> -u
  double tail = integrate([&](double u) { return integrand(a, b, -u) ; }, -s, 0.98 * c);
  double th_lo = std::asin(0.98);
  double end = integrate(
      [&](double th) {
        double t = c * std::sin(th);
        double root = std::sqrt(1.0 + a * a) * c * std::cos(th);
        return b * root / ((b * b - t * t) * t * t) * c * std::cos(th);
      },
      th_lo, 3.14159265358979323846 / 2.0);
  return -s * (tail + end);
}

}  // namespace

TEST_CASE("profile validation across the three public families") {
  PhiValidationReport one = validate_phi(PhiFamily::constant_one(), 1.0, -1.0, 1.0, 50);
  CHECK(one.pass);
  CHECK(one.min_first == doctest::Approx(1.0));
  CHECK(one.min_second == doctest::Approx(1.0));

  // phi(s) = 1/s on (0, 1]: phi - s phi' = 2/s, convexity = 2 b^2 / s^3
  PhiValidationReport kro = validate_phi(PhiFamily::kropina(), 1.0, 0.05, 1.0, 100);
  CHECK(kro.pass);
  CHECK(kro.min_first == doctest::Approx(2.0).epsilon(1e-12));

  PhiFamily heli = PhiFamily::helicoid(1.0, 1.0);
  double c = heli.cutoff();
  CHECK(c == doctest::Approx(1.0 / std::sqrt(2.0)));
  PhiValidationReport rep = validate_phi(heli, 1.0, -0.999 * c, 0.999 * c, 200);
  CHECK(rep.pass);
  CHECK(rep.points > 150);

  CHECK_THROWS_WITH_AS((void)validate_phi(PhiFamily::kropina(), 1.0, -1.0, -0.1, 40),
                       doctest::Contains("EmptyDomain"), Error);
}

TEST_CASE("screw-space dual norm values and cone") {
  // atan(sqrt(3)) = pi/3 makes this value exact: sqrt(3)/2 - pi/6
  double expected = std::sqrt(3.0) / 2.0 - 3.14159265358979323846 / 6.0;
  CHECK(helicoid_dual_metric(1.0, Vec{1, 0, 0.5}) == doctest::Approx(expected).epsilon(1e-12));
  // the lower branch gives the same value: the piecewise profile is even
  CHECK(helicoid_dual_metric(1.0, Vec{1, 0, -0.5}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_WITH_AS((void)helicoid_dual_metric(1.0, Vec{1, 0, 1.5}),
                       doctest::Contains("DualConeViolation"), Error);
  CHECK_THROWS_WITH_AS((void)helicoid_dual_metric(1.0, Vec{1, 0, 0}),
                       doctest::Contains("DualConeViolation"), Error);
}

TEST_CASE("dual norm equals alpha* phi(beta*/alpha*) on both branches") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    PhiFamily fam = PhiFamily::helicoid(a, b);
    Rng rng(4u);
    HelicoidMetric model(a, b);
    for (int k = 0; k < 50; ++k) {
      Vec xi = model.sample_dual_cone(Vec{0, 0, 0}, rng);
      double alpha = norm2(xi);
      double s = b * xi[2] / alpha;
      double composed = alpha * fam.phi(s);
      CHECK(helicoid_dual_metric(a, xi) == doctest::Approx(composed).epsilon(1e-10));
    }
  }
}

TEST_CASE("closed-form profile matches its quadrature definition on both branches") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    PhiFamily fam = PhiFamily::helicoid(a, b);
    double c = fam.cutoff();
    for (double frac : {0.1, 0.35, 0.6, 0.85}) {
      double s = frac * c;
      CHECK(fam.phi(s) == doctest::Approx(phi_quadrature(a, b, s)).epsilon(1e-10));
      CHECK(fam.phi(-s) == doctest::Approx(phi_quadrature(a, b, -s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("antiderivative spot check: derivative returns the negated integrand") {
  double a = 0.5, b = 2.0;
  auto antideriv = [&](double s) {
    double q = std::sqrt(b * b - (1.0 + a * a) * s * s);
    return q / (b * s) - (a / b) * std::atan(q / (a * s));
  };
  for (double s : {0.3, 0.6, 0.9}) {
    double h = 1e-6;
    double d = (antideriv(s + h) - antideriv(s - h)) / (2.0 * h);
    CHECK(d == doctest::Approx(-integrand(a, b, s)).epsilon(1e-7));
  }
}

TEST_CASE("varphi closed form, its derivative and the positivity identity") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    PhiFamily fam = PhiFamily::helicoid(a, b);
    double c = fam.cutoff();
    for (double frac : {-0.9, -0.5, -0.2, 0.2, 0.5, 0.9}) {
      double s = frac * c;
      double q = std::sqrt(b * b - (1.0 + a * a) * s * s);
      CHECK(fam.varphi(s) == doctest::Approx(b * q / (b * b - s * s)).epsilon(1e-12));
      double h = 1e-6 * c;
      double dv = (fam.varphi(s + h) - fam.varphi(s - h)) / (2.0 * h);
      CHECK(fam.dvarphi(s) == doctest::Approx(dv).epsilon(1e-6));
      double lhs = fam.varphi(s) * (fam.varphi(s) - (b * b - s * s) * fam.dvarphi(s) / s);
      double rhs = a * a * std::pow(b, 4) / ((b * b - s * s) * (b * b - s * s));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("dual tensor splits into the rho-coefficient combination") {
  double a = 1.0, b = 1.0;
  HelicoidMetric model(a, b);
  PhiFamily fam = model.profile();
  Rng rng(77u);
  Vec x{0, 0, 0};
  for (int k = 0; k < 25; ++k) {
    Vec xi = model.sample_dual_cone(x, rng);
    Mat gstar = dual_fundamental(model, x, xi);
    double alpha = norm2(xi);
    double s = b * xi[2] / alpha;
    DualTensorCoefficients co = tensor_coefficients(fam, s);
    Vec bvec{0, 0, b};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double ahat_i = xi[i] / alpha, ahat_j = xi[j] / alpha;
        double expected = co.rho * (i == j ? 1.0 : 0.0) + co.rho0 * bvec[i] * bvec[j] +
                          co.rho1 * (bvec[i] * ahat_j + bvec[j] * ahat_i) -
                          s * co.rho1 * ahat_i * ahat_j;
        CHECK(gstar(i, j) == doctest::Approx(expected).epsilon(1e-10));
      }
  }
}

TEST_CASE("unit normal composition from the base normal") {
  Vec x{0, 0, 0};
  SUBCASE("riemannian profile leaves the base normal unchanged") {
    auto model = euclid3();
    Vec nbar{0.6, 0.0, 0.8};
    Vec n = alpha_beta_normal(*model, x, nbar);
    for (int i = 0; i < 3; ++i) CHECK(n[i] == doctest::Approx(nbar[i]).epsilon(1e-14));
  }
  SUBCASE("screw profile at a hand-computed surface point") {
    HelicoidMetric model(1.0, 1.0);
    double u = 0.5, g = std::sqrt(u * u + 1.0);
    Vec nbar{0.0, -1.0 / g, u / g};  // base unit normal of the ruled surface at v = 0
    Vec n = alpha_beta_normal(model, x, nbar);
    CHECK(eval_metric(model, x, n) == doctest::Approx(1.0).epsilon(1e-9));
    // cross-check: the Legendre preimage of the normalized conormal
    PhiFamily fam = model.profile();
    double s = nbar[2];  // beta(nbar) with beta* = (0,0,1)
    Vec nu = scaled(1.0 / fam.phi(s), nbar);
    Vec n2 = legendre_inverse(model, x, nu);
    for (int i = 0; i < 3; ++i) CHECK(n[i] == doctest::Approx(n2[i]).epsilon(1e-8));
  }
  SUBCASE("unit-wind profile reproduces the shifted normal") {
    auto model = kropina_flat();
    Rng rng(5u);
    for (int k = 0; k < 20; ++k) {
      Vec nbar = rng.unit_vec(3);
      if (nbar[2] < -0.9) continue;  // stay away from the excluded opposite normal
      Vec n = alpha_beta_normal(*model, x, nbar);
      CHECK(n[0] == doctest::Approx(nbar[0]).epsilon(1e-12));
      CHECK(n[1] == doctest::Approx(nbar[1]).epsilon(1e-12));
      CHECK(n[2] == doctest::Approx(nbar[2] + 1.0).epsilon(1e-12));
      CHECK(eval_metric(*model, x, n) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("norm-one holds over random admissible base normals") {
    HelicoidMetric model(0.5, 2.0);
    PhiFamily fam = model.profile();
    Rng rng(6u);
    int done = 0;
    while (done < 50) {
      Vec nbar = rng.unit_vec(3);
      double s = 2.0 * nbar[2];
      if (!fam.admissible(s, 2.0) || fam.boundary_distance(s, 2.0) < 0.05) continue;
      Vec n = alpha_beta_normal(model, Vec{0, 0, 0}, nbar);
      CHECK(eval_metric(model, Vec{0, 0, 0}, n) == doctest::Approx(1.0).epsilon(1e-9));
      ++done;
    }
  }
  SUBCASE("inadmissible profile arguments are rejected") {
    HelicoidMetric model(1.0, 1.0);
    CHECK_THROWS_WITH_AS((void)alpha_beta_normal(model, x, Vec{0, 0, 1}),
                         doctest::Contains("DomainViolation"), Error);
    CHECK_THROWS_WITH_AS((void)alpha_beta_normal(model, x, Vec{0, 0, 2}),
                         doctest::Contains("DomainViolation"), Error);
  }
}

TEST_CASE("navigation metric construction and duality") {
  SUBCASE("non-unit winds are rejected up front") {
    CHECK_THROWS_WITH_AS(
        (void)kropina_from_navigation(RiemannianChart::euclidean(3),
                                      WindField::constant({0, 0, 0.9})),
        doctest::Contains("NotUnitWind"), Error);
  }
  SUBCASE("hand-checked transform pair") {
    auto model = kropina_flat();
    Vec x{0, 0, 0};
    Vec xi = legendre(*model, x, Vec{0, 0, 1});
    CHECK(xi[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::abs(xi[0]) < 1e-15);
    CHECK(eval_dual_metric(*model, x, xi) == doctest::Approx(0.5).epsilon(1e-13));
    Vec y = legendre_inverse(*model, x, Vec{0, 0, 0.25});
    CHECK(std::abs(y[0]) < 1e-14);
    CHECK(std::abs(y[1]) < 1e-14);
    CHECK(y[2] == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("dual norm of the image equals the primal norm") {
    Rng rng(12u);
    for (auto model : {kropina_flat(), kropina_round()}) {
      Vec x = model->base_chart()->flat() ? rng.uniform_vec(3, -1, 1)
                                          : rng.uniform_vec(3, -0.6, 0.6);
      for (int k = 0; k < 100; ++k) {
        Vec y = model->sample_cone(x, rng);
        Vec xi = legendre(*model, x, y);
        CHECK(eval_dual_metric(*model, x, xi) ==
              doctest::Approx(eval_metric(*model, x, y)).epsilon(1e-9));
      }
    }
  }
  SUBCASE("rotation wind has unit length across the chart") {
    RiemannianChart chart = RiemannianChart::round_sphere(3);
    WindField wind = WindField::hopf();
    Rng rng(13u);
    for (int k = 0; k < 50; ++k) {
      Vec x = rng.uniform_vec(3, -2.0, 2.0);
      Vec w(3);
      wind.eval<double>(x, w.data());
      CHECK(chart.norm2<double>(x, w) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("killing detection over sample sets") {
  std::vector<Vec> pts{{0.1, 0.2, -0.3}, {-0.5, 0.4, 0.2}, {0.3, -0.1, 0.6}};
  SUBCASE("constant winds generate flat translations") {
    KillingReport rep = killing_check(RiemannianChart::euclidean(3),
                                      WindField::constant({0, 0, 1}), pts);
    CHECK(rep.pass);
    CHECK(rep.max_r == doctest::Approx(0.0));
  }
  SUBCASE("the rotation wind is Killing for the round chart") {
    KillingReport rep = killing_check(RiemannianChart::round_sphere(3), WindField::hopf(), pts);
    CHECK(rep.pass);
    CHECK(rep.max_r <= 1e-8);
  }
  SUBCASE("a stretching field fails with the expected component") {
    Mat a(3, 3);
    a(0, 0) = 1.0;  // W = (x1, 0, 0)
    KillingReport rep = killing_check(RiemannianChart::euclidean(3), WindField::linear(a), pts);
    CHECK_FALSE(rep.pass);
    CHECK(rep.samples[0].r(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("the swirl wind is unit length but not Killing") {
    WindField sw = WindField::swirl();
    Vec w(3);
    sw.eval<double>(pts[0], w.data());
    CHECK(norm2(w) == doctest::Approx(1.0));
    KillingReport rep = killing_check(RiemannianChart::euclidean(3), sw, pts);
    CHECK_FALSE(rep.pass);
  }
}
