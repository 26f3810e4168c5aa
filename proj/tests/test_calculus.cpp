#include <doctest.h>

#include <cmath>

#include "finsler/legendre.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"
#include "finsler/zoo.hpp"
#include "test_helpers.hpp"

using namespace finsler;
using namespace finsler::testing;

TEST_CASE("legendre transform on flat metrics is the identity pairing") {
  EuclideanModel model(2);
  Vec x{0, 0};
  Vec xi = legendre(model, x, Vec{3, 4});
  CHECK(xi[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(xi[1] == doctest::Approx(4.0).epsilon(1e-14));
  Vec y = legendre_inverse(model, x, Vec{3, 4});
  CHECK(y[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("legendre transform is positively homogeneous") {
  Rng rng(42u);
  for (auto& [model, x] : model_zoo(rng)) {
    CAPTURE(model->kind());
    for (int k = 0; k < 10; ++k) {
      Vec y = model->sample_cone(x, rng);
      Vec xi = legendre(*model, x, y);
      Vec xi2 = legendre(*model, x, scaled(2.0, y));
      for (int i = 0; i < 3; ++i)
        CHECK(std::abs(xi2[i] - 2.0 * xi[i]) <= 1e-12 * std::max(1.0, std::abs(2.0 * xi[i])));
    }
  }
}

TEST_CASE("round trips hold on both sides across the zoo") {
  Rng rng(43u);
  for (auto& [model, x] : model_zoo(rng)) {
    CAPTURE(model->kind());
    for (int k = 0; k < 30; ++k) {
      Vec y = model->sample_cone(x, rng);
      Vec back = legendre_inverse(*model, x, legendre(*model, x, y));
      double scale = std::max(1.0, norm2(y));
      for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - y[i]) <= 1e-8 * scale);
      if (!model->has_closed_dual()) continue;
      Vec xi = model->sample_dual_cone(x, rng);
      Vec there = legendre(*model, x, legendre_inverse(*model, x, xi));
      double dscale = std::max(1.0, norm2(xi));
      for (int i = 0; i < 3; ++i) CHECK(std::abs(there[i] - xi[i]) <= 1e-8 * dscale);
    }
  }
}

TEST_CASE("inverse transform without a closed dual runs through the newton bridge") {
  auto ab = alpha_beta_kropina();
  auto kf = kropina_flat();
  Rng rng(44u);
  Vec x{0.2, 0.1, -0.5};
  for (int k = 0; k < 20; ++k) {
    Vec xi = kf->sample_dual_cone(x, rng);
    Vec y_ab = legendre_inverse(*ab, x, xi);   // newton path
    Vec y_kf = legendre_inverse(*kf, x, xi);   // closed dual
    for (int i = 0; i < 3; ++i)
      CHECK(y_ab[i] == doctest::Approx(y_kf[i]).epsilon(1e-9));
  }
  // a covector on the boundary ray of the applicable cone cannot be inverted
  CHECK_THROWS_AS((void)legendre_inverse(*ab, x, Vec{0, 0, -1}), Error);
}

TEST_CASE("conic gradients of the catalogue fields") {
  Vec x{0.3, -0.6, 0.8};
  SUBCASE("coordinate field on the unit-wind metric") {
    auto model = kropina_flat();
    ScalarField f = ScalarField::linear({0, 0, 1});
    Vec g = gradient(*model, f, x);
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(0.0));
    CHECK(g[2] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(eval_metric(*model, x, g) == doctest::Approx(2.0).epsilon(1e-12));
    Vec df = f.grad(x);
    CHECK(eval_dual_metric(*model, x, df) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("linear field on the flat metric") {
    EuclideanModel model(3);
    ScalarField f = ScalarField::linear({0.5, -1.0, 2.0});
    Vec g = gradient(model, f, x);
    CHECK(g[0] == doctest::Approx(0.5));
    CHECK(g[1] == doctest::Approx(-1.0));
    CHECK(g[2] == doctest::Approx(2.0));
  }
  SUBCASE("distance field on the flat metric") {
    EuclideanModel model(3);
    ScalarField f = ScalarField::norm(3);
    Vec g = gradient(model, f, x);
    double r = norm2(x);
    for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(x[i] / r).epsilon(1e-12));
  }
  SUBCASE("out-of-domain differentials are rejected") {
    auto model = kropina_flat();
    ScalarField against = ScalarField::linear({0, 0, -1});
    CHECK_THROWS_WITH_AS((void)gradient(*model, against, x), doctest::Contains("OutOfDomain"),
                         Error);
    ScalarField bowl = ScalarField::quadratic(Mat::identity(3), Vec(3, 0.0));
    CHECK_THROWS_WITH_AS((void)gradient(*model, bowl, Vec{0, 0, 0}),
                         doctest::Contains("OutOfDomain"), Error);
  }
}

TEST_CASE("spray coefficients vanish for x-independent metrics") {
  Rng rng(45u);
  Vec x{0.4, 0.2, -0.7};
  auto kf = kropina_flat();
  for (int k = 0; k < 5; ++k) {
    Vec y = kf->sample_cone(x, rng);
    SprayData sd = spray(*kf, x, y);  // generic path, no shortcut
    for (int i = 0; i < 3; ++i) CHECK(std::abs(sd.G[i]) <= 1e-10);
  }
  HelicoidMetric he(1.0, 1.0);
  Vec y = he.sample_cone(x, rng);
  SprayData sd = spray(he, x, y);
  for (int i = 0; i < 3; ++i) CHECK(sd.G[i] == 0.0);
}

TEST_CASE("spray coefficients are positively 2-homogeneous") {
  auto model = kropina_round();
  Rng rng(46u);
  for (int k = 0; k < 10; ++k) {
    Vec x = rng.uniform_vec(3, -0.6, 0.6);
    Vec y = model->sample_cone(x, rng);
    SprayData s1 = spray(*model, x, y);
    SprayData s2 = spray(*model, x, scaled(2.0, y));
    double gn = norm2(s1.G);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(s2.G[i] - 4.0 * s1.G[i]) <= 1e-9 * (1.0 + 4.0 * gn));
  }
}

TEST_CASE("connection coefficients are symmetric and reduce to the chart connection") {
  RiemannianModel model(RiemannianChart::round_sphere(3));
  Rng rng(47u);
  Vec x{0.2, -0.3, 0.5};
  Vec y1 = rng.unit_vec(3), y2 = rng.unit_vec(3);
  SprayData a = spray(model, x, y1);
  SprayData b = spray(model, x, y2);
  std::vector<double> oracle = model.base_chart()->christoffel(x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        CHECK(a.gamma_at(i, j, k, 3) == doctest::Approx(a.gamma_at(i, k, j, 3)).epsilon(1e-10));
        // reference-vector independence for quadratic metrics
        CHECK(std::abs(a.gamma_at(i, j, k, 3) - b.gamma_at(i, j, k, 3)) <= 1e-8);
        CHECK(std::abs(a.gamma_at(i, j, k, 3) - oracle[(i * 3 + j) * 3 + k]) <= 1e-8);
      }
}

TEST_CASE("covariant derivative has the stated closed forms") {
  Vec x{0.3, 0.1, -0.2}, v{1.0, -2.0, 0.5};
  SUBCASE("constant fields are parallel in flat space") {
    HelicoidMetric model(1.0, 1.0);
    Rng rng(48u);
    Vec w = model.sample_cone(x, rng);
    Vec d = covariant_derivative(model, w, v, WindField::constant({0.3, 0.7, -0.1}), x);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(d[i]) < 1e-14);
  }
  SUBCASE("the identity field differentiates to the direction") {
    EuclideanModel model(3);
    Vec d = covariant_derivative(model, Vec{0, 0, 1}, v, WindField::linear(Mat::identity(3)), x);
    for (int i = 0; i < 3; ++i) CHECK(d[i] == doctest::Approx(v[i]).epsilon(1e-12));
  }
  SUBCASE("round-chart derivative matches the chart connection") {
    RiemannianModel model(RiemannianChart::round_sphere(3));
    WindField field = WindField::hopf();
    Vec w{0.4, 0.3, 0.8};
    Vec d = covariant_derivative(model, w, v, field, x);
    // oracle: v^j dX^i/dx^j + Gamma^i_jk v^j X^k with the closed-form connection
    std::vector<double> gamma = model.base_chart()->christoffel(x);
    const JetSpec& s = JetSpec::get(3, 1);
    std::vector<Jet> xj(3);
    for (int i = 0; i < 3; ++i) xj[i] = Jet::variable(s, i, x[i]);
    std::vector<Jet> Xj(3, Jet(s));
    field.eval<Jet>(xj, Xj.data());
    for (int i = 0; i < 3; ++i) {
      double expect = 0.0;
      for (int j = 0; j < 3; ++j) {
        expect += v[j] * Xj[i].partial({j});
        for (int k = 0; k < 3; ++k)
          expect += gamma[(i * 3 + j) * 3 + k] * v[j] * Xj[k].value();
      }
      CHECK(d[i] == doctest::Approx(expect).epsilon(1e-8));
    }
  }
}

TEST_CASE("s-curvature closed cases") {
  Rng rng(49u);
  Vec x{0.5, -0.2, 0.3};
  SUBCASE("x-independent metric with the flat density") {
    HelicoidMetric model(0.5, 2.0);
    Vec y = model.sample_cone(x, rng);
    CHECK(std::abs(s_curvature(model, VolumeForm::lebesgue(), x, y)) < 1e-12);
  }
  SUBCASE("flat metric with an exponential density") {
    EuclideanModel model(3);
    VolumeForm vol = VolumeForm::exp_linear({1, 0, 0});
    for (int k = 0; k < 5; ++k) {
      Vec y = rng.unit_vec(3);
      CHECK(s_curvature(model, vol, x, y) == doctest::Approx(-y[0]).epsilon(1e-12));
    }
  }
  SUBCASE("navigation metric with the unit-ball density") {
    auto model = kropina_round();
    VolumeForm vol = VolumeForm::busemann_hausdorff(*model);
    Vec xc{0.2, 0.3, -0.1};
    for (int k = 0; k < 5; ++k) {
      Vec y = model->sample_cone(xc, rng);
      CHECK(std::abs(s_curvature(*model, vol, xc, y)) <= 1e-8);
    }
  }
}

TEST_CASE("laplacians of catalogue fields") {
  SUBCASE("half squared distance on the flat metric") {
    EuclideanModel model(3);
    ScalarField f = ScalarField::quadratic(Mat::identity(3), Vec(3, 0.0));
    LaplacianResult lap = laplacians(model, VolumeForm::lebesgue(), f, Vec{0.4, 0.1, -0.3});
    CHECK(lap.hat == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(lap.sigma == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(lap.div_sigma == doctest::Approx(3.0).epsilon(1e-8));
  }
  SUBCASE("linear fields are harmonic for constant winds") {
    auto model = kropina_flat();
    ScalarField f = ScalarField::linear({0.1, 0.0, 1.0});
    LaplacianResult lap = laplacians(*model, VolumeForm::busemann_hausdorff(*model), f,
                                     Vec{0.2, -0.4, 0.6});
    CHECK(std::abs(lap.hat) < 1e-10);
    CHECK(std::abs(lap.sigma) < 1e-10);
    CHECK(std::abs(lap.div_sigma) < 1e-8);
  }
  SUBCASE("the divergence form closes the relation on curved navigation data") {
    auto model = kropina_round();
    VolumeForm vol = VolumeForm::busemann_hausdorff(*model);
    Rng rng(50u);
    int done = 0;
    while (done < 20) {
      Mat q(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) q(i, j) = q(j, i) = rng.uniform(-0.3, 0.3);
      ScalarField f = ScalarField::quadratic(q, rng.uniform_vec(3, -1, 1));
      Vec x = rng.uniform_vec(3, -0.5, 0.5);
      try {
        LaplacianResult lap = laplacians(*model, vol, f, x);
        CHECK(std::abs(lap.div_sigma - (lap.hat - lap.s_at_grad)) <= 1e-6);
        ++done;
      } catch (const Error& e) {
        if (e.code() != Err::out_of_domain) throw;
      }
    }
  }
}

TEST_CASE("flag curvature closed cases and invariances") {
  Rng rng(51u);
  SUBCASE("x-independent metrics are flat") {
    HelicoidMetric model(1.0, 1.0);
    Vec x{0, 0, 0};
    for (int k = 0; k < 5; ++k) {
      Vec y = model.sample_cone(x, rng);
      Vec v = rng.unit_vec(3);
      CHECK(std::abs(flag_curvature(model, x, y, v)) < 1e-12);
    }
  }
  SUBCASE("the round chart has constant curvature one") {
    RiemannianModel model(RiemannianChart::round_sphere(3));
    for (int k = 0; k < 10; ++k) {
      Vec x = rng.uniform_vec(3, -0.7, 0.7);
      Vec y = rng.unit_vec(3);
      Vec v = rng.unit_vec(3);
      double denom_guard = std::abs(dot(y, v));
      if (denom_guard > 0.99) continue;
      CHECK(flag_curvature(model, x, y, v) == doctest::Approx(1.0).epsilon(1e-4));
    }
  }
  SUBCASE("transverse shifts and rescalings leave the flag unchanged") {
    auto model = kropina_round();
    Vec x{0.1, 0.2, -0.3};
    Vec y = model->sample_cone(x, rng);
    Vec v = rng.unit_vec(3);
    double k0 = flag_curvature(*model, x, y, v);
    for (double lam : {-1.0, 0.5}) {
      Vec shifted = axpy(lam, y, v);
      CHECK(flag_curvature(*model, x, y, shifted) == doctest::Approx(k0).epsilon(1e-8));
    }
    CHECK(flag_curvature(*model, x, y, scaled(3.0, v)) == doctest::Approx(k0).epsilon(1e-10));
  }
  SUBCASE("degenerate flags are rejected") {
    EuclideanModel model(3);
    Vec y{1, 0, 0};
    CHECK_THROWS_WITH_AS((void)flag_curvature(model, Vec{0, 0, 0}, y, y),
                         doctest::Contains("DegenerateFlag"), Error);
  }
  SUBCASE("the curvature operator annihilates the flagpole") {
    auto model = kropina_round();
    Vec x{0.15, -0.25, 0.35};
    for (int k = 0; k < 5; ++k) {
      Vec y = model->sample_cone(x, rng);
      Mat r = spray_curvature(*model, x, y);
      TensorPack p = fundamental_tensor(*model, x, y, DerivMode::exact, false);
      Vec v = rng.unit_vec(3);
      Vec rv = matvec(r, v);
      double pairing = 0.0, scale = 1.0 + norm2(rv);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) pairing += p.g(i, j) * rv[i] * y[j];
      CHECK(std::abs(pairing) <= 1e-7 * scale);
    }
  }
}

TEST_CASE("the engine is dimension generic across chart dimensions") {
  Rng rng(60u);
  SUBCASE("two-dimensional navigation metric") {
    auto model = kropina_from_navigation(RiemannianChart::euclidean(2),
                                         WindField::constant({0.6, 0.8}));
    Vec x{0.1, -0.2};
    for (int k = 0; k < 10; ++k) {
      Vec y = model->sample_cone(x, rng);
      Vec back = legendre_inverse(*model, x, legendre(*model, x, y));
      for (int i = 0; i < 2; ++i)
        CHECK(back[i] == doctest::Approx(y[i]).epsilon(1e-9));
    }
  }
  SUBCASE("four-dimensional round chart has constant curvature one") {
    RiemannianModel model(RiemannianChart::round_sphere(4));
    for (int k = 0; k < 3; ++k) {
      Vec x = rng.uniform_vec(4, -0.5, 0.5);
      Vec y = rng.unit_vec(4);
      Vec v = rng.unit_vec(4);
      if (std::abs(dot(y, v)) > 0.95) continue;
      CHECK(flag_curvature(model, x, y, v) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("four-dimensional flat laplacian of the half squared distance") {
    EuclideanModel model(4);
    ScalarField f = ScalarField::quadratic(Mat::identity(4), Vec(4, 0.0));
    LaplacianResult lap =
        laplacians(model, VolumeForm::lebesgue(), f, Vec{0.1, 0.2, -0.3, 0.4});
    CHECK(lap.hat == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(lap.div_sigma == doctest::Approx(4.0).epsilon(1e-8));
  }
}

TEST_CASE("screw-metric transforms round-trip across the parameter range") {
  Rng rng(61u);
  Vec x{0, 0, 0};
  for (double a : {0.3, 1.0, 2.5})
    for (double b : {0.7, 1.0, 3.0}) {
      HelicoidMetric model(a, b);
      CAPTURE(a);
      CAPTURE(b);
      for (int k = 0; k < 20; ++k) {
        Vec y = model.sample_cone(x, rng);
        Vec back = legendre_inverse(model, x, legendre(model, x, y));
        double scale = std::max(1.0, norm2(y));
        for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - y[i]) <= 1e-8 * scale);
      }
    }
}
