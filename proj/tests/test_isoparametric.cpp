#include <doctest.h>

#include <cmath>

#include "finsler/isoparametric.hpp"
#include "finsler/shape.hpp"
#include "finsler/spray.hpp"
#include "test_helpers.hpp"

using namespace finsler;
using namespace finsler::testing;

namespace {
SeedBox box3(double half) { return SeedBox{Vec(3, -half), Vec(3, half)}; }
}  // namespace

TEST_CASE("linear fields on x-independent metrics are isoparametric") {
  HelicoidMetric model(1.0, 1.0);
  ScalarField f = ScalarField::linear({1.0, 0.0, 0.1});
  Vec levels{0.3, 0.8};
  Rng rng(1u);
  IsoparametricVerdict v = isoparametric_check(model, VolumeForm::lebesgue(), f, levels, 8,
                                               1e-6, box3(2.0), rng);
  CHECK(v.transnormal);
  CHECK(v.isoparametric_sigma);
  CHECK(v.isoparametric_hat);
  CHECK(v.max_spread_grad <= 1e-10);
  // a constant differential in a Minkowski space: b vanishes identically
  for (const auto& ls : v.levels) CHECK(std::abs(ls.mean_sigma) <= 1e-10);
  CHECK(!v.notes.empty());
}

TEST_CASE("the wind-aligned coordinate is isoparametric with a = 2, b = 0") {
  auto model = kropina_flat();
  ScalarField f = ScalarField::linear({0, 0, 1});
  Vec levels{0.5, 1.5};
  Rng rng(2u);
  IsoparametricVerdict v = isoparametric_check(*model, VolumeForm::busemann_hausdorff(*model),
                                               f, levels, 8, 1e-6, box3(1.5), rng);
  CHECK(v.isoparametric_sigma);
  for (const auto& ls : v.levels) {
    CHECK(ls.mean_grad == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(ls.mean_sigma) <= 1e-9);
  }
}

TEST_CASE("the flat distance function is isoparametric with the classical values") {
  EuclideanModel model(3);
  ScalarField f = ScalarField::norm(3);
  Vec levels{1.0, 2.0};
  Rng rng(3u);
  IsoparametricVerdict v = isoparametric_check(model, VolumeForm::lebesgue(), f, levels, 8,
                                               1e-6, box3(2.5), rng);
  CHECK(v.isoparametric_sigma);
  CHECK(v.isoparametric_hat);
  for (size_t i = 0; i < levels.size(); ++i) {
    CHECK(v.levels[i].mean_grad == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(v.levels[i].mean_hat == doctest::Approx(2.0 / levels[i]).epsilon(1e-8));
  }
}

TEST_CASE("a sheared height function fails the transnormal test") {
  EuclideanModel model(3);
  Mat q(3, 3);
  q(1, 1) = 2.0;
  ScalarField f = ScalarField::quadratic(q, {1, 0, 0});
  Rng rng(4u);
  Vec levels{0.5};
  IsoparametricVerdict v = transnormal_check(model, f, levels, 12, 1e-6, box3(1.5), rng);
  CHECK_FALSE(v.transnormal);
  Rng rng2(4u);
  IsoparametricVerdict d = minkowski_dual_check(model, f, levels, 12, 1e-6, box3(1.5), rng2);
  CHECK_FALSE(d.transnormal);
}

TEST_CASE("primal and dual-form paths agree on x-independent metrics") {
  EuclideanModel model(3);
  ScalarField f = ScalarField::norm(3);
  Vec levels{1.0, 2.0};
  Rng r1(5u), r2(6u);
  IsoparametricVerdict p = isoparametric_check(model, VolumeForm::lebesgue(), f, levels, 10,
                                               1e-6, box3(2.5), r1);
  IsoparametricVerdict d = minkowski_dual_check(model, f, levels, 10, 1e-6, box3(2.5), r2);
  CHECK(d.isoparametric_sigma == p.isoparametric_sigma);
  for (size_t i = 0; i < levels.size(); ++i) {
    CHECK(std::abs(p.levels[i].mean_grad - d.levels[i].mean_grad) <= 1e-8);
    CHECK(std::abs(p.levels[i].mean_hat - d.levels[i].mean_sigma) <= 1e-8);
  }
}

TEST_CASE("the dual-form check requires an x-independent closed dual") {
  auto model = kropina_round();
  ScalarField f = ScalarField::linear({0, 0, 1});
  Rng rng(7u);
  Vec levels{0.5};
  CHECK_THROWS_WITH_AS(
      (void)minkowski_dual_check(*model, f, levels, 6, 1e-6, box3(0.5), rng),
      doctest::Contains("Unsupported"), Error);
}

TEST_CASE("unreachable levels report insufficient samples") {
  EuclideanModel model(3);
  ScalarField f = ScalarField::norm(3);
  Rng rng(8u);
  Vec levels{25.0};
  CHECK_THROWS_WITH_AS(
      (void)transnormal_check(model, f, levels, 8, 1e-6, box3(1.0), rng),
      doctest::Contains("InsufficientSamples"), Error);
}

TEST_CASE("regular level hypersurfaces of passing fields have constant mean curvature") {
  SUBCASE("planes transverse to a constant wind") {
    auto model = kropina_flat();
    VolumeForm vol = VolumeForm::busemann_hausdorff(*model);
    Immersion plane = Immersion::hyperplane({0, 0, 1.5}, {1, 0, 0}, {0, 1, 0});
    double lo = 1e300, hi = -1e300;
    for (double u : {-1.0, 0.0, 1.0})
      for (double v : {-1.0, 0.3, 0.9}) {
        ShapeReport rep = shape_operator(*model, plane, Vec{u, v}, CoOrientation::frame(), &vol);
        lo = std::min(lo, rep.mean);
        hi = std::max(hi, rep.mean);
      }
    CHECK(hi - lo <= 1e-6);
  }
  SUBCASE("level spheres of the flat distance function") {
    EuclideanModel model(3);
    Immersion sph = Immersion::sphere({0, 0, 0}, 1.0);
    VolumeForm vol = VolumeForm::lebesgue();
    double lo = 1e300, hi = -1e300;
    for (double th : {0.4, 1.1, 2.2})
      for (double ph : {0.5, 2.8, 5.2}) {
        ShapeReport rep = shape_operator(model, sph, Vec{th, ph},
                                         CoOrientation::radial({0, 0, 0}), &vol);
        lo = std::min(lo, rep.mean);
        hi = std::max(hi, rep.mean);
      }
    CHECK(hi - lo <= 1e-6);
    CHECK(lo == doctest::Approx(-2.0).epsilon(1e-8));  // outward orientation at radius one
  }
}

TEST_CASE("laplacian split closes pointwise along levels") {
  auto model = kropina_round();
  VolumeForm vol = VolumeForm::busemann_hausdorff(*model);
  ScalarField f = ScalarField::linear({0.4, 0.1, 1.0});
  Rng rng(9u);
  SeedBox box = box3(0.5);
  auto pts = sample_level_set(*model, f, 0.2, 6, box, rng);
  for (const Vec& p : pts) {
    LaplacianResult lap = laplacians(*model, vol, f, p);
    CHECK(std::abs(lap.div_sigma - (lap.hat - lap.s_at_grad)) <= 1e-6);
  }
}
