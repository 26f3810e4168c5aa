#include <doctest.h>

#include <cmath>

#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"

using namespace finsler;

namespace {

// smooth reference function of three variables with analytic partials
double ref(double x, double y, double z) { return std::exp(0.3 * x) * std::sin(y) / (2.0 + z); }

Jet ref_jet(const JetSpec& s, double x, double y, double z) {
  Jet xj = Jet::variable(s, 0, x), yj = Jet::variable(s, 1, y), zj = Jet::variable(s, 2, z);
  return exp(0.3 * xj) * sin(yj) / (zj + 2.0);
}

}  // namespace

TEST_CASE("jet arithmetic reproduces analytic partial derivatives") {
  const JetSpec& s = JetSpec::get(3, 4);
  double x = 0.4, y = -0.7, z = 0.2;
  Jet f = ref_jet(s, x, y, z);
  double e = std::exp(0.3 * x), sn = std::sin(y), cs = std::cos(y), d = 2.0 + z;
  CHECK(f.value() == doctest::Approx(e * sn / d).epsilon(1e-14));
  CHECK(f.partial({0}) == doctest::Approx(0.3 * e * sn / d).epsilon(1e-13));
  CHECK(f.partial({1}) == doctest::Approx(e * cs / d).epsilon(1e-13));
  CHECK(f.partial({2}) == doctest::Approx(-e * sn / (d * d)).epsilon(1e-13));
  CHECK(f.partial({0, 1}) == doctest::Approx(0.3 * e * cs / d).epsilon(1e-13));
  CHECK(f.partial({1, 1}) == doctest::Approx(-e * sn / d).epsilon(1e-13));
  CHECK(f.partial({2, 2}) == doctest::Approx(2.0 * e * sn / (d * d * d)).epsilon(1e-13));
  // mixed fourth order: d4/dx dy dz dz
  CHECK(f.partial({0, 1, 2, 2}) ==
        doctest::Approx(0.3 * e * cs * 2.0 / (d * d * d)).epsilon(1e-12));
}

TEST_CASE("jet division and elementary functions match scalar evaluation") {
  const JetSpec& s = JetSpec::get(2, 3);
  Jet a = Jet::variable(s, 0, 1.3), b = Jet::variable(s, 1, -0.4);
  Jet g = log(sqrt(a * a + b * b)) + atan(b / a) + pow(a, 1.7) - cos(a * b);
  double av = 1.3, bv = -0.4;
  auto scalar = [](double aa, double bb) {
    return std::log(std::hypot(aa, bb)) + std::atan(bb / aa) + std::pow(aa, 1.7) -
           std::cos(aa * bb);
  };
  CHECK(g.value() == doctest::Approx(scalar(av, bv)).epsilon(1e-14));
  double h = 1e-6;
  CHECK(g.partial({0}) ==
        doctest::Approx((scalar(av + h, bv) - scalar(av - h, bv)) / (2 * h)).epsilon(1e-8));
  CHECK(g.partial({1}) ==
        doctest::Approx((scalar(av, bv + h) - scalar(av, bv - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("derivative extraction lowers the order consistently") {
  const JetSpec& s = JetSpec::get(3, 4);
  Jet f = ref_jet(s, 0.1, 0.5, -0.3);
  Jet fy = f.derivative(1);
  CHECK(fy.spec().order() == 3);
  CHECK(fy.value() == doctest::Approx(f.partial({1})).epsilon(1e-14));
  CHECK(fy.partial({2}) == doctest::Approx(f.partial({1, 2})).epsilon(1e-13));
  CHECK(fy.partial({1, 1}) == doctest::Approx(f.partial({1, 1, 1})).epsilon(1e-12));
  Jet trunc = f.truncated(2);
  CHECK(trunc.partial({0, 2}) == doctest::Approx(f.partial({0, 2})).epsilon(1e-14));
  Jet promoted = trunc.promoted(4);
  CHECK(promoted.partial({0, 2}) == doctest::Approx(f.partial({0, 2})).epsilon(1e-14));
}

TEST_CASE("finite-difference table agrees with the exact jet") {
  const JetSpec& s = JetSpec::get(3, 4);
  double x = 0.4, y = -0.7, z = 0.2;
  Jet exact = ref_jet(s, x, y, z);
  Vec pt{x, y, z};
  Jet fd = fd_jet([](std::span<const double> p) { return ref(p[0], p[1], p[2]); }, pt, 4);
  for (int t = 0; t < s.size(); ++t) {
    double scale = std::max(1.0, std::abs(exact.coeff(t)));
    CHECK(std::abs(fd.coeff(t) - exact.coeff(t)) / scale < 1e-6);
  }
}

TEST_CASE("mixed-order binary operations truncate to the lower order") {
  const JetSpec& s4 = JetSpec::get(2, 4);
  const JetSpec& s2 = JetSpec::get(2, 2);
  Jet a = Jet::variable(s4, 0, 2.0);
  Jet b = Jet::variable(s2, 1, 3.0);
  Jet c = a * b;
  CHECK(c.spec().order() == 2);
  CHECK(c.value() == doctest::Approx(6.0));
  CHECK(c.partial({0, 1}) == doctest::Approx(1.0));
}
