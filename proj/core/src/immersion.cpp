#include "finsler/immersion.hpp"

namespace finsler {

Immersion Immersion::hyperplane(Vec p0, Vec e1, Vec e2) {
  require(p0.size() == 3 && e1.size() == 3 && e2.size() == 3, Err::dimension_mismatch,
          "hyperplane data must be 3d");
  Immersion im(Kind::hyperplane);
  im.p0_ = std::move(p0);
  im.e1_ = std::move(e1);
  im.e2_ = std::move(e2);
  return im;
}

Immersion Immersion::sphere(Vec center, double radius) {
  require(center.size() == 3, Err::dimension_mismatch, "sphere center must be 3d");
  require(radius > 0, Err::bad_scenario, "sphere radius must be positive");
  Immersion im(Kind::sphere);
  im.center_ = std::move(center);
  im.radius_ = radius;
  return im;
}

Immersion Immersion::cylinder(double radius) {
  require(radius > 0, Err::bad_scenario, "cylinder radius must be positive");
  Immersion im(Kind::cylinder);
  im.radius_ = radius;
  return im;
}

Immersion Immersion::helicoid(double a) {
  require(a > 0, Err::bad_scenario, "helicoid pitch must be positive");
  Immersion im(Kind::helicoid);
  im.a_ = a;
  return im;
}

Immersion Immersion::clifford_torus(double r, double s) {
  require(r > 0 && s > 0, Err::bad_scenario, "torus radii must be positive");
  require(std::abs(r * r + s * s - 1.0) < 1e-12, Err::bad_scenario,
          "torus radii must satisfy r^2 + s^2 = 1");
  Immersion im(Kind::clifford_torus);
  im.r_ = r;
  im.s_ = s;
  return im;
}

Immersion Immersion::graph(double c0, double c1, double c2, double q11, double q12, double q22) {
  Immersion im(Kind::graph);
  im.c0_ = c0;
  im.c1_ = c1;
  im.c2_ = c2;
  im.q11_ = q11;
  im.q12_ = q12;
  im.q22_ = q22;
  return im;
}

std::string Immersion::name() const {
  switch (kind_) {
    case Kind::hyperplane: return "hyperplane";
    case Kind::sphere: return "sphere";
    case Kind::cylinder: return "cylinder";
    case Kind::helicoid: return "helicoid";
    case Kind::clifford_torus: return "clifford-torus";
    case Kind::graph: return "graph";
  }
  return "?";
}

Vec Immersion::point(std::span<const double> u) const {
  Vec x(3);
  eval<double>(u, x.data());
  return x;
}

Mat Immersion::tangent_frame(std::span<const double> u) const {
  const JetSpec& s = JetSpec::get(2, 1);
  std::vector<Jet> uj(2);
  for (int a = 0; a < 2; ++a) uj[a] = Jet::variable(s, a, u[a]);
  std::vector<Jet> xj(3, Jet(s));
  eval<Jet>(uj, xj.data());
  Mat frame(3, 2);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 2; ++a) frame(i, a) = xj[i].partial({a});
  return frame;
}

}  // namespace finsler
