#pragma once

#include <cmath>
#include <span>
#include <string>

#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"

namespace finsler {

/// Parametrized codimension-1 surfaces in a 3d chart, u = (u^1, u^2):
///   hyperplane     : p0 + u^1 e1 + u^2 e2
///   sphere         : center + r (sin u1 cos u2, sin u1 sin u2, cos u1)
///   cylinder       : (r cos u1, r sin u1, u2)           (axis = third coordinate)
///   helicoid       : (u1 cos u2, u1 sin u2, a u2)
///   clifford_torus : the r/s product torus of the 3-sphere seen through the
///                    stereographic chart, (r cos u1, r sin u1, s cos u2)/(1 - s sin u2)
///   graph          : (u1, u2, q(u1, u2)) with quadratic q
class Immersion {
 public:
  enum class Kind { hyperplane, sphere, cylinder, helicoid, clifford_torus, graph };

  static Immersion hyperplane(Vec p0, Vec e1, Vec e2);
  static Immersion sphere(Vec center, double radius);
  static Immersion cylinder(double radius);
  static Immersion helicoid(double a);
  static Immersion clifford_torus(double r, double s);
  /// q(u, v) = c0 + c1 u + c2 v + (q11 u^2 + 2 q12 u v + q22 v^2) / 2
  static Immersion graph(double c0, double c1, double c2, double q11, double q12, double q22);

  Kind kind() const { return kind_; }
  std::string name() const;
  int ambient_dim() const { return 3; }
  int param_dim() const { return 2; }

  template <class S>
  void eval(std::span<const S> u, S* out) const {
    switch (kind_) {
      case Kind::hyperplane:
        for (int i = 0; i < 3; ++i) out[i] = p0_[i] + u[0] * e1_[i] + u[1] * e2_[i];
        return;
      case Kind::sphere: {
        S st = sin(u[0]), ct = cos(u[0]), cp = cos(u[1]), sp = sin(u[1]);
        out[0] = center_[0] + radius_ * st * cp;
        out[1] = center_[1] + radius_ * st * sp;
        out[2] = center_[2] + radius_ * ct;
        return;
      }
      case Kind::cylinder:
        out[0] = radius_ * cos(u[0]);
        out[1] = radius_ * sin(u[0]);
        out[2] = u[1] + 0.0;
        return;
      case Kind::helicoid:
        out[0] = u[0] * cos(u[1]);
        out[1] = u[0] * sin(u[1]);
        out[2] = a_ * u[1];
        return;
      case Kind::clifford_torus: {
        S den = 1.0 - s_ * sin(u[1]);
        out[0] = r_ * cos(u[0]) / den;
        out[1] = r_ * sin(u[0]) / den;
        out[2] = s_ * cos(u[1]) / den;
        return;
      }
      case Kind::graph:
        out[0] = u[0] + 0.0;
        out[1] = u[1] + 0.0;
        out[2] = c0_ + c1_ * u[0] + c2_ * u[1] +
                 0.5 * (q11_ * u[0] * u[0] + 2.0 * q12_ * u[0] * u[1] + q22_ * u[1] * u[1]);
        return;
    }
  }

  Vec point(std::span<const double> u) const;
  /// m x n matrix of tangent vectors (columns are dPhi/du^a).
  Mat tangent_frame(std::span<const double> u) const;

  double helicoid_pitch() const { return a_; }
  double torus_r() const { return r_; }
  double torus_s() const { return s_; }
  double radius() const { return radius_; }
  const Vec& center() const { return center_; }

 private:
  explicit Immersion(Kind k) : kind_(k) {}
  Kind kind_;
  Vec p0_, e1_, e2_, center_;
  double radius_ = 0.0, a_ = 0.0, r_ = 0.0, s_ = 0.0;
  double c0_ = 0, c1_ = 0, c2_ = 0, q11_ = 0, q12_ = 0, q22_ = 0;
};

}  // namespace finsler
