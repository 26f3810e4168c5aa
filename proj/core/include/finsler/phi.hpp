#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/jet.hpp"

namespace finsler {

struct Interval {
  double lo, hi;
  bool contains(double s) const { return s >= lo && s <= hi; }
};

/// Profile functions phi(s) for conic (alpha,beta) metrics F = alpha*phi(beta/alpha).
/// Families:
///   constant_one : phi == 1 (Riemannian)
///   kropina      : phi(s) = 1/s on s > 0
///   helicoid     : the screw-space profile with parameters a, b > 0,
///                  phi(s) = Q/b - (a s / b) atan(Q/(a s)),
///                  Q = sqrt(b^2 - (1+a^2) s^2), on 0 < |s| < c = b/sqrt(1+a^2).
///                  (s * atan(Q/(a s)) is even, so one formula covers both branches.)
///   randers      : phi(s) = 1 + s on s > -1 (the dual profile of unit-wind
///                  navigation metrics; used by the normal-vector composition)
class PhiFamily {
 public:
  enum class Kind { constant_one, kropina, helicoid, randers };

  static PhiFamily constant_one() { return PhiFamily(Kind::constant_one, 0, 0); }
  static PhiFamily kropina() { return PhiFamily(Kind::kropina, 0, 0); }
  static PhiFamily helicoid(double a, double b) {
    require(a > 0 && b > 0, Err::bad_scenario, "helicoid profile needs a, b > 0");
    return PhiFamily(Kind::helicoid, a, b);
  }
  static PhiFamily randers() { return PhiFamily(Kind::randers, 0, 0); }

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  /// Half-width of the profile's own s-domain endpoint (helicoid: c).
  double cutoff() const { return kind_ == Kind::helicoid ? b_ / std::sqrt(1.0 + a_ * a_) : 0.0; }
  std::string name() const;

  double phi(double s) const;
  double dphi(double s) const;
  double ddphi(double s) const;
  /// varphi = phi - s phi'
  double varphi(double s) const { return phi(s) - s * dphi(s); }
  double dvarphi(double s) const { return -s * ddphi(s); }

  template <class S>
  S eval(const S& s) const {
    switch (kind_) {
      case Kind::constant_one: return (s - s) + 1.0;
      case Kind::kropina: return 1.0 / s;
      case Kind::randers: return s + 1.0;
      case Kind::helicoid: {
        S q = sqrt(b_ * b_ - (1.0 + a_ * a_) * (s * s));
        return q * (1.0 / b_) - (a_ / b_) * s * atan(q / (a_ * s));
      }
    }
    raise(Err::unsupported, "phi family");
  }

  /// Excluded set E within [-b0, b0] as closed intervals; admissibility is
  /// strict exteriority.
  std::vector<Interval> excluded(double b0) const;
  bool admissible(double s, double b0) const;
  /// Distance from s to the nearest admissible-domain boundary (for
  /// boundary-proximity warnings).
  double boundary_distance(double s, double b0) const;

 private:
  PhiFamily(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  Kind kind_;
  double a_, b_;
};

/// Coefficients of the (alpha,beta) fundamental-tensor closed form at a given s:
/// rho = phi(phi - s phi'), rho0 = phi phi'' + phi'^2,
/// rho1 = (phi - s phi') phi' - s phi phi''.
struct DualTensorCoefficients {
  double rho, rho0, rho1;
};
DualTensorCoefficients tensor_coefficients(const PhiFamily& fam, double s);

struct PhiValidationReport {
  bool pass = false;
  int points = 0;
  double min_first = 0.0;   // min over grid of phi - s phi'
  double min_second = 0.0;  // min over grid and b in {|s|, b0} of phi - s phi' + (b^2-s^2) phi''
  std::vector<std::string> warnings;
};

/// Checks the strong-convexity inequalities of the profile over a sample grid
/// of [lo, hi] intersected with the admissible domain.
PhiValidationReport validate_phi(const PhiFamily& fam, double b0, double lo, double hi, int n);

}  // namespace finsler
