#include "finsler/phi.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

std::string PhiFamily::name() const {
  switch (kind_) {
    case Kind::constant_one: return "constant-one";
    case Kind::kropina: return "kropina";
    case Kind::helicoid: return "helicoid";
    case Kind::randers: return "randers";
  }
  return "?";
}

double PhiFamily::phi(double s) const {
  switch (kind_) {
    case Kind::constant_one: return 1.0;
    case Kind::kropina: return 1.0 / s;
    case Kind::randers: return 1.0 + s;
    case Kind::helicoid: {
      double q = std::sqrt(b_ * b_ - (1.0 + a_ * a_) * s * s);
      return q / b_ - (a_ / b_) * s * std::atan(q / (a_ * s));
    }
  }
  return 0.0;
}

double PhiFamily::dphi(double s) const {
  switch (kind_) {
    case Kind::constant_one: return 0.0;
    case Kind::kropina: return -1.0 / (s * s);
    case Kind::randers: return 1.0;
    case Kind::helicoid: {
      double q = std::sqrt(b_ * b_ - (1.0 + a_ * a_) * s * s);
      return -s * q / (b_ * (b_ * b_ - s * s)) - (a_ / b_) * std::atan(q / (a_ * s));
    }
  }
  return 0.0;
}

double PhiFamily::ddphi(double s) const {
  switch (kind_) {
    case Kind::constant_one: return 0.0;
    case Kind::kropina: return 2.0 / (s * s * s);
    case Kind::randers: return 0.0;
    case Kind::helicoid: {
      double q = std::sqrt(b_ * b_ - (1.0 + a_ * a_) * s * s);
      double d = b_ * b_ - s * s;
      return b_ * ((a_ * a_ - 1.0) * b_ * b_ + (1.0 + a_ * a_) * s * s) / (q * d * d);
    }
  }
  return 0.0;
}

std::vector<Interval> PhiFamily::excluded(double b0) const {
  switch (kind_) {
    case Kind::constant_one: return {};
    case Kind::kropina: return {{-b0, 0.0}};
    case Kind::randers: return {{-b0, -1.0}};
    case Kind::helicoid: {
      double c = cutoff();
      return {{-b0, -c}, {0.0, 0.0}, {c, b0}};
    }
  }
  return {};
}

bool PhiFamily::admissible(double s, double b0) const {
  if (std::abs(s) > b0) return false;
  for (const Interval& e : excluded(b0))
    if (e.contains(s)) return false;
  return true;
}

double PhiFamily::boundary_distance(double s, double b0) const {
  double d = b0 - std::abs(s);
  for (const Interval& e : excluded(b0)) {
    d = std::min(d, std::abs(s - e.lo));
    d = std::min(d, std::abs(s - e.hi));
  }
  return d;
}

DualTensorCoefficients tensor_coefficients(const PhiFamily& fam, double s) {
  double p = fam.phi(s), dp = fam.dphi(s), ddp = fam.ddphi(s);
  return {p * (p - s * dp), p * ddp + dp * dp, (p - s * dp) * dp - s * p * ddp};
}

PhiValidationReport validate_phi(const PhiFamily& fam, double b0, double lo, double hi, int n) {
  require(n >= 1, Err::bad_scenario, "validate_phi: empty grid spec");
  PhiValidationReport rep;
  rep.min_first = std::numeric_limits<double>::infinity();
  rep.min_second = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double s = (n == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
    if (!fam.admissible(s, b0)) continue;
    if (fam.boundary_distance(s, b0) < 1e-6)
      rep.warnings.push_back("boundary proximity at s=" + std::to_string(s));
    double first = fam.varphi(s);
    double ddp = fam.ddphi(s);
    double at_b0 = first + (b0 * b0 - s * s) * ddp;
    rep.min_first = std::min(rep.min_first, first);
    rep.min_second = std::min({rep.min_second, at_b0, first});  // linear in b^2: ends suffice
    ++rep.points;
  }
  require(rep.points > 0, Err::empty_domain, "validate_phi: grid misses the admissible domain");
  rep.pass = rep.min_first > 0.0 && rep.min_second > 0.0;
  return rep;
}

}  // namespace finsler
