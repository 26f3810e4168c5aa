#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "finsler/errors.hpp"

namespace finsler {

// scalar overloads visible next to the jet ones, so templated evaluators can
// call the elementary functions unqualified on doubles and jets alike
using std::atan;
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

/// Multi-index bookkeeping for dense truncated Taylor coefficients.
/// Terms are enumerated by (total degree, then a fixed per-degree order), so
/// the term list of order K is a prefix of the term list of order K+1 — this
/// makes truncation a plain prefix copy.
class JetSpec {
 public:
  static constexpr int kMaxVars = 8;
  static constexpr int kMaxOrder = 6;

  static const JetSpec& get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(terms_.size()); }

  const std::array<uint8_t, kMaxVars>& exponents(int term) const { return terms_[term]; }
  int degree(int term) const { return degree_[term]; }

  /// Position of a multi-index, or -1 if its degree exceeds the order.
  int index_of(const std::array<uint8_t, kMaxVars>& e) const;

  /// Position of terms_[i] + terms_[j], or -1 on degree overflow.
  int product_index(int i, int j) const { return prod_[static_cast<size_t>(i) * terms_.size() + j]; }

  /// Position of terms_[t] + e_var, or -1.
  int raised_index(int term, int var) const;

 private:
  JetSpec(int nvars, int order);
  int nvars_, order_;
  std::vector<std::array<uint8_t, kMaxVars>> terms_;
  std::vector<int> degree_;
  std::vector<int32_t> prod_;
  std::vector<int32_t> lookup_;  // packed exponents -> term index
  int pack(const std::array<uint8_t, kMaxVars>& e) const;
};

/// Truncated multivariate Taylor polynomial (dense). Coefficients are Taylor
/// coefficients, so the mixed partial d^|a| f / dz^a equals a! * coeff(a).
class Jet {
 public:
  Jet() = default;
  explicit Jet(const JetSpec& s) : spec_(&s), c_(s.size(), 0.0) {}

  static Jet constant(const JetSpec& s, double v) {
    Jet j(s);
    j.c_[0] = v;
    return j;
  }
  static Jet variable(const JetSpec& s, int var, double v);

  bool valid() const { return spec_ != nullptr; }
  const JetSpec& spec() const { return *spec_; }
  double value() const { return c_.empty() ? 0.0 : c_[0]; }
  double coeff(int t) const { return c_[t]; }
  double& coeff(int t) { return c_[t]; }

  /// Mixed partial derivative value; `vars` lists differentiation variables
  /// with repetition, e.g. {i,j} -> d2 f / dz_i dz_j.
  double partial(std::initializer_list<int> vars) const;
  double partial(std::span<const int> vars) const;

  /// Taylor expansion of df/dz_var (order lowered by one).
  Jet derivative(int var) const;

  /// Projection onto a lower order (prefix copy).
  Jet truncated(int order) const;

  /// Embedding into a higher order (zero padding).
  Jet promoted(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Jet& operator-=(double v) {
    c_[0] -= v;
    return *this;
  }
  Jet& operator*=(double v);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return (-b) += a; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, double b) { return a *= (1.0 / b); }
  friend Jet operator/(double a, const Jet& b);

  /// Compose a univariate analytic function given its Taylor coefficients at
  /// the value part: result = sum_k t[k] * (this - value)^k.
  Jet apply_taylor(std::span<const double> t) const;

 private:
  const JetSpec* spec_ = nullptr;
  std::vector<double> c_;
  static void align(const Jet& a, const Jet& b, Jet& at, Jet& bt);
};

Jet sqrt(const Jet& u);
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet atan(const Jet& u);
Jet pow(const Jet& u, double p);

inline double pivot_size(const Jet& j) { return std::abs(j.value()); }

/// Finite-difference Taylor table: estimates all partials of `f` at `z` up to
/// `order` with nested 5-point central stencils and packs them as a Jet. The
/// independent oracle for the exact engine and the backing of the
/// finite-difference derivative mode. Steps shrink on evaluation failure
/// (cone exits near a boundary).
Jet fd_jet(const std::function<double(std::span<const double>)>& f, std::span<const double> z,
           int order);

}  // namespace finsler
