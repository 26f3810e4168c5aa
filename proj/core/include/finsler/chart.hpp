#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"

namespace finsler {

/// Riemannian metric in a single coordinate chart. Both supported charts are
/// conformal to the flat metric, h_ij = lambda(x)^2 delta_ij:
///   - euclidean: lambda = 1
///   - round_sphere: stereographic chart of the unit sphere, lambda = 2/(1+|x|^2)
/// Evaluations are templated so jets flow through unchanged.
class RiemannianChart {
 public:
  enum class Kind { euclidean, round_sphere };

  RiemannianChart() = default;
  RiemannianChart(Kind kind, int dim) : kind_(kind), dim_(dim) {
    require(dim >= 2, Err::dimension_mismatch, "chart dimension must be >= 2");
  }
  static RiemannianChart euclidean(int dim) { return {Kind::euclidean, dim}; }
  static RiemannianChart round_sphere(int dim) { return {Kind::round_sphere, dim}; }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool flat() const { return kind_ == Kind::euclidean; }
  std::string name() const { return flat() ? "euclidean" : "round-sphere"; }

  template <class S>
  S conformal_factor(std::span<const S> x) const {
    if (kind_ == Kind::euclidean) {
      S one = x[0] - x[0];
      one += 1.0;
      return one;
    }
    S r2 = x[0] * x[0];
    for (int i = 1; i < dim_; ++i) r2 += x[i] * x[i];
    return 2.0 / (r2 + 1.0);
  }

  /// h(y, y)
  template <class S>
  S norm2(std::span<const S> x, std::span<const S> y) const {
    S s = y[0] * y[0];
    for (int i = 1; i < dim_; ++i) s += y[i] * y[i];
    if (flat()) return s;
    S lam = conformal_factor(x);
    return lam * lam * s;
  }

  /// h(y, w)
  template <class S>
  S inner(std::span<const S> x, std::span<const S> y, std::span<const S> w) const {
    S s = y[0] * w[0];
    for (int i = 1; i < dim_; ++i) s += y[i] * w[i];
    if (flat()) return s;
    S lam = conformal_factor(x);
    return lam * lam * s;
  }

  /// h^{ij} xi_i xi_j
  template <class S>
  S dual_norm2(std::span<const S> x, std::span<const S> xi) const {
    S s = xi[0] * xi[0];
    for (int i = 1; i < dim_; ++i) s += xi[i] * xi[i];
    if (flat()) return s;
    S lam = conformal_factor(x);
    return s / (lam * lam);
  }

  /// lower an index: xi_i = h_ij y^j
  template <class S>
  void lower(std::span<const S> x, std::span<const S> y, S* xi) const {
    if (flat()) {
      for (int i = 0; i < dim_; ++i) xi[i] = y[i];
      return;
    }
    S lam = conformal_factor(x);
    S lam2 = lam * lam;
    for (int i = 0; i < dim_; ++i) xi[i] = lam2 * y[i];
  }

  /// raise an index: y^i = h^{ij} xi_j
  template <class S>
  void raise(std::span<const S> x, std::span<const S> xi, S* y) const {
    if (flat()) {
      for (int i = 0; i < dim_; ++i) y[i] = xi[i];
      return;
    }
    S lam = conformal_factor(x);
    S lam2 = lam * lam;
    for (int i = 0; i < dim_; ++i) y[i] = xi[i] / lam2;
  }

  template <class S>
  S sqrt_det(std::span<const S> x) const {
    S lam = conformal_factor(x);
    S d = lam;
    for (int i = 1; i < dim_; ++i) d = d * lam;
    return d;
  }

  Mat metric_matrix(std::span<const double> x) const {
    Mat h(dim_, dim_);
    double lam = conformal_factor(x);
    for (int i = 0; i < dim_; ++i) h(i, i) = lam * lam;
    return h;
  }
  Mat inverse_metric_matrix(std::span<const double> x) const {
    Mat h(dim_, dim_);
    double lam = conformal_factor(x);
    for (int i = 0; i < dim_; ++i) h(i, i) = 1.0 / (lam * lam);
    return h;
  }

  /// Levi-Civita connection coefficients at x (conformal closed form):
  /// Gamma^i_jk = d_j(w) delta^i_k + d_k(w) delta^i_j - d_i(w) delta_jk,
  /// with w = log lambda.
  std::vector<double> christoffel(std::span<const double> x) const;

 private:
  Kind kind_ = Kind::euclidean;
  int dim_ = 0;
};

/// Closed-form vector fields used as navigation winds.
class WindField {
 public:
  enum class Kind { constant, hopf, linear, swirl };

  WindField() = default;
  static WindField constant(Vec v) {
    WindField w;
    w.kind_ = Kind::constant;
    w.v_ = std::move(v);
    return w;
  }
  /// Rotation-generator field on the round-sphere chart of S^3 (the direction
  /// tangent to the great-circle fibration); unit length in the round metric.
  static WindField hopf() {
    WindField w;
    w.kind_ = Kind::hopf;
    return w;
  }
  static WindField linear(Mat a) {
    WindField w;
    w.kind_ = Kind::linear;
    w.a_ = std::move(a);
    return w;
  }
  /// Unit-length flat-chart wind that is not Killing:
  /// W = (cos x^3, sin x^3, 0).
  static WindField swirl() {
    WindField w;
    w.kind_ = Kind::swirl;
    return w;
  }

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::constant; }
  std::string name() const {
    switch (kind_) {
      case Kind::constant: return "constant";
      case Kind::hopf: return "hopf";
      case Kind::linear: return "linear";
      case Kind::swirl: return "swirl";
    }
    return "?";
  }

  template <class S>
  void eval(std::span<const S> x, S* w) const {
    switch (kind_) {
      case Kind::constant: {
        S zero = x[0] - x[0];
        for (size_t i = 0; i < v_.size(); ++i) w[i] = zero + v_[i];
        return;
      }
      case Kind::hopf: {
        require(x.size() == 3, Err::dimension_mismatch, "hopf wind needs a 3d chart");
        // pushforward of the S^3 rotation generator through the stereographic chart
        S r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        w[0] = x[0] * x[2] - x[1];
        w[1] = x[1] * x[2] + x[0];
        w[2] = (1.0 - r2) * 0.5 + x[2] * x[2];
        return;
      }
      case Kind::linear: {
        for (int i = 0; i < a_.rows(); ++i) {
          S s = x[0] - x[0];
          for (int j = 0; j < a_.cols(); ++j) s += a_(i, j) * x[j];
          w[i] = s;
        }
        return;
      }
      case Kind::swirl: {
        require(x.size() == 3, Err::dimension_mismatch, "swirl wind needs a 3d chart");
        w[0] = cos(x[2]);
        w[1] = sin(x[2]);
        w[2] = x[0] - x[0];
        return;
      }
    }
  }

  Vec eval_values(std::span<const double> x) const {
    Vec w(x.size());
    eval<double>(x, w.data());
    return w;
  }

 private:
  Kind kind_ = Kind::constant;
  Vec v_;
  Mat a_;
};

}  // namespace finsler
