#pragma once

#include <memory>
#include <span>
#include <string>

#include "finsler/chart.hpp"
#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"

namespace finsler {

class MetricModel;

/// Scalar functions of the chart point, from a small closed-form catalogue:
///   linear    : f = <a, x> + c
///   quadratic : f = 1/2 x^T Q x + <a, x> + c
///   norm      : f = |x - center|
class ScalarField {
 public:
  enum class Kind { linear, quadratic, norm };

  static ScalarField linear(Vec a, double c = 0.0);
  static ScalarField quadratic(Mat q, Vec a, double c = 0.0);
  static ScalarField norm(int dim, Vec center = {});

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::string name() const;

  template <class S>
  S eval(std::span<const S> x) const {
    switch (kind_) {
      case Kind::linear: {
        S s = x[0] * a_[0];
        for (int i = 1; i < dim_; ++i) s = s + x[i] * a_[i];
        return s + c_;
      }
      case Kind::quadratic: {
        S s = x[0] - x[0];
        for (int i = 0; i < dim_; ++i) {
          s = s + x[i] * a_[i];
          for (int j = 0; j < dim_; ++j) s = s + 0.5 * q_(i, j) * x[i] * x[j];
        }
        return s + c_;
      }
      case Kind::norm: {
        S s = (x[0] - center_[0]) * (x[0] - center_[0]);
        for (int i = 1; i < dim_; ++i) s = s + (x[i] - center_[i]) * (x[i] - center_[i]);
        return sqrt(s);
      }
    }
    raise(Err::unsupported, "scalar field kind");
  }

  double value(std::span<const double> x) const { return eval<double>(x); }
  Vec grad(std::span<const double> x) const;
  Mat hessian(std::span<const double> x) const;

 private:
  ScalarField(Kind k, int dim) : kind_(k), dim_(dim) {}
  Kind kind_;
  int dim_;
  Vec a_, center_;
  Mat q_;
  double c_ = 0.0;
};

/// Positive densities sigma(x) defining a volume form sigma dx^1 ... dx^m.
class VolumeForm {
 public:
  enum class Kind { lebesgue, riemannian, busemann_hausdorff, exp_linear };

  static VolumeForm lebesgue();
  /// sigma = sqrt(det h) of a chart metric.
  static VolumeForm riemannian(RiemannianChart chart);
  /// The unit-ball-normalized density. For navigation metrics the F-unit ball
  /// is a translate of the h-unit ball, so sigma = sqrt(det h); for
  /// x-independent models the density is constant.
  static VolumeForm busemann_hausdorff(const MetricModel& model);
  static VolumeForm exp_linear(Vec a);

  Kind kind() const { return kind_; }
  std::string name() const;

  template <class S>
  S sigma(std::span<const S> x) const {
    switch (kind_) {
      case Kind::lebesgue: {
        S one = x[0] - x[0];
        return one + 1.0;
      }
      case Kind::riemannian:
      case Kind::busemann_hausdorff: return chart_.sqrt_det(x);
      case Kind::exp_linear: {
        S s = x[0] * a_[0];
        for (size_t i = 1; i < a_.size(); ++i) s = s + x[i] * a_[i];
        return exp(s);
      }
    }
    raise(Err::unsupported, "volume form kind");
  }

  double sigma_value(std::span<const double> x) const { return sigma<double>(x); }
  /// gradient of log sigma
  Vec dlog_sigma(std::span<const double> x) const;

 private:
  Kind kind_ = Kind::lebesgue;
  RiemannianChart chart_;
  Vec a_;
};

}  // namespace finsler
