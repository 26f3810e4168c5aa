#include "finsler/field.hpp"

#include "finsler/metric.hpp"

namespace finsler {

ScalarField ScalarField::linear(Vec a, double c) {
  ScalarField f(Kind::linear, static_cast<int>(a.size()));
  f.a_ = std::move(a);
  f.c_ = c;
  return f;
}

ScalarField ScalarField::quadratic(Mat q, Vec a, double c) {
  require(q.rows() == q.cols() && q.rows() == static_cast<int>(a.size()),
          Err::dimension_mismatch, "quadratic field shapes");
  ScalarField f(Kind::quadratic, q.rows());
  f.q_ = std::move(q);
  f.a_ = std::move(a);
  f.c_ = c;
  return f;
}

ScalarField ScalarField::norm(int dim, Vec center) {
  ScalarField f(Kind::norm, dim);
  if (center.empty()) center.assign(dim, 0.0);
  require(static_cast<int>(center.size()) == dim, Err::dimension_mismatch, "norm field center");
  f.center_ = std::move(center);
  return f;
}

std::string ScalarField::name() const {
  switch (kind_) {
    case Kind::linear: return "linear";
    case Kind::quadratic: return "quadratic";
    case Kind::norm: return "norm";
  }
  return "?";
}

Vec ScalarField::grad(std::span<const double> x) const {
  const JetSpec& s = JetSpec::get(dim_, 1);
  std::vector<Jet> xj(dim_);
  for (int i = 0; i < dim_; ++i) xj[i] = Jet::variable(s, i, x[i]);
  Jet f = eval<Jet>(xj);
  Vec g(dim_);
  for (int i = 0; i < dim_; ++i) g[i] = f.partial({i});
  return g;
}

Mat ScalarField::hessian(std::span<const double> x) const {
  const JetSpec& s = JetSpec::get(dim_, 2);
  std::vector<Jet> xj(dim_);
  for (int i = 0; i < dim_; ++i) xj[i] = Jet::variable(s, i, x[i]);
  Jet f = eval<Jet>(xj);
  Mat h(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) h(i, j) = f.partial({i, j});
  return h;
}

VolumeForm VolumeForm::lebesgue() { return VolumeForm(); }

VolumeForm VolumeForm::riemannian(RiemannianChart chart) {
  VolumeForm v;
  v.kind_ = Kind::riemannian;
  v.chart_ = chart;
  return v;
}

VolumeForm VolumeForm::busemann_hausdorff(const MetricModel& model) {
  VolumeForm v;
  v.kind_ = Kind::busemann_hausdorff;
  if (const RiemannianChart* c = model.base_chart()) {
    v.chart_ = *c;
    return v;
  }
  require(model.x_independent(), Err::unsupported,
          "unit-ball volume form needs a base chart or an x-independent metric");
  v.chart_ = RiemannianChart::euclidean(model.dim());  // constant density
  return v;
}

VolumeForm VolumeForm::exp_linear(Vec a) {
  VolumeForm v;
  v.kind_ = Kind::exp_linear;
  v.a_ = std::move(a);
  return v;
}

std::string VolumeForm::name() const {
  switch (kind_) {
    case Kind::lebesgue: return "lebesgue";
    case Kind::riemannian: return "riemannian";
    case Kind::busemann_hausdorff: return "busemann-hausdorff";
    case Kind::exp_linear: return "exp-linear";
  }
  return "?";
}

Vec VolumeForm::dlog_sigma(std::span<const double> x) const {
  int m = static_cast<int>(x.size());
  if (kind_ == Kind::lebesgue) return Vec(m, 0.0);
  const JetSpec& s = JetSpec::get(m, 1);
  std::vector<Jet> xj(m);
  for (int i = 0; i < m; ++i) xj[i] = Jet::variable(s, i, x[i]);
  Jet lg = log(sigma<Jet>(xj));
  Vec g(m);
  for (int i = 0; i < m; ++i) g[i] = lg.partial({i});
  return g;
}

}  // namespace finsler
