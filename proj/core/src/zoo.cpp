#include "finsler/zoo.hpp"

#include <cmath>

namespace finsler {

std::shared_ptr<const KropinaModel> kropina_from_navigation(RiemannianChart chart,
                                                            WindField wind) {
  auto model = std::make_shared<KropinaModel>(chart, std::move(wind));
  Vec origin(chart.dim(), 0.0);
  model->check_unit_wind(origin);
  return model;
}

Vec alpha_beta_normal(const MetricModel& model, std::span<const double> x,
                      std::span<const double> nbar) {
  model.check_dim(nbar, "alpha_beta_normal base normal");
  auto view = model.dual_view(x);
  require(view.has_value(), Err::unsupported,
          model.kind() + ": no (alpha,beta)-shaped dual available");
  const RiemannianChart& chart = *view->chart;
  double unit = chart.norm2<double>(x, nbar);
  require(std::abs(unit - 1.0) <= 1e-8, Err::domain_violation,
          "base normal is not unit length");
  // s = beta(nbar) with beta the 1-form of the beta* vector
  double s = chart.inner<double>(x, std::span<const double>(view->beta_star), nbar);
  require(view->phi.admissible(s, view->b0), Err::domain_violation,
          "beta(nbar) outside the admissible profile range");
  double varphi = view->phi.varphi(s);
  double dphi = view->phi.dphi(s);
  Vec n(model.dim());
  for (int i = 0; i < model.dim(); ++i) n[i] = varphi * nbar[i] + dphi * view->beta_star[i];
  return n;
}

NavTensors nav_tensors(const RiemannianChart& chart, const WindField& wind,
                       std::span<const double> x) {
  int m = chart.dim();
  const JetSpec& spec = JetSpec::get(m, 1);
  std::vector<Jet> xj(m);
  for (int i = 0; i < m; ++i) xj[i] = Jet::variable(spec, i, x[i]);
  std::vector<Jet> wj(m, Jet(spec));
  wind.eval<Jet>(xj, wj.data());
  std::vector<Jet> wlow(m, Jet(spec));
  chart.lower<Jet>(xj, wj, wlow.data());
  std::vector<double> gamma = chart.christoffel(x);
  Vec wvals(m);
  wind.eval<double>(x, wvals.data());
  Vec wlowvals(m);
  chart.lower<double>(x, wvals, wlowvals.data());
  NavTensors t;
  t.w_cov = Mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double v = wlow[i].partial({j});
      for (int k = 0; k < m; ++k) v -= gamma[(k * m + j) * m + i] * wlowvals[k];
      t.w_cov(i, j) = v;
    }
  t.r = Mat(m, m);
  t.s = Mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      t.r(i, j) = 0.5 * (t.w_cov(i, j) + t.w_cov(j, i));
      t.s(i, j) = 0.5 * (t.w_cov(i, j) - t.w_cov(j, i));
    }
  Mat hinv = chart.inverse_metric_matrix(x);
  t.s_mixed = matmul(hinv, t.s);
  return t;
}

KillingReport killing_check(const RiemannianChart& chart, const WindField& wind,
                            std::span<const Vec> points, double tol) {
  KillingReport rep;
  for (const Vec& x : points) {
    NavTensors t = nav_tensors(chart, wind, x);
    for (int i = 0; i < chart.dim(); ++i)
      for (int j = 0; j < chart.dim(); ++j) rep.max_r = std::max(rep.max_r, std::abs(t.r(i, j)));
    rep.samples.push_back(std::move(t));
  }
  rep.pass = rep.max_r <= tol;
  return rep;
}

}  // namespace finsler
