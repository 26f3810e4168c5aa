#include "finsler/isoparametric.hpp"

#include <algorithm>
#include <cmath>

#include "finsler/legendre.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

namespace {

bool df_applicable(const MetricModel& model, const ScalarField& field,
                   std::span<const double> x) {
  Vec df = field.grad(x);
  if (norm2(df) == 0.0) return false;
  if (model.has_closed_dual()) return model.in_dual_cone(x, df);
  try {
    legendre_inverse(model, x, df);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void finalize_stats(LevelSetSample& ls) {
  auto stats = [](const Vec& v, double& mean, double& spread) {
    double lo = v[0], hi = v[0], sum = 0.0;
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      sum += x;
    }
    mean = sum / static_cast<double>(v.size());
    spread = hi - lo;
  };
  if (!ls.grad_norm.empty()) stats(ls.grad_norm, ls.mean_grad, ls.spread_grad);
  if (!ls.lap_hat.empty()) stats(ls.lap_hat, ls.mean_hat, ls.spread_hat);
  if (!ls.lap_sigma.empty()) stats(ls.lap_sigma, ls.mean_sigma, ls.spread_sigma);
}

}  // namespace

std::vector<Vec> sample_level_set(const MetricModel& model, const ScalarField& field,
                                  double level, int count, const SeedBox& box, Rng& rng) {
  int m = model.dim();
  require(static_cast<int>(box.lo.size()) == m && static_cast<int>(box.hi.size()) == m,
          Err::bad_scenario, "seed box dimension");
  std::vector<Vec> points;
  const int max_attempts = count * 400;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(points.size()) < count;
       ++attempt) {
    Vec origin(m);
    for (int i = 0; i < m; ++i) origin[i] = rng.uniform(box.lo[i], box.hi[i]);
    Vec dir = rng.unit_vec(m);
    // scan for a sign change of f - level along the ray
    double prev_t = 0.0, prev_v = field.value(origin) - level;
    bool bracketed = false;
    double lo = 0.0, hi = 0.0;
    for (double t = 0.05; t <= 4.0; t += 0.05) {
      Vec p = axpy(t, dir, origin);
      double v = field.value(p) - level;
      if (prev_v == 0.0 || (prev_v < 0.0) != (v < 0.0)) {
        lo = prev_t;
        hi = t;
        bracketed = true;
        break;
      }
      prev_t = t;
      prev_v = v;
    }
    if (!bracketed) continue;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      Vec p = axpy(mid, dir, origin);
      double v = field.value(p) - level;
      if ((v < 0.0) == (prev_v < 0.0))
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-13) break;
    }
    Vec p = axpy(0.5 * (lo + hi), dir, origin);
    if (std::abs(field.value(p) - level) > 1e-10) continue;
    if (!df_applicable(model, field, p)) continue;
    points.push_back(std::move(p));
  }
  require(static_cast<int>(points.size()) >= 5, Err::insufficient_samples,
          "level " + std::to_string(level) + " collected fewer than 5 in-domain samples");
  return points;
}

IsoparametricVerdict transnormal_check(const MetricModel& model, const ScalarField& field,
                                       std::span<const double> levels, int samples_per_level,
                                       double tol, const SeedBox& box, Rng& rng, DerivMode mode) {
  IsoparametricVerdict verdict;
  verdict.notes.push_back(kSamplingScopeNote);
  bool pass = true;
  for (double t : levels) {
    LevelSetSample ls;
    ls.level = t;
    ls.points = sample_level_set(model, field, t, samples_per_level, box, rng);
    for (const Vec& p : ls.points) {
      Vec df = field.grad(p);
      double a = eval_dual_metric(model, p, df, mode);  // F(grad f) = F*(df)
      ls.grad_norm.push_back(a);
    }
    finalize_stats(ls);
    verdict.max_spread_grad = std::max(verdict.max_spread_grad, ls.spread_grad);
    pass = pass && ls.spread_grad <= tol * (1.0 + std::abs(ls.mean_grad));
    verdict.levels.push_back(std::move(ls));
  }
  verdict.transnormal = pass;
  return verdict;
}

IsoparametricVerdict isoparametric_check(const MetricModel& model, const VolumeForm& volume,
                                         const ScalarField& field, std::span<const double> levels,
                                         int samples_per_level, double tol, const SeedBox& box,
                                         Rng& rng, DerivMode mode) {
  IsoparametricVerdict verdict = transnormal_check(model, field, levels, samples_per_level, tol,
                                                   box, rng, mode);
  bool pass_sigma = true, pass_hat = true;
  double max_s = 0.0;
  for (LevelSetSample& ls : verdict.levels) {
    for (const Vec& p : ls.points) {
      LaplacianResult lap = laplacians(model, volume, field, p, mode);
      ls.lap_hat.push_back(lap.hat);
      ls.lap_sigma.push_back(lap.sigma);
      ls.div_sigma.push_back(lap.div_sigma);
      max_s = std::max(max_s, std::abs(lap.s_at_grad));
    }
    finalize_stats(ls);
    verdict.max_spread_hat = std::max(verdict.max_spread_hat, ls.spread_hat);
    verdict.max_spread_sigma = std::max(verdict.max_spread_sigma, ls.spread_sigma);
    pass_hat = pass_hat && ls.spread_hat <= tol * (1.0 + std::abs(ls.mean_hat));
    pass_sigma = pass_sigma && ls.spread_sigma <= tol * (1.0 + std::abs(ls.mean_sigma));
  }
  verdict.isoparametric_hat = verdict.transnormal && pass_hat;
  verdict.isoparametric_sigma = verdict.transnormal && pass_sigma;
  if (max_s <= 1e-10)
    verdict.notes.push_back(
        "S-curvature vanishes along the gradients: the two Laplacian flavors coincide");
  return verdict;
}

IsoparametricVerdict minkowski_dual_check(const MetricModel& model, const ScalarField& field,
                                          std::span<const double> levels, int samples_per_level,
                                          double tol, const SeedBox& box, Rng& rng,
                                          DerivMode mode) {
  require(model.x_independent(), Err::unsupported, "dual-form check needs an x-independent metric");
  require(model.has_closed_dual(), Err::unsupported, "dual-form check needs a closed dual");
  IsoparametricVerdict verdict;
  verdict.notes.push_back(kSamplingScopeNote);
  verdict.notes.push_back("dual-form path: a = F*(df), b = g*^{ij}(df) f_ij");
  bool pass_a = true, pass_b = true;
  for (double t : levels) {
    LevelSetSample ls;
    ls.level = t;
    ls.points = sample_level_set(model, field, t, samples_per_level, box, rng);
    for (const Vec& p : ls.points) {
      Vec df = field.grad(p);
      require(model.in_dual_cone(p, df), Err::dual_cone_violation,
              "df left the dual cone at a sampled point");
      ls.grad_norm.push_back(std::sqrt(model.dual_f2(p, df)));
      Mat gstar = dual_fundamental(model, p, df, mode);
      Mat hess = field.hessian(p);
      double b = 0.0;
      for (int i = 0; i < model.dim(); ++i)
        for (int j = 0; j < model.dim(); ++j) b += gstar(i, j) * hess(i, j);
      ls.lap_sigma.push_back(b);
    }
    finalize_stats(ls);
    verdict.max_spread_grad = std::max(verdict.max_spread_grad, ls.spread_grad);
    verdict.max_spread_sigma = std::max(verdict.max_spread_sigma, ls.spread_sigma);
    pass_a = pass_a && ls.spread_grad <= tol * (1.0 + std::abs(ls.mean_grad));
    pass_b = pass_b && ls.spread_sigma <= tol * (1.0 + std::abs(ls.mean_sigma));
    verdict.levels.push_back(std::move(ls));
  }
  verdict.transnormal = pass_a;
  verdict.isoparametric_sigma = pass_a && pass_b;
  verdict.isoparametric_hat = verdict.isoparametric_sigma;
  return verdict;
}

}  // namespace finsler
