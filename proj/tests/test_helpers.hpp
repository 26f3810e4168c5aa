#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "finsler/metric.hpp"
#include "finsler/rng.hpp"
#include "finsler/zoo.hpp"

namespace finsler::testing {

inline ModelPtr euclid3() { return std::make_shared<EuclideanModel>(3); }
inline ModelPtr round3() {
  return std::make_shared<RiemannianModel>(RiemannianChart::round_sphere(3));
}
inline std::shared_ptr<const KropinaModel> kropina_flat() {
  return kropina_from_navigation(RiemannianChart::euclidean(3), WindField::constant({0, 0, 1}));
}
inline std::shared_ptr<const KropinaModel> kropina_round() {
  return kropina_from_navigation(RiemannianChart::round_sphere(3), WindField::hopf());
}
inline ModelPtr helicoid_metric(double a = 1.0, double b = 1.0) {
  return std::make_shared<HelicoidMetric>(a, b);
}
/// The unit-wind navigation metric written as a conic (alpha,beta) metric
/// F = alpha^2 / beta with beta = 2 W-flat; agrees with kropina_flat().
inline ModelPtr alpha_beta_kropina() {
  return std::make_shared<AlphaBetaModel>(RiemannianChart::euclidean(3), Vec{0, 0, 2},
                                          PhiFamily::kropina(), 2.0);
}

/// All primary model families at desk scale, with a chart point picker.
inline std::vector<std::pair<ModelPtr, Vec>> model_zoo(Rng& rng) {
  std::vector<std::pair<ModelPtr, Vec>> zoo;
  zoo.emplace_back(euclid3(), rng.uniform_vec(3, -1, 1));
  zoo.emplace_back(round3(), rng.uniform_vec(3, -0.6, 0.6));
  zoo.emplace_back(kropina_flat(), rng.uniform_vec(3, -1, 1));
  zoo.emplace_back(kropina_round(), rng.uniform_vec(3, -0.6, 0.6));
  zoo.emplace_back(helicoid_metric(1.0, 1.0), Vec{0, 0, 0});
  zoo.emplace_back(helicoid_metric(0.5, 2.0), Vec{0, 0, 0});
  zoo.emplace_back(alpha_beta_kropina(), rng.uniform_vec(3, -1, 1));
  return zoo;
}

}  // namespace finsler::testing
