#include <benchmark/benchmark.h>

#include "finsler/legendre.hpp"
#include "finsler/shape.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"
#include "finsler/zoo.hpp"

namespace {

using namespace finsler;

std::shared_ptr<const KropinaModel> hopf_model() {
  static auto model =
      kropina_from_navigation(RiemannianChart::round_sphere(3), WindField::hopf());
  return model;
}

void BM_FundamentalTensor(benchmark::State& state) {
  auto model = hopf_model();
  Vec x{0.2, -0.3, 0.4};
  Rng rng(1u);
  Vec y = model->sample_cone(x, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_tensor(*model, x, y));
}
BENCHMARK(BM_FundamentalTensor);

void BM_SprayConnection(benchmark::State& state) {
  auto model = hopf_model();
  Vec x{0.2, -0.3, 0.4};
  Rng rng(2u);
  Vec y = model->sample_cone(x, rng);
  for (auto _ : state) benchmark::DoNotOptimize(spray(*model, x, y));
}
BENCHMARK(BM_SprayConnection);

void BM_FlagCurvature(benchmark::State& state) {
  auto model = hopf_model();
  Vec x{0.2, -0.3, 0.4};
  Rng rng(3u);
  Vec y = model->sample_cone(x, rng);
  Vec v = rng.unit_vec(3);
  for (auto _ : state) benchmark::DoNotOptimize(flag_curvature(*model, x, y, v));
}
BENCHMARK(BM_FlagCurvature);

void BM_LegendreNewton(benchmark::State& state) {
  HelicoidMetric model(1.0, 1.0);
  Vec x{0, 0, 0};
  Rng rng(4u);
  Vec y = model.sample_cone(x, rng);
  for (auto _ : state) benchmark::DoNotOptimize(legendre(model, x, y));
}
BENCHMARK(BM_LegendreNewton);

void BM_ShapeOperatorHelicoid(benchmark::State& state) {
  HelicoidMetric model(1.0, 1.0);
  Immersion surf = Immersion::helicoid(1.0);
  Vec u{0.5, 1.2};
  for (auto _ : state) benchmark::DoNotOptimize(shape_operator(model, surf, u));
}
BENCHMARK(BM_ShapeOperatorHelicoid);

void BM_ShapeOperatorTorus(benchmark::State& state) {
  auto model = hopf_model();
  double r = 0.70710678118654752;
  Immersion torus = Immersion::clifford_torus(r, r);
  Vec u{0.7, 2.1};
  for (auto _ : state) benchmark::DoNotOptimize(shape_operator(*model, torus, u));
}
BENCHMARK(BM_ShapeOperatorTorus);

void BM_FiniteDifferenceTensor(benchmark::State& state) {
  auto model = hopf_model();
  Vec x{0.2, -0.3, 0.4};
  Rng rng(5u);
  Vec y = model->sample_cone(x, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        fundamental_tensor(*model, x, y, DerivMode::finite_difference, false));
}
BENCHMARK(BM_FiniteDifferenceTensor);

}  // namespace

BENCHMARK_MAIN();
