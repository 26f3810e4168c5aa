#include "finsler/chart.hpp"

namespace finsler {

std::vector<double> RiemannianChart::christoffel(std::span<const double> x) const {
  int m = dim_;
  std::vector<double> gamma(m * m * m, 0.0);
  if (flat()) return gamma;
  // w = log lambda = log 2 - log(1+|x|^2); dw_i = -2 x_i / (1+|x|^2)
  double r2 = 0.0;
  for (int i = 0; i < m; ++i) r2 += x[i] * x[i];
  Vec dw(m);
  for (int i = 0; i < m; ++i) dw[i] = -2.0 * x[i] / (1.0 + r2);
  auto at = [&](int i, int j, int k) -> double& { return gamma[(i * m + j) * m + k]; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double v = 0.0;
        if (i == k) v += dw[j];
        if (i == j) v += dw[k];
        if (j == k) v -= dw[i];
        at(i, j, k) = v;
      }
  return gamma;
}

}  // namespace finsler
