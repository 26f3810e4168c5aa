#include <doctest.h>

#include <cmath>

#include "finsler/jet.hpp"
#include "finsler/linalg.hpp"

using namespace finsler;

TEST_CASE("inverse, solve and determinant on a known matrix") {
  Mat a(3, 3);
  a(0, 0) = 4;
  a(0, 1) = 1;
  a(0, 2) = 0;
  a(1, 0) = 1;
  a(1, 1) = 3;
  a(1, 2) = 1;
  a(2, 0) = 0;
  a(2, 1) = 1;
  a(2, 2) = 2;
  CHECK(determinant(a) == doctest::Approx(4 * (6 - 1) - 1 * 2).epsilon(1e-14));
  Mat inv = inverse(a);
  Mat prod = matmul(a, inv);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(prod(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  Vec b{1, 2, 3};
  Vec x = solve(a, b);
  Vec ax = matvec(a, x);
  for (int i = 0; i < 3; ++i) CHECK(ax[i] == doctest::Approx(b[i]).epsilon(1e-12));
  Mat sing(2, 2);
  sing(0, 0) = 1;
  sing(0, 1) = 2;
  sing(1, 0) = 2;
  sing(1, 1) = 4;
  CHECK_THROWS_AS((void)inverse(sing), Error);
}

TEST_CASE("cholesky accepts SPD and rejects indefinite matrices") {
  Mat spd(2, 2);
  spd(0, 0) = 2;
  spd(0, 1) = spd(1, 0) = 1;
  spd(1, 1) = 2;
  Mat l = spd;
  CHECK(cholesky(l));
  Mat llt = matmul(l, l.transposed());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(llt(i, j) == doctest::Approx(spd(i, j)).epsilon(1e-14));
  Mat indef(2, 2);
  indef(0, 0) = 1;
  indef(0, 1) = indef(1, 0) = 3;
  indef(1, 1) = 1;
  CHECK_FALSE(cholesky(indef));
}

TEST_CASE("symmetric eigensolver sorts eigenvalues ascending") {
  Mat a(3, 3);
  a(0, 0) = 2;
  a(1, 1) = 5;
  a(2, 2) = -1;
  a(0, 1) = a(1, 0) = 1;
  Vec vals;
  Mat vecs;
  sym_eig(a, vals, vecs);
  // eigenvalues of [[2,1],[1,5]] block: (7 +- sqrt(13))/2, plus -1
  double lo = (7 - std::sqrt(13.0)) / 2, hi = (7 + std::sqrt(13.0)) / 2;
  CHECK(vals[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(vals[1] == doctest::Approx(lo).epsilon(1e-12));
  CHECK(vals[2] == doctest::Approx(hi).epsilon(1e-12));
  // residual check A v = lambda v
  for (int c = 0; c < 3; ++c) {
    Vec v(3);
    for (int i = 0; i < 3; ++i) v[i] = vecs(i, c);
    Vec av = matvec(a, v);
    for (int i = 0; i < 3; ++i) CHECK(av[i] == doctest::Approx(vals[c] * v[i]).epsilon(1e-10));
  }
}

TEST_CASE("generalized eigensolver solves B v = k G v") {
  Mat g(2, 2), b(2, 2);
  g(0, 0) = 2;
  g(1, 1) = 1;
  g(0, 1) = g(1, 0) = 0.3;
  b(0, 0) = 1;
  b(1, 1) = -2;
  b(0, 1) = b(1, 0) = 0.5;
  Vec vals;
  Mat vecs;
  gen_sym_eig(b, g, vals, vecs);
  for (int c = 0; c < 2; ++c) {
    Vec v{vecs(0, c), vecs(1, c)};
    Vec bv = matvec(b, v), gv = matvec(g, v);
    for (int i = 0; i < 2; ++i) CHECK(bv[i] == doctest::Approx(vals[c] * gv[i]).epsilon(1e-10));
  }
  CHECK(vals[0] < vals[1]);
}

TEST_CASE("multiplicity grouping uses the relative gap") {
  Vec vals{-1.0, -1.0 + 1e-9, 0.5};
  auto mult = multiplicities(vals, 1e-6);
  REQUIRE(mult.size() == 2);
  CHECK(mult[0] == 2);
  CHECK(mult[1] == 1);
}

TEST_CASE("generic gauss-jordan inverts a jet-valued matrix") {
  const JetSpec& s = JetSpec::get(2, 2);
  Jet x = Jet::variable(s, 0, 0.3), y = Jet::variable(s, 1, -0.2);
  std::vector<Jet> m{x + 2.0, x * y, x * y, y + 3.0};
  Jet zero(s), one = Jet::constant(s, 1.0);
  std::vector<Jet> inv = invert_generic<Jet>(m, 2, zero, one);
  // m * inv should be the identity as jets (all derivative coefficients zero)
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Jet acc(s);
      for (int k = 0; k < 2; ++k) acc += m[i * 2 + k] * inv[k * 2 + j];
      CHECK(acc.value() == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
      CHECK(std::abs(acc.partial({0})) < 1e-13);
      CHECK(std::abs(acc.partial({0, 1})) < 1e-13);
    }
}
