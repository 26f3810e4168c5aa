#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "finsler/errors.hpp"

namespace finsler {

using Vec = std::vector<double>;

/// Dense row-major matrix sized for chart dimensions (m <= 4 in practice).
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0) : r_(rows), c_(cols), a_(rows * cols, fill) {}
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  int rows() const { return r_; }
  int cols() const { return c_; }
  double& operator()(int i, int j) { return a_[i * c_ + j]; }
  double operator()(int i, int j) const { return a_[i * c_ + j]; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  Mat transposed() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<double> a_;
};

Mat matmul(const Mat& a, const Mat& b);
Vec matvec(const Mat& a, std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
Vec axpy(double alpha, std::span<const double> x, std::span<const double> y);  // alpha*x + y
Vec scaled(double alpha, std::span<const double> x);

/// Inverse by Gauss-Jordan with partial pivoting. Throws SingularTensor.
Mat inverse(const Mat& a);

/// Solve a*x = b (square, partial pivoting). Throws SingularTensor.
Vec solve(const Mat& a, std::span<const double> b);

double determinant(const Mat& a);

/// In-place Cholesky of an SPD matrix; returns false if a pivot is not
/// strictly positive. On success `a` holds the lower factor L (a = L Lᵀ).
bool cholesky(Mat& a);

/// Eigenvalues/-vectors of a symmetric matrix by cyclic Jacobi.
/// Eigenvalues sorted ascending; columns of `vecs` are the eigenvectors.
void sym_eig(const Mat& a, Vec& vals, Mat& vecs);

/// Generalized symmetric eigenproblem  b*v = lambda*g*v  with g SPD, solved by
/// Cholesky reduction. Eigenvalues ascending, eigenvectors as columns
/// (g-orthonormal).
void gen_sym_eig(const Mat& b, const Mat& g, Vec& vals, Mat& vecs);

/// Group sorted values into multiplicity clusters with relative gap `rel_gap`.
std::vector<int> multiplicities(const Vec& sorted_vals, double rel_gap);

namespace detail {
inline double pivot_size(double x) { return std::abs(x); }
}  // namespace detail

/// Gauss-Jordan inverse over a generic scalar (used with jets). Pivots by the
/// magnitude of the scalar's value part via `pivot_size` found by ADL.
template <class S>
std::vector<S> invert_generic(std::vector<S> a, int n, const S& zero, const S& one) {
  using detail::pivot_size;
  std::vector<S> inv(n * n, zero);
  for (int i = 0; i < n; ++i) inv[i * n + i] = one;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = pivot_size(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double cand = pivot_size(a[r * n + col]);
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (!(best > 0.0)) raise(Err::singular_tensor, "generic inverse: zero pivot");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    S d = a[col * n + col];
    for (int j = 0; j < n; ++j) {
      a[col * n + j] = a[col * n + j] / d;
      inv[col * n + j] = inv[col * n + j] / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      S f = a[r * n + col];
      if (pivot_size(f) == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[r * n + j] = a[r * n + j] - f * a[col * n + j];
        inv[r * n + j] = inv[r * n + j] - f * inv[col * n + j];
      }
    }
  }
  return inv;
}

}  // namespace finsler
