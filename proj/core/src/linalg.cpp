#include "finsler/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

Mat matmul(const Mat& a, const Mat& b) {
  require(a.cols() == b.rows(), Err::dimension_mismatch, "matmul shape");
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec matvec(const Mat& a, std::span<const double> x) {
  require(a.cols() == static_cast<int>(x.size()), Err::dimension_mismatch, "matvec shape");
  Vec y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), Err::dimension_mismatch, "dot shape");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vec axpy(double alpha, std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), Err::dimension_mismatch, "axpy shape");
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i] + y[i];
  return r;
}

Vec scaled(double alpha, std::span<const double> x) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i];
  return r;
}

namespace {

// LU decomposition with partial pivoting; returns permutation sign or 0 on
// singularity.
int lu_decompose(Mat& a, std::vector<int>& perm) {
  int n = a.rows();
  perm.resize(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(a(col, col));
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        piv = r;
      }
    if (best == 0.0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(perm[piv], perm[col]);
      sign = -sign;
    }
    for (int r = col + 1; r < n; ++r) {
      a(r, col) /= a(col, col);
      for (int j = col + 1; j < n; ++j) a(r, j) -= a(r, col) * a(col, j);
    }
  }
  return sign;
}

}  // namespace

Mat inverse(const Mat& a) {
  require(a.rows() == a.cols(), Err::dimension_mismatch, "inverse: square required");
  int n = a.rows();
  Mat lu = a;
  std::vector<int> perm;
  if (lu_decompose(lu, perm) == 0) raise(Err::singular_tensor, "matrix inverse: singular");
  Mat inv(n, n);
  Vec col(n), x(n);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) col[i] = (perm[i] == c) ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] = col[i];
      for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    }
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
      x[i] /= lu(i, i);
    }
    for (int i = 0; i < n; ++i) inv(i, c) = x[i];
  }
  return inv;
}

Vec solve(const Mat& a, std::span<const double> b) {
  require(a.rows() == a.cols(), Err::dimension_mismatch, "solve: square required");
  require(a.rows() == static_cast<int>(b.size()), Err::dimension_mismatch, "solve rhs");
  int n = a.rows();
  Mat lu = a;
  std::vector<int> perm;
  if (lu_decompose(lu, perm) == 0) raise(Err::singular_tensor, "solve: singular matrix");
  Vec x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = b[perm[i]];
    for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
    x[i] /= lu(i, i);
  }
  return x;
}

double determinant(const Mat& a) {
  require(a.rows() == a.cols(), Err::dimension_mismatch, "determinant: square required");
  Mat lu = a;
  std::vector<int> perm;
  int sign = lu_decompose(lu, perm);
  if (sign == 0) return 0.0;
  double d = sign;
  for (int i = 0; i < lu.rows(); ++i) d *= lu(i, i);
  return d;
}

bool cholesky(Mat& a) {
  int n = a.rows();
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > 0.0)) return false;
    a(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / a(j, j);
    }
    for (int i = 0; i < j; ++i) a(i, j) = 0.0;
  }
  return true;
}

void sym_eig(const Mat& a, Vec& vals, Mat& vecs) {
  int n = a.rows();
  Mat m = a;
  // symmetrize defensively; inputs are symmetric up to roundoff
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = m(j, i) = s;
    }
  vecs = Mat::identity(n);
  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = vecs(k, p), vkq = vecs(k, q);
          vecs(k, p) = c * vkp - s * vkq;
          vecs(k, q) = s * vkp + c * vkq;
        }
      }
  }
  vals.resize(n);
  for (int i = 0; i < n; ++i) vals[i] = m(i, i);
  // sort ascending, permuting eigenvector columns alongside
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return vals[i] < vals[j]; });
  Vec sv(n);
  Mat svec(n, n);
  for (int i = 0; i < n; ++i) {
    sv[i] = vals[order[i]];
    for (int k = 0; k < n; ++k) svec(k, i) = vecs(k, order[i]);
  }
  vals = sv;
  vecs = svec;
}

void gen_sym_eig(const Mat& b, const Mat& g, Vec& vals, Mat& vecs) {
  int n = g.rows();
  Mat l = g;
  if (!cholesky(l)) raise(Err::singular_tensor, "gen_sym_eig: metric not positive definite");
  // m = L^{-1} b L^{-T}
  Mat y(n, n);
  for (int c = 0; c < n; ++c) {  // solve L y_col = b_col
    for (int i = 0; i < n; ++i) {
      double s = b(i, c);
      for (int k = 0; k < i; ++k) s -= l(i, k) * y(k, c);
      y(i, c) = s / l(i, i);
    }
  }
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {  // solve rows against Lᵀ: m = y L^{-T}
    for (int i = 0; i < n; ++i) {
      double s = y(r, i);
      for (int k = 0; k < i; ++k) s -= l(i, k) * m(r, k);
      m(r, i) = s / l(i, i);
    }
  }
  Mat z;
  sym_eig(m, vals, z);
  // back-substitute eigenvectors: v = L^{-T} z
  vecs = Mat(n, n);
  for (int c = 0; c < n; ++c)
    for (int i = n - 1; i >= 0; --i) {
      double s = z(i, c);
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * vecs(k, c);
      vecs(i, c) = s / l(i, i);
    }
}

std::vector<int> multiplicities(const Vec& sorted_vals, double rel_gap) {
  std::vector<int> mult;
  size_t i = 0;
  while (i < sorted_vals.size()) {
    size_t j = i + 1;
    while (j < sorted_vals.size() &&
           std::abs(sorted_vals[j] - sorted_vals[j - 1]) <=
               rel_gap * (1.0 + std::abs(sorted_vals[i])))
      ++j;
    mult.push_back(static_cast<int>(j - i));
    i = j;
  }
  return mult;
}

}  // namespace finsler
