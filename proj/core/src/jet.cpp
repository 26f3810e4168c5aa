#include "finsler/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace finsler {

namespace {

void gen_terms(int nvars, int order, std::vector<std::array<uint8_t, JetSpec::kMaxVars>>& out) {
  // all multi-indices of each total degree d, per-degree order fixed by the
  // recursion so lower-order term lists are prefixes of higher-order ones
  std::array<uint8_t, JetSpec::kMaxVars> e{};
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == nvars - 1) {
      e[var] = static_cast<uint8_t>(remaining);
      out.push_back(e);
      e[var] = 0;
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = static_cast<uint8_t>(k);
      self(self, var + 1, remaining - k);
    }
    e[var] = 0;
  };
  for (int d = 0; d <= order; ++d) rec(rec, 0, d);
}

}  // namespace

JetSpec::JetSpec(int nvars, int order) : nvars_(nvars), order_(order) {
  require(nvars >= 1 && nvars <= kMaxVars, Err::unsupported, "jet variable count");
  require(order >= 0 && order <= kMaxOrder, Err::unsupported, "jet order");
  gen_terms(nvars, order, terms_);
  degree_.resize(terms_.size());
  int packspan = 1;
  for (int v = 0; v < nvars_; ++v) packspan *= (order_ + 1);
  lookup_.assign(packspan, -1);
  for (size_t t = 0; t < terms_.size(); ++t) {
    int d = 0;
    for (int v = 0; v < nvars_; ++v) d += terms_[t][v];
    degree_[t] = d;
    lookup_[pack(terms_[t])] = static_cast<int32_t>(t);
  }
  prod_.assign(terms_.size() * terms_.size(), -1);
  for (size_t i = 0; i < terms_.size(); ++i)
    for (size_t j = 0; j < terms_.size(); ++j) {
      if (degree_[i] + degree_[j] > order_) continue;
      std::array<uint8_t, kMaxVars> e{};
      for (int v = 0; v < nvars_; ++v) e[v] = static_cast<uint8_t>(terms_[i][v] + terms_[j][v]);
      prod_[i * terms_.size() + j] = lookup_[pack(e)];
    }
}

int JetSpec::pack(const std::array<uint8_t, kMaxVars>& e) const {
  int p = 0;
  for (int v = 0; v < nvars_; ++v) p = p * (order_ + 1) + e[v];
  return p;
}

int JetSpec::index_of(const std::array<uint8_t, kMaxVars>& e) const {
  int d = 0;
  for (int v = 0; v < nvars_; ++v) d += e[v];
  if (d > order_) return -1;
  return lookup_[pack(e)];
}

int JetSpec::raised_index(int term, int var) const {
  std::array<uint8_t, kMaxVars> e = terms_[term];
  e[var] = static_cast<uint8_t>(e[var] + 1);
  return index_of(e);
}

const JetSpec& JetSpec::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, const JetSpec*> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  const JetSpec* s = new JetSpec(nvars, order);  // cached for process lifetime
  cache.emplace(key, s);
  return *s;
}

Jet Jet::variable(const JetSpec& s, int var, double v) {
  Jet j(s);
  j.c_[0] = v;
  if (s.order() >= 1) {
    std::array<uint8_t, JetSpec::kMaxVars> e{};
    e[var] = 1;
    j.c_[s.index_of(e)] = 1.0;
  }
  return j;
}

double Jet::partial(std::initializer_list<int> vars) const {
  std::vector<int> v(vars);
  return partial(std::span<const int>(v));
}

double Jet::partial(std::span<const int> vars) const {
  std::array<uint8_t, JetSpec::kMaxVars> e{};
  for (int v : vars) e[v] = static_cast<uint8_t>(e[v] + 1);
  int idx = spec_->index_of(e);
  require(idx >= 0, Err::unsupported, "partial beyond jet order");
  double fact = 1.0;
  for (int v = 0; v < spec_->nvars(); ++v)
    for (int k = 2; k <= e[v]; ++k) fact *= k;
  return c_[idx] * fact;
}

Jet Jet::derivative(int var) const {
  require(spec_->order() >= 1, Err::unsupported, "derivative of order-0 jet");
  const JetSpec& lo = JetSpec::get(spec_->nvars(), spec_->order() - 1);
  Jet d(lo);
  for (int t = 0; t < lo.size(); ++t) {
    int src = spec_->index_of(lo.exponents(t));  // same multi-index in source spec
    int raised = spec_->raised_index(src, var);
    if (raised >= 0) d.c_[t] = c_[raised] * (lo.exponents(t)[var] + 1.0);
  }
  return d;
}

Jet Jet::truncated(int order) const {
  if (order >= spec_->order()) return *this;
  const JetSpec& lo = JetSpec::get(spec_->nvars(), order);
  Jet t(lo);
  std::copy(c_.begin(), c_.begin() + lo.size(), t.c_.begin());
  return t;
}

Jet Jet::promoted(int order) const {
  if (order <= spec_->order()) return *this;
  const JetSpec& hi = JetSpec::get(spec_->nvars(), order);
  Jet t(hi);
  std::copy(c_.begin(), c_.end(), t.c_.begin());
  return t;
}

void Jet::align(const Jet& a, const Jet& b, Jet& at, Jet& bt) {
  require(a.spec_ && b.spec_, Err::unsupported, "operation on invalid jet");
  require(a.spec_->nvars() == b.spec_->nvars(), Err::dimension_mismatch, "jet nvars");
  int k = std::min(a.spec_->order(), b.spec_->order());
  at = a.truncated(k);
  bt = b.truncated(k);
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  if (spec_ == o.spec_) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet a, b;
  align(*this, o, a, b);
  for (int i = 0; i < a.spec_->size(); ++i) a.c_[i] += b.c_[i];
  return *this = a;
}

Jet& Jet::operator-=(const Jet& o) {
  if (spec_ == o.spec_) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet a, b;
  align(*this, o, a, b);
  for (int i = 0; i < a.spec_->size(); ++i) a.c_[i] -= b.c_[i];
  return *this = a;
}

Jet& Jet::operator*=(double v) {
  for (double& x : c_) x *= v;
  return *this;
}

Jet operator*(const Jet& a0, const Jet& b0) {
  Jet a, b;
  Jet::align(a0, b0, a, b);
  const JetSpec& s = *a.spec_;
  Jet r(s);
  int n = s.size();
  for (int i = 0; i < n; ++i) {
    double ai = a.c_[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      double bj = b.c_[j];
      if (bj == 0.0) continue;
      int t = s.product_index(i, j);
      if (t >= 0) r.c_[t] += ai * bj;
    }
  }
  return r;
}

Jet Jet::apply_taylor(std::span<const double> t) const {
  const JetSpec& s = *spec_;
  Jet ubar = *this;
  ubar.c_[0] = 0.0;
  Jet r = Jet::constant(s, t[t.size() - 1]);
  for (int k = static_cast<int>(t.size()) - 2; k >= 0; --k) {
    r = r * ubar;
    r.c_[0] += t[k];
  }
  return r;
}

namespace {

std::vector<double> recip_coeffs(double u0, int k) {
  require(u0 != 0.0, Err::singular_tensor, "jet division by zero value");
  std::vector<double> t(k + 1);
  t[0] = 1.0 / u0;
  for (int i = 1; i <= k; ++i) t[i] = -t[i - 1] / u0;
  return t;
}

}  // namespace

Jet operator/(const Jet& a, const Jet& b) {
  int k = std::min(a.spec().order(), b.spec().order());
  Jet bk = b.truncated(k);
  return a.truncated(k) * bk.apply_taylor(recip_coeffs(bk.value(), k));
}

Jet operator/(double a, const Jet& b) {
  int k = b.spec().order();
  return b.apply_taylor(recip_coeffs(b.value(), k)) * a;
}

Jet sqrt(const Jet& u) {
  int k = u.spec().order();
  double u0 = u.value();
  require(u0 > 0.0, Err::domain_violation, "jet sqrt of non-positive value");
  std::vector<double> t(k + 1);
  t[0] = std::sqrt(u0);
  for (int i = 1; i <= k; ++i) t[i] = t[i - 1] * (0.5 - (i - 1)) / (i * u0);
  return u.apply_taylor(t);
}

Jet pow(const Jet& u, double p) {
  int k = u.spec().order();
  double u0 = u.value();
  require(u0 > 0.0, Err::domain_violation, "jet pow of non-positive value");
  std::vector<double> t(k + 1);
  t[0] = std::pow(u0, p);
  for (int i = 1; i <= k; ++i) t[i] = t[i - 1] * (p - (i - 1)) / (i * u0);
  return u.apply_taylor(t);
}

Jet exp(const Jet& u) {
  int k = u.spec().order();
  std::vector<double> t(k + 1);
  t[0] = std::exp(u.value());
  for (int i = 1; i <= k; ++i) t[i] = t[i - 1] / i;
  return u.apply_taylor(t);
}

Jet log(const Jet& u) {
  int k = u.spec().order();
  double u0 = u.value();
  require(u0 > 0.0, Err::domain_violation, "jet log of non-positive value");
  std::vector<double> t(k + 1);
  t[0] = std::log(u0);
  if (k >= 1) t[1] = 1.0 / u0;
  for (int i = 2; i <= k; ++i) t[i] = -t[i - 1] * (i - 1) / (i * u0);
  return u.apply_taylor(t);
}

Jet sin(const Jet& u) {
  int k = u.spec().order();
  double u0 = u.value();
  double cyc[4] = {std::sin(u0), std::cos(u0), -std::sin(u0), -std::cos(u0)};
  std::vector<double> t(k + 1);
  double fact = 1.0;
  for (int i = 0; i <= k; ++i) {
    if (i > 0) fact *= i;
    t[i] = cyc[i % 4] / fact;
  }
  return u.apply_taylor(t);
}

Jet cos(const Jet& u) {
  int k = u.spec().order();
  double u0 = u.value();
  double cyc[4] = {std::cos(u0), -std::sin(u0), -std::cos(u0), std::sin(u0)};
  std::vector<double> t(k + 1);
  double fact = 1.0;
  for (int i = 0; i <= k; ++i) {
    if (i > 0) fact *= i;
    t[i] = cyc[i % 4] / fact;
  }
  return u.apply_taylor(t);
}

Jet atan(const Jet& u) {
  int k = u.spec().order();
  double u0 = u.value();
  // Taylor of 1/(1+x^2) at u0 by series division against A + B t + t^2,
  // then integrate termwise.
  double A = 1.0 + u0 * u0, B = 2.0 * u0;
  std::vector<double> q(std::max(k, 1));
  q[0] = 1.0 / A;
  for (int i = 1; i < static_cast<int>(q.size()); ++i) {
    double s = B * q[i - 1] + (i >= 2 ? q[i - 2] : 0.0);
    q[i] = -s / A;
  }
  std::vector<double> t(k + 1);
  t[0] = std::atan(u0);
  for (int i = 1; i <= k; ++i) t[i] = q[i - 1] / i;
  return u.apply_taylor(t);
}

namespace {

// Nested 5-point central differences for one mixed partial; var order fixed by
// the multi-index. 4th-order accurate per level.
double fd_partial(const std::function<double(std::span<const double>)>& f, std::vector<double>& z,
                  std::array<uint8_t, JetSpec::kMaxVars> e, int nvars,
                  const std::vector<double>& steps) {
  int var = -1;
  for (int v = 0; v < nvars; ++v)
    if (e[v] > 0) {
      var = v;
      break;
    }
  if (var < 0) return f(z);
  e[var] = static_cast<uint8_t>(e[var] - 1);
  double h = steps[var];
  double orig = z[var];
  auto eval = [&](double offset) {
    z[var] = orig + offset;
    double r = fd_partial(f, z, e, nvars, steps);
    z[var] = orig;
    return r;
  };
  double d = (8.0 * (eval(h) - eval(-h)) - (eval(2.0 * h) - eval(-2.0 * h))) / (12.0 * h);
  return d;
}

}  // namespace

Jet fd_jet(const std::function<double(std::span<const double>)>& f, std::span<const double> z,
           int order) {
  int nvars = static_cast<int>(z.size());
  const JetSpec& s = JetSpec::get(nvars, order);
  const double eps = 2.220446049250313e-16;
  for (int attempt = 0;; ++attempt) {
    try {
      // fresh workspace per attempt: an exception unwinds mid-stencil and
      // leaves the shared point shifted
      std::vector<double> zz(z.begin(), z.end());
      Jet r(s);
      for (int t = 0; t < s.size(); ++t) {
        const auto& e = s.exponents(t);
        int deg = s.degree(t);
        std::vector<double> steps(nvars);
        for (int v = 0; v < nvars; ++v)
          steps[v] = std::pow(eps, 1.0 / (deg + 4)) * std::max(1.0, std::abs(z[v])) /
                     std::pow(2.0, attempt);
        double fact = 1.0;
        for (int v = 0; v < nvars; ++v)
          for (int k = 2; k <= e[v]; ++k) fact *= k;
        double d = fd_partial(f, zz, e, nvars, steps);
        if (deg >= 3) {
          // high-degree truncation dominates: one Richardson step removes the
          // leading h^4 error of the symmetric stencils
          for (double& h : steps) h *= 0.5;
          double dh = fd_partial(f, zz, e, nvars, steps);
          d = (16.0 * dh - d) / 15.0;
        }
        r.coeff(t) = d / fact;
      }
      return r;
    } catch (const Error& err) {
      // near a cone boundary the stencil can exit the admissible set
      if (attempt >= 6 ||
          (err.code() != Err::cone_violation && err.code() != Err::dual_cone_violation &&
           err.code() != Err::domain_violation))
        throw;
    }
  }
}

}  // namespace finsler
