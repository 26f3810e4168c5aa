#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace finsler {

/// xoshiro256** seeded through splitmix64. Self-contained so that sampled
/// suites are byte-reproducible across platforms (std:: distributions are
/// implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) w = splitmix64(x);
  }

  /// Derive an independent child stream for a named check.
  Rng child(std::string_view name) const {
    uint64_t h = 1469598103934665603ull;
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    uint64_t x = s_[0] ^ h;
    return Rng(splitmix64(x));
  }

  uint64_t next() {
    uint64_t r = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return r;
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  std::vector<double> uniform_vec(int n, double a, double b) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(a, b);
    return v;
  }

  /// Direction on the unit sphere (Gaussian by Box-Muller, normalized).
  std::vector<double> unit_vec(int n) {
    std::vector<double> v(n);
    double nrm = 0.0;
    do {
      for (int i = 0; i < n; i += 2) {
        double u1 = uniform01(), u2 = uniform01();
        u1 = u1 > 0 ? u1 : 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        v[i] = r * std::cos(6.283185307179586 * u2);
        if (i + 1 < n) v[i + 1] = r * std::sin(6.283185307179586 * u2);
      }
      nrm = 0.0;
      for (double x : v) nrm += x * x;
    } while (nrm < 1e-12);
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    return v;
  }

 private:
  static uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace finsler
