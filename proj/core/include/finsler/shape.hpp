#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsler/field.hpp"
#include "finsler/immersion.hpp"
#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler {

/// Rule for picking the conormal ray. The frame rule keeps the cross-product
/// orientation of the parametrization; vector/radial flip the ray so it pairs
/// positively with the given direction.
struct CoOrientation {
  enum class Kind { frame, vector, radial };
  static CoOrientation frame() { return {Kind::frame, {}, {}}; }
  static CoOrientation vector(Vec v) { return {Kind::vector, std::move(v), {}}; }
  static CoOrientation radial(Vec center) { return {Kind::radial, {}, std::move(center)}; }
  Kind kind = Kind::frame;
  Vec v;
  Vec center;
};

struct NormalPair {
  Vec x;     // surface point
  Vec nu;    // unit conormal, F*(nu) = 1
  Vec n;    // Finsler unit normal, the Legendre preimage of nu
  Vec nbar;  // base-metric unit normal along the same ray (empty if no chart)
  bool flipped = false;  // the prescribed ray failed and the opposite one was used
};

/// Unit conormal / normal at a parameter point. NoConicNormal when neither
/// conormal ray meets the dual cone (the message names the failing rays).
NormalPair finsler_unit_normal(const MetricModel& model, const Immersion& imm,
                               std::span<const double> u,
                               const CoOrientation& co = CoOrientation::frame(),
                               DerivMode mode = DerivMode::exact);

/// Pullback metric ghat_ab = g_ij(n) Phi_a^i Phi_b^j at a parameter point.
Mat induced_metric(const MetricModel& model, const Immersion& imm, std::span<const double> u,
                   std::span<const double> n, DerivMode mode = DerivMode::exact);

struct ShapeReport {
  Vec u, x;
  Vec nu, n, nbar;
  bool flipped = false;
  Mat ghat;               // induced metric (n x n)
  Mat shape;              // A^b_a in the tangent frame
  Mat second_fund;        // B_ab = ghat-pairing of A with the frame
  Mat dnormal;            // covariant derivative D_{Phi_a} n (columns, m x n)
  Vec principal;          // ascending
  std::vector<int> multiplicity;
  double mean_hat = 0.0;  // sum of principal curvatures
  double mean = 0.0;      // mean_hat + S(n)
  double self_adjoint_resid = 0.0;
  std::vector<std::string> warnings;
};

/// Shape operator A(Phi_a) = -D^n_{Phi_a} n expanded in the tangent frame;
/// eigenvalues from the ghat-symmetric pencil, ascending, grouped with
/// relative gap 1e-6.
ShapeReport shape_operator(const MetricModel& model, const Immersion& imm,
                           std::span<const double> u,
                           const CoOrientation& co = CoOrientation::frame(),
                           const VolumeForm* volume = nullptr,
                           DerivMode mode = DerivMode::exact);

struct UmbilicFlags {
  bool totally_umbilic = false;
  bool minimal = false;
};
UmbilicFlags umbilic_minimal_flags(const ShapeReport& report, double tol);

struct EquivalenceSample {
  Vec u;
  double eig_dev = 0.0;        // max principal-curvature deviation after sorting
  double vec_angle = 0.0;      // max principal-direction angle (simple spectrum groups)
  double conformal_resid = 0.0;  // | ghat - hbar / W0(n) |
  double deriv_resid = 0.0;      // | D^n_X n - base-metric derivative of nbar |
  double n_formula_resid = 0.0;  // | n - (nbar + W) |
  Vec principal_f, principal_h;
};

struct EquivalenceReport {
  bool pass = false;
  double killing_max_r = 0.0;
  double max_eig_dev = 0.0, max_vec_angle = 0.0, max_conformal_resid = 0.0,
         max_deriv_resid = 0.0, max_n_formula_resid = 0.0;
  std::vector<EquivalenceSample> samples;
};

/// Side-by-side principal curvature comparison of a surface under the
/// navigation metric (normal n) and under the base metric h (normal nbar).
/// Preconditions: the wind is Killing over the sample set (NotKilling), and
/// the base normal never opposes the wind (NormalExcluded).
EquivalenceReport kropina_equivalence_report(const KropinaModel& model, const Immersion& imm,
                                             std::span<const Vec> us, double tol = 1e-6,
                                             const CoOrientation& co = CoOrientation::frame(),
                                             DerivMode mode = DerivMode::exact);

}  // namespace finsler
