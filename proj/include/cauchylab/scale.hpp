#pragma once

#include <utility>
#include <vector>

#include "cauchylab/linalg.hpp"

namespace cauchylab {

/// Truncated Hilbert scale on the circle: modes −K..K, `fiber` components
/// per mode, H^s weight (1+k²)^s per mode. All scale statements become
/// exact finite-dimensional ones on the truncation.
///
/// The scale is generated by the diagonal operator Φ with symbol
/// (1+k²)^{1/2}: H^s carries the norm ‖Φ^s u‖₀, and for s₀ < s < s₁ the
/// level H^s is the domain of the generator power that interpolates the
/// endpoint levels, with equal (not merely equivalent) norms. That is why
/// the interpolation inequalities below hold with constant exactly 1.
struct FourierScale {
  int modes = 0;   // cutoff K
  int fiber = 1;

  int dim() const { return (2 * modes + 1) * fiber; }
  int index(int k, int component) const {
    return (k + modes) * fiber + component;
  }
  double weight(double s, int k) const {
    return std::pow(1.0 + static_cast<double>(k) * k, s);
  }
  /// Per-index diagonal of the isometry H^s → ℓ²: entries (1+k²)^{s/2}.
  RVec level_diagonal(double s) const;

  bool operator==(const FourierScale& other) const {
    return modes == other.modes && fiber == other.fiber;
  }
};

struct ScaleSection {
  FourierScale scale;
  CVec coefficients;

  ScaleSection(FourierScale sc, CVec c);
};

/// Dense operator over the (mode, fiber) index set. When
/// selfadjoint_at_0 is set the table must be Hermitian (H⁰ = ℓ²).
struct ScaleOperator {
  FourierScale scale;
  CMat table;
  bool selfadjoint_at_0 = false;

  ScaleOperator(FourierScale sc, CMat t, bool selfadjoint = false);
};

/// Diagonal multiplier (1+k²)^{s/2}: the s-th power of the scale generator.
ScaleOperator phi_multiplier(const FourierScale& scale, double s);

/// Block-diagonal homogenizer across `order` jet components:
/// component block j carries the generator power (order−1−2j)/2.
ScaleOperator homogenizer(const FourierScale& scale, int order);

double norm_s(const ScaleSection& u, double s);
/// Mode-wise L² pairing Σ conj(u_k)·v_k; couples H^s with H^{−s}.
Complex pairing(const ScaleSection& u, const ScaleSection& v);

/// Operator norm on H^s: largest singular value of W^s T W^{−s}.
double operator_norm(const ScaleOperator& t, double s);

/// (‖T‖_{−t}, ‖T‖_t); they coincide when T is self-adjoint at level 0.
std::pair<double, double> duality_check(const ScaleOperator& t, double level);

/// (‖T‖_s, ‖T‖_{s1}^{(s−s0)/(s1−s0)} ‖T‖_{s0}^{(s1−s)/(s1−s0)}); the left
/// entry never exceeds the right on this scale (interpolation constant 1).
std::pair<double, double> interpolation_check(const ScaleOperator& t,
                                              double s0, double s, double s1);

/// (‖u‖_s, ‖u‖_{s1}^{1−θ} ‖u‖_{s0}^{θ}) with θ = (s1−s)/(s1−s0).
std::pair<double, double> vector_interpolation_check(const ScaleSection& u,
                                                     double s0, double s,
                                                     double s1);

ScaleOperator compose(const ScaleOperator& a, const ScaleOperator& b);
ScaleOperator subtract(const ScaleOperator& a, const ScaleOperator& b);

struct ContinuityTransferRow {
  double parameter;
  double level;          // s in [−t, t]
  double norm;           // ‖T_b − T_b0‖_s
  double endpoint_bound; // interpolation combination of the ±t columns
};
struct ContinuityTransferReport {
  std::vector<ContinuityTransferRow> rows;
  bool all_selfadjoint_at_0 = true;
  double max_duality_defect = 0.0;  // |‖Δ‖_{−t} − ‖Δ‖_t| over samples
};
/// Norm table of T_b − T_b0 over an s-grid in [−t,t]; with the level-0
/// self-adjointness flag set on every member, each interior column is
/// bounded by the endpoint interpolation combination.
ContinuityTransferReport continuity_transfer_experiment(
    const std::vector<std::pair<double, ScaleOperator>>& family,
    std::size_t base_index, double level, int grid_points = 9);

} // namespace cauchylab
