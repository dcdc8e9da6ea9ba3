#pragma once

#include <vector>

#include "cauchylab/linalg.hpp"

namespace cauchylab {

/// A_b = −Δ + V(r) − b on the unit disk, radially symmetric, so the
/// boundary objects decouple over angular Fourier modes. V real-valued
/// makes the operator formally self-adjoint; recorded as a flag.
struct RadialOperatorSpec {
  std::vector<double> potential;  // V(r) = Σ potential[p] r^p
  double shift = 0.0;             // b
  int modes = 16;                 // cutoff K
  bool formally_selfadjoint = true;
};

/// Endpoint data of the regular-at-0 mode solution, normalized to the
/// leading behavior u ~ r^{|k|}: returns u(1) and the radial derivative
/// u'(1). Both vanishing signals a bug, not a pole.
struct RadialBoundaryData {
  double value = 0.0;
  double dvalue = 0.0;
};
RadialBoundaryData radial_solution(int k, const std::vector<double>& potential,
                                   double shift, double tol = 1e-11);

/// Per-mode reduction of the Cauchy data space.
///
/// dtn is the conventional outward Dirichlet-to-Neumann value
/// u'(1)/u(1); the trace layer converts to the inward normal, giving the
/// homogenized Cauchy line ∝ ((1+k²)^{1/4} u(1), −(1+k²)^{−1/4} u'(1)).
/// The line, not the DtN value, is the primitive: it stays continuous
/// through Dirichlet eigenvalues where dtn blows up, where it becomes
/// span{(0,1)}.
struct ModeModel {
  int mode = 0;
  bool pole = false;
  double dtn = 0.0;  // meaningless when pole is set
  Eigen::Vector2d homogenized_line = Eigen::Vector2d::Zero();
};
ModeModel mode_model(int k, const RadialOperatorSpec& spec);
std::vector<ModeModel> dtn_map(const RadialOperatorSpec& spec);  // k = −K..K

/// Per-mode 2×2 blocks of the L²-orthogonalized Calderón projection on
/// homogenized boundary data. Blocks are the orthogonal projectors onto
/// the mode lines and do not depend on the Sobolev level s: the H^s inner
/// product restricted to one homogenized mode is a positive scalar
/// multiple of the standard one.
struct CalderonBlocks {
  int modes = 0;
  std::vector<Eigen::Matrix2d> blocks;  // index k+modes
  /// Measured bound on ‖B_k − B_∞‖ for |k| > modes, from probe modes,
  /// assuming the c/|k| decay that λ_k = |k| + O(1) provides.
  double truncation_tail_bound = 0.0;

  const Eigen::Matrix2d& block(int k) const { return blocks[k + modes]; }
};
CalderonBlocks calderon_blocks(const RadialOperatorSpec& spec,
                               int tail_probes = 8);

/// sup over modes of the spectral norm of the 2×2 block differences,
/// measured in the H^s geometry (the per-mode weight conjugation is a
/// scalar and cancels; it is still applied so s genuinely enters).
double block_norm_distance(const CalderonBlocks& a, const CalderonBlocks& b,
                           double s);

/// δ̂ between the truncated Cauchy data spaces in the H^s geometry:
/// sup over modes of the per-mode line gaps.
double cauchy_gap_s(const std::vector<ModeModel>& a,
                    const std::vector<ModeModel>& b, double s);

/// Locates b with u_k(1; b) = 0 inside [lo, hi] by bracketed bisection.
double dirichlet_eigenvalue_near(const std::vector<double>& potential, int k,
                                 double lo, double hi, double tol = 1e-10);

struct CrossingRow {
  double b;
  double s;
  double norm_distance;  // ‖C^ort(b) − C^ort(b0)‖_{s,s}
  double gap;            // δ̂ of the Cauchy data spaces in H^s
  bool pole_mode_flag;   // some mode of this sample is at/near a pole
};
struct CrossingSample {
  double b;
  double abs_offset;
  double pole_dtn_abs;  // |λ| of the pole mode at this sample
  double s_spread;      // spread of norm_distance across the s list
  double tail_constant; // measured c in ‖ΔB_k‖ ≤ c|Δb|/|k| on probe modes
  double tail_bound;    // c|Δb|/(K+1)
};
struct CrossingReport {
  double located_pole = 0.0;
  int pole_mode = 0;
  std::vector<CrossingRow> rows;
  std::vector<CrossingSample> samples;
  double max_s_spread = 0.0;
  double tail_constant = 0.0;
  double max_tail_bound = 0.0;
  Eigen::Matrix2d pole_block_at_b0 = Eigen::Matrix2d::Zero();
};
/// Continuity of b ↦ C^ort(A − bI) through a Dirichlet eigenvalue: the
/// DtN value of the pole mode diverges while the projection stays
/// continuous, its pole-mode block converging to the projector onto (0,1).
CrossingReport eigenvalue_crossing_experiment(
    const std::vector<double>& potential, double pole_lo, double pole_hi,
    const std::vector<double>& offsets, int modes,
    const std::vector<double>& s_list, int pole_mode = 0);

} // namespace cauchylab
