#pragma once

#include <functional>
#include <vector>

#include "cauchylab/polynomial.hpp"
#include "cauchylab/subspace.hpp"

namespace cauchylab {

/// Elliptic ODE system Σ_j a_j(x) u^(j) on [0,1]: order d ≥ 1, fiber
/// dimension m ≥ 1, matrix-polynomial coefficients, plain ∂/∂x powers.
///
/// Jets are taken with respect to the inward normal: +∂/∂x at 0 and
/// −∂/∂x at 1; every boundary object below uses that convention.
struct OperatorSpec1D {
  int order = 1;
  int fiber = 1;
  std::vector<MatPoly> coefficients;  // a_0 .. a_order, each fiber×fiber
  double ellipticity_condition_bound = 0.0;

  int boundary_dim() const { return 2 * order * fiber; }
};

/// Validates shapes and ellipticity (a_d(x) invertible on a sample grid)
/// and records the observed condition bound.
OperatorSpec1D make_operator(int order, int fiber, std::vector<MatPoly> coefficients);

/// Pointwise application from jet values [u(x), u'(x), ..., u^(d)(x)].
CVec apply_operator(const OperatorSpec1D& a, double x,
                    const std::vector<CVec>& derivatives);
/// Same for a polynomial section u (fiber×1).
CVec apply_operator(const OperatorSpec1D& a, const MatPoly& u, double x);
MatPoly apply_operator_poly(const OperatorSpec1D& a, const MatPoly& u);

/// Aᵗ v = Σ_j (−1)^j ∂^j (a_jᴴ v), expanded by the Leibniz rule into
/// coefficient form. Exact on polynomial tables; an involution.
OperatorSpec1D formal_adjoint(const OperatorSpec1D& a);

/// a_d(x)·(iξ)^d.
CMat principal_symbol(const OperatorSpec1D& a, double x, double xi);

/// Green's form of the operator: per-endpoint dm×dm blocks over inward
/// jets with (Au,v) − (u,Aᵗv) = (Jρu, ρv). Upper skew-triangular with
/// J_{k,d−1−k} = i^d (−1)^{d−1−k} σ_d(A)(ν♭) on the skew diagonal.
struct GreensMatrix {
  int order = 1;
  int fiber = 1;
  CMat at_zero;  // dm×dm
  CMat at_one;   // dm×dm

  /// Block diagonal over the 2dm boundary jet (jets at 0 first).
  CMat full() const;
  /// m×m block (row_jet, col_jet) at the chosen endpoint.
  CMat block(int endpoint, int row_jet, int col_jet) const;
};
GreensMatrix greens_matrix(const OperatorSpec1D& a);

/// |(Au,v) − (u,Aᵗv) − (Jρu, ρv)| for polynomial sections u, v; the
/// quadrature order makes the integrals exact, so the residual isolates
/// the boundary-form algebra.
double greens_identity_residual(const OperatorSpec1D& a, const MatPoly& u,
                                const MatPoly& v);

/// One solution of Au = 0, integrated from x = 0; jets are plain
/// derivative stacks (u, u', ..., u^(d−1)) of length dm.
struct SolutionTrajectory {
  CVec jet_at_zero;
  CVec jet_at_one;
  double sup_norm = 0.0;
};
/// The dm canonical-initial-jet solutions spanning the full kernel.
std::vector<SolutionTrajectory> kernel_basis(const OperatorSpec1D& a,
                                             double tol = 1e-11);

/// Inward-normal boundary jet of a trajectory: (γ⁰..γ^{d−1} at 0,
/// then at 1), length 2dm.
CVec inward_trace(const SolutionTrajectory& trajectory, int order, int fiber);

/// Traces of the kernel = the Cauchy data space Λ(A) ⊂ C^{2dm};
/// dimension is exactly dm. The two-point boundary carries the standard
/// inner product (the boundary scale is trivial in 1D: Φ = Id, so
/// homogenized and plain traces coincide).
Subspace cauchy_data_space(const OperatorSpec1D& a);

/// Orthogonal projector onto Λ(A): the L²-orthogonalized Calderón
/// projection of the operator at desk scale.
Projector calderon_projector(const OperatorSpec1D& a);

struct DecompositionReport {
  int dim_lambda = 0;
  int dim_j_lambda_adjoint = 0;
  int boundary_dim = 0;
  double max_pairing_residual = 0.0;  // |(f, Jᵗg)| over basis pairs
  double kernel_image_gap = 0.0;      // δ̂(ker C^ort(A), Jᵗ Λ(Aᵗ))
  int direct_sum_dim = 0;
};
/// Checks Λ(A) ⊕^⊥ Jᵗ Λ(Aᵗ) = C^{2dm} and ker C^ort(A) = Jᵗ Λ(Aᵗ).
DecompositionReport orthogonal_decomposition_check(const OperatorSpec1D& a);

/// Dimension of the inner-solution space: zero jet at 0 forces the zero
/// solution, verified by integrating it. Returns 0.
int minimal_kernel_check(const OperatorSpec1D& a);

struct SweepRow1D {
  double parameter;
  double coefficient_distance;  // sup over x, j of ‖a_j(b)(x) − a_j(b0)(x)‖
  double cauchy_gap;            // δ̂(Λ(A_b), Λ(A_b0))
  double projector_distance;    // ‖C^ort(A_b) − C^ort(A_b0)‖
  double estimate_rhs;          // projector_norm_estimate bound
};
/// Sweeps a coefficient family b ↦ A_b against the base point b0.
std::vector<SweepRow1D> family_sweep_1d(
    const std::function<OperatorSpec1D(double)>& family, double b0,
    const std::vector<double>& grid);

} // namespace cauchylab
