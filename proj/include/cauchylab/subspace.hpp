#pragma once

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cauchylab/linalg.hpp"

namespace cauchylab {

/// Default relative singular-value threshold for rank decisions.
inline constexpr double kRankTol = 1e-8;

/// Finite-dimensional complex vector space with an explicit Hermitian
/// positive-definite inner product ⟨u,v⟩ = uᴴ G v.
///
/// The Cholesky factor W (G = WᴴW) turns every weighted-geometry question
/// into a standard one: u ↦ Wu is an isometry onto Cⁿ.
class InnerSpace {
public:
  InnerSpace(int dim, CMat gram, std::string label = "");

  static InnerSpace standard(int dim, std::string label = "");

  int dim() const { return p_->dim; }
  const CMat& gram() const { return p_->gram; }
  const std::string& label() const { return p_->label; }
  const CMat& weight() const { return p_->weight; }
  const CMat& weight_inverse() const { return p_->weight_inv; }

  bool same_as(const InnerSpace& other) const;

  Complex inner(const CVec& u, const CVec& v) const;
  double norm(const CVec& u) const;
  /// Adjoint of a matrix acting on this space: G⁻¹ Aᴴ G.
  CMat adjoint(const CMat& a) const;
  /// Operator norm induced by the space's norm: σ_max(W A W⁻¹).
  double operator_norm(const CMat& a) const;

private:
  struct Payload {
    int dim;
    CMat gram;
    CMat weight;
    CMat weight_inv;
    std::string label;
  };
  std::shared_ptr<const Payload> p_;
};

/// Closed linear subspace, stored as a basis whose columns are orthonormal
/// in the ambient inner product (basisᴴ G basis = I). rank 0 encodes {0}.
class Subspace {
public:
  Subspace(InnerSpace space, CMat basis);

  static Subspace zero(InnerSpace space);
  /// Orthonormalizes the given spanning columns; rank decided by rel_tol
  /// with an optional absolute singular-value floor.
  static Subspace from_span(InnerSpace space, const CMat& spanning,
                            double rel_tol = kRankTol, double abs_floor = 0.0);

  const InnerSpace& space() const { return space_; }
  const CMat& basis() const { return basis_; }
  int rank() const { return static_cast<int>(basis_.cols()); }

  /// W·basis: orthonormal columns in the standard inner product.
  const CMat& wbasis() const { return wbasis_; }

private:
  Subspace(InnerSpace space, CMat basis, CMat wbasis);
  InnerSpace space_;
  CMat basis_;
  CMat wbasis_;
};

/// Idempotent operator on an InnerSpace; ‖P²−P‖ ≤ 1e−9 in the space's
/// operator norm is enforced at construction.
class Projector {
public:
  Projector(InnerSpace space, CMat table);

  const InnerSpace& space() const { return space_; }
  const CMat& table() const { return table_; }

  /// Rank of an idempotent equals its trace.
  int rank() const;
  Subspace image(double rel_tol = kRankTol) const;
  Subspace kernel(double rel_tol = kRankTol) const;
  bool is_selfadjoint(double tol = 1e-9) const;

private:
  InnerSpace space_;
  CMat table_;
};

/// One-sided gap δ(M,N) = sup over the unit sphere of M of the distance
/// to N; 0 for M = {0}. Always in [0,1].
double gap_delta(const Subspace& m, const Subspace& n);

/// Symmetrized gap δ̂(M,N) = max{δ(M,N), δ(N,M)}.
double gap_hat(const Subspace& m, const Subspace& n);

/// Angular distance γ(M,N): 1 when M ⊆ N, otherwise
/// inf over u ∈ M∖N of dist(u,N)/dist(u,M∩N). Strictly positive here.
double angular_distance(const Subspace& m, const Subspace& n,
                        double rel_tol = kRankTol);

Subspace sum(const Subspace& m, const Subspace& n, double tol = kRankTol);
Subspace intersect(const Subspace& m, const Subspace& n, double tol = kRankTol);

struct SumIntersect {
  Subspace sum;
  Subspace intersection;
};
/// Computes both and enforces dim(M)+dim(N) = dim(M+N)+dim(M∩N);
/// a violation signals an ill-conditioned instance and throws.
SumIntersect sum_and_intersect(const Subspace& m, const Subspace& n,
                               double tol = kRankTol);

/// The unique self-adjoint idempotent with the same image:
/// C Cᵗ (C Cᵗ + (Id − Cᵗ)(Id − C))⁻¹, adjoints taken in the ambient
/// inner product.
Projector orthogonalize_projector(const Projector& c);

/// (δ̂(im P, im Q), ‖P − Q‖); the first never exceeds the second.
std::pair<double, double> projector_gap_vs_norm(const Projector& p,
                                                const Projector& q);

/// Right-hand side of the projector-difference estimate
/// (‖P₀‖+1)(δ₁+δ₂)(1/γ(im P, ker P) + 1/γ(ker P, im P)),
/// δ₁ = δ(im P, im P₀), δ₂ = δ(ker P, ker P₀).
double projector_norm_estimate(const Projector& p_b, const Projector& p_b0);

/// Lower bound for γ(im P_b, ker P_b) from the base-point data:
/// (γ₀ − δ₁γ₀ − δ₁ − δ₂)/(1+δ₂) when the numerator is positive,
/// nothing otherwise.
std::optional<double> neubauer_gamma_bound(double gamma0, double delta1,
                                           double delta2);

struct SurjectionComparison {
  double c_lower;         // σ_min/σ_max of the induced quotient map
  double c_upper;         // σ_max/σ_min
  double gap_upstairs;    // δ(M,N)
  double gap_downstairs;  // δ(p(M),p(N))
};
/// Compares δ(M,N) with δ(p(M),p(N)) for a bounded surjection p with
/// ker p ⊆ M, N. The returned constants satisfy
/// c_lower·δ(M,N) ≤ δ(p(M),p(N)) ≤ c_upper·δ(M,N).
SurjectionComparison surjection_gap_comparison(const CMat& p,
                                               const InnerSpace& domain,
                                               const InnerSpace& codomain,
                                               const Subspace& m,
                                               const Subspace& n,
                                               double tol = kRankTol);

struct FamilyGapRow {
  double parameter;
  int intersection_dim;
  int sum_dim;
  double intersection_gap;  // δ̂(M_b∩N_b, M_b0∩N_b0)
  double sum_gap;           // δ̂(M_b+N_b, M_b0+N_b0)
};
struct FamilyContinuityReport {
  std::vector<FamilyGapRow> rows;
  bool constant_intersection_dim = true;
  std::size_t base_index = 0;
};
/// Intersection/sum continuity experiment over a sampled family.
/// A jumping intersection dimension is recorded, not an error.
FamilyContinuityReport family_continuity_experiment(
    const std::vector<std::tuple<double, Subspace, Subspace>>& family,
    std::size_t base_index, double tol = kRankTol);

struct GraphIntersectionRow {
  double parameter;
  double gap;  // δ̂(ker A_b0, A_b⁻¹(W))
};
/// Preimage-gap experiment: requires image(A_b0) ⊕ W = codomain.
std::vector<GraphIntersectionRow> graph_intersection_gap(
    const std::vector<std::pair<double, CMat>>& family, std::size_t base_index,
    const InnerSpace& domain, const InnerSpace& codomain, const Subspace& w,
    double tol = kRankTol);

} // namespace cauchylab
