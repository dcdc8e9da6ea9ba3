#include "cauchylab/subspace.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace cauchylab {

namespace {

void require_same_space(const Subspace& a, const Subspace& b) {
  if (!a.space().same_as(b.space()))
    throw std::invalid_argument("subspaces live in different ambient spaces");
}

void require_same_space(const Projector& a, const Projector& b) {
  if (!a.space().same_as(b.space()))
    throw std::invalid_argument("projectors live in different ambient spaces");
}

} // namespace

InnerSpace::InnerSpace(int dim, CMat gram, std::string label) {
  if (dim <= 0) throw std::invalid_argument("InnerSpace: dim must be positive");
  if (gram.rows() != dim || gram.cols() != dim)
    throw std::invalid_argument("InnerSpace: gram table has wrong shape");
  double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  if ((gram - gram.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("InnerSpace: gram table is not Hermitian");
  CMat g = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(g, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("InnerSpace: gram table is not positive definite");
  Eigen::LLT<CMat> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("InnerSpace: Cholesky factorization failed");
  CMat w = llt.matrixL().adjoint();  // G = Wᴴ W
  auto payload = std::make_shared<Payload>();
  payload->dim = dim;
  payload->gram = std::move(g);
  payload->weight = w;
  payload->weight_inv = w.triangularView<Eigen::Upper>().solve(CMat::Identity(dim, dim));
  payload->label = std::move(label);
  p_ = std::move(payload);
}

InnerSpace InnerSpace::standard(int dim, std::string label) {
  return InnerSpace(dim, CMat::Identity(dim, dim), std::move(label));
}

bool InnerSpace::same_as(const InnerSpace& other) const {
  if (p_ == other.p_) return true;
  return p_->dim == other.p_->dim && p_->gram == other.p_->gram;
}

Complex InnerSpace::inner(const CVec& u, const CVec& v) const {
  return u.adjoint() * p_->gram * v;
}

double InnerSpace::norm(const CVec& u) const {
  return (p_->weight * u).norm();
}

CMat InnerSpace::adjoint(const CMat& a) const {
  return p_->weight_inv * (p_->weight * a * p_->weight_inv).adjoint() * p_->weight;
}

double InnerSpace::operator_norm(const CMat& a) const {
  return spectral_norm(p_->weight * a * p_->weight_inv);
}

Subspace::Subspace(InnerSpace space, CMat basis) : space_(std::move(space)) {
  if (basis.rows() != space_.dim())
    throw std::invalid_argument("Subspace: basis has wrong ambient dimension");
  CMat wb = space_.weight() * basis;
  if (basis.cols() > 0) {
    CMat defect = wb.adjoint() * wb - CMat::Identity(basis.cols(), basis.cols());
    if (defect.cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("Subspace: basis is not orthonormal in the ambient inner product");
  }
  basis_ = std::move(basis);
  wbasis_ = std::move(wb);
}

Subspace::Subspace(InnerSpace space, CMat basis, CMat wbasis)
    : space_(std::move(space)), basis_(std::move(basis)), wbasis_(std::move(wbasis)) {}

Subspace Subspace::zero(InnerSpace space) {
  int n = space.dim();
  return Subspace(std::move(space), CMat(n, 0), CMat(n, 0));
}

Subspace Subspace::from_span(InnerSpace space, const CMat& spanning, double rel_tol,
                             double abs_floor) {
  if (spanning.rows() != space.dim())
    throw std::invalid_argument("Subspace: spanning columns have wrong ambient dimension");
  CMat wb = orthonormal_columns(space.weight() * spanning, rel_tol, abs_floor);
  CMat basis = space.weight_inverse() * wb;
  return Subspace(std::move(space), std::move(basis), std::move(wb));
}

Projector::Projector(InnerSpace space, CMat table) : space_(std::move(space)) {
  if (table.rows() != space_.dim() || table.cols() != space_.dim())
    throw std::invalid_argument("Projector: table has wrong shape");
  double defect = space_.operator_norm(table * table - table);
  if (defect > 1e-9)
    throw std::invalid_argument("Projector: table is not idempotent (defect " +
                                std::to_string(defect) + ")");
  table_ = std::move(table);
}

int Projector::rank() const {
  return static_cast<int>(std::llround(table_.trace().real()));
}

Subspace Projector::image(double rel_tol) const {
  int r = rank();
  if (r == 0) return Subspace::zero(space_);
  CMat wp = space_.weight() * table_ * space_.weight_inverse();
  Eigen::JacobiSVD<CMat> svd(wp, Eigen::ComputeThinU);
  CMat wb = svd.matrixU().leftCols(r);
  (void)rel_tol;
  return Subspace(space_, space_.weight_inverse() * wb);
}

Subspace Projector::kernel(double rel_tol) const {
  CMat complement = CMat::Identity(space_.dim(), space_.dim()) - table_;
  Projector q(space_, std::move(complement));
  return q.image(rel_tol);
}

bool Projector::is_selfadjoint(double tol) const {
  CMat wp = space_.weight() * table_ * space_.weight_inverse();
  return (wp - wp.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double gap_delta(const Subspace& m, const Subspace& n) {
  require_same_space(m, n);
  if (m.rank() == 0) return 0.0;
  if (n.rank() == 0) return 1.0;
  // (Id − Π_N)|_M in the isometric coordinates; the sup over the unit
  // sphere of M is the top singular value.
  CMat e = m.wbasis() - n.wbasis() * (n.wbasis().adjoint() * m.wbasis());
  return std::min(1.0, spectral_norm(e));
}

double gap_hat(const Subspace& m, const Subspace& n) {
  return std::max(gap_delta(m, n), gap_delta(n, m));
}

double angular_distance(const Subspace& m, const Subspace& n, double rel_tol) {
  require_same_space(m, n);
  if (m.rank() == 0) return 1.0;  // {0} ⊆ N
  Subspace common = intersect(m, n, rel_tol);
  if (common.rank() == m.rank()) return 1.0;  // M ⊆ N
  // Orthocomplement of M∩N inside M; dist(u,N) is unchanged when the
  // M∩N component is removed, because M∩N ⊆ N.
  CMat d = m.wbasis();
  if (common.rank() > 0)
    d -= common.wbasis() * (common.wbasis().adjoint() * m.wbasis());
  d = orthonormal_columns(d, rel_tol);
  if (d.cols() != m.rank() - common.rank())
    throw std::runtime_error("angular_distance: ill-conditioned intersection");
  if (n.rank() == 0) return 1.0;
  CMat e = d - n.wbasis() * (n.wbasis().adjoint() * d);
  return smallest_singular_value(e);
}

Subspace sum(const Subspace& m, const Subspace& n, double tol) {
  require_same_space(m, n);
  if (tol <= 0.0) throw std::invalid_argument("sum: tol must be positive");
  if (m.rank() == 0 && n.rank() == 0) return Subspace::zero(m.space());
  CMat stacked(m.space().dim(), m.rank() + n.rank());
  stacked << m.wbasis(), n.wbasis();
  CMat wb = orthonormal_columns(stacked, tol);
  return Subspace::from_span(m.space(), m.space().weight_inverse() * wb, tol);
}

Subspace intersect(const Subspace& m, const Subspace& n, double tol) {
  require_same_space(m, n);
  if (tol <= 0.0) throw std::invalid_argument("intersect: tol must be positive");
  if (m.rank() == 0 || n.rank() == 0) return Subspace::zero(m.space());
  // Principal-angle pairs; cosines above 1 − tol are common directions.
  Eigen::JacobiSVD<CMat> svd(m.wbasis().adjoint() * n.wbasis(), Eigen::ComputeThinU);
  const auto& cosines = svd.singularValues();
  int r = 0;
  while (r < cosines.size() && cosines(r) > 1.0 - tol) ++r;
  if (r == 0) return Subspace::zero(m.space());
  CMat wb = m.wbasis() * svd.matrixU().leftCols(r);
  return Subspace::from_span(m.space(), m.space().weight_inverse() * wb, tol);
}

SumIntersect sum_and_intersect(const Subspace& m, const Subspace& n, double tol) {
  SumIntersect out{sum(m, n, tol), intersect(m, n, tol)};
  if (out.sum.rank() + out.intersection.rank() != m.rank() + n.rank())
    throw std::runtime_error(
        "sum_and_intersect: dimension identity violated after thresholding "
        "(ill-conditioned instance)");
  return out;
}

Projector orthogonalize_projector(const Projector& c) {
  const InnerSpace& space = c.space();
  int n = space.dim();
  CMat ct = space.weight() * c.table() * space.weight_inverse();
  CMat id = CMat::Identity(n, n);
  CMat cct = ct * ct.adjoint();
  CMat normalizer = cct + (id - ct.adjoint()) * (id - ct);
  Eigen::LLT<CMat> llt(normalizer);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("orthogonalize_projector: normalizing operator is singular");
  // C CᵗD⁻¹ with D Hermitian: solve Xᴴ = D⁻¹ (C Cᵗ)ᴴ.
  CMat cort_w = llt.solve(cct.adjoint()).adjoint();
  CMat cort = space.weight_inverse() * cort_w * space.weight();
  return Projector(space, std::move(cort));
}

std::pair<double, double> projector_gap_vs_norm(const Projector& p, const Projector& q) {
  require_same_space(p, q);
  double gap = gap_hat(p.image(), q.image());
  double norm = p.space().operator_norm(p.table() - q.table());
  return {gap, norm};
}

double projector_norm_estimate(const Projector& p_b, const Projector& p_b0) {
  require_same_space(p_b, p_b0);
  Subspace im_b = p_b.image();
  Subspace ker_b = p_b.kernel();
  double delta1 = gap_delta(im_b, p_b0.image());
  double delta2 = gap_delta(ker_b, p_b0.kernel());
  double gamma_ik = angular_distance(im_b, ker_b);
  double gamma_ki = angular_distance(ker_b, im_b);
  if (gamma_ik < 1e-14 || gamma_ki < 1e-14)
    throw std::runtime_error("projector_norm_estimate: degenerate angular distance");
  double p0_norm = p_b0.space().operator_norm(p_b0.table());
  return (p0_norm + 1.0) * (delta1 + delta2) * (1.0 / gamma_ik + 1.0 / gamma_ki);
}

std::optional<double> neubauer_gamma_bound(double gamma0, double delta1, double delta2) {
  if (gamma0 < 0.0 || delta1 < 0.0 || delta2 < 0.0)
    throw std::invalid_argument("neubauer_gamma_bound: inputs must be non-negative");
  double numerator = gamma0 - delta1 * gamma0 - delta1 - delta2;
  if (numerator <= 0.0) return std::nullopt;
  return numerator / (1.0 + delta2);
}

SurjectionComparison surjection_gap_comparison(const CMat& p,
                                               const InnerSpace& domain,
                                               const InnerSpace& codomain,
                                               const Subspace& m,
                                               const Subspace& n,
                                               double tol) {
  if (!m.space().same_as(domain) || !n.space().same_as(domain))
    throw std::invalid_argument("surjection_gap_comparison: M, N must live in the domain");
  if (p.rows() != codomain.dim() || p.cols() != domain.dim())
    throw std::invalid_argument("surjection_gap_comparison: map has wrong shape");

  CMat pw = codomain.weight() * p * domain.weight_inverse();
  Eigen::JacobiSVD<CMat> svd(pw);
  const auto& s = svd.singularValues();
  int required = codomain.dim();
  if (s.size() < required || s(required - 1) <= tol * s(0))
    throw std::invalid_argument("surjection_gap_comparison: map is not surjective");

  CMat kernel_w = null_space(pw, tol);
  Subspace kernel = (kernel_w.cols() == 0)
                        ? Subspace::zero(domain)
                        : Subspace::from_span(domain, domain.weight_inverse() * kernel_w, tol);
  const double contain_tol = 1e-8;
  if (gap_delta(kernel, m) > contain_tol || gap_delta(kernel, n) > contain_tol)
    throw std::invalid_argument("surjection_gap_comparison: ker p must be contained in M and N");

  // Induced map on (ker p)^⊥ ≅ domain/ker p; its extremal singular values
  // bound how much the quotient geometry is distorted.
  CMat coimage = null_space(kernel_w.adjoint(), tol);
  CMat induced = pw * coimage;
  double smax = spectral_norm(induced);
  double smin = smallest_singular_value(induced);

  // Images of unit vectors below tol·‖p‖ are numerically p(ker) and must
  // not inflate the rank of p(M).
  double image_floor = tol * smax;
  Subspace pm = Subspace::from_span(
      codomain, codomain.weight_inverse() * (pw * m.wbasis()), tol, image_floor);
  Subspace pn = Subspace::from_span(
      codomain, codomain.weight_inverse() * (pw * n.wbasis()), tol, image_floor);

  SurjectionComparison out;
  out.c_lower = smin / smax;
  out.c_upper = smax / smin;
  out.gap_upstairs = gap_delta(m, n);
  out.gap_downstairs = gap_delta(pm, pn);
  return out;
}

FamilyContinuityReport family_continuity_experiment(
    const std::vector<std::tuple<double, Subspace, Subspace>>& family,
    std::size_t base_index, double tol) {
  if (family.empty()) throw std::invalid_argument("family_continuity_experiment: empty family");
  if (base_index >= family.size())
    throw std::invalid_argument("family_continuity_experiment: base index out of range");
  for (std::size_t i = 1; i < family.size(); ++i)
    if (!(std::get<0>(family[i - 1]) < std::get<0>(family[i])))
      throw std::invalid_argument("family_continuity_experiment: parameters must be strictly increasing");

  const auto& [b0, m0, n0] = family[base_index];
  (void)b0;
  Subspace base_sum = sum(m0, n0, tol);
  Subspace base_int = intersect(m0, n0, tol);

  FamilyContinuityReport report;
  report.base_index = base_index;
  report.rows.reserve(family.size());
  for (const auto& [b, mb, nb] : family) {
    Subspace sb = sum(mb, nb, tol);
    Subspace ib = intersect(mb, nb, tol);
    FamilyGapRow row;
    row.parameter = b;
    row.intersection_dim = ib.rank();
    row.sum_dim = sb.rank();
    row.intersection_gap = gap_hat(ib, base_int);
    row.sum_gap = gap_hat(sb, base_sum);
    report.rows.push_back(row);
    if (ib.rank() != base_int.rank()) report.constant_intersection_dim = false;
  }
  return report;
}

std::vector<GraphIntersectionRow> graph_intersection_gap(
    const std::vector<std::pair<double, CMat>>& family, std::size_t base_index,
    const InnerSpace& domain, const InnerSpace& codomain, const Subspace& w,
    double tol) {
  if (family.empty()) throw std::invalid_argument("graph_intersection_gap: empty family");
  if (base_index >= family.size())
    throw std::invalid_argument("graph_intersection_gap: base index out of range");
  if (!w.space().same_as(codomain))
    throw std::invalid_argument("graph_intersection_gap: W must live in the codomain");
  for (std::size_t i = 1; i < family.size(); ++i)
    if (!(family[i - 1].first < family[i].first))
      throw std::invalid_argument("graph_intersection_gap: parameters must be strictly increasing");

  const CMat& a0 = family[base_index].second;
  CMat a0w = codomain.weight() * a0 * domain.weight_inverse();
  Subspace image0 = Subspace::from_span(codomain, codomain.weight_inverse() * a0w, tol);
  Subspace total = sum(image0, w, tol);
  Subspace overlap = intersect(image0, w, tol);
  if (total.rank() != codomain.dim() || overlap.rank() != 0)
    throw std::invalid_argument(
        "graph_intersection_gap: image(A_b0) and W must be transversal complements");

  CMat ker0_w = null_space(a0w, tol);
  Subspace kernel0 = (ker0_w.cols() == 0)
                         ? Subspace::zero(domain)
                         : Subspace::from_span(domain, domain.weight_inverse() * ker0_w, tol);

  // A_b⁻¹(W) = ker(Π_{W^⊥} A_b), computed through an orthonormal basis of W^⊥.
  CMat w_perp = null_space(w.wbasis().adjoint(), tol);

  std::vector<GraphIntersectionRow> rows;
  rows.reserve(family.size());
  for (const auto& [b, ab] : family) {
    CMat abw = codomain.weight() * ab * domain.weight_inverse();
    CMat constraint = w_perp.adjoint() * abw;
    CMat pre_w = null_space(constraint, tol);
    Subspace preimage = (pre_w.cols() == 0)
                            ? Subspace::zero(domain)
                            : Subspace::from_span(domain, domain.weight_inverse() * pre_w, tol);
    rows.push_back({b, gap_hat(kernel0, preimage)});
  }
  return rows;
}

} // namespace cauchylab
