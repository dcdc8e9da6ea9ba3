#include "cauchylab/elliptic1d.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

#include "cauchylab/ode.hpp"

namespace cauchylab {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

// Signs converting plain derivatives at x = 1 into inward jets:
// γ^k = (−1)^k u^(k)(1).
CVec inward_signs_at_one(int order, int fiber) {
  CVec s(order * fiber);
  for (int k = 0; k < order; ++k)
    for (int c = 0; c < fiber; ++c) s(k * fiber + c) = sign_pow(k);
  return s;
}

} // namespace

OperatorSpec1D make_operator(int order, int fiber, std::vector<MatPoly> coefficients) {
  if (order < 1) throw std::invalid_argument("make_operator: order must be >= 1");
  if (fiber < 1) throw std::invalid_argument("make_operator: fiber must be >= 1");
  if (static_cast<int>(coefficients.size()) != order + 1)
    throw std::invalid_argument("make_operator: need exactly order+1 coefficient tables");
  for (const auto& c : coefficients)
    if (c.rows() != fiber || c.cols() != fiber)
      throw std::invalid_argument("make_operator: coefficient tables must be fiber×fiber");

  OperatorSpec1D spec;
  spec.order = order;
  spec.fiber = fiber;
  spec.coefficients = std::move(coefficients);

  // Ellipticity: the leading coefficient must be invertible along [0,1].
  const int samples = 33;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double x = static_cast<double>(i) / (samples - 1);
    CMat lead = spec.coefficients[order].eval(x);
    double top = spectral_norm(lead);
    double bottom = smallest_singular_value(lead);
    if (bottom <= 1e-12 * std::max(1.0, top))
      throw std::invalid_argument("make_operator: leading coefficient is singular at x = " +
                                  std::to_string(x));
    worst = std::max(worst, top / bottom);
  }
  spec.ellipticity_condition_bound = worst;
  return spec;
}

CVec apply_operator(const OperatorSpec1D& a, double x,
                    const std::vector<CVec>& derivatives) {
  if (static_cast<int>(derivatives.size()) < a.order + 1)
    throw std::invalid_argument("apply_operator: need jet values up to the operator order");
  CVec out = CVec::Zero(a.fiber);
  for (int j = 0; j <= a.order; ++j)
    out += a.coefficients[j].eval(x) * derivatives[j];
  return out;
}

CVec apply_operator(const OperatorSpec1D& a, const MatPoly& u, double x) {
  std::vector<CVec> jets;
  jets.reserve(a.order + 1);
  MatPoly du = u;
  for (int j = 0; j <= a.order; ++j) {
    jets.push_back(du.eval(x).col(0));
    du = du.derivative();
  }
  return apply_operator(a, x, jets);
}

MatPoly apply_operator_poly(const OperatorSpec1D& a, const MatPoly& u) {
  if (u.cols() != 1 || u.rows() != a.fiber)
    throw std::invalid_argument("apply_operator_poly: section has wrong shape");
  MatPoly out(a.fiber, 1);
  MatPoly du = u;
  for (int j = 0; j <= a.order; ++j) {
    out = out + a.coefficients[j] * du;
    du = du.derivative();
  }
  return out;
}

OperatorSpec1D formal_adjoint(const OperatorSpec1D& a) {
  // (Aᵗ)_l = Σ_{j≥l} (−1)^j C(j,l) (a_jᴴ)^{(j−l)}.
  std::vector<MatPoly> adj(a.order + 1, MatPoly(a.fiber, a.fiber));
  for (int j = 0; j <= a.order; ++j) {
    MatPoly conj = a.coefficients[j].conjugate_transpose();
    for (int l = 0; l <= j; ++l) {
      Complex factor = sign_pow(j) * binomial(j, l);
      adj[l] = adj[l] + conj.derivative(j - l) * factor;
    }
  }
  return make_operator(a.order, a.fiber, std::move(adj));
}

CMat principal_symbol(const OperatorSpec1D& a, double x, double xi) {
  Complex factor = std::pow(Complex(0.0, xi), a.order);
  return factor * a.coefficients[a.order].eval(x);
}

CMat GreensMatrix::full() const {
  int n = order * fiber;
  CMat j = CMat::Zero(2 * n, 2 * n);
  j.topLeftCorner(n, n) = at_zero;
  j.bottomRightCorner(n, n) = at_one;
  return j;
}

CMat GreensMatrix::block(int endpoint, int row_jet, int col_jet) const {
  const CMat& j = (endpoint == 0) ? at_zero : at_one;
  return j.block(row_jet * fiber, col_jet * fiber, fiber, fiber);
}

GreensMatrix greens_matrix(const OperatorSpec1D& a) {
  // Repeated integration by parts of Σ_j ∫ vᴴ a_j u^(j) leaves the
  // boundary accumulation Σ_{j,l<j} (−1)^l ((a_jᴴ v)^(l))ᴴ u^(j−1−l);
  // expanding (a_jᴴ v)^(l) by Leibniz and rewriting both endpoint jets
  // inward gives, per endpoint and jet pair (α,β):
  //   J⁰_{αβ} = −Σ_q (−1)^{α+q} C(α+q,q) a_{α+β+q+1}^{(q)}(0),
  //   J¹_{αβ} = +Σ_q (−1)^{β+q} C(α+q,q) a_{α+β+q+1}^{(q)}(1).
  int d = a.order, m = a.fiber;
  GreensMatrix out;
  out.order = d;
  out.fiber = m;
  out.at_zero = CMat::Zero(d * m, d * m);
  out.at_one = CMat::Zero(d * m, d * m);
  for (int alpha = 0; alpha < d; ++alpha) {
    for (int beta = 0; beta + alpha <= d - 1; ++beta) {
      CMat block0 = CMat::Zero(m, m);
      CMat block1 = CMat::Zero(m, m);
      for (int q = 0; q + alpha + beta + 1 <= d; ++q) {
        MatPoly da = a.coefficients[alpha + beta + q + 1].derivative(q);
        double c = binomial(alpha + q, q);
        block0 -= sign_pow(alpha + q) * c * da.eval(0.0);
        block1 += sign_pow(beta + q) * c * da.eval(1.0);
      }
      out.at_zero.block(alpha * m, beta * m, m, m) = block0;
      out.at_one.block(alpha * m, beta * m, m, m) = block1;
    }
  }
  return out;
}

double greens_identity_residual(const OperatorSpec1D& a, const MatPoly& u,
                                const MatPoly& v) {
  if (u.cols() != 1 || v.cols() != 1 || u.rows() != a.fiber || v.rows() != a.fiber)
    throw std::invalid_argument("greens_identity_residual: sections have wrong shape");
  OperatorSpec1D at = formal_adjoint(a);
  Complex lhs = l2_inner_product(apply_operator_poly(a, u), v) -
                l2_inner_product(u, apply_operator_poly(at, v));

  GreensMatrix j = greens_matrix(a);
  int d = a.order, m = a.fiber;
  CVec signs = inward_signs_at_one(d, m);

  auto jet_stack = [&](const MatPoly& w, double x) {
    CVec stack(d * m);
    MatPoly dw = w;
    for (int k = 0; k < d; ++k) {
      stack.segment(k * m, m) = dw.eval(x).col(0);
      dw = dw.derivative();
    }
    return stack;
  };

  CVec u0 = jet_stack(u, 0.0);
  CVec v0 = jet_stack(v, 0.0);
  CVec u1 = signs.asDiagonal() * jet_stack(u, 1.0);
  CVec v1 = signs.asDiagonal() * jet_stack(v, 1.0);
  Complex boundary = (v0.adjoint() * (j.at_zero * u0)).value() +
                     (v1.adjoint() * (j.at_one * u1)).value();
  return std::abs(lhs - boundary);
}

std::vector<SolutionTrajectory> kernel_basis(const OperatorSpec1D& a, double tol) {
  int d = a.order, m = a.fiber, n = d * m;
  auto rhs = [&a, d, m, n](double x, const CVec& y) {
    CVec dy(n);
    dy.head(n - m) = y.tail(n - m);
    CVec force = CVec::Zero(m);
    for (int j = 0; j < d; ++j)
      force -= a.coefficients[j].eval(x) * y.segment(j * m, m);
    dy.tail(m) = a.coefficients[d].eval(x).partialPivLu().solve(force);
    return dy;
  };

  OdeOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;

  std::vector<SolutionTrajectory> basis(n);
  for (int i = 0; i < n; ++i) {
    SolutionTrajectory traj;
    traj.jet_at_zero = CVec::Unit(n, i);
    double sup = 0.0;
    auto observer = [&sup](double, const CVec& y) {
      sup = std::max(sup, y.cwiseAbs().maxCoeff());
    };
    traj.jet_at_one = integrate_rk45<CVec>(rhs, 0.0, 1.0, traj.jet_at_zero, opt, observer);
    traj.sup_norm = sup;
    basis[i] = std::move(traj);
  }
  return basis;
}

CVec inward_trace(const SolutionTrajectory& trajectory, int order, int fiber) {
  int n = order * fiber;
  CVec trace(2 * n);
  trace.head(n) = trajectory.jet_at_zero;
  trace.tail(n) = inward_signs_at_one(order, fiber).asDiagonal() * trajectory.jet_at_one;
  return trace;
}

Subspace cauchy_data_space(const OperatorSpec1D& a) {
  int n = a.order * a.fiber;
  auto basis = kernel_basis(a);
  CMat traces(2 * n, n);
  for (int i = 0; i < n; ++i) traces.col(i) = inward_trace(basis[i], a.order, a.fiber);
  Subspace lambda = Subspace::from_span(InnerSpace::standard(2 * n), traces);
  if (lambda.rank() != n)
    throw std::runtime_error("cauchy_data_space: trace rank differs from dm");
  return lambda;
}

Projector calderon_projector(const OperatorSpec1D& a) {
  Subspace lambda = cauchy_data_space(a);
  CMat p = lambda.basis() * lambda.basis().adjoint();
  return Projector(lambda.space(), std::move(p));
}

DecompositionReport orthogonal_decomposition_check(const OperatorSpec1D& a) {
  Subspace lambda = cauchy_data_space(a);
  Subspace lambda_t = cauchy_data_space(formal_adjoint(a));
  CMat j = greens_matrix(a).full();

  DecompositionReport report;
  report.boundary_dim = a.boundary_dim();
  report.dim_lambda = lambda.rank();

  CMat w = j.adjoint() * lambda_t.basis();
  Subspace j_lambda_t = Subspace::from_span(lambda.space(), w);
  report.dim_j_lambda_adjoint = j_lambda_t.rank();

  // (f, Jᵗg) = (Jf, g) over the basis pairs; Green's formula makes it 0.
  CMat residual = lambda_t.basis().adjoint() * j * lambda.basis();
  report.max_pairing_residual =
      residual.size() > 0 ? residual.cwiseAbs().maxCoeff() : 0.0;

  report.direct_sum_dim = sum(lambda, j_lambda_t).rank();
  report.kernel_image_gap = gap_hat(calderon_projector(a).kernel(), j_lambda_t);
  return report;
}

int minimal_kernel_check(const OperatorSpec1D& a) {
  int n = a.order * a.fiber;
  auto rhs = [&a, n](double x, const CVec& y) {
    int d = a.order, m = a.fiber;
    CVec dy(n);
    dy.head(n - m) = y.tail(n - m);
    CVec force = CVec::Zero(m);
    for (int j = 0; j < d; ++j)
      force -= a.coefficients[j].eval(x) * y.segment(j * m, m);
    dy.tail(m) = a.coefficients[d].eval(x).partialPivLu().solve(force);
    return dy;
  };
  double sup = 0.0;
  auto observer = [&sup](double, const CVec& y) {
    sup = std::max(sup, y.cwiseAbs().maxCoeff());
  };
  integrate_rk45<CVec>(rhs, 0.0, 1.0, CVec::Zero(n), OdeOptions{}, observer);
  if (sup > 1e-10)
    throw std::runtime_error("minimal_kernel_check: zero Cauchy data produced a nonzero solution");
  return 0;
}

std::vector<SweepRow1D> family_sweep_1d(
    const std::function<OperatorSpec1D(double)>& family, double b0,
    const std::vector<double>& grid) {
  OperatorSpec1D base = family(b0);
  Subspace lambda0 = cauchy_data_space(base);
  Projector c0 = calderon_projector(base);

  const int samples = 33;
  std::vector<SweepRow1D> rows;
  rows.reserve(grid.size());
  for (double b : grid) {
    OperatorSpec1D ab = family(b);
    if (ab.order != base.order || ab.fiber != base.fiber)
      throw std::invalid_argument("family_sweep_1d: family changes order or fiber");

    double coeff_dist = 0.0;
    for (int j = 0; j <= base.order; ++j)
      for (int i = 0; i < samples; ++i) {
        double x = static_cast<double>(i) / (samples - 1);
        coeff_dist = std::max(coeff_dist,
            spectral_norm(ab.coefficients[j].eval(x) - base.coefficients[j].eval(x)));
      }

    Projector cb = calderon_projector(ab);
    SweepRow1D row;
    row.parameter = b;
    row.coefficient_distance = coeff_dist;
    row.cauchy_gap = gap_hat(cauchy_data_space(ab), lambda0);
    row.projector_distance = c0.space().operator_norm(cb.table() - c0.table());
    row.estimate_rhs = projector_norm_estimate(cb, c0);
    rows.push_back(row);
  }
  return rows;
}

} // namespace cauchylab
