#include "cauchylab/scale.hpp"

#include <cmath>
#include <stdexcept>

namespace cauchylab {

RVec FourierScale::level_diagonal(double s) const {
  RVec d(dim());
  for (int k = -modes; k <= modes; ++k) {
    double w = std::pow(1.0 + static_cast<double>(k) * k, s / 2.0);
    for (int c = 0; c < fiber; ++c) d(index(k, c)) = w;
  }
  return d;
}

ScaleSection::ScaleSection(FourierScale sc, CVec c) : scale(sc), coefficients(std::move(c)) {
  if (coefficients.size() != scale.dim())
    throw std::invalid_argument("ScaleSection: coefficient vector has wrong length");
}

ScaleOperator::ScaleOperator(FourierScale sc, CMat t, bool selfadjoint)
    : scale(sc), table(std::move(t)), selfadjoint_at_0(selfadjoint) {
  if (table.rows() != scale.dim() || table.cols() != scale.dim())
    throw std::invalid_argument("ScaleOperator: table has wrong shape");
  if (selfadjoint_at_0) {
    double defect = (table - table.adjoint()).cwiseAbs().maxCoeff();
    double size = std::max(1.0, table.cwiseAbs().maxCoeff());
    if (defect > 1e-12 * size)
      throw std::invalid_argument("ScaleOperator: selfadjoint_at_0 set but table is not Hermitian");
  }
}

ScaleOperator phi_multiplier(const FourierScale& scale, double s) {
  CMat t = scale.level_diagonal(s).cast<Complex>().asDiagonal();
  return ScaleOperator(scale, std::move(t), true);
}

ScaleOperator homogenizer(const FourierScale& scale, int order) {
  if (order < 1) throw std::invalid_argument("homogenizer: order must be >= 1");
  if (scale.fiber % order != 0)
    throw std::invalid_argument("homogenizer: fiber must split into jet components");
  int per_jet = scale.fiber / order;
  CMat t = CMat::Zero(scale.dim(), scale.dim());
  for (int k = -scale.modes; k <= scale.modes; ++k) {
    for (int j = 0; j < order; ++j) {
      double exponent = 0.5 * (order - 1 - 2 * j);
      double w = std::pow(1.0 + static_cast<double>(k) * k, exponent / 2.0);
      for (int c = 0; c < per_jet; ++c) {
        int idx = scale.index(k, j * per_jet + c);
        t(idx, idx) = w;
      }
    }
  }
  return ScaleOperator(scale, std::move(t), true);
}

double norm_s(const ScaleSection& u, double s) {
  CVec d = u.scale.level_diagonal(s).cast<Complex>();
  return (d.asDiagonal() * u.coefficients).norm();
}

Complex pairing(const ScaleSection& u, const ScaleSection& v) {
  if (!(u.scale == v.scale))
    throw std::invalid_argument("pairing: sections live on different scales");
  return u.coefficients.adjoint() * v.coefficients;
}

double operator_norm(const ScaleOperator& t, double s) {
  CVec up = t.scale.level_diagonal(s).cast<Complex>();
  CVec down = t.scale.level_diagonal(-s).cast<Complex>();
  CMat conjugated = up.asDiagonal() * t.table * down.asDiagonal();
  return spectral_norm(conjugated);
}

std::pair<double, double> duality_check(const ScaleOperator& t, double level) {
  if (!t.selfadjoint_at_0)
    throw std::invalid_argument("duality_check: operator is not flagged self-adjoint at level 0");
  if (level < 0.0) throw std::invalid_argument("duality_check: level must be non-negative");
  return {operator_norm(t, -level), operator_norm(t, level)};
}

std::pair<double, double> interpolation_check(const ScaleOperator& t,
                                              double s0, double s, double s1) {
  if (!(s0 < s && s < s1))
    throw std::invalid_argument("interpolation_check: need s0 < s < s1");
  double lhs = operator_norm(t, s);
  double hi = operator_norm(t, s1);
  double lo = operator_norm(t, s0);
  double a = (s - s0) / (s1 - s0);
  double rhs = std::pow(hi, a) * std::pow(lo, 1.0 - a);
  return {lhs, rhs};
}

std::pair<double, double> vector_interpolation_check(const ScaleSection& u,
                                                     double s0, double s, double s1) {
  if (!(s0 < s && s < s1))
    throw std::invalid_argument("vector_interpolation_check: need s0 < s < s1");
  double lhs = norm_s(u, s);
  double theta = (s1 - s) / (s1 - s0);
  double rhs = std::pow(norm_s(u, s1), 1.0 - theta) * std::pow(norm_s(u, s0), theta);
  return {lhs, rhs};
}

ScaleOperator compose(const ScaleOperator& a, const ScaleOperator& b) {
  if (!(a.scale == b.scale))
    throw std::invalid_argument("compose: operators live on different scales");
  return ScaleOperator(a.scale, a.table * b.table, false);
}

ScaleOperator subtract(const ScaleOperator& a, const ScaleOperator& b) {
  if (!(a.scale == b.scale))
    throw std::invalid_argument("subtract: operators live on different scales");
  return ScaleOperator(a.scale, a.table - b.table, a.selfadjoint_at_0 && b.selfadjoint_at_0);
}

ContinuityTransferReport continuity_transfer_experiment(
    const std::vector<std::pair<double, ScaleOperator>>& family,
    std::size_t base_index, double level, int grid_points) {
  if (family.empty())
    throw std::invalid_argument("continuity_transfer_experiment: empty family");
  if (base_index >= family.size())
    throw std::invalid_argument("continuity_transfer_experiment: base index out of range");
  if (level <= 0.0)
    throw std::invalid_argument("continuity_transfer_experiment: level must be positive");
  if (grid_points < 3) grid_points = 3;

  ContinuityTransferReport report;
  const ScaleOperator& base = family[base_index].second;
  for (const auto& [b, tb] : family) {
    if (!tb.selfadjoint_at_0) report.all_selfadjoint_at_0 = false;
    CMat diff = tb.table - base.table;
    ScaleOperator delta(tb.scale, std::move(diff), false);
    double norm_top = operator_norm(delta, level);
    double norm_bottom = operator_norm(delta, -level);
    report.max_duality_defect =
        std::max(report.max_duality_defect, std::abs(norm_top - norm_bottom));
    for (int g = 0; g < grid_points; ++g) {
      double s = -level + 2.0 * level * g / (grid_points - 1);
      double a = (s + level) / (2.0 * level);
      ContinuityTransferRow row;
      row.parameter = b;
      row.level = s;
      row.norm = operator_norm(delta, s);
      row.endpoint_bound = std::pow(norm_top, a) * std::pow(norm_bottom, 1.0 - a);
      report.rows.push_back(row);
    }
  }
  return report;
}

} // namespace cauchylab
