#include "cauchylab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cauchylab {

double spectral_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  // Gram trick: top eigenvalue of AᴴA carries full relative accuracy.
  CMat g = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<CMat> es(g, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

double smallest_singular_value(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

CMat orthonormal_columns(const CMat& a, double rel_tol, double abs_floor) {
  if (a.cols() == 0 || a.rows() == 0) return CMat(a.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  double cutoff = std::max(rel_tol * s(0), abs_floor);
  int r = 0;
  while (r < s.size() && s(r) > cutoff && s(r) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

CMat null_space(const CMat& a, double rel_tol) {
  if (a.cols() == 0) return CMat(a.cols(), 0);
  if (a.rows() == 0) return CMat::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() > 0 ? s(0) : 0.0;
  double cutoff = rel_tol * smax;
  int r = 0;
  while (r < s.size() && s(r) > cutoff && s(r) > 0.0) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}


} // namespace cauchylab
