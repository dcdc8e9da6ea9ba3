#include "cauchylab/random.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace cauchylab {

double RandomSource::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(engine_);
}

double RandomSource::normal() {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(engine_);
}

std::int64_t RandomSource::uniform_int(std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  return d(engine_);
}

Complex RandomSource::complex_normal() {
  constexpr double inv_sqrt2 = 0.7071067811865476;
  double re = normal();
  double im = normal();
  return Complex(re * inv_sqrt2, im * inv_sqrt2);
}

CVec RandomSource::complex_normal_vector(int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

CMat RandomSource::complex_normal_matrix(int rows, int cols) {
  CMat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

CMat RandomSource::unitary(int n) {
  CMat g = complex_normal_matrix(n, n);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1, 0);
  }
  return q;
}

CMat RandomSource::gram_matrix(int n, double cond_target) {
  CMat q = unitary(n);
  RVec lam(n);
  double lo = std::log(1.0 / cond_target);
  for (int i = 0; i < n; ++i) lam(i) = std::exp(uniform(lo, 0.0));
  CMat g = q * lam.asDiagonal() * q.adjoint();
  return 0.5 * (g + g.adjoint());
}

CMat RandomSource::hermitian(int n) {
  CMat g = complex_normal_matrix(n, n);
  return 0.5 * (g + g.adjoint());
}

CMat RandomSource::idempotent(int n, int rank, double max_cond) {
  if (rank <= 0) return CMat::Zero(n, n);
  if (rank >= n) return CMat::Identity(n, n);
  for (;;) {
    CMat x = complex_normal_matrix(n, n);
    Eigen::JacobiSVD<CMat> svd(x);
    const auto& s = svd.singularValues();
    if (s(n - 1) <= 0.0 || s(0) / s(n - 1) > max_cond) continue;
    CMat xr = x.leftCols(rank);
    CMat yr = x.inverse().topRows(rank);
    return xr * yr;
  }
}

} // namespace cauchylab
