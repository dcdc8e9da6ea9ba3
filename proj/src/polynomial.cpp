#include "cauchylab/polynomial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cauchylab {

MatPoly::MatPoly(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("MatPoly: bad shape");
  coeffs_.push_back(CMat::Zero(rows, cols));
}

MatPoly::MatPoly(std::vector<CMat> coefficients) {
  if (coefficients.empty()) throw std::invalid_argument("MatPoly: empty coefficient list");
  rows_ = static_cast<int>(coefficients.front().rows());
  cols_ = static_cast<int>(coefficients.front().cols());
  for (const auto& c : coefficients)
    if (c.rows() != rows_ || c.cols() != cols_)
      throw std::invalid_argument("MatPoly: inconsistent coefficient shapes");
  coeffs_ = std::move(coefficients);
}

MatPoly MatPoly::constant(CMat value) {
  std::vector<CMat> c;
  c.push_back(std::move(value));
  return MatPoly(std::move(c));
}

MatPoly MatPoly::scalar(std::vector<Complex> coefficients) {
  std::vector<CMat> c;
  c.reserve(coefficients.size());
  for (Complex z : coefficients) {
    CMat m(1, 1);
    m(0, 0) = z;
    c.push_back(std::move(m));
  }
  if (c.empty()) c.push_back(CMat::Zero(1, 1));
  return MatPoly(std::move(c));
}

int MatPoly::degree() const {
  for (int p = static_cast<int>(coeffs_.size()) - 1; p >= 0; --p)
    if (coeffs_[p].cwiseAbs().maxCoeff() != 0.0) return p;
  return -1;
}

CMat MatPoly::eval(double x) const {
  CMat acc = coeffs_.back();
  for (int p = static_cast<int>(coeffs_.size()) - 2; p >= 0; --p)
    acc = acc * x + coeffs_[p];
  return acc;
}

MatPoly MatPoly::derivative() const {
  if (coeffs_.size() == 1) return MatPoly(rows_, cols_);
  std::vector<CMat> d;
  d.reserve(coeffs_.size() - 1);
  for (std::size_t p = 1; p < coeffs_.size(); ++p)
    d.push_back(static_cast<double>(p) * coeffs_[p]);
  return MatPoly(std::move(d));
}

MatPoly MatPoly::derivative(int times) const {
  MatPoly out = *this;
  for (int i = 0; i < times; ++i) out = out.derivative();
  return out;
}

MatPoly MatPoly::conjugate_transpose() const {
  std::vector<CMat> c;
  c.reserve(coeffs_.size());
  for (const auto& m : coeffs_) c.push_back(m.adjoint());
  return MatPoly(std::move(c));
}

MatPoly MatPoly::operator+(const MatPoly& other) const {
  if (!same_shape(other)) throw std::invalid_argument("MatPoly: shape mismatch in +");
  std::vector<CMat> c(std::max(coeffs_.size(), other.coeffs_.size()),
                      CMat::Zero(rows_, cols_));
  for (std::size_t p = 0; p < coeffs_.size(); ++p) c[p] += coeffs_[p];
  for (std::size_t p = 0; p < other.coeffs_.size(); ++p) c[p] += other.coeffs_[p];
  return MatPoly(std::move(c));
}

MatPoly MatPoly::operator-(const MatPoly& other) const {
  return *this + other * Complex(-1.0, 0.0);
}

MatPoly MatPoly::operator*(const MatPoly& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("MatPoly: shape mismatch in *");
  std::vector<CMat> c(coeffs_.size() + other.coeffs_.size() - 1,
                      CMat::Zero(rows_, other.cols_));
  for (std::size_t p = 0; p < coeffs_.size(); ++p)
    for (std::size_t q = 0; q < other.coeffs_.size(); ++q)
      c[p + q] += coeffs_[p] * other.coeffs_[q];
  return MatPoly(std::move(c));
}

MatPoly MatPoly::operator*(Complex scalar) const {
  std::vector<CMat> c;
  c.reserve(coeffs_.size());
  for (const auto& m : coeffs_) c.push_back(scalar * m);
  return MatPoly(std::move(c));
}

QuadratureRule gauss_legendre(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (int i = 0; i < points; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (points == 1) { p1 = x; }
      for (int n = 2; n <= points; ++n) {
        double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      double pn = (points == 1) ? x : p1;
      double pm = (points == 1) ? 1.0 : p0;
      dp = points * (x * pn - pm) / (x * x - 1.0);
      double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Map [-1,1] → [0,1].
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

Complex l2_inner_product(const MatPoly& p, const MatPoly& q) {
  if (p.cols() != 1 || q.cols() != 1 || p.rows() != q.rows())
    throw std::invalid_argument("l2_inner_product: expects column polynomials of equal height");
  int degree = std::max(0, p.degree()) + std::max(0, q.degree());
  int points = degree / 2 + 1;
  QuadratureRule rule = gauss_legendre(points);
  Complex acc(0.0, 0.0);
  for (int i = 0; i < points; ++i) {
    CMat pv = p.eval(rule.nodes[i]);
    CMat qv = q.eval(rule.nodes[i]);
    acc += rule.weights[i] * (qv.adjoint() * pv)(0, 0);
  }
  return acc;
}

} // namespace cauchylab
