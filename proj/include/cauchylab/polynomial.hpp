#pragma once

#include <vector>

#include "cauchylab/linalg.hpp"

namespace cauchylab {

/// Matrix-valued polynomial on [0,1], coefficients in ascending degree.
/// Exact under differentiation, adjoint, addition, and multiplication,
/// which is what keeps the boundary-form algebra free of quadrature error.
class MatPoly {
public:
  MatPoly(int rows, int cols);                       // zero polynomial
  explicit MatPoly(std::vector<CMat> coefficients);  // must be non-empty, same shape

  static MatPoly constant(CMat value);
  static MatPoly scalar(std::vector<Complex> coefficients);  // 1×1

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int degree() const;  // -1 for the zero polynomial
  const std::vector<CMat>& coefficients() const { return coeffs_; }

  CMat eval(double x) const;
  MatPoly derivative() const;
  MatPoly derivative(int times) const;
  /// Coefficient-wise conjugate transpose: the adjoint a(x)ᴴ as a polynomial.
  MatPoly conjugate_transpose() const;

  MatPoly operator+(const MatPoly& other) const;
  MatPoly operator-(const MatPoly& other) const;
  MatPoly operator*(const MatPoly& other) const;  // matrix product
  MatPoly operator*(Complex scalar) const;

  bool same_shape(const MatPoly& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

private:
  int rows_, cols_;
  std::vector<CMat> coeffs_;
};

/// Nodes and weights of the n-point Gauss–Legendre rule on [0,1];
/// exact for polynomials of degree ≤ 2n−1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int points);

/// ∫₀¹ ⟨p(x), q(x)⟩ dx = ∫ q(x)ᴴ p(x) dx for column polynomials p, q,
/// by a rule exact for the integrand's degree.
Complex l2_inner_product(const MatPoly& p, const MatPoly& q);

} // namespace cauchylab
