#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cauchylab {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Largest singular value. Computed as sqrt of the top eigenvalue of AᴴA,
/// which is accurate for the top of the spectrum at any scale.
double spectral_norm(const CMat& a);

/// Smallest of the min(rows,cols) singular values.
double smallest_singular_value(const CMat& a);

/// Orthonormal basis (standard inner product) of the column space.
/// Rank is decided by σ > max(rel_tol·σ_max, abs_floor); the absolute
/// floor matters when the whole column space may be numerically zero.
CMat orthonormal_columns(const CMat& a, double rel_tol = 1e-8,
                         double abs_floor = 0.0);

/// Orthonormal basis of the null space, same rank rule.
CMat null_space(const CMat& a, double rel_tol = 1e-8);


} // namespace cauchylab
