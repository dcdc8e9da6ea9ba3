#include "cauchylab/corpus.hpp"

namespace cauchylab {

namespace {

Complex dyadic(RandomSource& rng, double magnitude) {
  double q = 256.0;
  double re = std::round(rng.uniform(-magnitude, magnitude) * q) / q;
  double im = std::round(rng.uniform(-magnitude, magnitude) * q) / q;
  return Complex(re, im);
}

MatPoly random_matpoly(RandomSource& rng, int rows, int cols, int degree,
                       double magnitude, bool quantize) {
  std::vector<CMat> coeffs;
  coeffs.reserve(degree + 1);
  for (int p = 0; p <= degree; ++p) {
    CMat c(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i)
        c(i, j) = quantize ? dyadic(rng, magnitude)
                           : Complex(rng.uniform(-magnitude, magnitude),
                                     rng.uniform(-magnitude, magnitude));
    coeffs.push_back(std::move(c));
  }
  return MatPoly(std::move(coeffs));
}

OperatorSpec1D elliptic_from(RandomSource& rng, int order, int fiber, bool quantized) {
  std::vector<MatPoly> coeffs;
  coeffs.reserve(order + 1);
  for (int j = 0; j < order; ++j)
    coeffs.push_back(random_matpoly(rng, fiber, fiber, 2, 0.8, quantized));
  // Leading coefficient: identity plus a small polynomial, invertible on
  // [0,1] by a norm margin. The 0.25 scale is a power of two, so the
  // dyadic corpus stays exact.
  MatPoly lead = MatPoly::constant(CMat::Identity(fiber, fiber)) +
                 random_matpoly(rng, fiber, fiber, 2, 0.5, quantized) * Complex(0.25, 0.0);
  coeffs.push_back(std::move(lead));
  return make_operator(order, fiber, std::move(coeffs));
}

} // namespace

InnerSpace corpus_space(RandomSource& rng, int dim, bool random_gram) {
  if (!random_gram) return InnerSpace::standard(dim);
  return InnerSpace(dim, rng.gram_matrix(dim), "random-gram");
}

Subspace corpus_subspace(RandomSource& rng, const InnerSpace& space, int rank) {
  if (rank == 0) return Subspace::zero(space);
  return Subspace::from_span(space, rng.complex_normal_matrix(space.dim(), rank));
}

Projector corpus_projector(RandomSource& rng, const InnerSpace& space, int rank) {
  return Projector(space, rng.idempotent(space.dim(), rank));
}

OperatorSpec1D corpus_elliptic_spec(RandomSource& rng, int order, int fiber) {
  return elliptic_from(rng, order, fiber, false);
}

OperatorSpec1D corpus_elliptic_spec_dyadic(RandomSource& rng, int order, int fiber) {
  return elliptic_from(rng, order, fiber, true);
}

MatPoly corpus_section(RandomSource& rng, int fiber, int degree) {
  return random_matpoly(rng, fiber, 1, degree, 1.0, false);
}

ScaleOperator corpus_hermitian_operator(RandomSource& rng, int max_modes,
                                        int max_fiber) {
  FourierScale scale;
  scale.modes = static_cast<int>(rng.uniform_int(1, max_modes));
  scale.fiber = static_cast<int>(rng.uniform_int(1, max_fiber));
  return ScaleOperator(scale, rng.hermitian(scale.dim()), true);
}

} // namespace cauchylab
