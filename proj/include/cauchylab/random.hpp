#pragma once

#include <cstdint>
#include <random>

#include "cauchylab/linalg.hpp"

namespace cauchylab {

/// Seeded generators for the randomized verification corpora.
/// Every experiment derives its values from one recorded root seed,
/// so reruns are reproducible sample by sample.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for the i-th work item; makes parallel sweeps
  /// order-independent.
  static RandomSource for_item(std::uint64_t seed, std::uint64_t item) {
    return RandomSource(seed ^ (0x9e3779b97f4a7c15ULL * (item + 1)));
  }

  double uniform(double lo, double hi);
  double normal();
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi); // inclusive

  Complex complex_normal();
  CVec complex_normal_vector(int n);
  CMat complex_normal_matrix(int rows, int cols);

  /// Haar-ish unitary via QR of a Gaussian matrix with phase-fixed diagonal.
  CMat unitary(int n);

  /// Hermitian positive definite matrix with eigenvalues log-uniform in
  /// [1/cond_target, 1] scaled to unit top eigenvalue.
  CMat gram_matrix(int n, double cond_target = 16.0);

  /// Gaussian Hermitian matrix (GUE-style, unnormalized).
  CMat hermitian(int n);

  /// Idempotent of the given rank: X diag(I_r, 0) X⁻¹ with X kept
  /// well-conditioned so the idempotency defect stays near rounding.
  CMat idempotent(int n, int rank, double max_cond = 64.0);

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

} // namespace cauchylab
