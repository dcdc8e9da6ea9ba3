#pragma once

#include "cauchylab/elliptic1d.hpp"
#include "cauchylab/random.hpp"
#include "cauchylab/scale.hpp"
#include "cauchylab/subspace.hpp"

namespace cauchylab {

/// Generators for the randomized verification corpora. Everything is a
/// pure function of the RandomSource state, so a corpus is reproducible
/// from its seed alone.

/// Standard space for even draws, random-Gram space for odd ones.
InnerSpace corpus_space(RandomSource& rng, int dim, bool random_gram);

Subspace corpus_subspace(RandomSource& rng, const InnerSpace& space, int rank);

Projector corpus_projector(RandomSource& rng, const InnerSpace& space, int rank);

/// Elliptic spec with matrix-polynomial coefficients of degree ≤ 2 and a
/// leading coefficient kept safely invertible on [0,1].
OperatorSpec1D corpus_elliptic_spec(RandomSource& rng, int order, int fiber);

/// Same, with dyadic coefficients (multiples of 1/256) so that the
/// adjoint involution is exact in floating point.
OperatorSpec1D corpus_elliptic_spec_dyadic(RandomSource& rng, int order, int fiber);

/// Random polynomial section (fiber×1) of the given degree.
MatPoly corpus_section(RandomSource& rng, int fiber, int degree);

/// Random Hermitian order-0 operator on a scale drawn with K ≤ max_modes,
/// fiber ≤ max_fiber.
ScaleOperator corpus_hermitian_operator(RandomSource& rng, int max_modes,
                                        int max_fiber);

} // namespace cauchylab
