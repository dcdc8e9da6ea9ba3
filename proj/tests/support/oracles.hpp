#pragma once

#include "cauchylab/random.hpp"
#include "cauchylab/subspace.hpp"

namespace cauchylab::testsupport {

/// Bessel function of the first kind, integer order, by ascending series.
/// Accurate to ~1e-14 for |x| ≲ 15, which covers every oracle use here.
double bessel_j(int order, double x);

/// First positive zero of J0 (bisection on the series), j_{0,1}.
double first_bessel_j0_zero();

/// Outward DtN value of mode 0 on the flat disk with shift b > 0:
/// u = J0(√b r) gives λ0 = −√b J1(√b)/J0(√b).
double flat_disk_dtn_oracle(double b);

/// Frobenius-series route to the regular mode solution of
/// −(u'' + u'/r − k²u/r²) + (V(r) − b)u = 0, u ~ r^|k|: the recurrence
/// a_m = Σ_p (v_p − b·[p=0]) a_{m−2−p} / (m(2|k|+m)) summed at r = 1.
/// Independent of any ODE stepping.
struct SeriesBoundaryData {
  double value;
  double dvalue;
};
SeriesBoundaryData series_mode_solution(int k, const std::vector<double>& potential,
                                        double shift, int terms = 80);

/// Brute-force sup over the unit sphere of M of the distance to N
/// (sampling with shrinking local refinement).
double sampled_sup_distance(const Subspace& m, const Subspace& n,
                            RandomSource& rng, int rounds = 48,
                            int samples = 160);

/// Brute-force inf over u ∈ M ∖ (M∩N) of dist(u,N)/dist(u,M∩N).
double sampled_inf_ratio(const Subspace& m, const Subspace& n,
                         RandomSource& rng, int rounds = 48, int samples = 160);

} // namespace cauchylab::testsupport
