#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace cauchylab::testsupport {

double bessel_j(int order, double x) {
  if (order < 0) throw std::invalid_argument("bessel_j: order must be >= 0");
  double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= order; ++i) term *= half / i;  // (x/2)^n / n!
  double sum = term;
  for (int m = 1; m < 80; ++m) {
    term *= -half * half / (m * (m + order));
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

double first_bessel_j0_zero() {
  double lo = 2.0, hi = 3.0;
  double flo = bessel_j(0, lo);
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    double mid = 0.5 * (lo + hi);
    double fmid = bessel_j(0, mid);
    if (flo * fmid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

double flat_disk_dtn_oracle(double b) {
  if (b <= 0.0) throw std::invalid_argument("flat_disk_dtn_oracle: b must be positive");
  double root = std::sqrt(b);
  return -root * bessel_j(1, root) / bessel_j(0, root);
}

SeriesBoundaryData series_mode_solution(int k, const std::vector<double>& potential,
                                        double shift, int terms) {
  int nu = std::abs(k);
  std::vector<double> w = potential;
  if (w.empty()) w.push_back(0.0);
  w[0] -= shift;

  std::vector<double> a(terms, 0.0);
  a[0] = 1.0;
  for (int m = 1; m < terms; ++m) {
    double acc = 0.0;
    for (int p = 0; p < static_cast<int>(w.size()) && p <= m - 2; ++p)
      acc += w[p] * a[m - 2 - p];
    a[m] = acc / (static_cast<double>(m) * (2.0 * nu + m));
  }

  SeriesBoundaryData out{0.0, 0.0};
  for (int m = terms - 1; m >= 0; --m) {
    out.value += a[m];
    out.dvalue += (nu + m) * a[m];
  }
  return out;
}

namespace {

double distance_to(const Subspace& target, const CVec& wu) {
  if (target.rank() == 0) return wu.norm();
  return (wu - target.wbasis() * (target.wbasis().adjoint() * wu)).norm();
}

CVec random_unit_coefficients(RandomSource& rng, int r) {
  CVec c = rng.complex_normal_vector(r);
  double n = c.norm();
  while (n < 1e-12) {
    c = rng.complex_normal_vector(r);
    n = c.norm();
  }
  return c / n;
}

} // namespace

double sampled_sup_distance(const Subspace& m, const Subspace& n,
                            RandomSource& rng, int rounds, int samples) {
  if (m.rank() == 0) return 0.0;
  int r = m.rank();
  CVec best = random_unit_coefficients(rng, r);
  double best_value = distance_to(n, m.wbasis() * best);
  double radius = 1.0;
  for (int round = 0; round < rounds; ++round) {
    for (int s = 0; s < samples; ++s) {
      CVec candidate = best + radius * rng.complex_normal_vector(r);
      double nn = candidate.norm();
      if (nn < 1e-12) continue;
      candidate /= nn;
      double value = distance_to(n, m.wbasis() * candidate);
      if (value > best_value) {
        best_value = value;
        best = candidate;
      }
    }
    radius *= 0.7;
  }
  return best_value;
}

double sampled_inf_ratio(const Subspace& m, const Subspace& n,
                         RandomSource& rng, int rounds, int samples) {
  if (m.rank() == 0)
    throw std::invalid_argument("sampled_inf_ratio: M must be nonzero");
  Subspace common = intersect(m, n);
  int r = m.rank();
  auto ratio_at = [&](const CVec& c) {
    CVec wu = m.wbasis() * c;
    double to_common = distance_to(common, wu);
    if (to_common < 1e-8) return 1e300;  // u too close to M∩N; skip
    return distance_to(n, wu) / to_common;
  };

  CVec best = random_unit_coefficients(rng, r);
  double best_value = ratio_at(best);
  for (int s = 0; s < 4 * samples; ++s) {
    CVec candidate = random_unit_coefficients(rng, r);
    double value = ratio_at(candidate);
    if (value < best_value) {
      best_value = value;
      best = candidate;
    }
  }
  double radius = 0.5;
  for (int round = 0; round < rounds; ++round) {
    for (int s = 0; s < samples; ++s) {
      CVec candidate = best + radius * rng.complex_normal_vector(r);
      double nn = candidate.norm();
      if (nn < 1e-12) continue;
      candidate /= nn;
      double value = ratio_at(candidate);
      if (value < best_value) {
        best_value = value;
        best = candidate;
      }
    }
    radius *= 0.7;
  }
  return best_value;
}

} // namespace cauchylab::testsupport
