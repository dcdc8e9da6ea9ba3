#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cauchylab/corpus.hpp"
#include "cauchylab/random.hpp"
#include "cauchylab/scale.hpp"

using namespace cauchylab;

namespace {

ScaleSection single_mode(const FourierScale& scale, int k, Complex value,
                         int component = 0) {
  CVec c = CVec::Zero(scale.dim());
  c(scale.index(k, component)) = value;
  return ScaleSection(scale, c);
}

} // namespace

TEST_CASE("the level-0 self-adjointness flag is enforced") {
  FourierScale scale{2, 1};
  RandomSource rng(9);
  CMat lopsided = rng.complex_normal_matrix(scale.dim(), scale.dim());
  CHECK_THROWS_AS(ScaleOperator(scale, lopsided, true), std::invalid_argument);
  ScaleOperator ok(scale, rng.hermitian(scale.dim()), true);
  CHECK(ok.selfadjoint_at_0);
}

TEST_CASE("weight algebra on the truncated scale") {
  FourierScale scale{6, 1};
  for (int k = -6; k <= 6; ++k) {
    CHECK(scale.weight(0.0, k) == 1.0);
    CHECK(std::abs(scale.weight(1.3, k) * scale.weight(-1.3, k) - 1.0) < 1e-13);
    CHECK(std::abs(scale.weight(0.7, k) * scale.weight(1.1, k) -
                   scale.weight(1.8, k)) < 1e-13 * scale.weight(1.8, k));
  }
}

TEST_CASE("generator powers: identity at 0, symbol at s = 2, inverse pairing") {
  FourierScale scale{4, 1};
  ScaleOperator id = phi_multiplier(scale, 0.0);
  CHECK((id.table - CMat::Identity(scale.dim(), scale.dim())).cwiseAbs().maxCoeff() == 0.0);

  ScaleOperator squared = phi_multiplier(scale, 2.0);
  CHECK(std::abs(squared.table(scale.index(1, 0), scale.index(1, 0)) - Complex(2, 0)) <
        1e-14);

  ScaleOperator inverse = phi_multiplier(scale, -2.0);
  CMat round_trip = squared.table * inverse.table;
  CHECK((round_trip - CMat::Identity(scale.dim(), scale.dim())).cwiseAbs().maxCoeff() <
        1e-13);
}

TEST_CASE("homogenizer blocks") {
  FourierScale trivial{3, 1};
  ScaleOperator h1 = homogenizer(trivial, 1);
  CHECK((h1.table - CMat::Identity(trivial.dim(), trivial.dim())).cwiseAbs().maxCoeff() ==
        0.0);

  FourierScale jets{4, 2};
  ScaleOperator h2 = homogenizer(jets, 2);
  CHECK(h2.table(jets.index(0, 0), jets.index(0, 0)) == Complex(1, 0));
  CHECK(h2.table(jets.index(0, 1), jets.index(0, 1)) == Complex(1, 0));
  double expected = std::pow(5.0, 0.25);
  CHECK(std::abs(h2.table(jets.index(2, 0), jets.index(2, 0)) - expected) < 1e-14);
  CHECK(std::abs(h2.table(jets.index(2, 1), jets.index(2, 1)) - 1.0 / expected) < 1e-14);

  CHECK_THROWS_AS(homogenizer(trivial, 2), std::invalid_argument);
}

TEST_CASE("level norms and the perfect pairing") {
  FourierScale scale{4, 1};
  ScaleSection flat = single_mode(scale, 0, Complex(1, 0));
  for (double s : {-2.0, 0.0, 1.5}) CHECK(norm_s(flat, s) == doctest::Approx(1.0));

  ScaleSection first = single_mode(scale, 1, Complex(1, 0));
  CHECK(norm_s(first, 1.0) == doctest::Approx(std::sqrt(2.0)));

  ScaleSection other = single_mode(scale, 3, Complex(2, 1));
  CHECK(std::abs(pairing(flat, other)) == doctest::Approx(0.0));

  // ‖u‖_s = sup |⟨u,v⟩| / ‖v‖_{−s}, attained at v = weight(s,·)u.
  RandomSource rng(4);
  ScaleSection u(scale, rng.complex_normal_vector(scale.dim()));
  double s = 0.8;
  CVec maximizer = u.coefficients;
  for (int k = -scale.modes; k <= scale.modes; ++k)
    maximizer(scale.index(k, 0)) *= scale.weight(s, k);
  ScaleSection v(scale, maximizer);
  double quotient = std::abs(pairing(u, v)) / norm_s(v, -s);
  CHECK(quotient == doctest::Approx(norm_s(u, s)).epsilon(1e-12));
}

TEST_CASE("operator norms on the scale") {
  FourierScale scale{3, 1};
  ScaleOperator id(scale, CMat::Identity(scale.dim(), scale.dim()), true);
  for (double s : {-1.0, 0.0, 2.0})
    CHECK(operator_norm(id, s) == doctest::Approx(1.0).epsilon(1e-12));

  CVec diag(scale.dim());
  for (int i = 0; i < scale.dim(); ++i) diag(i) = Complex(0.1 * i - 0.3, 0);
  ScaleOperator d(scale, CMat(diag.asDiagonal()), false);
  double expected = diag.cwiseAbs().maxCoeff();
  for (double s : {-2.0, 0.0, 1.0})
    CHECK(operator_norm(d, s) == doctest::Approx(expected).epsilon(1e-12));

  // Single coupling mode 0 → mode 1: norm 2^{s/2}.
  CMat coupling = CMat::Zero(scale.dim(), scale.dim());
  coupling(scale.index(1, 0), scale.index(0, 0)) = Complex(1, 0);
  ScaleOperator t(scale, coupling, false);
  for (double s : {0.0, 0.5, 1.0, 2.0})
    CHECK(operator_norm(t, s) == doctest::Approx(std::pow(2.0, s / 2)).epsilon(1e-12));
}

TEST_CASE("duality of level norms for level-0 self-adjoint operators") {
  FourierScale scale{3, 1};
  ScaleOperator id(scale, CMat::Identity(scale.dim(), scale.dim()), true);
  auto [lo, hi] = duality_check(id, 1.0);
  CHECK(lo == doctest::Approx(1.0));
  CHECK(hi == doctest::Approx(1.0));

  for (int trial = 0; trial < 100; ++trial) {
    RandomSource rng(4100 + trial);
    ScaleOperator t = corpus_hermitian_operator(rng, 8, 2);
    auto [minus, plus] = duality_check(t, 1.5);
    CHECK(std::abs(minus - plus) < 1e-10 * std::max(1.0, plus));
  }

  CMat coupling = CMat::Zero(scale.dim(), scale.dim());
  coupling(scale.index(1, 0), scale.index(0, 0)) = Complex(1, 0);
  ScaleOperator lopsided(scale, coupling, false);
  CHECK_THROWS_AS(duality_check(lopsided, 1.0), std::invalid_argument);
  // And indeed the identity fails without level-0 self-adjointness.
  CHECK(std::abs(operator_norm(lopsided, 1.0) - operator_norm(lopsided, -1.0)) > 0.5);
}

TEST_CASE("interpolation inequality for operators and vectors") {
  FourierScale scale{3, 1};
  CVec diag(scale.dim());
  for (int i = 0; i < scale.dim(); ++i) diag(i) = Complex(1.0 + 0.2 * i, 0);
  ScaleOperator d(scale, CMat(diag.asDiagonal()), false);
  auto [dl, dr] = interpolation_check(d, -1.0, 0.0, 1.0);
  CHECK(dl == doctest::Approx(dr).epsilon(1e-12));

  for (int trial = 0; trial < 200; ++trial) {
    RandomSource rng(4400 + trial);
    ScaleOperator t = corpus_hermitian_operator(rng, 8, 1);
    auto [lhs, rhs] = interpolation_check(t, -1.0, 0.0, 1.0);
    CHECK(lhs <= rhs * (1.0 + 1e-10) + 1e-14);
  }

  // The rank-one coupling has a single singular value with an exact
  // power law: equality.
  CMat coupling = CMat::Zero(scale.dim(), scale.dim());
  coupling(scale.index(1, 0), scale.index(0, 0)) = Complex(1, 0);
  ScaleOperator t(scale, coupling, false);
  auto [cl, cr] = interpolation_check(t, -2.0, 0.5, 2.0);
  CHECK(cl == doctest::Approx(cr).epsilon(1e-12));

  // Vectors: single mode → equality, two modes → strict, zero → (0,0).
  ScaleSection mono = single_mode(scale, 2, Complex(3, 1));
  auto [vl, vr] = vector_interpolation_check(mono, -1.0, 0.2, 1.5);
  CHECK(vl == doctest::Approx(vr).epsilon(1e-12));

  CVec two = CVec::Zero(scale.dim());
  two(scale.index(0, 0)) = Complex(1, 0);
  two(scale.index(2, 0)) = Complex(1, 0);
  auto [wl, wr] = vector_interpolation_check(ScaleSection(scale, two), -1.0, 0.0, 1.0);
  CHECK(wl < wr - 1e-6);

  auto [zl, zr] =
      vector_interpolation_check(ScaleSection(scale, CVec::Zero(scale.dim())), -1.0, 0.0, 1.0);
  CHECK(zl == 0.0);
  CHECK(zr == 0.0);
}

TEST_CASE("norm is submultiplicative under composition") {
  for (int trial = 0; trial < 60; ++trial) {
    RandomSource rng(4700 + trial);
    FourierScale scale{static_cast<int>(rng.uniform_int(1, 6)), 1};
    ScaleOperator a(scale, rng.complex_normal_matrix(scale.dim(), scale.dim()), false);
    ScaleOperator b(scale, rng.complex_normal_matrix(scale.dim(), scale.dim()), false);
    double s = rng.uniform(-2.0, 2.0);
    CHECK(operator_norm(compose(a, b), s) <=
          operator_norm(a, s) * operator_norm(b, s) * (1.0 + 1e-10));
  }
}

TEST_CASE("continuity transfer table") {
  FourierScale scale{5, 1};
  RandomSource rng(52);
  ScaleOperator t0(scale, rng.hermitian(scale.dim()), true);
  CMat h = rng.hermitian(scale.dim());

  std::vector<std::pair<double, ScaleOperator>> constant = {
      {0.0, t0}, {0.5, t0}, {1.0, t0}};
  ContinuityTransferReport flat = continuity_transfer_experiment(constant, 0, 1.0, 5);
  for (const auto& row : flat.rows) CHECK(row.norm < 1e-13);

  std::vector<std::pair<double, ScaleOperator>> linear;
  for (double b : {-0.2, -0.1, 0.0, 0.1, 0.2})
    linear.emplace_back(b, ScaleOperator(scale, t0.table + b * h, true));
  ContinuityTransferReport moving = continuity_transfer_experiment(linear, 2, 2.0, 9);
  CHECK(moving.all_selfadjoint_at_0);
  CHECK(moving.max_duality_defect < 1e-10);
  for (const auto& row : moving.rows) {
    CHECK(row.norm <= row.endpoint_bound * (1.0 + 1e-10) + 1e-14);
    if (row.parameter != 0.0 && row.level == 0.0) {
      double expected = std::abs(row.parameter) * operator_norm(ScaleOperator(scale, h, true), 0.0);
      CHECK(row.norm == doctest::Approx(expected).epsilon(1e-9));
    }
  }

  // Family with the flag unset: recorded, not asserted.
  std::vector<std::pair<double, ScaleOperator>> unflagged;
  CMat coupling = CMat::Zero(scale.dim(), scale.dim());
  coupling(scale.index(1, 0), scale.index(0, 0)) = Complex(1, 0);
  for (double b : {0.0, 1.0})
    unflagged.emplace_back(b, ScaleOperator(scale, b * coupling, false));
  ContinuityTransferReport loose = continuity_transfer_experiment(unflagged, 0, 1.0, 3);
  CHECK(!loose.all_selfadjoint_at_0);
  CHECK(loose.max_duality_defect > 0.5);
}
