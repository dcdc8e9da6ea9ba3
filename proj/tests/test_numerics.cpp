#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "cauchylab/linalg.hpp"
#include "cauchylab/ode.hpp"
#include "cauchylab/polynomial.hpp"
#include "cauchylab/random.hpp"

using namespace cauchylab;

TEST_CASE("spectral norm agrees with the direct SVD route") {
  RandomSource rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 1 + trial % 9, cols = 1 + (trial / 3) % 9;
    CMat a = rng.complex_normal_matrix(rows, cols);
    if (trial % 7 == 0) a *= 1e-9;  // small scales must not lose accuracy
    Eigen::JacobiSVD<CMat> svd(a);
    double reference = svd.singularValues()(0);
    CHECK(spectral_norm(a) == doctest::Approx(reference).epsilon(1e-12));
  }
  CHECK(spectral_norm(CMat::Zero(3, 3)) == 0.0);
}

TEST_CASE("adaptive RK45 against closed-form solutions") {
  // Scalar growth.
  auto growth = [](double, const RVec& y) { return RVec(y); };
  RVec y0(1);
  y0(0) = 1.0;
  RVec y1 = integrate_rk45<RVec>(growth, 0.0, 1.0, y0);
  CHECK(std::abs(y1(0) - std::numbers::e) < 1e-10);

  // Harmonic oscillator over several periods, forward and backward.
  auto oscillator = [](double, const RVec& y) {
    RVec dy(2);
    dy(0) = y(1);
    dy(1) = -y(0);
    return dy;
  };
  RVec c0(2);
  c0 << 1.0, 0.0;
  double span = 4.0 * std::numbers::pi;
  RVec forward = integrate_rk45<RVec>(oscillator, 0.0, span, c0);
  CHECK(std::abs(forward(0) - 1.0) < 1e-8);
  CHECK(std::abs(forward(1)) < 1e-8);
  RVec back = integrate_rk45<RVec>(oscillator, span, 0.0, forward);
  CHECK(std::abs(back(0) - 1.0) < 1e-8);

  // Complex state: y' = i y.
  auto rotate = [](double, const CVec& y) { return CVec(Complex(0, 1) * y); };
  CVec z0(1);
  z0(0) = Complex(1, 0);
  CVec z1 = integrate_rk45<CVec>(rotate, 0.0, std::numbers::pi, z0);
  CHECK(std::abs(z1(0) - Complex(-1, 0)) < 1e-10);

  // Observer sees monotone abscissas from start to finish.
  double last = -1.0;
  int calls = 0;
  integrate_rk45<RVec>(
      growth, 0.0, 1.0, y0, {},
      [&](double x, const RVec&) {
        CHECK(x > last - 1e-15);
        last = x;
        ++calls;
      });
  CHECK(calls > 2);
  CHECK(last == 1.0);

  // Zero-length interval is a no-op.
  RVec same = integrate_rk45<RVec>(growth, 0.5, 0.5, y0);
  CHECK(same(0) == y0(0));
}

TEST_CASE("Gauss-Legendre rules integrate their degree exactly") {
  for (int n : {1, 2, 3, 5, 8, 13}) {
    QuadratureRule rule = gauss_legendre(n);
    REQUIRE(static_cast<int>(rule.nodes.size()) == n);
    // x^p on [0,1] for p up to 2n-1.
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], p);
      CHECK(std::abs(acc - 1.0 / (p + 1)) < 1e-14);
    }
    // And x^{2n} must not be exact (the rule is sharp).
    double over = 0.0;
    for (int i = 0; i < n; ++i) over += rule.weights[i] * std::pow(rule.nodes[i], 2 * n);
    CHECK(std::abs(over - 1.0 / (2 * n + 1)) > 1e-16);
  }
}

TEST_CASE("matrix polynomial algebra") {
  RandomSource rng(64);
  auto random_poly = [&](int deg) {
    std::vector<CMat> c;
    for (int p = 0; p <= deg; ++p) c.push_back(rng.complex_normal_matrix(2, 2));
    return MatPoly(std::move(c));
  };
  MatPoly f = random_poly(3);
  MatPoly g = random_poly(2);

  // Product rule (fg)' = f'g + fg', evaluated pointwise.
  MatPoly lhs = (f * g).derivative();
  MatPoly rhs = f.derivative() * g + f * g.derivative();
  for (double x : {0.0, 0.3, 0.9}) {
    CHECK((lhs.eval(x) - rhs.eval(x)).cwiseAbs().maxCoeff() < 1e-13);
  }

  // Adjoint is an involution and reverses products.
  MatPoly back = f.conjugate_transpose().conjugate_transpose();
  CHECK((back.eval(0.4) - f.eval(0.4)).cwiseAbs().maxCoeff() == 0.0);
  MatPoly prod_adj = (f * g).conjugate_transpose();
  MatPoly adj_prod = g.conjugate_transpose() * f.conjugate_transpose();
  CHECK((prod_adj.eval(0.7) - adj_prod.eval(0.7)).cwiseAbs().maxCoeff() < 1e-13);

  // Degree bookkeeping: the zero polynomial reports -1.
  CHECK(MatPoly(2, 2).degree() == -1);
  CHECK(f.degree() == 3);
  CHECK((f * g).degree() == 5);

  // L2 inner product against a hand integral:
  // ∫ x·x̄ dx over [0,1] with p = q = (x, 0)ᵀ is 1/3.
  std::vector<CMat> col = {CMat::Zero(2, 1), CMat::Zero(2, 1)};
  col[1](0, 0) = Complex(1, 0);
  MatPoly linear(col);
  CHECK(std::abs(l2_inner_product(linear, linear) - Complex(1.0 / 3, 0)) < 1e-15);
}
