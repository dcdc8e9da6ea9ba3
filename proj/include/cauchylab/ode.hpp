#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace cauchylab {

struct OdeOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  double safety = 0.9;
  double initial_step = 0.0;  // 0 → derived from the interval
  long max_steps = 4'000'000;
};

/// Adaptive embedded Runge–Kutta (Dormand–Prince 5(4)).
/// State is any Eigen vector type; the observer, when given, sees every
/// accepted step including the initial point.
template <typename State>
State integrate_rk45(const std::function<State(double, const State&)>& f,
                     double x0, double x1, State y,
                     const OdeOptions& opt = {},
                     const std::function<void(double, const State&)>& observer = {}) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (x1 == x0) {
    if (observer) observer(x0, y);
    return y;
  }
  double direction = (x1 > x0) ? 1.0 : -1.0;
  double span = std::abs(x1 - x0);
  double h = opt.initial_step > 0.0 ? opt.initial_step : span / 100.0;
  h = std::min(h, span);
  double x = x0;
  if (observer) observer(x, y);

  State k1 = f(x, y);
  for (long step = 0; step < opt.max_steps; ++step) {
    double remaining = std::abs(x1 - x);
    if (remaining <= 0.0) return y;
    bool final_step = h >= remaining;
    double hs = final_step ? (x1 - x) : direction * h;

    State k2 = f(x + c2 * hs, y + hs * (a21 * k1));
    State k3 = f(x + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
    State k4 = f(x + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    State k5 = f(x + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    State k6 = f(x + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    State ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State k7 = f(x + hs, ynew);
    State errv = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      double scale = opt.abs_tol +
          opt.rel_tol * std::max(std::abs(y(i)), std::abs(ynew(i)));
      err = std::max(err, std::abs(errv(i)) / scale);
    }

    if (err <= 1.0) {
      x = final_step ? x1 : x + hs;
      y = std::move(ynew);
      k1 = std::move(k7);  // FSAL
      if (observer) observer(x, y);
      if (final_step) return y;
      double grow = err > 0.0 ? opt.safety * std::pow(err, -0.2) : 5.0;
      h *= std::min(5.0, std::max(0.2, grow));
    } else {
      double shrink = opt.safety * std::pow(err, -0.2);
      h *= std::max(0.2, shrink);
      if (h < 1e-15 * span)
        throw std::runtime_error("integrate_rk45: step size underflow");
    }
  }
  throw std::runtime_error("integrate_rk45: step budget exhausted");
}

} // namespace cauchylab
