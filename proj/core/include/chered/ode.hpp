#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>

namespace chered {

struct OdeResult {
  Eigen::MatrixXcd state;
  long steps = 0;
  long rejected = 0;
  double err_estimate = 0;  // accumulated local error estimates
};

/// Adaptive Dormand-Prince 5(4) for matrix-valued ODEs dF/dt = rhs(t, F)
/// on t in [0, 1].
inline OdeResult integrate_dopri5_rhs(
    const std::function<Eigen::MatrixXcd(double, const Eigen::MatrixXcd&)>& deriv_fn,
    Eigen::MatrixXcd f0, double rtol, double atol = 1e-14) {
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

  OdeResult out;
  out.state = std::move(f0);
  double t = 0, h = 0.05;
  const auto& deriv = deriv_fn;
  while (t < 1.0) {
    if (t + h > 1.0) h = 1.0 - t;
    Eigen::MatrixXcd k1 = deriv(t, out.state);
    Eigen::MatrixXcd k2 = deriv(t + c2 * h, out.state + h * a21 * k1);
    Eigen::MatrixXcd k3 = deriv(t + c3 * h, out.state + h * (a31 * k1 + a32 * k2));
    Eigen::MatrixXcd k4 =
        deriv(t + c4 * h, out.state + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Eigen::MatrixXcd k5 = deriv(
        t + c5 * h, out.state + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Eigen::MatrixXcd y6 =
        out.state + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    Eigen::MatrixXcd k6 = deriv(t + h, y6);
    Eigen::MatrixXcd y5 =
        out.state + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Eigen::MatrixXcd k7 = deriv(t + h, y5);
    Eigen::MatrixXcd err_mat =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double scale = atol + rtol * std::max(out.state.norm(), y5.norm());
    double err = err_mat.norm() / scale;
    if (err <= 1.0) {
      t += h;
      out.state = y5;
      out.steps++;
      out.err_estimate += err_mat.norm();
    } else {
      out.rejected++;
    }
    double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h *= std::min(5.0, std::max(0.2, factor));
    if (h < 1e-14) throw std::runtime_error("ODE step size underflow");
  }
  return out;
}

/// Linear left-multiplication case dF/dt = A(t) F.
inline OdeResult integrate_dopri5(
    const std::function<Eigen::MatrixXcd(double)>& rhs_coeff,
    Eigen::MatrixXcd f0, double rtol, double atol = 1e-14) {
  return integrate_dopri5_rhs(
      [&](double t, const Eigen::MatrixXcd& f) -> Eigen::MatrixXcd {
        return rhs_coeff(t) * f;
      },
      std::move(f0), rtol, atol);
}

}  // namespace chered
