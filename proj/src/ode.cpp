#include "laxlab/ode.hpp"

#include <algorithm>
#include <cmath>

namespace laxlab {

void PathSpec::validate() const {
  if (vertices.empty()) throw ConfigError("path needs at least one vertex");
  for (size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i] == vertices[i - 1])
      throw ConfigError("consecutive path vertices must be distinct");
  if (!(max_step > 0)) throw ConfigError("path max_step must be positive");
  if (!(tol > 0)) throw ConfigError("path tol must be positive");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Error weights (5th order minus embedded 4th order).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double max_abs(const Eigen::VectorXcd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

void rk_segment(const OdeRhs& rhs, Complex t0, Complex t1, Eigen::VectorXcd& y,
                const StepControl& control, const OdeObserver& observer) {
  const Complex dir = t1 - t0;
  const double len = std::abs(dir);
  if (len == 0.0) return;

  // Parametrize by arc length s in [0, len]; dy/ds = (dir/len) f(t(s), y).
  const Complex scale = dir / len;
  double s = 0.0;
  double h = std::min(control.max_step, len);
  const double hmin = control.min_step_factor * len;

  Eigen::VectorXcd k1 = scale * rhs(t0, y);
  while (s < len) {
    h = std::min(h, len - s);
    const Complex ts = t0 + scale * s;
    Eigen::VectorXcd y2 = y + h * (a21 * k1);
    Eigen::VectorXcd k2 = scale * rhs(ts + scale * (c2 * h), y2);
    Eigen::VectorXcd y3 = y + h * (a31 * k1 + a32 * k2);
    Eigen::VectorXcd k3 = scale * rhs(ts + scale * (c3 * h), y3);
    Eigen::VectorXcd y4 = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    Eigen::VectorXcd k4 = scale * rhs(ts + scale * (c4 * h), y4);
    Eigen::VectorXcd y5 = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    Eigen::VectorXcd k5 = scale * rhs(ts + scale * (c5 * h), y5);
    Eigen::VectorXcd y6 = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    Eigen::VectorXcd k6 = scale * rhs(ts + scale * h, y6);
    Eigen::VectorXcd ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Eigen::VectorXcd k7 = scale * rhs(ts + scale * h, ynew);

    Eigen::VectorXcd errv =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc = std::max(1.0, std::max(max_abs(y), max_abs(ynew)));
    const double err = max_abs(errv) / (control.tol * sc);

    if (err <= 1.0) {
      s += h;
      y = std::move(ynew);
      k1 = std::move(k7);  // FSAL
      const double norm = max_abs(y);
      if (norm > control.blowup_threshold)
        throw BlowUpError(t0 + scale * s, "state norm exceeded blow-up threshold");
      if (observer) observer(t0 + scale * s, y);
      if (!y.allFinite())
        throw BlowUpError(t0 + scale * s, "state became non-finite");
      h *= std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
      h = std::min(h, control.max_step);
    } else {
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
    }
    if (h < hmin)
      throw StepCollapse("adaptive step underflowed without norm growth");
  }
}

void rk_path(const OdeRhs& rhs, const PathSpec& path, Eigen::VectorXcd& y,
             const StepControl& control, const OdeObserver& observer) {
  path.validate();
  for (size_t i = 1; i < path.vertices.size(); ++i)
    rk_segment(rhs, path.vertices[i - 1], path.vertices[i], y, control, observer);
}

}  // namespace laxlab
