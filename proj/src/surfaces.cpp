#include "laxlab/surfaces.hpp"

#include <cmath>

namespace laxlab {

BranchData branch_points(const LaxConfig& config) {
  const Complex a = config.a, A = config.A, B = config.B;
  if (std::abs(B) < 1e-14)
    throw DegenerateCurve("B = 0: the x-curve branch points collide");
  const Complex disc = A * A - 4.0 * a * a * B;
  if (std::abs(disc) < 1e-12 * std::max(1.0, std::norm(A)))
    throw DegenerateCurve("A^2 = 4 a^2 B: the lambda-curve degenerates (k1 = 0)");

  BranchData b;
  const Complex sqrtB = std::sqrt(B);
  b.x1 = std::sqrt(A + 2.0 * a * sqrtB);
  b.x2 = std::sqrt(A - 2.0 * a * sqrtB);
  if (std::abs(b.x1 + b.x2) < 1e-12)
    throw DegenerateCurve("k = -1: x1 + x2 = 0");
  b.k = b.x1 / b.x2;
  b.lambda1 = (b.x2 - b.x1) / (2.0 * a);
  b.lambda2 = (b.x1 + b.x2) / (2.0 * a);
  b.k1 = (1.0 - b.k) / (1.0 + b.k);

  const Complex q_disc = std::sqrt(config.x0 * config.x0 - 4.0 * a * config.y0);
  b.lhat1 = (-config.x0 + q_disc) / (2.0 * a);
  b.lhat2 = (-config.x0 - q_disc) / (2.0 * a);

  // Realized sheet sign of mu at the first q1 zero, by continuation from
  // the base point (0, +1) on the normalized lambda-curve.
  const Complex k1sq = b.k1 * b.k1;
  const Complex e1 = b.lhat1 / b.lambda1;
  const Complex mu_ref = config.z0 / (a * b.lambda1 * b.lambda2);
  if (std::abs(mu_ref) > 1e-14) {
    std::vector<Complex> hint;
    // Dip around any branch point close to the straight segment.
    const double d = 0.25 * std::max(1.0, std::abs(e1));
    for (Complex bp : {Complex(1.0), Complex(-1.0), 1.0 / b.k1, -1.0 / b.k1}) {
      const Complex pr = bp / e1;
      if (pr.real() > 0.02 && pr.real() < 0.98 && std::abs(pr.imag()) * std::abs(e1) < 0.05) {
        hint = detour_hint(e1, d);
        break;
      }
    }
    const AbelResult r = abel_u(e1, k1sq, hint);
    b.mu_hat_sign =
        std::abs(r.w_end - mu_ref) <= std::abs(r.w_end + mu_ref) ? 1 : -1;
  }
  return b;
}

std::array<Complex, 3> spectral_curve(const LaxConfig& config) {
  return {config.a * config.a, -config.A, config.B};
}

double spectral_curve_residual(const LaxConfig& config, Complex lambda) {
  const LaurentMatrixPoly L0 = build_L0(config);
  const Eigen::MatrixXcd M = L0.eval(lambda);
  // mu = lambda * nu with det(nu I - M) = nu^2 - (-det M): mu^2 = -l^2 det M.
  const Complex det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  const Complex mu_sq = -lambda * lambda * det;
  const auto [c4, c2, c0] = spectral_curve(config);
  const Complex p1 = c4 * std::pow(lambda, 4) + c2 * lambda * lambda + c0;
  return std::abs(mu_sq - p1);
}

double curve_residual(const CurvePoint& p, Complex ksq) {
  return std::abs(p.w * p.w - (1.0 - p.x * p.x) * (1.0 - ksq * p.x * p.x));
}

CurvePoint phi_map(const CurvePoint& p, Complex k) {
  if (p.curve != CurveTag::Sigma)
    throw ConfigError("phi_map expects a point on Sigma");
  if (p.w == Complex(0.0))
    throw BranchPointInput("phi_map needs w != 0; images of branch points are limits");
  const Complex lambda = I * (1.0 + k) * p.x / p.w;
  const Complex mu = (k * k * std::pow(p.x, 4) - 1.0) / (p.w * p.w);
  return {CurveTag::Sigma1, lambda, mu};
}

double pullback_residual(const CurvePoint& p, Complex k, double step) {
  const Complex ksq = k * k;
  for (Complex bp : {Complex(1.0), Complex(-1.0), 1.0 / k, -1.0 / k})
    if (std::abs(p.x - bp) < 10.0 * step)
      throw BranchPointInput("point too close to a branch point of Sigma");

  auto lift = [&](Complex x) {
    CurvePoint q{CurveTag::Sigma, x, 0.0};
    Complex w = std::sqrt((1.0 - x * x) * (1.0 - ksq * x * x));
    if (std::abs(w - p.w) > std::abs(w + p.w)) w = -w;
    q.w = w;
    return q;
  };

  const CurvePoint q0 = phi_map(p, k);
  const CurvePoint qp = phi_map(lift(p.x + step), k);
  const CurvePoint qm = phi_map(lift(p.x - step), k);
  // Derivative of lambda along the local parameter x, against the form value.
  const Complex dlambda_dx = (qp.x - qm.x) / (2.0 * step);
  const Complex lhs = dlambda_dx / q0.w;
  const Complex rhs = -I * (1.0 + k) / p.w;
  return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace laxlab
