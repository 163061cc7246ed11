#pragma once

#include <array>

#include "laxlab/elliptic.hpp"
#include "laxlab/lax_config.hpp"

namespace laxlab {

/// Branch data of the two curves attached to a configuration:
///   Sigma:   w^2  = (1 - x^2)(1 - k^2 x^2),      k  = x1/x2,
///   Sigma1:  mu^2 = (1 - l^2)(1 - k1^2 l^2),     k1 = lambda1/lambda2,
/// with x1^2 = A + 2a sqrt(B), x2^2 = A - 2a sqrt(B) (principal roots),
/// lambda1 = (x2 - x1)/(2a), lambda2 = (x1 + x2)/(2a), and lhat1, lhat2 the
/// roots of a l^2 + x0 l + y0.
struct BranchData {
  Complex x1, x2;
  Complex lambda1, lambda2;
  Complex k, k1;
  Complex lhat1, lhat2;
  /// Sign s such that the continuation of mu from mu(0) = +1 along the
  /// default path to lhat1/lambda1 ends at s * z0/(a lambda1 lambda2).
  int mu_hat_sign = 0;
};

BranchData branch_points(const LaxConfig& config);

/// Nonzero coefficients (a^2, -A, B) of the quartic mu^2 = p1(lambda).
std::array<Complex, 3> spectral_curve(const LaxConfig& config);

/// |mu^2 - p1(lambda)| where mu^2 is read off the characteristic polynomial
/// of L0(lambda) (an independent route used for verification).
double spectral_curve_residual(const LaxConfig& config, Complex lambda);

enum class CurveTag { Sigma, Sigma1 };

struct CurvePoint {
  CurveTag curve;
  Complex x;  // x on Sigma, lambda on Sigma1
  Complex w;  // w on Sigma, mu on Sigma1
};

/// |w^2 - (1 - x^2)(1 - ksq x^2)| for the given curve modulus squared.
double curve_residual(const CurvePoint& p, Complex ksq);

/// The 2:1 holomorphic map Sigma -> Sigma1,
/// (x, w) -> (i (1+k) x / w, (k^2 x^4 - 1) / w^2).
CurvePoint phi_map(const CurvePoint& p, Complex k);

/// Relative residual of the form identity pullback(dl/mu) = -i (1+k) dx/w,
/// measured by central differences of phi along the local parameter x.
double pullback_residual(const CurvePoint& p, Complex k, double step = 1e-5);

}  // namespace laxlab
