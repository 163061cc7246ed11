#pragma once

// Independent oracle implementations used only by the tests. These
// deliberately avoid the library's computational paths: quadrature instead
// of Carlson reduction, Taylor recurrences instead of the RK integrator,
// theta quotients instead of the Landen recursion, and the traceless 2x2
// closed form instead of the Pade exponential.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracles {

using C = std::complex<double>;
inline constexpr C I{0.0, 1.0};

// --- adaptive Simpson quadrature over a real parameter -----------------------

inline C simpson_leaf(const std::function<C(double)>& f, double a, double b,
                      C fa, C fm, C fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline C adaptive_simpson(const std::function<C(double)>& f, double a, double b,
                          double tol = 1e-13, int depth = 28) {
  struct Rec {
    const std::function<C(double)>& f;
    double tol;
    C run(double a, double b, C fa, C fm, C fb, C whole, int depth) {
      const double m = 0.5 * (a + b);
      const C flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
      const C left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const C right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return run(a, m, fa, flm, fm, left, depth - 1) +
             run(m, b, fm, frm, fb, right, depth - 1);
    }
  };
  const C fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  Rec rec{f, tol};
  return rec.run(a, b, fa, fm, fb, simpson_leaf(f, a, b, fa, fm, fb), depth);
}

// K(ksq) as the defining integral, via x = sin(theta).
inline C complete_K_quadrature(C ksq, double tol = 1e-13) {
  return adaptive_simpson(
      [ksq](double th) {
        const double s = std::sin(th);
        return 1.0 / std::sqrt(C(1.0) - ksq * s * s);
      },
      0.0, std::numbers::pi / 2.0, tol);
}

// K'(ksq) for real ksq in (0,1) as the integral from 1 to 1/k of dx/w,
// via x(phi) = sqrt(1 + (1/ksq - 1) sin^2(phi)); the integrand becomes
// 1/(k x(phi)).
inline double complete_Kprime_branch_quadrature(double ksq, double tol = 1e-13) {
  const double k = std::sqrt(ksq);
  const C v = adaptive_simpson(
      [ksq, k](double phi) {
        const double s = std::sin(phi);
        const double x = std::sqrt(1.0 + (1.0 / ksq - 1.0) * s * s);
        return C(1.0 / (k * x));
      },
      0.0, std::numbers::pi / 2.0, tol);
  return v.real();
}

// --- Taylor-series integrator for the cubic system --------------------------

struct TaylorCoeffs {
  std::vector<C> x, y, z;
};

inline TaylorCoeffs taylor_coeffs(C a, C x0, C y0, C z0, int degree) {
  TaylorCoeffs c;
  c.x = {x0};
  c.y = {y0};
  c.z = {z0};
  for (int n = 0; n < degree; ++n) {
    C cy = 0, cz = 0;
    for (int j = 0; j <= n; ++j) {
      cy += c.x[j] * c.z[n - j];
      cz += c.x[j] * c.y[n - j];
    }
    c.x.push_back(-2.0 * a * c.z[n] / double(n + 1));
    c.y.push_back(-2.0 * cy / double(n + 1));
    c.z.push_back(2.0 * cz / double(n + 1));
  }
  return c;
}

inline std::array<C, 3> taylor_eval(const TaylorCoeffs& c, C h) {
  std::array<C, 3> out{0.0, 0.0, 0.0};
  C p = 1.0;
  for (size_t j = 0; j < c.x.size(); ++j) {
    out[0] += c.x[j] * p;
    out[1] += c.y[j] * p;
    out[2] += c.z[j] * p;
    p *= h;
  }
  return out;
}

// Integrates to t_end along the straight ray from 0 with fixed small Taylor
// steps; degree 20 with |h| <= 0.05 keeps the local error near roundoff.
inline std::array<C, 3> taylor_integrate(C a, C x0, C y0, C z0, C t_end,
                                         int steps = 0, int degree = 20) {
  if (steps == 0) steps = std::max(16, int(std::abs(t_end) / 0.04) + 1);
  std::array<C, 3> s{x0, y0, z0};
  const C h = t_end / double(steps);
  for (int i = 0; i < steps; ++i)
    s = taylor_eval(taylor_coeffs(a, s[0], s[1], s[2], degree), h);
  return s;
}

// --- theta-function route to sn ---------------------------------------------

inline C theta_series(int which, C v, C q, int terms = 64) {
  // which in {1,2,3,4}, conventions with quasi-periods pi and pi*tau.
  C sum = 0.0;
  switch (which) {
    case 1:
      for (int n = 0; n < terms; ++n)
        sum += (n % 2 ? -1.0 : 1.0) * std::pow(q, (n + 0.5) * (n + 0.5)) *
               std::sin((2.0 * n + 1.0) * v);
      return 2.0 * sum;
    case 2:
      for (int n = 0; n < terms; ++n)
        sum += std::pow(q, (n + 0.5) * (n + 0.5)) * std::cos((2.0 * n + 1.0) * v);
      return 2.0 * sum;
    case 3:
      sum = 1.0;
      for (int n = 1; n < terms; ++n)
        sum += 2.0 * std::pow(q, double(n) * n) * std::cos(2.0 * n * v);
      return sum;
    default:
      sum = 1.0;
      for (int n = 1; n < terms; ++n)
        sum += 2.0 * (n % 2 ? -1.0 : 1.0) * std::pow(q, double(n) * n) *
               std::cos(2.0 * n * v);
      return sum;
  }
}

// sn(u | ksq) = theta3(0) theta1(v) / (theta2(0) theta4(v)), v = pi u / (2K),
// with K and K' supplied by the caller (the tests feed quadrature values).
inline C sn_from_theta(C u, C K, C Kprime) {
  const C tau = I * Kprime / K;
  const C q = std::exp(I * std::numbers::pi * tau);
  const C v = std::numbers::pi * u / (2.0 * K);
  return theta_series(3, 0.0, q) * theta_series(1, v, q) /
         (theta_series(2, 0.0, q) * theta_series(4, v, q));
}

// --- closed-form exponential for traceless 2x2 ------------------------------

template <class Mat2>
inline Mat2 expm_traceless2(const Mat2& M) {
  const C det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  const C s = std::sqrt(-det);
  C ch, shc;
  if (std::abs(s) < 1e-6) {
    const C s2 = s * s;
    ch = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
    shc = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
  } else {
    ch = std::cosh(s);
    shc = std::sinh(s) / s;
  }
  Mat2 out = shc * M;
  out(0, 0) += ch;
  out(1, 1) += ch;
  return out;
}

// --- random real-positive configurations ------------------------------------

struct SimpleConfig {
  double a, x0, y0, z0;
};

// Real positive data in the regime A > 2 a sqrt(B) > 0 (both curves have
// real branch points, k > 1).
inline SimpleConfig random_real_config(std::mt19937& rng) {
  std::uniform_real_distribution<double> ua(0.5, 1.8), ux(2.2, 4.5),
      uy(0.3, 1.4), uz(0.3, 1.4);
  for (;;) {
    const SimpleConfig c{ua(rng), ux(rng), uy(rng), uz(rng)};
    const double A = c.x0 * c.x0 - 2.0 * c.a * c.y0;
    const double B = c.y0 * c.y0 + c.z0 * c.z0;
    if (A > 2.0 * c.a * std::sqrt(B) + 0.5) return c;
  }
}

}  // namespace oracles
