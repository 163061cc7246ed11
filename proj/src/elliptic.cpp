#include "laxlab/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace laxlab {

Complex carlson_rf(Complex x, Complex y, Complex z) {
  // Duplication until the arguments coalesce, then the degree-5 series.
  Complex mu;
  for (int it = 0; it < 200; ++it) {
    const Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const Complex lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    mu = (x + y + z) / 3.0;
    const double spread = std::max({std::abs(x - mu), std::abs(y - mu), std::abs(z - mu)});
    if (spread < 1e-12 * std::abs(mu)) break;
  }
  const Complex X = 1.0 - x / mu, Y = 1.0 - y / mu, Z = 1.0 - z / mu;
  const Complex E2 = X * Y + Y * Z + Z * X;
  const Complex E3 = X * Y * Z;
  return (1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 - 3.0 * E2 * E3 / 44.0) /
         std::sqrt(mu);
}

Complex complete_K(Complex ksq) {
  if (ksq == Complex(1.0)) throw DegenerateModulus("K diverges at ksq = 1");
  return carlson_rf(0.0, 1.0 - ksq, 1.0);
}

Complex complete_Kprime(Complex ksq) {
  if (ksq == Complex(0.0)) throw DegenerateModulus("K' diverges at ksq = 0");
  return complete_K(1.0 - ksq);
}

Modulus Modulus::from_ksq(Complex ksq) {
  if (ksq == Complex(0.0) || ksq == Complex(1.0))
    throw DegenerateModulus("modulus data needs ksq outside {0, 1}");
  Modulus m;
  m.ksq = ksq;
  m.K = complete_K(ksq);
  m.Kprime = complete_Kprime(ksq);
  m.tau = I * m.Kprime / m.K;
  m.q = std::exp(I * std::numbers::pi * m.tau);
  if (!(std::abs(m.q) < 1.0))
    throw NomeOutOfRange("derived nome has |q| >= 1");
  return m;
}

Complex theta1_terms(Complex u, Complex q, int max_terms) {
  if (!(std::abs(q) < 1.0)) throw NomeOutOfRange("theta1 needs |q| < 1");
  Complex sum = 0.0;
  double running_max = 1.0;
  for (int n = 0; n < max_terms; ++n) {
    const double e = (n + 0.5) * (n + 0.5);
    const Complex term =
        (n % 2 == 0 ? 1.0 : -1.0) * std::pow(q, e) * std::sin((2.0 * n + 1.0) * u);
    sum += term;
    running_max = std::max(running_max, std::abs(sum));
    if (std::abs(term) < 1e-18 * running_max) break;
  }
  return 2.0 * sum;
}

Complex theta1(Complex u, Complex q) { return theta1_terms(u, q, 256); }

Jacobi jacobi_sncndn(Complex u, Complex ksq) {
  // Descending Landen: k_{i+1} = (1 - k'_i)/(1 + k'_i), u scales by
  // prod 1/(1 + k_i); closure by trig at the bottom, then the ascent
  //   sn -> (1+k1) s / (1 + k1 s^2),  cn -> c d / (1 + k1 s^2),
  //   dn -> (1 - k1 s^2) / (1 + k1 s^2).
  constexpr int kMaxLevels = 12;
  std::array<Complex, kMaxLevels + 1> ks;
  ks[0] = std::sqrt(ksq);
  int levels = 0;
  while (std::abs(ks[levels]) > 1e-12) {
    if (levels == kMaxLevels)
      throw DegenerateModulus("Landen recursion did not converge (ksq near 1)");
    const Complex kp = std::sqrt(1.0 - ks[levels] * ks[levels]);
    ks[levels + 1] = (1.0 - kp) / (1.0 + kp);
    ++levels;
  }
  Complex un = u;
  for (int i = 1; i <= levels; ++i) un /= (1.0 + ks[i]);

  Complex s = std::sin(un), c = std::cos(un), d = 1.0;
  const Complex kb = ks[levels];
  if (kb != Complex(0.0)) {
    const Complex corr = kb * kb / 4.0;
    const Complex w = un - s * c;
    s -= corr * w * c;
    c += corr * w * s;
    d = 1.0 - 2.0 * corr * s * s;
  }
  for (int i = levels; i >= 1; --i) {
    const Complex k1 = ks[i];
    const Complex den = 1.0 + k1 * s * s;
    const Complex sn = (1.0 + k1) * s / den;
    const Complex cn = c * d / den;
    const Complex dn = (1.0 - k1 * s * s) / den;
    s = sn;
    c = cn;
    d = dn;
  }
  return {s, c, d};
}

Complex jacobi_sn(Complex u, Complex ksq) { return jacobi_sncndn(u, ksq).sn; }
Complex jacobi_cn(Complex u, Complex ksq) { return jacobi_sncndn(u, ksq).cn; }
Complex jacobi_dn(Complex u, Complex ksq) { return jacobi_sncndn(u, ksq).dn; }

Complex AbelValue::reduce(Complex z) const {
  // Solve z = alpha omega1 + beta omega2 over the reals, strip integer parts.
  const double a1 = omega1.real(), b1 = omega1.imag();
  const double a2 = omega2.real(), b2 = omega2.imag();
  const double det = a1 * b2 - b1 * a2;
  if (std::abs(det) < 1e-300) return z;
  double alpha = (z.real() * b2 - z.imag() * a2) / det;
  double beta = (a1 * z.imag() - b1 * z.real()) / det;
  alpha -= std::round(alpha);
  beta -= std::round(beta);
  return alpha * omega1 + beta * omega2;
}

Complex AbelValue::diff_mod(const AbelValue& other) const {
  return reduce(u - other.u);
}

bool AbelValue::congruent(const AbelValue& other, double tol) const {
  return std::abs(diff_mod(other)) < tol;
}

// ---------------------------------------------------------------------------
// Abel integrals with sheet tracking.
// ---------------------------------------------------------------------------

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNodes[8] = {0.0950125098376374, 0.2816035507792589,
                                0.4580167776572274, 0.6178762444026438,
                                0.7554044083550030, 0.8656312023878318,
                                0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeights[8] = {0.1894506104550685, 0.1826034150449236,
                                  0.1691565193950025, 0.1495959888165767,
                                  0.1246289712555339, 0.0951585116824928,
                                  0.0622535239386479, 0.0271524594117541};

struct CurveW {
  Complex ksq;
  Complex w_sq(Complex x) const { return (1.0 - x * x) * (1.0 - ksq * x * x); }
  // Square root of w_sq(x) on the sheet continuous with w_ref.
  Complex w_cont(Complex x, Complex w_ref) const {
    Complex w = std::sqrt(w_sq(x));
    if (std::abs(w - w_ref) > std::abs(w + w_ref)) w = -w;
    return w;
  }
  std::array<Complex, 4> branch_points() const {
    const Complex inv_k = 1.0 / std::sqrt(ksq);
    return {Complex(1.0), Complex(-1.0), inv_k, -inv_k};
  }
};

struct SegmentQuad {
  const CurveW& curve;
  double branch_tol;
  double quad_tol;

  void check_branch_distance(Complex x) const {
    for (Complex b : curve.branch_points())
      if (std::abs(x - b) < branch_tol)
        throw PathThroughBranchPoint("integration path passes through a branch point");
  }

  // Gauss-Legendre on [xa, xb] with the sheet linearly interpolated between
  // the tracked endpoint values; also returns the value of w at xb.
  Complex leaf(Complex xa, Complex xb, Complex wa, Complex* wb_out) const {
    const Complex mid = 0.5 * (xa + xb);
    const Complex half = 0.5 * (xb - xa);
    const Complex wb = curve.w_cont(xb, wa);
    Complex sum = 0.0;
    for (int i = 0; i < 8; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        const Complex x = mid + sgn * kGlNodes[i] * half;
        check_branch_distance(x);
        const double frac = 0.5 * (1.0 + sgn * kGlNodes[i]);
        const Complex w_ref = wa + (wb - wa) * frac;
        sum += kGlWeights[i] / curve.w_cont(x, w_ref);
      }
    }
    *wb_out = wb;
    return sum * half;
  }

  // Adaptive bisection; wa is the tracked sheet at xa. Subdivides until the
  // two-half refinement agrees and the sheet rotation per leaf is modest.
  Complex integrate(Complex xa, Complex xb, Complex wa, Complex* wb_out,
                    int depth = 0) const {
    Complex wb_coarse;
    const Complex coarse = leaf(xa, xb, wa, &wb_coarse);
    const Complex mid = 0.5 * (xa + xb);
    Complex wm;
    const Complex left = leaf(xa, mid, wa, &wm);
    Complex wb_fine;
    const Complex right = leaf(mid, xb, wm, &wb_fine);
    const Complex fine = left + right;
    // Sheet tracking needs leaves on which w barely rotates; the two-half
    // refinement must also agree in value and in the endpoint sheet.
    const double rotation =
        (std::abs(wm - wa) + std::abs(wb_fine - wm)) / (std::abs(wa) + 1e-300);
    if (depth >= 42)
      throw PathThroughBranchPoint("Abel quadrature failed to converge");
    if (rotation < 1.2 &&
        std::abs(fine - coarse) <= quad_tol * std::max(1.0, std::abs(fine)) &&
        std::abs(wb_fine - wb_coarse) < 1e-9 * (std::abs(wb_fine) + 1.0)) {
      *wb_out = wb_fine;
      return fine;
    }
    Complex w_after_left;
    const Complex l = integrate(xa, mid, wa, &w_after_left, depth + 1);
    const Complex r = integrate(mid, xb, w_after_left, wb_out, depth + 1);
    return l + r;
  }
};

}  // namespace

std::vector<Complex> detour_hint(Complex xtilde, double depth, bool below) {
  const Complex bump = (below ? -I : I) * depth;
  return {bump, xtilde + bump};
}

AbelResult abel_u(Complex xtilde, Complex ksq, const std::vector<Complex>& path_hint,
                  double branch_tol, double quad_tol) {
  const CurveW curve{ksq};
  SegmentQuad quad{curve, branch_tol, quad_tol};

  std::vector<Complex> vertices;
  vertices.push_back(0.0);
  for (Complex v : path_hint) vertices.push_back(v);
  vertices.push_back(xtilde);

  Complex u = 0.0;
  Complex w = 1.0;  // sheet convention w(0) = +1
  for (size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i] == vertices[i - 1]) continue;
    Complex w_next;
    u += quad.integrate(vertices[i - 1], vertices[i], w, &w_next);
    w = w_next;
  }

  const Complex K = complete_K(ksq);
  const Complex Kp = complete_Kprime(ksq);
  return {AbelValue{u, 4.0 * K, 2.0 * I * Kp}, w};
}

AbelResult abel_to_point(Complex xtilde, Complex w_target, Complex ksq,
                         const std::vector<Complex>& path_hint, double quad_tol) {
  AbelResult r = abel_u(xtilde, ksq, path_hint, 1e-9, quad_tol);
  if (std::abs(r.w_end - w_target) > std::abs(r.w_end + w_target)) {
    // Opposite sheet: the point (x, -w) has Abel value 2K - u.
    r.value.u = 0.5 * r.value.omega1 - r.value.u;
    r.w_end = -r.w_end;
  }
  const double scale = std::max(1.0, std::abs(w_target));
  if (std::abs(r.w_end - w_target) > 1e-6 * scale)
    throw BranchPointInput("endpoint does not lie on the curve near w_target");
  return r;
}

}  // namespace laxlab
