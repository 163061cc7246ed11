#pragma once

#include <vector>

#include "laxlab/errors.hpp"
#include "laxlab/types.hpp"

namespace laxlab {

/// Carlson symmetric integral R_F(x, y, z) with principal square roots.
Complex carlson_rf(Complex x, Complex y, Complex z);

/// Complete elliptic integral of the first kind as a function of ksq = k^2,
/// K = R_F(0, 1 - ksq, 1). Valid for complex ksq away from 1, including
/// |k| > 1 (the value is then the principal branch, with Im K = -K' for
/// real ksq > 1).
Complex complete_K(Complex ksq);

/// K' = complete_K(1 - ksq); diverges at ksq = 0.
Complex complete_Kprime(Complex ksq);

/// Bundled quarter-period data for a modulus.
struct Modulus {
  Complex ksq;
  Complex K;
  Complex Kprime;
  Complex tau;  // i K'/K
  Complex q;    // exp(i pi tau), |q| < 1

  static Modulus from_ksq(Complex ksq);
};

/// Jacobi theta_1(u, q) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)u).
Complex theta1(Complex u, Complex q);
/// Same series with an explicit term cap (for truncation studies).
Complex theta1_terms(Complex u, Complex q, int max_terms);

struct Jacobi {
  Complex sn, cn, dn;
};

/// sn/cn/dn by the descending Landen recursion (<= 12 levels, trig closure).
Jacobi jacobi_sncndn(Complex u, Complex ksq);
Complex jacobi_sn(Complex u, Complex ksq);
Complex jacobi_cn(Complex u, Complex ksq);
Complex jacobi_dn(Complex u, Complex ksq);

/// A point on C modulo the period lattice (4K, 2iK') of dx/w on the curve
/// w^2 = (1 - x^2)(1 - ksq x^2).
struct AbelValue {
  Complex u;
  Complex omega1;  // 4K
  Complex omega2;  // 2iK'

  /// Representative of u - v in the cell centred at 0; |.| small iff
  /// congruent mod the lattice.
  Complex diff_mod(const AbelValue& other) const;
  Complex reduce(Complex z) const;
  bool congruent(const AbelValue& other, double tol) const;
};

struct AbelResult {
  AbelValue value;
  Complex w_end;  // sheet reached at the endpoint by continuation
};

/// Abel integral int_0^xtilde dx/w along a polyline, sheet fixed by
/// w(0) = +1 and tracked continuously. The default path is the straight
/// segment [0, xtilde]; path_hint (interior vertices, excluding the fixed
/// endpoints 0 and xtilde) overrides it. Throws PathThroughBranchPoint when
/// the path passes within branch_tol of a branch point (+-1, +-1/k).
AbelResult abel_u(Complex xtilde, Complex ksq,
                  const std::vector<Complex>& path_hint = {},
                  double branch_tol = 1e-9, double quad_tol = 1e-13);

/// Abel value of the specific point (xtilde, w_target) on the curve: runs
/// abel_u and applies u -> 2K - u when the continuation lands on the
/// opposite sheet.
AbelResult abel_to_point(Complex xtilde, Complex w_target, Complex ksq,
                         const std::vector<Complex>& path_hint = {},
                         double quad_tol = 1e-13);

/// Interior vertices of a polyline from 0 to xtilde that dips below the
/// real axis (or above, when below = false) by `depth`, clearing branch
/// points that sit near the straight segment.
std::vector<Complex> detour_hint(Complex xtilde, double depth, bool below = true);

}  // namespace laxlab
