#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laxlab/surfaces.hpp"

namespace laxlab {

enum class Source { classical, rh, toeplitz, ode };
std::string to_string(Source s);
Source source_from_string(const std::string& s);

struct LatticePoint {
  Complex t;
  int m = 0, n = 0;
  Source source = Source::classical;
};

struct Window {
  double re_min = -4, re_max = 4, im_min = -4, im_max = 4;
  bool contains(Complex t, double pad = 0.0) const {
    return t.real() >= re_min - pad && t.real() <= re_max + pad &&
           t.imag() >= im_min - pad && t.imag() <= im_max + pad;
  }
};

struct Offsets {
  Complex u0;       // Abel offset on the x-curve
  Complex xi0;      // collapsed endpoint on the lambda-curve
  Complex lambda0;  // transported image of x0/x1
};

struct Periods {
  Complex K, Kprime;    // x-curve (ksq = k^2)
  Complex K1, K1prime;  // lambda-curve (ksq = k1^2)
};

struct LatticeReport {
  std::vector<LatticePoint> points;
  Offsets offsets;
  Periods periods;
  Complex eps1{1.0}, eps2{1.0};  // orientation constants of the period relations
};

/// Abel integral u0 = int_0^{x0/x1} dx/w on the x-curve, endpoint on the
/// sheet selected by the dynamics, w(x0/x1) = 2 i a z0 / (x1 x2).
AbelResult u0_classical(const LaxConfig& config, const BranchData& branch);

/// t(m, n) = (-u0 + i K' + 2 m K + 2 i n K') / (i x2) over |m|, |n| <=
/// mn_bound, filtered to the window and deduplicated.
LatticeReport classical_lattice(const LaxConfig& config, const Window& window,
                                int mn_bound);

struct Xi0Result {
  Complex xi0;
  Complex lambda0;
  double collapse_residual;       // |xi0 - lambda0|
  double w_consistency_residual;  // continuation value of w(x0/x1) vs 2iaz0/(x1x2)
};

Xi0Result xi0(const LaxConfig& config, const BranchData& branch);

/// Abel data on the lambda-curve entering the factorization lattice:
/// u1, u2 at the q1 zeros on the selected sheet, their sum, and the
/// equivalent single integral to the collapsed endpoint.
struct RhAbelData {
  Complex u1, u2;
  Complex u_sum;
  Complex u_xi;          // single-integral route; congruent to u_sum
  double route_residual; // |u_xi - u_sum| mod the period lattice
  Complex mu_sheet;      // mu value at the q1 zeros used for u1, u2
  Complex mu_xi;         // mu at the collapsed endpoint
};
RhAbelData rh_abel_data(const LaxConfig& config, const BranchData& branch);

/// t(m, n) = (u_xi + 2 K1 + 4 m K1 + 2 i n K1') / (2 a lambda2) over the
/// window, same filtering rules as the classical lattice.
LatticeReport rh_lattice(const LaxConfig& config, const Window& window, int mn_bound);

struct PeriodRelations {
  Complex eps1, eps2;      // unimodular orientation constants in {1,-1,i,-i}
  double resid1, resid2;   // relative residuals after orientation fixing
  Complex lhs1, rhs1, lhs2, rhs2;
};

/// Quarter-period relations between the two curves:
///   eps1 * Omega  = K1' / (i (1+k)),   eps2 * K' = 2 K1 / (i (1+k)),
/// where Omega is the real quarter period of the x-curve (K(k^2) for
/// |k| <= 1, K(1/k^2)/k otherwise). Constants are calibrated by residual
/// minimization and reported.
PeriodRelations period_relations(const BranchData& branch);

struct MatchReport {
  double max_distance = 0.0;
  bool bijection = false;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> unmatched1, unmatched2;
};

/// Nearest-neighbour matching between two lattice reports over the same
/// window; coincidence holds when the matching is a bijection with
/// max_distance < tol.
MatchReport compare_lattices(const LatticeReport& l1, const LatticeReport& l2,
                             double tol);

}  // namespace laxlab
