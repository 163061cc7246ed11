#include "laxlab/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace laxlab {

std::string to_string(Source s) {
  switch (s) {
    case Source::classical: return "classical";
    case Source::rh: return "rh";
    case Source::toeplitz: return "toeplitz";
    case Source::ode: return "ode";
  }
  return "unknown";
}

Source source_from_string(const std::string& s) {
  if (s == "classical") return Source::classical;
  if (s == "rh") return Source::rh;
  if (s == "toeplitz") return Source::toeplitz;
  if (s == "ode") return Source::ode;
  throw ConfigError("unknown lattice source '" + s + "'");
}

namespace {

// Detour when the straight segment [0, endpoint] runs close to a branch
// point; the dip side is chosen below first, the caller flips sheets via
// abel_to_point.
std::vector<Complex> auto_hint(Complex endpoint, Complex ksq) {
  const Complex inv_k = 1.0 / std::sqrt(ksq);
  const double close = 0.05 * std::max(1.0, std::abs(endpoint));
  for (Complex bp : {Complex(1.0), Complex(-1.0), inv_k, -inv_k}) {
    const Complex pr = bp / endpoint;  // projection onto the segment, scaled
    const double along = pr.real();
    const double off = std::abs(pr.imag()) * std::abs(endpoint);
    if (along > -0.02 && along < 1.02 && off < close)
      return detour_hint(endpoint, 0.2 * std::max(1.0, std::abs(endpoint)));
  }
  return {};
}

void append_window_points(std::vector<LatticePoint>& out, Complex t, int m, int n,
                          Source src, const Window& window, double tol) {
  if (!window.contains(t, tol)) return;
  for (const auto& p : out)
    if (std::abs(p.t - t) < 10.0 * tol) return;  // dedup radius
  out.push_back({t, m, n, src});
}

}  // namespace

AbelResult u0_classical(const LaxConfig& config, const BranchData& branch) {
  const Complex xt0 = config.x0 / branch.x1;
  const Complex ksq = branch.k * branch.k;
  if (xt0 == Complex(0.0)) {
    const Complex K = complete_K(ksq);
    const Complex Kp = complete_Kprime(ksq);
    return {AbelValue{0.0, 4.0 * K, 2.0 * I * Kp}, Complex(1.0)};
  }
  const Complex w_dyn = 2.0 * I * config.a * config.z0 / (branch.x1 * branch.x2);
  return abel_to_point(xt0, w_dyn, ksq, auto_hint(xt0, ksq));
}

LatticeReport classical_lattice(const LaxConfig& config, const Window& window,
                                int mn_bound) {
  if (mn_bound < 1) throw ConfigError("mn_bound must be >= 1");
  const BranchData branch = branch_points(config);
  const Complex ksq = branch.k * branch.k;
  const Complex K = complete_K(ksq);
  const Complex Kp = complete_Kprime(ksq);
  const AbelResult u0 = u0_classical(config, branch);

  LatticeReport report;
  report.offsets.u0 = u0.value.u;
  report.periods.K = K;
  report.periods.Kprime = Kp;
  const Complex k1sq = branch.k1 * branch.k1;
  report.periods.K1 = complete_K(k1sq);
  report.periods.K1prime = complete_Kprime(k1sq);

  const Complex denom = I * branch.x2;
  for (int m = -mn_bound; m <= mn_bound; ++m)
    for (int n = -mn_bound; n <= mn_bound; ++n) {
      const Complex t =
          (-u0.value.u + I * Kp + 2.0 * double(m) * K + 2.0 * I * double(n) * Kp) /
          denom;
      append_window_points(report.points, t, m, n, Source::classical, window,
                           config.tol);
    }
  return report;
}

Xi0Result xi0(const LaxConfig& config, const BranchData& branch) {
  if (config.z0 == Complex(0.0))
    throw ZeroZ0("xi0 is undefined at z0 = 0");
  Xi0Result r;
  r.xi0 = (config.x0 / config.z0) * branch.lambda2;

  const Complex xt0 = config.x0 / branch.x1;
  const AbelResult u0 = u0_classical(config, branch);
  const Complex w_cont = u0.w_end;
  const Complex w_expected = 2.0 * I * config.a * config.z0 / (branch.x1 * branch.x2);
  r.w_consistency_residual = std::abs(w_cont - w_expected);
  r.lambda0 = I * (1.0 + branch.k) * xt0 / w_cont;
  r.collapse_residual = std::abs(r.xi0 - r.lambda0);
  return r;
}

RhAbelData rh_abel_data(const LaxConfig& config, const BranchData& branch) {
  if (config.z0 == Complex(0.0))
    throw ZeroZ0("the factorization lattice needs z0 != 0");
  const Complex k1sq = branch.k1 * branch.k1;
  const Complex a = config.a;

  RhAbelData data;
  // q1 zeros on the lambda-curve, on the sheet where the lattice offset
  // collapses onto xi0 = (x0/z0) lambda2 (sign opposite to the raw
  // normalization value of mu at those points).
  data.mu_sheet = -config.z0 / (a * branch.lambda1 * branch.lambda2);
  const Complex e1 = branch.lhat1 / branch.lambda1;
  const Complex e2 = branch.lhat2 / branch.lambda1;
  const AbelResult r1 = abel_to_point(e1, data.mu_sheet, k1sq, auto_hint(e1, k1sq));
  const AbelResult r2 = abel_to_point(e2, data.mu_sheet, k1sq, auto_hint(e2, k1sq));
  data.u1 = r1.value.u;
  data.u2 = r2.value.u;
  data.u_sum = data.u1 + data.u2;

  // Single-integral route to the collapsed endpoint: lambda = xi0 on the
  // sheet with mu = cn * dn of the summed argument.
  const Complex xi = (config.x0 / config.z0) * branch.lambda2;
  const Jacobi jv = jacobi_sncndn(data.u_sum, k1sq);
  data.mu_xi = jv.cn * jv.dn;
  const Complex endpoint = jv.sn;  // +-xi up to roundoff; use the exact sn value
  if (std::abs(std::abs(endpoint) - std::abs(xi)) >
      1e-6 * std::max(1.0, std::abs(xi)))
    throw DegenerateCurve("collapsed endpoint does not match xi0 in modulus");
  const AbelResult rx =
      abel_to_point(endpoint, data.mu_xi, k1sq, auto_hint(endpoint, k1sq));
  data.u_xi = rx.value.u;
  data.route_residual = std::abs(rx.value.diff_mod(AbelValue{
      data.u_sum, rx.value.omega1, rx.value.omega2}));
  return data;
}

LatticeReport rh_lattice(const LaxConfig& config, const Window& window, int mn_bound) {
  if (mn_bound < 1) throw ConfigError("mn_bound must be >= 1");
  const BranchData branch = branch_points(config);
  const Complex k1sq = branch.k1 * branch.k1;
  const Complex K1 = complete_K(k1sq);
  const Complex K1p = complete_Kprime(k1sq);
  const RhAbelData abel = rh_abel_data(config, branch);
  const Xi0Result x = xi0(config, branch);

  LatticeReport report;
  report.offsets.u0 = abel.u_sum;
  report.offsets.xi0 = x.xi0;
  report.offsets.lambda0 = x.lambda0;
  const Complex ksq = branch.k * branch.k;
  report.periods.K = complete_K(ksq);
  report.periods.Kprime = complete_Kprime(ksq);
  report.periods.K1 = K1;
  report.periods.K1prime = K1p;

  const Complex denom = 2.0 * config.a * branch.lambda2;
  for (int m = -mn_bound; m <= mn_bound; ++m)
    for (int n = -mn_bound; n <= mn_bound; ++n) {
      const Complex t = (abel.u_xi + 2.0 * K1 + 4.0 * double(m) * K1 +
                         2.0 * I * double(n) * K1p) /
                        denom;
      append_window_points(report.points, t, m, n, Source::rh, window, config.tol);
    }
  return report;
}

PeriodRelations period_relations(const BranchData& branch) {
  const Complex k = branch.k;
  const Complex ksq = k * k;
  const Complex k1sq = branch.k1 * branch.k1;
  const Complex K1 = complete_K(k1sq);
  const Complex K1p = complete_Kprime(k1sq);

  PeriodRelations rel;
  // Real quarter period of the x-curve: the Abel integral from 0 to the
  // nearest positive branch point (1 or 1/k).
  rel.lhs1 = std::abs(k) > 1.0 ? complete_K(1.0 / ksq) / k : complete_K(ksq);
  rel.rhs1 = K1p / (I * (1.0 + k));
  rel.lhs2 = complete_Kprime(ksq);
  rel.rhs2 = 2.0 * K1 / (I * (1.0 + k));

  auto calibrate = [](Complex lhs, Complex rhs, Complex* eps) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex e : {Complex(1), Complex(-1), I, -I}) {
      const double r = std::abs(e * lhs - rhs) / std::abs(rhs);
      if (r < best) {
        best = r;
        *eps = e;
      }
    }
    return best;
  };
  rel.resid1 = calibrate(rel.lhs1, rel.rhs1, &rel.eps1);
  rel.resid2 = calibrate(rel.lhs2, rel.rhs2, &rel.eps2);
  return rel;
}

MatchReport compare_lattices(const LatticeReport& l1, const LatticeReport& l2,
                             double tol) {
  MatchReport report;
  const auto& p1 = l1.points;
  const auto& p2 = l2.points;
  std::vector<bool> used(p2.size(), false);
  for (size_t i = 0; i < p1.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_j = -1;
    for (size_t j = 0; j < p2.size(); ++j) {
      const double d = std::abs(p1[i].t - p2[j].t);
      if (d < best) {
        best = d;
        best_j = static_cast<int>(j);
      }
    }
    if (best_j >= 0 && best < tol && !used[best_j]) {
      used[best_j] = true;
      report.pairs.emplace_back(static_cast<int>(i), best_j);
      report.max_distance = std::max(report.max_distance, best);
    } else {
      report.unmatched1.push_back(static_cast<int>(i));
    }
  }
  for (size_t j = 0; j < p2.size(); ++j)
    if (!used[j]) report.unmatched2.push_back(static_cast<int>(j));
  report.bijection = report.unmatched1.empty() && report.unmatched2.empty() &&
                     p1.size() == p2.size();
  if (!report.bijection && report.pairs.empty()) report.max_distance = 0.0;
  return report;
}

}  // namespace laxlab
