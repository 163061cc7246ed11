#include "laxlab/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "laxlab/expm.hpp"
#include "laxlab/flow.hpp"
#include "laxlab/lattice.hpp"
#include "laxlab/toeplitz.hpp"

namespace laxlab {

namespace {

Complex random_unit(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  const double th = u(rng);
  return Complex(std::cos(th), std::sin(th));
}

}  // namespace

std::vector<CheckResult> run_verification(const LaxConfig& config) {
  std::vector<CheckResult> out;
  std::mt19937 rng(20240811);
  auto add = [&](std::string suite, std::string name, double residual, double bound) {
    out.push_back({std::move(suite), std::move(name), residual, bound});
  };

  // --- algebra -------------------------------------------------------------
  const LaurentMatrixPoly L0 = build_L0(config);
  double r = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Complex lam = random_unit(rng);
    const Eigen::MatrixXcd M = L0.eval(lam);
    r = std::max(r, std::abs(M.trace()));
    r = std::max(r, (L0.plus_part().eval(lam) + L0.minus_part().eval(lam) - M)
                        .cwiseAbs()
                        .maxCoeff());
  }
  add("algebra", "trace and split partition", r, 1e-12);
  r = 0.0;
  for (int i = 0; i < 10; ++i)
    r = std::max(r, spectral_curve_residual(config, random_unit(rng)));
  add("algebra", "spectral curve vs characteristic polynomial", r, 1e-10);

  // --- flows ---------------------------------------------------------------
  PathSpec path;
  path.vertices = {Complex(0.0), Complex(0.5)};
  path.tol = 1e-12;
  const auto lambdas = unit_circle_samples(16);
  for (bool with_p0 : {false, true}) {
    if (with_p0 && config.p0_weights.empty()) break;
    const LaxFlowResult flow =
        integrate_lax_triple(config, path, lambdas, with_p0);
    const auto& fin = flow.samples.back();
    double prod = 0.0, iso = 0.0, det1 = 0.0;
    for (size_t j = 0; j < lambdas.size(); ++j) {
      const Eigen::Matrix2cd E = expm(fin.t * L0.eval(lambdas[j]));
      prod = std::max(prod,
                      (fin.G_minus[j] * fin.G_plus[j] - E).cwiseAbs().maxCoeff());
      const Complex d0 = L0.eval(lambdas[j]).determinant();
      const Complex d1 = fin.L.eval(lambdas[j]).determinant();
      iso = std::max(iso, std::abs(d1 - d0));  // traceless: spectrum <-> det
      det1 = std::max(det1, std::abs(fin.G_plus[j].determinant() *
                                         fin.G_minus[j].determinant() -
                                     1.0));
    }
    const char* tag = with_p0 ? " (with P0)" : "";
    add("flows", std::string("factor product vs exp(t L0)") + tag, prod, 1e-8);
    add("flows", std::string("isospectrality") + tag, iso, 1e-8);
    add("flows", std::string("det G+ det G- = 1") + tag, det1, 1e-8);
  }
  PathSpec real_path;
  real_path.vertices = {Complex(0.0), Complex(1.0)};
  real_path.tol = 1e-10;
  const SystemTrajectory traj = integrate_system(config, real_path);
  add("flows", "invariant drift to t = 1",
      std::max(traj.max_A_drift, traj.max_B_drift), 1e-8);
  if (!config.p0_weights.empty()) {
    PathSpec p03;
    p03.vertices = {Complex(0.0), Complex(0.3)};
    p03.tol = 1e-12;
    const NormalizerReport nr = check_normalizer(config, p03, lambdas, 48);
    add("flows", "normalizer lambda independence",
        nr.lambda_independence_residual, 1e-7);
    add("flows", "normalizer dF/dt = A0 F", nr.ode_residual, 1e-6);
  }

  // --- elliptic ------------------------------------------------------------
  const BranchData branch = branch_points(config);
  const Complex ksq = branch.k * branch.k;
  const Complex k1sq = branch.k1 * branch.k1;
  double pyth = 0.0, addn = 0.0;
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Complex u(box(rng), box(rng));
    for (Complex msq : {ksq, k1sq}) {
      const Jacobi j = jacobi_sncndn(u, msq);
      pyth = std::max(pyth, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
      pyth = std::max(pyth, std::abs(j.dn * j.dn + msq * j.sn * j.sn - 1.0));
    }
    const Complex v(box(rng), box(rng));
    const Jacobi ju = jacobi_sncndn(u, k1sq), jv = jacobi_sncndn(v, k1sq);
    const Complex lhs = jacobi_sn(u + v, k1sq);
    const Complex rhs = (ju.sn * jv.cn * jv.dn + jv.sn * ju.cn * ju.dn) /
                        (1.0 - k1sq * ju.sn * ju.sn * jv.sn * jv.sn);
    addn = std::max(addn, std::abs(lhs - rhs));
  }
  add("elliptic", "sn/cn/dn identities", pyth, 1e-12);
  add("elliptic", "sn addition formula", addn, 1e-12);
  const Modulus mod1 = Modulus::from_ksq(k1sq);
  double th = std::abs(theta1(0.0, mod1.q));
  for (int i = 0; i < 10; ++i) {
    const Complex u(box(rng), box(rng));
    th = std::max(th, std::abs(theta1(-u, mod1.q) + theta1(u, mod1.q)));
    const Complex lhs = theta1(u + std::numbers::pi * mod1.tau, mod1.q);
    const Complex rhs = -std::exp(-2.0 * I * u) / mod1.q * theta1(u, mod1.q);
    th = std::max(th, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  add("elliptic", "theta1 oddness and quasi-periodicity", th, 1e-12);

  // --- surfaces ------------------------------------------------------------
  add("surfaces", "moduli relation k1 = (1-k)/(1+k) = lambda1/lambda2",
      std::abs(branch.k1 - branch.lambda1 / branch.lambda2), 1e-12);
  double img = 0.0, pull = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex x(1.6 * box(rng), 1.6 * box(rng));
    bool near = false;
    for (Complex bp : {Complex(1), Complex(-1), 1.0 / branch.k, -1.0 / branch.k})
      near = near || std::abs(x - bp) < 0.15;
    if (near || std::abs(x) < 0.05) continue;
    Complex w = std::sqrt((1.0 - x * x) * (1.0 - ksq * x * x));
    if (i % 2) w = -w;
    const CurvePoint p{CurveTag::Sigma, x, w};
    img = std::max(img, curve_residual(phi_map(p, branch.k), k1sq));
    pull = std::max(pull, pullback_residual(p, branch.k));
  }
  add("surfaces", "phi image on the lambda-curve", img, 1e-10);
  add("surfaces", "pullback of the holomorphic form", pull, 1e-7);
  const PeriodRelations pr = period_relations(branch);
  add("surfaces", "period relation (quarter periods)", pr.resid1, 1e-9);
  add("surfaces", "period relation (complementary)", pr.resid2, 1e-9);

  // --- lattice -------------------------------------------------------------
  const Window window{-4, 4, -4, 4};
  const LatticeReport cl = classical_lattice(config, window, 12);
  const LatticeReport rh = rh_lattice(config, window, 12);
  const MatchReport match = compare_lattices(cl, rh, 1e-6);
  add("lattice", "classical vs factorization coincidence",
      match.bijection ? match.max_distance : 1.0, 1e-6);
  const Xi0Result x0r = xi0(config, branch);
  add("lattice", "xi0 collapse", x0r.collapse_residual, 1e-9);
  const RhAbelData abel = rh_abel_data(config, branch);
  add("lattice", "single-integral route", abel.route_residual, 1e-9);

  // --- toeplitz ------------------------------------------------------------
  {
    SymbolSamples id_samples;
    id_samples.t = 0.0;
    id_samples.grid_size = 64;
    id_samples.values.assign(64, Eigen::Matrix2cd::Identity());
    const double sid = sigma_min(assemble_truncation(id_samples, 8));
    add("toeplitz", "identity symbol sigma_min = 1", std::abs(sid - 1.0), 1e-12);
    const Complex probe(0.4, 0.3);
    const SymbolSamples s = symbol_exp_tL0(config, probe, 256);
    add("toeplitz", "zero winding of det G",
        std::abs(double(winding_number_det(s))), 0.5);
    const double s1 = sigma_min(assemble_truncation(s, 24));
    const SymbolSamples sc = symbol_exp_tL0(config, std::conj(probe), 256);
    const double s2 = sigma_min(assemble_truncation(sc, 24));
    const bool real_data = config.a.imag() == 0 && config.x0.imag() == 0 &&
                           config.y0.imag() == 0 && config.z0.imag() == 0;
    if (real_data)
      add("toeplitz", "conjugation symmetry of sigma_min", std::abs(s1 - s2), 1e-10);
  }
  return out;
}

}  // namespace laxlab
