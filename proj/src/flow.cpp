#include "laxlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace laxlab {

namespace {

Eigen::VectorXcd pack_system(Complex x, Complex y, Complex z) {
  Eigen::VectorXcd v(3);
  v << x, y, z;
  return v;
}

OdeRhs system_rhs(const LaxConfig& config) {
  const Complex a = config.a;
  return [a](Complex, const Eigen::VectorXcd& v) {
    auto d = rhs_ode(v(0), v(1), v(2), a);
    Eigen::VectorXcd out(3);
    out << d[0], d[1], d[2];
    return out;
  };
}

}  // namespace

std::vector<Complex> unit_circle_samples(int count) {
  std::vector<Complex> out(count);
  for (int j = 0; j < count; ++j) {
    const double th = 2.0 * std::numbers::pi * j / count;
    out[j] = Complex(std::cos(th), std::sin(th));
  }
  return out;
}

SystemTrajectory integrate_system(const LaxConfig& config, const PathSpec& path) {
  path.validate();
  SystemTrajectory traj;
  Eigen::VectorXcd y = pack_system(config.x0, config.y0, config.z0);

  auto record = [&](Complex t, const Eigen::VectorXcd& v) {
    SystemSample s;
    s.t = t;
    s.x = v(0);
    s.y = v(1);
    s.z = v(2);
    auto [Ac, Bc] = invariants(s.x, s.y, s.z, config.a);
    s.A_drift = std::abs(Ac - config.A);
    s.B_drift = std::abs(Bc - config.B);
    traj.max_A_drift = std::max(traj.max_A_drift, s.A_drift);
    traj.max_B_drift = std::max(traj.max_B_drift, s.B_drift);
    traj.samples.push_back(std::move(s));
  };

  record(path.vertices.front(), y);
  StepControl control;
  control.tol = path.tol;
  control.max_step = path.max_step;
  try {
    rk_path(system_rhs(config), path, y, control, record);
  } catch (const BlowUpError&) {
    // Keep the truncated trajectory available to callers via rethrow with
    // the samples already recorded; detect_blowup handles this case.
    throw;
  }
  return traj;
}

PoleEstimate fit_pole(const std::vector<SystemSample>& samples, Complex direction,
                      int window) {
  if (static_cast<int>(samples.size()) < 4)
    throw NoConvergence("not enough samples for a pole fit");

  // Distance of the last sample to the pole, from the growth ratio of the
  // two final samples under a simple-pole model |x| = c / (r* - r).
  const double r_end = (samples.back().t / direction).real();
  const double r_prev = (samples[samples.size() - 2].t / direction).real();
  const double ratio =
      std::abs(samples[samples.size() - 2].x) / std::abs(samples.back().x);
  double d_est = (r_end - r_prev);
  if (ratio > 0.0 && ratio < 1.0) d_est = (r_end - r_prev) * ratio / (1.0 - ratio);
  d_est = std::max(d_est, 1e-300);

  // Walk backwards with geometric thinning so the fit window spans about a
  // decade in pole distance; consecutive accepted steps alone are far too
  // closely spaced to separate the exponent from the pole location.
  std::vector<double> r, lx;
  double next_d = d_est;
  for (int i = static_cast<int>(samples.size()) - 1;
       i >= 0 && static_cast<int>(r.size()) < window; --i) {
    const double ri = (samples[i].t / direction).real();
    const double di = r_end + d_est - ri;
    if (di >= next_d) {
      // x carries the simple pole; y and z blow up one order faster.
      r.push_back(ri);
      lx.push_back(std::log(std::abs(samples[i].x)));
      next_d = 1.13 * di;
    }
  }
  std::reverse(r.begin(), r.end());
  std::reverse(lx.begin(), lx.end());
  window = static_cast<int>(r.size());
  if (window < 6) throw NoConvergence("not enough samples for a pole fit");
  const double r_last = r.back();
  const double span = r_last - r.front();

  // Least squares of log|x| = c - p log(r* - r) for fixed r*, then a golden
  // section search on r* just beyond the last accepted sample.
  auto sse = [&](double rstar, double* p_out, double* resid_out) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < window; ++i) {
      const double xi = std::log(rstar - r[i]);
      sx += xi;
      sy += lx[i];
      sxx += xi * xi;
      sxy += xi * lx[i];
    }
    const double det = window * sxx - sx * sx;
    const double slope = (window * sxy - sx * sy) / det;
    const double inter = (sy - slope * sx) / window;
    double out = 0;
    for (int i = 0; i < window; ++i) {
      const double xi = std::log(rstar - r[i]);
      const double d = lx[i] - (inter + slope * xi);
      out += d * d;
    }
    if (p_out) *p_out = -slope;
    if (resid_out) *resid_out = std::sqrt(out / window);
    return out;
  };

  double lo = r_last + 1e-14 * std::max(1.0, std::abs(r_last));
  double hi = r_last + 2.0 * span;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
    if (sse(c, nullptr, nullptr) < sse(d, nullptr, nullptr)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - gr * (hi - lo);
    d = lo + gr * (hi - lo);
  }
  const double rstar = 0.5 * (lo + hi);
  PoleEstimate est;
  sse(rstar, &est.exponent, &est.fit_residual);
  est.t_star = rstar * direction;
  return est;
}

PoleEstimate detect_blowup(const LaxConfig& config, Complex ray_direction,
                           double max_radius, double tol) {
  const double dn = std::abs(ray_direction);
  if (std::abs(dn - 1.0) > 1e-12)
    throw ConfigError("ray_direction must be a unit complex number");
  PathSpec path;
  path.vertices = {Complex(0.0), ray_direction * max_radius};
  path.tol = tol;
  path.max_step = 0.05;

  SystemTrajectory traj;
  Eigen::VectorXcd y = pack_system(config.x0, config.y0, config.z0);
  auto record = [&](Complex t, const Eigen::VectorXcd& v) {
    traj.samples.push_back({t, v(0), v(1), v(2), 0.0, 0.0});
  };
  record(Complex(0.0), y);
  StepControl control;
  control.tol = tol;
  control.max_step = path.max_step;
  try {
    rk_segment(system_rhs(config), path.vertices[0], path.vertices[1], y, control,
               record);
  } catch (const BlowUpError&) {
    return fit_pole(traj.samples, ray_direction);
  }
  throw NoBlowUp("no blow-up within max_radius");
}

// ---------------------------------------------------------------------------
// Coupled Lax / factor flows.
// ---------------------------------------------------------------------------

namespace {

struct TripleLayout {
  int n;          // matrix dimension
  int m;          // negative-degree bound
  int n_lambda;   // lambda sample count
  int coeff_count() const { return m + 2; }
  int size() const { return n * n * (coeff_count() + 2 * n_lambda); }
};

Eigen::VectorXcd pack_triple(const TripleLayout& lay, const LaurentMatrixPoly& L,
                             const std::vector<Eigen::Matrix2cd>& Gp,
                             const std::vector<Eigen::Matrix2cd>& Gm) {
  Eigen::VectorXcd v(lay.size());
  int at = 0;
  const int nn = lay.n * lay.n;
  for (int k = -lay.m; k <= 1; ++k) {
    Eigen::Map<Eigen::MatrixXcd>(v.data() + at, lay.n, lay.n) = L.coeff(k);
    at += nn;
  }
  for (const auto& g : Gp) {
    Eigen::Map<Eigen::MatrixXcd>(v.data() + at, lay.n, lay.n) = g;
    at += nn;
  }
  for (const auto& g : Gm) {
    Eigen::Map<Eigen::MatrixXcd>(v.data() + at, lay.n, lay.n) = g;
    at += nn;
  }
  return v;
}

void unpack_triple(const TripleLayout& lay, const Eigen::VectorXcd& v,
                   LaurentMatrixPoly& L, std::vector<Eigen::Matrix2cd>& Gp,
                   std::vector<Eigen::Matrix2cd>& Gm) {
  int at = 0;
  const int nn = lay.n * lay.n;
  for (int k = -lay.m; k <= 1; ++k) {
    L.set_coeff(k, Eigen::Map<const Eigen::MatrixXcd>(v.data() + at, lay.n, lay.n));
    at += nn;
  }
  Gp.resize(lay.n_lambda);
  Gm.resize(lay.n_lambda);
  for (int j = 0; j < lay.n_lambda; ++j) {
    Gp[j] = Eigen::Map<const Eigen::MatrixXcd>(v.data() + at, lay.n, lay.n);
    at += nn;
  }
  for (int j = 0; j < lay.n_lambda; ++j) {
    Gm[j] = Eigen::Map<const Eigen::MatrixXcd>(v.data() + at, lay.n, lay.n);
    at += nn;
  }
}

void validate_lambdas(const std::vector<Complex>& lambdas) {
  if (lambdas.size() < 8) throw ConfigError("need at least 8 lambda samples");
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (std::abs(std::abs(lambdas[i]) - 1.0) > 1e-9)
      throw ConfigError("lambda samples must lie on the unit circle");
    for (size_t j = i + 1; j < lambdas.size(); ++j)
      if (std::abs(lambdas[i] - lambdas[j]) < 1e-12)
        throw ConfigError("lambda samples must be pairwise distinct");
  }
}

}  // namespace

LaxFlowResult integrate_lax_triple(const LaxConfig& config, const PathSpec& path,
                                   const std::vector<Complex>& lambda_samples,
                                   bool use_p0, int checkpoints_per_segment) {
  path.validate();
  validate_lambdas(lambda_samples);

  const LaurentMatrixPoly L0 = build_L0(config);
  TripleLayout lay{L0.dim(), L0.neg_degree(), static_cast<int>(lambda_samples.size())};
  const P0Weights weights = use_p0 ? config.p0_weights : P0Weights{};

  auto rhs = [&](Complex, const Eigen::VectorXcd& v) {
    LaurentMatrixPoly L(lay.n, lay.m);
    std::vector<Eigen::Matrix2cd> Gp, Gm;
    unpack_triple(lay, v, L, Gp, Gm);

    const Eigen::MatrixXcd A0 = apply_P0(L, weights);
    const LaurentMatrixPoly M = L.plus_part().with_constant_added(A0);
    const LaurentMatrixPoly dL = commutator_truncated(M, L);

    std::vector<Eigen::Matrix2cd> dGp(lay.n_lambda), dGm(lay.n_lambda);
    const LaurentMatrixPoly Lminus = L.minus_part();
    for (int j = 0; j < lay.n_lambda; ++j) {
      const Complex lam = lambda_samples[j];
      dGp[j] = M.eval(lam) * Gp[j];
      dGm[j] = Gm[j] * (Lminus.eval(lam) - A0);
    }
    return pack_triple(lay, dL, dGp, dGm);
  };

  // Checkpoints: vertices plus optional uniform interior points per segment.
  std::vector<Complex> checkpoints{path.vertices.front()};
  for (size_t i = 1; i < path.vertices.size(); ++i) {
    const Complex t0 = path.vertices[i - 1], t1 = path.vertices[i];
    for (int c = 1; c <= checkpoints_per_segment; ++c)
      checkpoints.push_back(t0 + (t1 - t0) * (double(c) / (checkpoints_per_segment + 1)));
    checkpoints.push_back(t1);
  }

  std::vector<Eigen::Matrix2cd> id(lay.n_lambda, Eigen::Matrix2cd::Identity());
  Eigen::VectorXcd y = pack_triple(lay, L0, id, id);

  LaxFlowResult result;
  result.lambdas = lambda_samples;
  auto snapshot = [&](Complex t, const Eigen::VectorXcd& v) {
    LaxFlowSample s{t, LaurentMatrixPoly(lay.n, lay.m), {}, {}};
    unpack_triple(lay, v, s.L, s.G_plus, s.G_minus);
    if (!v.allFinite()) throw BlowUpError(t, "matrix flow became non-finite");
    result.samples.push_back(std::move(s));
  };

  StepControl control;
  control.tol = path.tol;
  control.max_step = path.max_step;
  snapshot(checkpoints.front(), y);
  for (size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] == checkpoints[i - 1]) continue;
    rk_segment(rhs, checkpoints[i - 1], checkpoints[i], y, control);
    snapshot(checkpoints[i], y);
  }
  return result;
}

NormalizerReport check_normalizer(const LaxConfig& config, const PathSpec& path,
                                  const std::vector<Complex>& lambda_samples,
                                  int checkpoints) {
  if (config.p0_weights.empty() && checkpoints <= 0)
    throw ConfigError("normalizer check needs a checkpoint count");
  LaxFlowResult tilde =
      integrate_lax_triple(config, path, lambda_samples, true, checkpoints);
  LaxFlowResult hat =
      integrate_lax_triple(config, path, lambda_samples, false, checkpoints);

  const int nt = static_cast<int>(tilde.samples.size());
  const int nl = static_cast<int>(lambda_samples.size());
  NormalizerReport report;
  report.lambda_independence_residual = 0.0;
  report.mirrored_reading_residual = 0.0;

  std::vector<Eigen::Matrix2cd> A0s(nt);
  for (int s = 0; s < nt; ++s) {
    const auto& ts = tilde.samples[s];
    const auto& hs = hat.samples[s];
    report.ts.push_back(ts.t);
    A0s[s] = apply_P0(ts.L, config.p0_weights);

    std::vector<Eigen::Matrix2cd> F(nl), Fm(nl);
    for (int j = 0; j < nl; ++j) {
      const Eigen::Matrix2cd& ghat = hs.G_plus[j];
      if (std::abs(ghat.determinant()) < 1e-12)
        throw SingularFactor("plain plus-factor is numerically singular");
      const Eigen::Matrix2cd inv = ghat.inverse();
      F[j] = ts.G_plus[j] * inv;   // reported reading
      Fm[j] = inv * ts.G_plus[j];  // mirrored reading
    }
    for (int i = 0; i < nl; ++i)
      for (int j = i + 1; j < nl; ++j) {
        report.lambda_independence_residual = std::max(
            report.lambda_independence_residual, (F[i] - F[j]).cwiseAbs().maxCoeff());
        report.mirrored_reading_residual = std::max(
            report.mirrored_reading_residual, (Fm[i] - Fm[j]).cwiseAbs().maxCoeff());
      }
    report.F.push_back(F[0]);
  }

  // dF/dt = A0 F by central differences on the uniform checkpoint grid.
  report.ode_residual = 0.0;
  for (int s = 1; s + 1 < nt; ++s) {
    const Complex dt = report.ts[s + 1] - report.ts[s - 1];
    if (std::abs(dt) < 1e-15) continue;
    const Eigen::Matrix2cd dF = (report.F[s + 1] - report.F[s - 1]) / dt;
    const Eigen::Matrix2cd resid = dF - A0s[s] * report.F[s];
    report.ode_residual = std::max(report.ode_residual, resid.cwiseAbs().maxCoeff());
  }
  return report;
}

}  // namespace laxlab
