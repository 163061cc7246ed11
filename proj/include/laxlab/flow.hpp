#pragma once

#include <optional>
#include <vector>

#include "laxlab/lax_config.hpp"
#include "laxlab/ode.hpp"

namespace laxlab {

struct SystemSample {
  Complex t;
  Complex x, y, z;
  double A_drift = 0.0;
  double B_drift = 0.0;
};

struct SystemTrajectory {
  std::vector<SystemSample> samples;
  double max_A_drift = 0.0;
  double max_B_drift = 0.0;
};

/// Integrates (x, y, z) along the path. Throws BlowUpError / StepCollapse.
SystemTrajectory integrate_system(const LaxConfig& config, const PathSpec& path);

struct PoleEstimate {
  Complex t_star;
  double exponent;     // fitted p in x ~ c (t - t*)^(-p)
  double fit_residual; // rms residual of the log-log fit
};

/// Integrates along the ray t = r * direction, r in (0, max_radius]; on
/// blow-up fits the pole location and order from the final window of
/// accepted samples. Throws NoBlowUp if the state stays bounded.
PoleEstimate detect_blowup(const LaxConfig& config, Complex ray_direction,
                           double max_radius, double tol = 1e-10);

/// Fits x ~ c (t - t*)^(-p) on trailing samples of a diverging trajectory.
PoleEstimate fit_pole(const std::vector<SystemSample>& samples, Complex direction,
                      int window = 20);

struct LaxFlowSample {
  Complex t;
  LaurentMatrixPoly L;                    // current Lax coefficients
  std::vector<Eigen::Matrix2cd> G_plus;   // per lambda sample
  std::vector<Eigen::Matrix2cd> G_minus;  // per lambda sample
};

struct LaxFlowResult {
  std::vector<Complex> lambdas;
  std::vector<LaxFlowSample> samples;  // at the requested checkpoints
};

/// Co-integrates dL/dt = [L^+ + A0, L] on Laurent coefficients together with
/// dG+/dt = (L^+ + A0) G+ and dG-/dt = G- (L^- - A0) at each lambda sample,
/// from L(0) = L0, G+(0) = G-(0) = I. A0 = P0 L with the config's weights
/// (zero when use_p0 is false). Checkpoints: the path vertices, plus
/// `checkpoints_per_segment` interior points per segment when positive.
LaxFlowResult integrate_lax_triple(const LaxConfig& config, const PathSpec& path,
                                   const std::vector<Complex>& lambda_samples,
                                   bool use_p0 = true,
                                   int checkpoints_per_segment = 0);

struct NormalizerReport {
  std::vector<Complex> ts;
  std::vector<Eigen::Matrix2cd> F;       // lambda-independent factor at each t
  double lambda_independence_residual;   // max over t, lambda pairs
  double mirrored_reading_residual;      // same for F' = Ghat+^{-1} Gtilde+
  double ode_residual;                   // max |dF/dt - A0 F| (central differences)
};

/// Compares the P0-driven flow against the plain one on the same path and
/// extracts F(t) = Gtilde+(lambda) Ghat+(lambda)^{-1}. The mirrored product
/// is measured as well; the lambda-independent reading is the reported F.
NormalizerReport check_normalizer(const LaxConfig& config, const PathSpec& path,
                                  const std::vector<Complex>& lambda_samples,
                                  int checkpoints = 32);

/// 16 equispaced points on the unit circle (the default sample set).
std::vector<Complex> unit_circle_samples(int count = 16);

}  // namespace laxlab
