#pragma once

#include <span>
#include <vector>

#include "laxlab/lattice.hpp"
#include "laxlab/lax_config.hpp"

namespace laxlab {

/// Samples of the symbol G(lambda_j) = exp(t L0(lambda_j)) at the roots of
/// unity lambda_j = exp(2 pi i j / grid_size).
struct SymbolSamples {
  Complex t;
  int grid_size = 256;
  std::vector<Eigen::Matrix2cd> values;
};

SymbolSamples symbol_exp_tL0(const LaxConfig& config, Complex t, int grid_size = 256);

/// Finite section of the block Toeplitz operator with the sampled symbol:
/// blocks are the Fourier coefficients Ghat_k for |k| <= 2N, the matrix is
/// the 2(N+1) x 2(N+1) array [Ghat_{i-j}], i, j in [0, N].
struct ToeplitzTruncation {
  int N = 0;
  std::vector<Eigen::Matrix2cd> blocks;  // index k + 2N, k in [-2N, 2N]
  Eigen::MatrixXcd matrix;
  double tail_mass = 0.0;  // max block magnitude beyond |k| = 2N

  const Eigen::Matrix2cd& block(int k) const { return blocks.at(k + 2 * N); }
};

ToeplitzTruncation assemble_truncation(const SymbolSamples& samples, int N);

double sigma_min(const ToeplitzTruncation& T);

/// Winding number of det G around the origin along the sample loop.
int winding_number_det(const SymbolSamples& samples);

struct ScanSettings {
  int resolution = 64;
  int N = 32;
  double threshold = 1e-3;
  int grid_size = 256;
  // Finite sections also dip where only the reflected symbol's operator is
  // singular; a genuine kernel is certified by the analytic-side residual of
  // the candidate kernel vector.
  double kernel_residual_bound = 1e-6;
};

struct ScanCandidate {
  Complex t;
  double sigma;
  double kernel_residual;
};

struct ScanResult {
  Window window;
  int resolution = 0;
  std::vector<double> sigma;  // row-major, sigma[iy * resolution + ix]
  std::vector<ScanCandidate> candidates;
};

/// sigma_min over a resolution x resolution grid; strict interior local
/// minima below the threshold are flagged as singularity candidates.
/// Grid rows are processed in parallel (LAXLAB_THREADS caps the workers);
/// the output layout is deterministic.
ScanResult scan(const LaxConfig& config, const Window& window,
                const ScanSettings& settings = {});

/// Local minimization of sigma_min(t) from t_guess with the truncation
/// order escalated along N_schedule; converged when the minimizer moves
/// less than move_tol between consecutive orders.
LatticePoint refine_singularity(const LaxConfig& config, Complex t_guess,
                                std::span<const int> N_schedule,
                                double move_tol = 1e-6, int grid_size = 256);

struct KernelVector {
  Eigen::VectorXcd phi_plus;  // stacked C^2 Fourier coefficients, degrees 0..N
  double sigma;
  double rh_residual;  // ||P+ (G Phi+)|| / ||Phi+|| on the sample grid
};

/// Right singular vector of the smallest singular value, read as the
/// coefficients of an analytic vector function Phi+; certifies G Phi+
/// numerically anti-analytic when the residual is small. Throws NotSingular
/// when sigma_min is above the candidate threshold.
KernelVector kernel_vector(const ToeplitzTruncation& T, const SymbolSamples& samples,
                           double threshold = 1e-3);

/// Worker cap from LAXLAB_THREADS, defaulting to the hardware concurrency.
int worker_count();

}  // namespace laxlab
