#include "laxlab/toeplitz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "laxlab/expm.hpp"
#include "laxlab/fft.hpp"

namespace laxlab {

int worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("LAXLAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && cap < static_cast<long>(n)) n = static_cast<unsigned>(cap);
  }
  return static_cast<int>(n);
}

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

SymbolSamples symbol_exp_tL0(const LaxConfig& config, Complex t, int grid_size) {
  if (!is_pow2(grid_size) || grid_size < 64)
    throw ConfigError("grid_size must be a power of two >= 64");
  const LaurentMatrixPoly L0 = build_L0(config);
  SymbolSamples out;
  out.t = t;
  out.grid_size = grid_size;
  out.values.resize(grid_size);
  for (int j = 0; j < grid_size; ++j) {
    const double th = 2.0 * std::numbers::pi * j / grid_size;
    const Complex lam(std::cos(th), std::sin(th));
    out.values[j] = expm(t * L0.eval(lam));
  }
  return out;
}

ToeplitzTruncation assemble_truncation(const SymbolSamples& samples, int N) {
  const int grid = samples.grid_size;
  if (N < 1) throw ConfigError("truncation order must be >= 1");
  if (4 * N >= grid)
    throw ConfigError("anti-aliasing margin requires 4N < grid_size");

  // Fourier blocks: Ghat_k = (1/grid) sum_j G(lambda_j) lambda_j^{-k}; the
  // forward DFT of each entry gives Ghat_p at p = k mod grid.
  std::array<std::vector<Complex>, 4> entry;
  for (auto& e : entry) e.resize(grid);
  for (int j = 0; j < grid; ++j) {
    entry[0][j] = samples.values[j](0, 0);
    entry[1][j] = samples.values[j](0, 1);
    entry[2][j] = samples.values[j](1, 0);
    entry[3][j] = samples.values[j](1, 1);
  }
  std::array<std::vector<Complex>, 4> hat;
  for (int e = 0; e < 4; ++e) hat[e] = dft_forward(entry[e]);

  auto block_at = [&](int k) {
    const int p = ((k % grid) + grid) % grid;
    Eigen::Matrix2cd b;
    b << hat[0][p], hat[1][p], hat[2][p], hat[3][p];
    return Eigen::Matrix2cd(b / double(grid));
  };

  ToeplitzTruncation T;
  T.N = N;
  T.blocks.resize(4 * N + 1);
  for (int k = -2 * N; k <= 2 * N; ++k) T.blocks[k + 2 * N] = block_at(k);

  T.tail_mass = 0.0;
  for (int k = 2 * N + 1; k <= grid / 2; ++k) {
    T.tail_mass = std::max(T.tail_mass, block_at(k).cwiseAbs().maxCoeff());
    T.tail_mass = std::max(T.tail_mass, block_at(-k).cwiseAbs().maxCoeff());
  }
  if (T.tail_mass > 1e-10)
    throw AliasRisk("discarded Fourier tail mass exceeds 1e-10; enlarge grid_size");

  T.matrix.resize(2 * (N + 1), 2 * (N + 1));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      T.matrix.block<2, 2>(2 * i, 2 * j) = T.block(i - j);
  return T;
}

double sigma_min(const ToeplitzTruncation& T) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T.matrix);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

int winding_number_det(const SymbolSamples& samples) {
  double total = 0.0;
  const int n = samples.grid_size;
  Complex prev = samples.values[0].determinant();
  for (int j = 1; j <= n; ++j) {
    const Complex cur = samples.values[j % n].determinant();
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

namespace {

double sigma_min_at(const LaxConfig& config, Complex t, int N, int grid_size,
                    SymbolSamples* samples_out = nullptr,
                    ToeplitzTruncation* trunc_out = nullptr);

// Nelder-Mead on sigma_min(t) as a function of (Re t, Im t).
Complex nelder_mead(const LaxConfig& config, Complex start, int N, int grid_size,
                    double simplex_size, double ftol, int max_iter, double* value,
                    const Window* box = nullptr, double target = 0.0);

}  // namespace

ScanResult scan(const LaxConfig& config, const Window& window,
                const ScanSettings& settings) {
  if (settings.resolution < 16)
    throw ConfigError("scan resolution must be >= 16 per axis");
  const int R = settings.resolution;
  ScanResult result;
  result.window = window;
  result.resolution = R;
  result.sigma.assign(static_cast<size_t>(R) * R, 0.0);

  auto t_at = [&](int ix, int iy) {
    const double re =
        window.re_min + (window.re_max - window.re_min) * ix / double(R - 1);
    const double im =
        window.im_min + (window.im_max - window.im_min) * iy / double(R - 1);
    return Complex(re, im);
  };

  std::atomic<int> next_row{0};
  auto work = [&]() {
    for (;;) {
      const int iy = next_row.fetch_add(1);
      if (iy >= R) return;
      for (int ix = 0; ix < R; ++ix)
        result.sigma[static_cast<size_t>(iy) * R + ix] =
            sigma_min_at(config, t_at(ix, iy), settings.N, settings.grid_size);
    }
  };
  const int workers = std::min(worker_count(), R);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  // Candidate seeds: strict interior local minima, plus nodes where log
  // sigma has strong positive curvature along some axis. The smooth
  // background is exponential in t (log-linear on the grid, curvature ~ 0),
  // a conical dip bends log sigma upward around it, and branch-crossing
  // kinks of sigma_min bend it downward. Raw grid values at a genuine
  // singularity only reach the local slope times the grid spacing, so each
  // seed is polished by a short local minimization before thresholding.
  auto sig = [&](int ix, int iy) {
    return result.sigma[static_cast<size_t>(iy) * R + ix];
  };
  std::vector<std::tuple<double, int, int>> seeds;  // (value, ix, iy)
  for (int iy = 1; iy + 1 < R; ++iy)
    for (int ix = 1; ix + 1 < R; ++ix) {
      const double v = sig(ix, iy);
      bool is_min = true;
      double curvature = 0.0;
      for (auto [dx, dy] : {std::pair{1, 0}, {0, 1}, {1, 1}, {1, -1}}) {
        const double a = std::max(sig(ix + dx, iy + dy), 1e-300);
        const double b = std::max(sig(ix - dx, iy - dy), 1e-300);
        if (a <= v || b <= v) is_min = false;
        curvature = std::max(curvature, std::log(a) + std::log(b) -
                                            2.0 * std::log(std::max(v, 1e-300)));
      }
      if (is_min || curvature > 0.25) seeds.emplace_back(v, ix, iy);
    }
  // A dip fires several adjacent nodes; keep the deepest seed per cluster.
  // Only immediate neighbours may be merged: distinct dips (in particular a
  // genuine one and a reflected-symbol artifact) can sit two cells apart.
  std::sort(seeds.begin(), seeds.end());
  std::vector<std::pair<int, int>> picked;
  for (const auto& [v, ix, iy] : seeds) {
    bool dup = false;
    for (const auto& [px, py] : picked)
      dup = dup || (std::abs(px - ix) <= 1 && std::abs(py - iy) <= 1);
    if (!dup) picked.emplace_back(ix, iy);
  }

  const double spacing =
      std::max(window.re_max - window.re_min, window.im_max - window.im_min) /
      double(R - 1);
  Window box = window;
  box.re_min -= 0.5 * spacing;
  box.re_max += 0.5 * spacing;
  box.im_min -= 0.5 * spacing;
  box.im_max += 0.5 * spacing;
  std::vector<ScanCandidate> raw;
  for (auto [ix, iy] : picked) {
    double polished = 0.0;
    const Complex t_min =
        nelder_mead(config, t_at(ix, iy), settings.N, settings.grid_size,
                    0.6 * spacing, 1e-9, 60, &polished, &box);
    if (polished >= settings.threshold) continue;
    if (!window.contains(t_min, config.tol)) continue;
    SymbolSamples s;
    ToeplitzTruncation T;
    sigma_min_at(config, t_min, settings.N, settings.grid_size, &s, &T);
    const KernelVector kv = kernel_vector(T, s, settings.threshold);
    // A genuine kernel has residual at the sigma level; the reflected-symbol
    // finite-section artifact leaves an O(1) residual however deep the dip.
    if (kv.rh_residual < std::max(settings.kernel_residual_bound, 50.0 * polished))
      raw.push_back({t_min, polished, kv.rh_residual});
  }
  // Neighbouring seeds polish into the same dip; merge by proximity.
  std::sort(raw.begin(), raw.end(),
            [](const ScanCandidate& a, const ScanCandidate& b) {
              return a.sigma < b.sigma;
            });
  for (const auto& c : raw) {
    bool dup = false;
    for (const auto& kept : result.candidates)
      dup = dup || std::abs(c.t - kept.t) < 0.5 * spacing;
    if (!dup) result.candidates.push_back(c);
  }
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const ScanCandidate& a, const ScanCandidate& b) {
              return a.t.real() != b.t.real() ? a.t.real() < b.t.real()
                                              : a.t.imag() < b.t.imag();
            });
  return result;
}

namespace {

// sigma_min with the sampling grid doubled until the Fourier tail check
// passes (large |t| widens the symbol's coefficient support).
double sigma_min_at(const LaxConfig& config, Complex t, int N, int grid_size,
                    SymbolSamples* samples_out, ToeplitzTruncation* trunc_out) {
  for (int grid = grid_size;; grid *= 2) {
    try {
      SymbolSamples s = symbol_exp_tL0(config, t, grid);
      ToeplitzTruncation T = assemble_truncation(s, N);
      const double sigma = sigma_min(T);
      if (samples_out) *samples_out = std::move(s);
      if (trunc_out) *trunc_out = std::move(T);
      return sigma;
    } catch (const AliasRisk&) {
      if (grid >= 4096) throw;
    }
  }
}

Complex nelder_mead(const LaxConfig& config, Complex start, int N, int grid_size,
                    double simplex_size, double ftol, int max_iter, double* value,
                    const Window* box, double target) {
  auto f = [&](Complex t) {
    if (box && !box->contains(t))
      return 1e30;  // keep the search inside the sampled region
    return sigma_min_at(config, t, N, grid_size);
  };
  struct Vertex {
    Complex t;
    double v;
  };
  std::array<Vertex, 3> simplex{
      Vertex{start, f(start)},
      Vertex{start + Complex(simplex_size, 0), f(start + Complex(simplex_size, 0))},
      Vertex{start + Complex(0, simplex_size), f(start + Complex(0, simplex_size))}};
  auto order = [&]() {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
  };
  order();
  for (int it = 0; it < max_iter; ++it) {
    const double diameter = std::max(std::abs(simplex[1].t - simplex[0].t),
                                     std::abs(simplex[2].t - simplex[0].t));
    if (diameter < 1e-8 || simplex[0].v <= target ||
        simplex[2].v - simplex[0].v < ftol * simplex[0].v)
      break;
    const Complex centroid = 0.5 * (simplex[0].t + simplex[1].t);
    const Complex refl = centroid + (centroid - simplex[2].t);
    const double fr = f(refl);
    if (fr < simplex[0].v) {
      const Complex exp_pt = centroid + 2.0 * (centroid - simplex[2].t);
      const double fe = f(exp_pt);
      simplex[2] = fe < fr ? Vertex{exp_pt, fe} : Vertex{refl, fr};
    } else if (fr < simplex[1].v) {
      simplex[2] = {refl, fr};
    } else {
      const Complex contr = centroid + 0.5 * (simplex[2].t - centroid);
      const double fc = f(contr);
      if (fc < simplex[2].v) {
        simplex[2] = {contr, fc};
      } else {
        simplex[1].t = simplex[0].t + 0.5 * (simplex[1].t - simplex[0].t);
        simplex[2].t = simplex[0].t + 0.5 * (simplex[2].t - simplex[0].t);
        simplex[1].v = f(simplex[1].t);
        simplex[2].v = f(simplex[2].t);
      }
    }
    order();
  }
  if (value) *value = simplex[0].v;
  return simplex[0].t;
}

}  // namespace

LatticePoint refine_singularity(const LaxConfig& config, Complex t_guess,
                                std::span<const int> N_schedule, double move_tol,
                                int grid_size) {
  if (N_schedule.empty()) throw ConfigError("empty N schedule");
  Complex current = t_guess;
  double simplex = 0.02;
  double last_move = std::numeric_limits<double>::infinity();
  for (size_t level = 0; level < N_schedule.size(); ++level) {
    const int N = N_schedule[level];
    int grid = grid_size;
    while (grid <= 4 * N) grid *= 2;
    double val = 0.0;
    const Complex refined =
        nelder_mead(config, current, N, grid, simplex, 1e-9, 200, &val);
    last_move = std::abs(refined - current);
    current = refined;
    // Later levels only confirm the location; keep the simplex tight.
    simplex = std::clamp(0.1 * last_move, 2e-6, 1e-3);
    if (level > 0 && last_move < move_tol)
      return {current, 0, 0, Source::toeplitz};
  }
  if (N_schedule.size() == 1) return {current, 0, 0, Source::toeplitz};
  throw NoConvergence("minimizer kept moving after the N schedule was exhausted");
}

KernelVector kernel_vector(const ToeplitzTruncation& T, const SymbolSamples& samples,
                           double threshold) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  KernelVector out;
  out.sigma = sv(sv.size() - 1);
  if (out.sigma >= threshold)
    throw NotSingular("sigma_min above the candidate threshold");
  out.phi_plus = svd.matrixV().col(sv.size() - 1);
  out.phi_plus /= out.phi_plus.norm();

  // Evaluate Phi+ on the sample grid, multiply by G, and measure the mass of
  // the analytic-side Fourier coefficients of G Phi+.
  const int grid = samples.grid_size;
  const int N = T.N;
  std::array<std::vector<Complex>, 2> gphi;
  gphi[0].resize(grid);
  gphi[1].resize(grid);
  for (int j = 0; j < grid; ++j) {
    const double th = 2.0 * std::numbers::pi * j / grid;
    const Complex lam(std::cos(th), std::sin(th));
    Eigen::Vector2cd phi = Eigen::Vector2cd::Zero();
    Complex pw = 1.0;
    for (int d = 0; d <= N; ++d) {
      phi += pw * out.phi_plus.segment<2>(2 * d);
      pw *= lam;
    }
    const Eigen::Vector2cd v = samples.values[j] * phi;
    gphi[0][j] = v(0);
    gphi[1][j] = v(1);
  }
  double plus_mass_sq = 0.0;
  for (int e = 0; e < 2; ++e) {
    const std::vector<Complex> hat = dft_forward(gphi[e]);
    for (int p = 0; p < grid / 2; ++p) plus_mass_sq += std::norm(hat[p] / double(grid));
  }
  out.rh_residual = std::sqrt(plus_mass_sq);
  return out;
}

}  // namespace laxlab
