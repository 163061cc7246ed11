#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "laxlab/errors.hpp"
#include "laxlab/types.hpp"

namespace laxlab {

/// Polyline in the complex t-plane. Integration starts at the first vertex
/// (conventionally 0) and proceeds segment by segment.
struct PathSpec {
  std::vector<Complex> vertices;
  double max_step = 0.1;
  double tol = 1e-10;

  void validate() const;
};

struct StepControl {
  double tol = 1e-10;
  double max_step = 0.1;
  double blowup_threshold = 1e8;
  double min_step_factor = 1e-14;  // h underflow -> StepCollapse
};

using OdeRhs = std::function<Eigen::VectorXcd(Complex t, const Eigen::VectorXcd&)>;
/// Called after every accepted step.
using OdeObserver = std::function<void(Complex t, const Eigen::VectorXcd&)>;

/// Adaptive Dormand-Prince 5(4) along the straight segment [t0, t1].
/// State is updated in place. Throws BlowUpError when the max-abs state norm
/// crosses the blow-up threshold and StepCollapse when the step underflows.
void rk_segment(const OdeRhs& rhs, Complex t0, Complex t1, Eigen::VectorXcd& y,
                const StepControl& control, const OdeObserver& observer = {});

/// Integrates along a full polyline, observer fired at each accepted step.
void rk_path(const OdeRhs& rhs, const PathSpec& path, Eigen::VectorXcd& y,
             const StepControl& control, const OdeObserver& observer = {});

}  // namespace laxlab
