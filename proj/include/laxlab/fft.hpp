#pragma once

#include <vector>

#include "laxlab/types.hpp"

namespace laxlab {

/// Forward DFT, X_p = sum_j x_j exp(-2 pi i j p / N). Thread-safe.
std::vector<Complex> dft_forward(const std::vector<Complex>& x);

}  // namespace laxlab
