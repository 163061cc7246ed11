#pragma once

#include <complex>

namespace laxlab {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace laxlab
