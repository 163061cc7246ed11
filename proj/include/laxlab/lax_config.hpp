#pragma once

#include <array>
#include <string>
#include <utility>

#include "laxlab/laurent.hpp"
#include "laxlab/types.hpp"

#include "json.hpp"

namespace laxlab {

/// Problem instance: coupling a, initial data (x0, y0, z0), the derived
/// invariants A = x0^2 - 2 a y0 and B = y0^2 + z0^2, optional P0 weights
/// and a working tolerance.
struct LaxConfig {
  Complex a;
  Complex x0, y0, z0;
  Complex A, B;
  P0Weights p0_weights;
  double tol = 1e-9;

  static LaxConfig make(Complex a, Complex x0, Complex y0, Complex z0,
                        P0Weights weights = {}, double tol = 1e-9);

  static LaxConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// The 2x2 Lax matrix at t = 0 for the example system:
///   [ z/lambda              a*lambda + y/lambda + x ]
///   [ a*lambda + y/lambda - x          -z/lambda    ]
LaurentMatrixPoly build_L0(const LaxConfig& config);

LaurentMatrixPoly split_plus(const LaurentMatrixPoly& L);
LaurentMatrixPoly split_minus(const LaurentMatrixPoly& L);

/// Right-hand side of the equivalent nonlinear system:
/// (dx, dy, dz) = (-2 a z, -2 x z, 2 x y).
std::array<Complex, 3> rhs_ode(Complex x, Complex y, Complex z, Complex a);

/// (A, B) = (x^2 - 2 a y, y^2 + z^2).
std::pair<Complex, Complex> invariants(Complex x, Complex y, Complex z, Complex a);

// JSON helpers shared by the file formats: complex values are [re, im].
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& field);

}  // namespace laxlab
