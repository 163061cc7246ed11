#include "laxlab/lax_config.hpp"

namespace laxlab {

LaxConfig LaxConfig::make(Complex a, Complex x0, Complex y0, Complex z0,
                          P0Weights weights, double tol) {
  if (a == Complex(0.0))
    throw ConfigError("coupling a = 0 is rejected: the spectral curve degenerates");
  if (!(tol > 0)) throw ConfigError("tol must be positive");
  LaxConfig c;
  c.a = a;
  c.x0 = x0;
  c.y0 = y0;
  c.z0 = z0;
  c.A = x0 * x0 - 2.0 * a * y0;
  c.B = y0 * y0 + z0 * z0;
  c.p0_weights = std::move(weights);
  c.tol = tol;
  return c;
}

nlohmann::json complex_to_json(Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

Complex complex_from_json(const nlohmann::json& j, const std::string& field) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("field '" + field + "' must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

LaxConfig LaxConfig::from_json(const nlohmann::json& j) {
  for (const char* f : {"a", "x0", "y0", "z0"})
    if (!j.contains(f)) throw ConfigError(std::string("missing field '") + f + "'");
  P0Weights weights;
  if (j.contains("p0_weights") && !j["p0_weights"].is_null()) {
    const auto& pw = j["p0_weights"];
    if (!pw.is_object()) throw ConfigError("field 'p0_weights' must be an object");
    for (auto it = pw.begin(); it != pw.end(); ++it) {
      int k = 0;
      try {
        k = std::stoi(it.key());
      } catch (const std::exception&) {
        throw ConfigError("p0_weights key '" + it.key() + "' is not an exponent");
      }
      const auto& rows = it.value();
      if (!rows.is_array() || rows.empty())
        throw ConfigError("p0_weights['" + it.key() + "'] must be a matrix");
      const int n = static_cast<int>(rows.size());
      Eigen::MatrixXcd w(n, n);
      for (int r = 0; r < n; ++r) {
        if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n)
          throw ConfigError("p0_weights['" + it.key() + "'] must be square");
        for (int c = 0; c < n; ++c)
          w(r, c) = complex_from_json(rows[r][c], "p0_weights");
      }
      weights[k] = std::move(w);
    }
  }
  double tol = j.value("tol", 1e-9);
  return make(complex_from_json(j["a"], "a"), complex_from_json(j["x0"], "x0"),
              complex_from_json(j["y0"], "y0"), complex_from_json(j["z0"], "z0"),
              std::move(weights), tol);
}

nlohmann::json LaxConfig::to_json() const {
  nlohmann::json j;
  j["a"] = complex_to_json(a);
  j["x0"] = complex_to_json(x0);
  j["y0"] = complex_to_json(y0);
  j["z0"] = complex_to_json(z0);
  j["tol"] = tol;
  if (!p0_weights.empty()) {
    nlohmann::json pw = nlohmann::json::object();
    for (const auto& [k, w] : p0_weights) {
      nlohmann::json rows = nlohmann::json::array();
      for (int r = 0; r < w.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < w.cols(); ++c) row.push_back(complex_to_json(w(r, c)));
        rows.push_back(row);
      }
      pw[std::to_string(k)] = rows;
    }
    j["p0_weights"] = pw;
  }
  return j;
}

LaurentMatrixPoly build_L0(const LaxConfig& config) {
  if (config.a == Complex(0.0)) throw ConfigError("a = 0 is rejected");
  LaurentMatrixPoly L(2, 1);
  Eigen::Matrix2cd c1, c0, cm1;
  c1 << 0.0, config.a, config.a, 0.0;
  c0 << 0.0, config.x0, -config.x0, 0.0;
  cm1 << config.z0, config.y0, config.y0, -config.z0;
  L.set_coeff(1, c1);
  L.set_coeff(0, c0);
  L.set_coeff(-1, cm1);
  return L;
}

LaurentMatrixPoly split_plus(const LaurentMatrixPoly& L) { return L.plus_part(); }
LaurentMatrixPoly split_minus(const LaurentMatrixPoly& L) { return L.minus_part(); }

std::array<Complex, 3> rhs_ode(Complex x, Complex y, Complex z, Complex a) {
  return {-2.0 * a * z, -2.0 * x * z, 2.0 * x * y};
}

std::pair<Complex, Complex> invariants(Complex x, Complex y, Complex z, Complex a) {
  return {x * x - 2.0 * a * y, y * y + z * z};
}

}  // namespace laxlab
