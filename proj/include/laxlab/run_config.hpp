#pragma once

#include <set>
#include <string>

#include "laxlab/lattice.hpp"
#include "laxlab/toeplitz.hpp"

namespace laxlab {

/// Full run description consumed by the command line tool. Serialized as
/// JSON; every field has a flag mirror with a dotted name (--lax.a,
/// --scan.N, ...).
struct RunConfig {
  LaxConfig lax = LaxConfig::make(1.0, 3.0, 1.0, 1.0);
  Window window{-4, 4, -4, 4};
  ScanSettings scan{};
  int mn_bound = 12;
  double lattice_tol = 1e-6;
  std::string output_directory = "out";
  std::set<std::string> formats{"csv", "json"};

  void validate() const;
  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

}  // namespace laxlab
