#include "laxlab/run_config.hpp"

namespace laxlab {

void RunConfig::validate() const {
  if (!(window.re_min < window.re_max) || !(window.im_min < window.im_max))
    throw ConfigError("window must be non-empty");
  if (scan.resolution < 16) throw ConfigError("scan.resolution must be >= 16");
  if (mn_bound < 1) throw ConfigError("lattice.mn_bound must be >= 1");
  if (!(lattice_tol > 0)) throw ConfigError("lattice.tol must be positive");
  for (const auto& f : formats)
    if (f != "csv" && f != "json")
      throw ConfigError("output format '" + f + "' is not one of csv, json");
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("lax")) c.lax = LaxConfig::from_json(j.at("lax"));
  if (j.contains("window")) {
    const auto& w = j.at("window");
    c.window.re_min = w.value("re_min", c.window.re_min);
    c.window.re_max = w.value("re_max", c.window.re_max);
    c.window.im_min = w.value("im_min", c.window.im_min);
    c.window.im_max = w.value("im_max", c.window.im_max);
  }
  if (j.contains("scan")) {
    const auto& s = j.at("scan");
    c.scan.resolution = s.value("resolution", c.scan.resolution);
    c.scan.N = s.value("N", c.scan.N);
    c.scan.threshold = s.value("threshold", c.scan.threshold);
    c.scan.grid_size = s.value("grid_size", c.scan.grid_size);
  }
  if (j.contains("lattice")) {
    const auto& l = j.at("lattice");
    c.mn_bound = l.value("mn_bound", c.mn_bound);
    c.lattice_tol = l.value("tol", c.lattice_tol);
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    c.output_directory = o.value("directory", c.output_directory);
    if (o.contains("formats")) {
      c.formats.clear();
      for (const auto& f : o.at("formats")) c.formats.insert(f.get<std::string>());
    }
  }
  c.validate();
  return c;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["lax"] = lax.to_json();
  j["window"] = {{"re_min", window.re_min},
                 {"re_max", window.re_max},
                 {"im_min", window.im_min},
                 {"im_max", window.im_max}};
  j["scan"] = {{"resolution", scan.resolution},
               {"N", scan.N},
               {"threshold", scan.threshold},
               {"grid_size", scan.grid_size}};
  j["lattice"] = {{"mn_bound", mn_bound}, {"tol", lattice_tol}};
  j["output"] = {{"directory", output_directory},
                 {"formats", std::vector<std::string>(formats.begin(), formats.end())}};
  return j;
}

}  // namespace laxlab
