#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "laxlab/io.hpp"
#include "laxlab/verify.hpp"

namespace {

using namespace laxlab;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitVerifyFailed = 5;

Complex parse_complex(const std::string& s) {
  std::string body = s;
  if (!body.empty() && body.front() == '(' && body.back() == ')')
    body = body.substr(1, body.size() - 2);
  const auto comma = body.find(',');
  try {
    if (comma == std::string::npos) return Complex(std::stod(body), 0.0);
    return Complex(std::stod(body.substr(0, comma)),
                   std::stod(body.substr(comma + 1)));
  } catch (const std::exception&) {
    throw ConfigError("cannot parse complex value '" + s + "' (want re or re,im)");
  }
}

std::vector<Complex> parse_path_vertices(const std::string& s) {
  std::vector<Complex> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(parse_complex(item));
  return out;
}

struct Overrides {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  void apply(RunConfig& config) const {
    auto set_complex = [&](const char* key, Complex* dst) {
      if (has(key)) *dst = parse_complex(values.at(key));
    };
    Complex a = config.lax.a, x0 = config.lax.x0, y0 = config.lax.y0,
            z0 = config.lax.z0;
    set_complex("lax.a", &a);
    set_complex("lax.x0", &x0);
    set_complex("lax.y0", &y0);
    set_complex("lax.z0", &z0);
    double tol = config.lax.tol;
    if (has("lax.tol")) tol = std::stod(values.at("lax.tol"));
    config.lax = LaxConfig::make(a, x0, y0, z0, config.lax.p0_weights, tol);

    auto set_double = [&](const char* key, double* dst) {
      if (has(key)) *dst = std::stod(values.at(key));
    };
    auto set_int = [&](const char* key, int* dst) {
      if (has(key)) *dst = std::stoi(values.at(key));
    };
    set_double("window.re_min", &config.window.re_min);
    set_double("window.re_max", &config.window.re_max);
    set_double("window.im_min", &config.window.im_min);
    set_double("window.im_max", &config.window.im_max);
    set_int("scan.resolution", &config.scan.resolution);
    set_int("scan.N", &config.scan.N);
    set_double("scan.threshold", &config.scan.threshold);
    set_int("scan.grid_size", &config.scan.grid_size);
    set_int("lattice.mn_bound", &config.mn_bound);
    set_double("lattice.tol", &config.lattice_tol);
    if (has("output.directory")) config.output_directory = values.at("output.directory");
    if (has("output.formats")) {
      config.formats.clear();
      std::stringstream ss(values.at("output.formats"));
      std::string f;
      while (std::getline(ss, f, ',')) config.formats.insert(f);
    }
    config.validate();
  }
};

RunConfig load_config(const std::string& config_file, const Overrides& overrides) {
  RunConfig config;
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw ConfigError("cannot read config file '" + config_file + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    config = RunConfig::from_json(j);
  }
  overrides.apply(config);
  return config;
}

std::filesystem::path out_path(const RunConfig& config, const std::string& name) {
  return std::filesystem::path(config.output_directory) / name;
}

void write_json(const std::filesystem::path& file, const nlohmann::json& j) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  out << j.dump(2) << '\n';
}

int cmd_simulate(const RunConfig& config, const std::string& path_str,
                 double max_step, double tol) {
  PathSpec path;
  path.vertices = {Complex(0.0)};
  for (Complex v : parse_path_vertices(path_str)) path.vertices.push_back(v);
  if (path.vertices.size() < 2)
    throw ConfigError("simulate needs --path with at least one vertex");
  path.max_step = max_step;
  path.tol = tol;

  nlohmann::json summary;
  int exit_code = kExitOk;
  try {
    const SystemTrajectory traj = integrate_system(config.lax, path);
    if (config.formats.count("csv"))
      write_trajectory_csv(out_path(config, "trajectory.csv"), traj);
    summary["status"] = "completed";
    summary["max_A_drift"] = traj.max_A_drift;
    summary["max_B_drift"] = traj.max_B_drift;
    summary["samples"] = traj.samples.size();
  } catch (const BlowUpError& e) {
    // Re-run along the blow-up direction to fit the pole.
    const Complex dir = e.t_estimate / std::abs(e.t_estimate);
    try {
      const PoleEstimate est =
          detect_blowup(config.lax, dir, 1.2 * std::abs(e.t_estimate), path.tol);
      summary["pole"] = {{"t", complex_to_json(est.t_star)},
                         {"exponent", est.exponent},
                         {"fit_residual", est.fit_residual}};
    } catch (const Error&) {
      summary["pole"] = {{"t", complex_to_json(e.t_estimate)}};
    }
    summary["status"] = "blow-up";
    exit_code = kExitBlowUp;
  }
  if (config.formats.count("json"))
    write_json(out_path(config, "simulate_summary.json"), summary);
  std::cout << summary.dump(2) << '\n';
  return exit_code;
}

int cmd_lattice(const RunConfig& config) {
  const BranchData branch = branch_points(config.lax);
  const LatticeReport classical =
      classical_lattice(config.lax, config.window, config.mn_bound);
  const LatticeReport rh = rh_lattice(config.lax, config.window, config.mn_bound);
  const PeriodRelations relations = period_relations(branch);
  const MatchReport match = compare_lattices(classical, rh, config.lattice_tol);

  const nlohmann::json j =
      lattice_report_json(classical, rh, branch, relations, match);
  if (config.formats.count("json")) write_json(out_path(config, "lattice.json"), j);
  if (config.formats.count("csv"))
    write_lattice_csv(out_path(config, "lattice.csv"), classical, rh);
  std::cout << "lattice points: " << classical.points.size() << " classical, "
            << rh.points.size() << " rh; match "
            << (match.bijection ? "bijective" : "FAILED") << ", max distance "
            << format_double(match.max_distance) << '\n';
  return match.bijection && match.max_distance < config.lattice_tol ? kExitOk
                                                                    : kExitFailure;
}

int cmd_scan(const RunConfig& config) {
  const ScanResult result = scan(config.lax, config.window, config.scan);
  if (config.formats.count("csv"))
    write_scan_csv(out_path(config, "scan.csv"), result);
  if (config.formats.count("json"))
    write_json(out_path(config, "scan_candidates.json"),
               scan_candidates_json(result));
  std::cout << "scan candidates: " << result.candidates.size() << '\n';
  return kExitOk;
}

int cmd_refine(const RunConfig& config, const std::string& guess_str,
               const std::string& schedule_str) {
  const Complex guess = parse_complex(guess_str);
  std::vector<int> schedule;
  std::stringstream ss(schedule_str);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) schedule.push_back(std::stoi(item));
  if (schedule.empty()) schedule = {16, 32, 64};

  const LatticePoint p = refine_singularity(config.lax, guess, schedule);
  nlohmann::json j{{"t", complex_to_json(p.t)}, {"source", to_string(p.source)}};
  if (config.formats.count("json")) write_json(out_path(config, "refine.json"), j);
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& config) {
  const auto results = run_verification(config.lax);
  size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.suite.size() + r.name.size());
  bool all_ok = true;
  std::string first_failing;
  for (const auto& r : results) {
    const bool ok = r.passed();
    if (!ok && first_failing.empty()) first_failing = r.suite;
    all_ok = all_ok && ok;
    std::string label = r.suite + ": " + r.name;
    label.resize(width + 4, ' ');
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << label
              << " residual=" << format_double(r.residual)
              << " bound=" << format_double(r.bound) << '\n';
  }
  if (!all_ok) {
    std::cout << "verification FAILED in suite: " << first_failing << '\n';
    return kExitVerifyFailed;
  }
  std::cout << "all verification suites passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complex-time singularity toolkit for a family of Lax flows"};
  app.require_subcommand(1);
  app.fallthrough();  // config overrides may appear after the subcommand

  std::string config_file;
  app.add_option("--config", config_file, "JSON run configuration");

  Overrides overrides;
  for (const char* key :
       {"lax.a", "lax.x0", "lax.y0", "lax.z0", "lax.tol", "window.re_min",
        "window.re_max", "window.im_min", "window.im_max", "scan.resolution",
        "scan.N", "scan.threshold", "scan.grid_size", "lattice.mn_bound",
        "lattice.tol", "output.directory", "output.formats"}) {
    app.add_option_function<std::string>(
        std::string("--") + key,
        [&overrides, key](const std::string& v) { overrides.values[key] = v; },
        "override config field " + std::string(key));
  }

  auto* simulate = app.add_subcommand("simulate", "integrate the system along a path");
  std::string path_str;
  double path_max_step = 0.05, path_tol = 1e-10;
  simulate->add_option("--path", path_str,
                       "polyline vertices after 0, as re,im;re,im;...");
  simulate->add_option("--path.max_step", path_max_step, "maximum step size");
  simulate->add_option("--path.tol", path_tol, "local error tolerance");

  auto* lattice = app.add_subcommand("lattice", "closed-form singularity lattices");
  auto* scan_cmd = app.add_subcommand("scan", "sigma_min scan over the window");
  auto* refine = app.add_subcommand("refine", "refine a singularity candidate");
  std::string guess_str, schedule_str = "16,32,64";
  refine->add_option("--t-guess", guess_str, "starting point, re,im")->required();
  refine->add_option("--schedule", schedule_str, "truncation order schedule");
  auto* verify = app.add_subcommand("verify", "run the cross-module property suite");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = load_config(config_file, overrides);
    if (simulate->parsed())
      return cmd_simulate(config, path_str, path_max_step, path_tol);
    if (lattice->parsed()) return cmd_lattice(config);
    if (scan_cmd->parsed()) return cmd_scan(config);
    if (refine->parsed()) return cmd_refine(config, guess_str, schedule_str);
    if (verify->parsed()) return cmd_verify(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DegenerateCurve& e) {
    std::cerr << "degenerate curve: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
