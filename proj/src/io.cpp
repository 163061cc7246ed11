#include "laxlab/io.hpp"

#include <cstdio>
#include <fstream>

namespace laxlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw Error("cannot open '" + file.string() + "' for writing");
  return out;
}

nlohmann::json point_json(const LatticePoint& p) {
  return {{"t", complex_to_json(p.t)},
          {"m", p.m},
          {"n", p.n},
          {"source", to_string(p.source)}};
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& file,
                          const SystemTrajectory& traj) {
  auto out = open_out(file);
  out << "t_re,t_im,x_re,x_im,y_re,y_im,z_re,z_im,A_drift,B_drift\n";
  for (const auto& s : traj.samples) {
    out << format_double(s.t.real()) << ',' << format_double(s.t.imag()) << ','
        << format_double(s.x.real()) << ',' << format_double(s.x.imag()) << ','
        << format_double(s.y.real()) << ',' << format_double(s.y.imag()) << ','
        << format_double(s.z.real()) << ',' << format_double(s.z.imag()) << ','
        << format_double(s.A_drift) << ',' << format_double(s.B_drift) << '\n';
  }
}

nlohmann::json lattice_report_json(const LatticeReport& classical,
                                   const LatticeReport& rh,
                                   const BranchData& branch,
                                   const PeriodRelations& relations,
                                   const MatchReport& match) {
  nlohmann::json j;
  j["branch"] = {{"x1", complex_to_json(branch.x1)},
                 {"x2", complex_to_json(branch.x2)},
                 {"lambda1", complex_to_json(branch.lambda1)},
                 {"lambda2", complex_to_json(branch.lambda2)},
                 {"k", complex_to_json(branch.k)},
                 {"k1", complex_to_json(branch.k1)},
                 {"lhat1", complex_to_json(branch.lhat1)},
                 {"lhat2", complex_to_json(branch.lhat2)},
                 {"mu_hat_sign", branch.mu_hat_sign}};
  j["offsets"] = {{"u0", complex_to_json(classical.offsets.u0)},
                  {"xi0", complex_to_json(rh.offsets.xi0)},
                  {"lambda0", complex_to_json(rh.offsets.lambda0)}};
  j["periods"] = {{"K", complex_to_json(classical.periods.K)},
                  {"Kprime", complex_to_json(classical.periods.Kprime)},
                  {"K1", complex_to_json(classical.periods.K1)},
                  {"K1prime", complex_to_json(classical.periods.K1prime)}};
  j["orientation"] = {{"eps1", complex_to_json(relations.eps1)},
                      {"eps2", complex_to_json(relations.eps2)},
                      {"resid1", relations.resid1},
                      {"resid2", relations.resid2}};
  j["match"] = {{"bijection", match.bijection},
                {"max_distance", match.max_distance},
                {"unmatched_classical", match.unmatched1.size()},
                {"unmatched_rh", match.unmatched2.size()}};
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : classical.points) pts.push_back(point_json(p));
  for (const auto& p : rh.points) pts.push_back(point_json(p));
  j["points"] = pts;
  return j;
}

void write_lattice_csv(const std::filesystem::path& file,
                       const LatticeReport& classical, const LatticeReport& rh) {
  auto out = open_out(file);
  out << "t_re,t_im,m,n,source\n";
  for (const LatticeReport* rep : {&classical, &rh})
    for (const auto& p : rep->points)
      out << format_double(p.t.real()) << ',' << format_double(p.t.imag()) << ','
          << p.m << ',' << p.n << ',' << to_string(p.source) << '\n';
}

std::vector<LatticePoint> lattice_points_from_json(const nlohmann::json& j) {
  std::vector<LatticePoint> out;
  for (const auto& p : j.at("points")) {
    LatticePoint lp;
    lp.t = complex_from_json(p.at("t"), "t");
    lp.m = p.at("m").get<int>();
    lp.n = p.at("n").get<int>();
    lp.source = source_from_string(p.at("source").get<std::string>());
    out.push_back(lp);
  }
  return out;
}

void write_scan_csv(const std::filesystem::path& file, const ScanResult& result) {
  auto out = open_out(file);
  out << "t_re,t_im,sigma_min\n";
  const int R = result.resolution;
  for (int iy = 0; iy < R; ++iy)
    for (int ix = 0; ix < R; ++ix) {
      const double re = result.window.re_min +
                        (result.window.re_max - result.window.re_min) * ix /
                            double(R - 1);
      const double im = result.window.im_min +
                        (result.window.im_max - result.window.im_min) * iy /
                            double(R - 1);
      out << format_double(re) << ',' << format_double(im) << ','
          << format_double(result.sigma[static_cast<size_t>(iy) * R + ix]) << '\n';
    }
}

nlohmann::json scan_candidates_json(const ScanResult& result) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : result.candidates)
    arr.push_back({{"t", complex_to_json(c.t)},
                   {"sigma", c.sigma},
                   {"kernel_residual", c.kernel_residual}});
  return {{"candidates", arr}, {"count", result.candidates.size()}};
}

}  // namespace laxlab
