#pragma once

#include <filesystem>
#include <string>

#include "laxlab/flow.hpp"
#include "laxlab/lattice.hpp"
#include "laxlab/run_config.hpp"
#include "laxlab/toeplitz.hpp"

namespace laxlab {

/// All floats in file outputs carry 17 significant digits.
std::string format_double(double v);

void write_trajectory_csv(const std::filesystem::path& file,
                          const SystemTrajectory& traj);

nlohmann::json lattice_report_json(const LatticeReport& classical,
                                   const LatticeReport& rh,
                                   const BranchData& branch,
                                   const PeriodRelations& relations,
                                   const MatchReport& match);
void write_lattice_csv(const std::filesystem::path& file,
                       const LatticeReport& classical, const LatticeReport& rh);
std::vector<LatticePoint> lattice_points_from_json(const nlohmann::json& j);

void write_scan_csv(const std::filesystem::path& file, const ScanResult& result);
nlohmann::json scan_candidates_json(const ScanResult& result);

}  // namespace laxlab
