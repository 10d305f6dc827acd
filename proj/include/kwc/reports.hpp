#ifndef KWC_REPORTS_HPP
#define KWC_REPORTS_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "kwc/constants.hpp"
#include "kwc/lab.hpp"
#include "kwc/periodic.hpp"
#include "kwc/stepper.hpp"

namespace kwc {

/// FNV-1a over the canonical dump; 16 hex digits.
std::string config_hash(const nlohmann::json& canonical);

nlohmann::json to_json(const ConstantsReport& c);
nlohmann::json to_json(const StepDiagnostics& d);
nlohmann::json to_json(const MembershipReport& m);
nlohmann::json to_json(const XSequenceReport& x);
nlohmann::json to_json(const ConvergenceReport& r);

/// Flat binary snapshot: row-major cell values, 8-byte little-endian
/// floats, plus a JSON sidecar describing grid and layout.
void write_snapshot(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_snapshot(const std::filesystem::path& path, const Grid& grid);
nlohmann::json snapshot_sidecar(const Grid& grid,
                                const std::vector<std::string>& files);

void write_text(const std::filesystem::path& path, const std::string& text);

/// JSON report + CSV time series (one row per state, m + 1 rows) +
/// optional per-step snapshots. File names derive from the config hash.
struct TrajectoryOutputs {
  std::filesystem::path report_path, series_path, snapshot_dir;
};
TrajectoryOutputs write_trajectory_outputs(
    const std::filesystem::path& out_dir, const std::string& hash,
    const Trajectory& traj, const XSequenceReport& xs,
    const nlohmann::json& extra, bool snapshots);

/// ConvergenceReport as JSON plus two-column (level, metric) plot data.
void write_refine_outputs(const std::filesystem::path& out_dir,
                          const std::string& hash, const ConvergenceReport& r);

}  // namespace kwc

#endif
