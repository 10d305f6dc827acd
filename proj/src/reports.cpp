#include "kwc/reports.hpp"

#include <bit>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "kwc/operators.hpp"

namespace kwc {

std::string config_hash(const nlohmann::json& canonical) {
  const std::string dump = canonical.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json to_json(const ConstantsReport& c) {
  return {
      {"R0", c.R0},
      {"R_star", c.R_star},
      {"C1", c.C1},
      {"C2", c.C2},
      {"C3", c.C3},
      {"C4", c.C4},
      {"C5", c.C5},
      {"C6", c.C6},
      {"C7", c.C7},
      {"C8", c.C8},
      {"C9", c.C9},
      {"R1", c.R1},
      {"R2", c.R2},
      {"R3", c.R3},
      {"tau_star", c.tau_star},
      {"sup_norms",
       {{"alpha", c.alpha_sup},
        {"alpha_prime", c.alpha_prime_sup},
        {"alpha0", c.alpha0_sup},
        {"alpha0_prime", c.alpha0_prime_sup},
        {"G", c.G_sup},
        {"G_at_zero", c.G_at_zero},
        {"g_prime", c.g_prime_sup}}},
      {"eta_coupling_unsquared", c.eta_coupling_unsquared},
      {"eta_coupling_squared", c.eta_coupling_squared},
      {"context",
       {{"kappa", c.kappa},
        {"delta_star", c.delta_star},
        {"M0", c.M0},
        {"nu0", c.nu0},
        {"T", c.T},
        {"tau", c.tau},
        {"nu", c.nu},
        {"eps", c.eps},
        {"L", c.L},
        {"measure", c.measure}}},
  };
}

nlohmann::json to_json(const StepDiagnostics& d) {
  return {{"eta_residual", d.eta_residual},
          {"theta_residual", d.theta_residual},
          {"energy_before", d.energy_before},
          {"energy_after", d.energy_after},
          {"dissipation_lhs", d.dissipation_lhs},
          {"dissipation_rhs", d.dissipation_rhs},
          {"dissipation_lhs_alpha", d.dissipation_lhs_alpha},
          {"linf_eta", d.linf_eta},
          {"linf_theta", d.linf_theta},
          {"newton_iters_eta", d.newton_iters_eta},
          {"newton_iters_theta", d.newton_iters_theta}};
}

nlohmann::json to_json(const MembershipReport& m) {
  return {{"member", m.member},
          {"sup_ok", m.sup_ok},
          {"l2_ok", m.l2_ok},
          {"energy_ok", m.energy_ok},
          {"sup_value", m.sup_value},
          {"sup_margin", m.sup_margin},
          {"l2_value", m.l2_value},
          {"l2_margin", m.l2_margin},
          {"energy_value", m.energy_value},
          {"energy_margin", m.energy_margin}};
}

nlohmann::json to_json(const XSequenceReport& x) {
  return {{"values", x.values},
          {"itau_energy", x.itau_energy},
          {"hypothesis", x.hypothesis},
          {"flag_a", x.flag_a},
          {"flag_b", x.flag_b}};
}

nlohmann::json to_json(const ConvergenceReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"nu", l.nu},
                      {"eps", l.eps},
                      {"m", l.m},
                      {"solved", l.solved},
                      {"error", l.error},
                      {"fp_residual", l.fp_residual},
                      {"iterations", l.iterations},
                      {"time_tv", l.time_tv},
                      {"terminal_energy", l.terminal_energy},
                      {"max_itau_energy", l.max_itau_energy},
                      {"tv_bound", l.tv_bound},
                      {"energy_bound", l.energy_bound},
                      {"within_bounds", l.within_bounds}});
  }
  return {{"levels", levels},
          {"successive_distances", r.successive_distances},
          {"cauchy_trend", r.cauchy_trend},
          {"note", r.note}};
}

namespace {

void write_le_doubles(std::ofstream& out, const std::vector<double>& v) {
  for (double x : v) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    unsigned char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
    out.write(reinterpret_cast<const char*>(b), 8);
  }
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write snapshot: " + path.string());
  write_le_doubles(out, f.values());
  if (!out) throw std::runtime_error("snapshot write failed: " + path.string());
}

ScalarField read_snapshot(const std::filesystem::path& path, const Grid& grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read snapshot: " + path.string());
  ScalarField f(grid);
  for (int c = 0; c < f.size(); ++c) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("snapshot truncated: " + path.string());
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
    f[c] = std::bit_cast<double>(bits);
  }
  return f;
}

nlohmann::json snapshot_sidecar(const Grid& grid,
                                const std::vector<std::string>& files) {
  return {{"grid",
           {{"dim", grid.dim},
            {"cells", grid.dim == 1 ? std::vector<int>{grid.cells[0]}
                                    : std::vector<int>{grid.cells[0],
                                                       grid.cells[1]}},
            {"spacing", grid.dim == 1
                            ? std::vector<double>{grid.spacing[0]}
                            : std::vector<double>{grid.spacing[0],
                                                  grid.spacing[1]}}}},
          {"layout", "row-major, x fastest"},
          {"dtype", "float64 little-endian"},
          {"files", files}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

TrajectoryOutputs write_trajectory_outputs(
    const std::filesystem::path& out_dir, const std::string& hash,
    const Trajectory& traj, const XSequenceReport& xs,
    const nlohmann::json& extra, bool snapshots) {
  std::filesystem::create_directories(out_dir);
  TrajectoryOutputs paths;
  paths.report_path = out_dir / ("report_" + hash + ".json");
  paths.series_path = out_dir / ("series_" + hash + ".csv");

  nlohmann::json steps = nlohmann::json::array();
  for (const auto& d : traj.diagnostics) steps.push_back(to_json(d));
  nlohmann::json report = extra;
  report["steps"] = steps;
  report["x_sequence"] = to_json(xs);
  report["R0"] = traj.R0;
  write_text(paths.report_path, report.dump(2) + "\n");

  const int m = traj.step_count();
  const double T_step = m > 0 ? 1.0 / m : 1.0;
  std::ostringstream csv;
  csv.precision(17);
  csv << "step,time_fraction,energy,x_i,tv_theta,eta_residual,theta_residual,"
         "diss_lhs,diss_rhs,linf_eta,linf_theta\n";
  for (int i = 0; i <= m; ++i) {
    const State& st = traj.states[static_cast<std::size_t>(i)];
    csv << i << ',' << i * T_step << ',' << traj.energy_at(i) << ','
        << xs.values[static_cast<std::size_t>(i)] << ','
        << total_variation(st.theta) << ',';
    if (i == 0) {
      csv << "0,0,0,0," << st.eta.linf() << ',' << st.theta.linf() << '\n';
    } else {
      const StepDiagnostics& d = traj.diagnostics[static_cast<std::size_t>(i - 1)];
      csv << d.eta_residual << ',' << d.theta_residual << ','
          << d.dissipation_lhs << ',' << d.dissipation_rhs << ','
          << d.linf_eta << ',' << d.linf_theta << '\n';
    }
  }
  write_text(paths.series_path, csv.str());

  if (snapshots) {
    paths.snapshot_dir = out_dir / ("snapshots_" + hash);
    std::filesystem::create_directories(paths.snapshot_dir);
    std::vector<std::string> files;
    char name[64];
    for (int i = 0; i <= m; ++i) {
      const State& st = traj.states[static_cast<std::size_t>(i)];
      std::snprintf(name, sizeof(name), "eta_%04d.bin", i);
      write_snapshot(paths.snapshot_dir / name, st.eta);
      files.emplace_back(name);
      std::snprintf(name, sizeof(name), "theta_%04d.bin", i);
      write_snapshot(paths.snapshot_dir / name, st.theta);
      files.emplace_back(name);
    }
    write_text(paths.snapshot_dir / "sidecar.json",
               snapshot_sidecar(traj.initial().eta.grid(), files).dump(2) + "\n");
  }
  return paths;
}

void write_refine_outputs(const std::filesystem::path& out_dir,
                          const std::string& hash,
                          const ConvergenceReport& r) {
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / ("refine_" + hash + ".json"), to_json(r).dump(2) + "\n");

  auto two_column = [&](const std::string& metric, auto getter) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "level," << metric << "\n";
    for (std::size_t i = 0; i < r.levels.size(); ++i)
      csv << i + 1 << ',' << getter(r.levels[i]) << '\n';
    write_text(out_dir / ("refine_" + hash + "_" + metric + ".csv"), csv.str());
  };
  two_column("time_tv", [](const LevelResult& l) { return l.time_tv; });
  two_column("terminal_energy",
             [](const LevelResult& l) { return l.terminal_energy; });
  two_column("fp_residual", [](const LevelResult& l) { return l.fp_residual; });

  std::ostringstream csv;
  csv.precision(17);
  csv << "level,successive_distance\n";
  for (std::size_t i = 0; i < r.successive_distances.size(); ++i)
    csv << i + 2 << ',' << r.successive_distances[i] << '\n';
  write_text(out_dir / ("refine_" + hash + "_distance.csv"), csv.str());
}

}  // namespace kwc
