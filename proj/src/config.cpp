#include "kwc/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "kwc/operators.hpp"
#include "kwc/reports.hpp"
#include "kwc/solver.hpp"

namespace kwc {

namespace {

double get_or(const nlohmann::json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int get_or(const nlohmann::json& j, const char* key, int fallback) {
  return j.contains(key) ? j.at(key).get<int>() : fallback;
}

Waveform parse_waveform(const nlohmann::json& j) {
  const std::string kind = j.value("waveform", "constant");
  if (kind == "constant") return Waveform::constant(get_or(j, "value", 0.0));
  if (kind == "sinusoid")
    return Waveform::sinusoid(get_or(j, "amplitude", 0.0),
                              get_or(j, "phase", 0.0));
  if (kind == "tabulated")
    return Waveform::tabulated(j.at("samples").get<std::vector<double>>());
  throw std::invalid_argument("unknown waveform: " + kind);
}

Grid parse_grid(const nlohmann::json& j) {
  const int dim = get_or(j, "dim", 1);
  const auto cells = j.at("cells").get<std::vector<int>>();
  const auto extents = j.at("extents").get<std::vector<double>>();
  if (static_cast<int>(cells.size()) != dim ||
      static_cast<int>(extents.size()) != dim)
    throw std::invalid_argument("grid: cells/extents must have dim entries");
  if (dim == 1) return Grid::line(cells[0], extents[0]);
  return Grid::box(cells[0], cells[1], extents[0], extents[1]);
}

}  // namespace

double SeedSpec::sup_bound() const {
  switch (kind) {
    case Kind::constant:
      return std::max(std::abs(eta), std::abs(theta));
    case Kind::random:
      return bound;
    case Kind::file:
      return 0.0;  // resolved after loading the fields
  }
  return 0.0;
}

State SeedSpec::build(const Grid& grid) const {
  switch (kind) {
    case Kind::constant:
      return State(ScalarField(grid, eta), ScalarField(grid, theta), 0);
    case Kind::random: {
      std::mt19937_64 rng(rng_seed);
      std::uniform_real_distribution<double> dist(-bound, bound);
      State st = State::zero(grid);
      for (int c = 0; c < st.eta.size(); ++c) st.eta[c] = dist(rng);
      for (int c = 0; c < st.theta.size(); ++c) st.theta[c] = dist(rng);
      return st;
    }
    case Kind::file:
      return State(read_snapshot(eta_file, grid),
                   read_snapshot(theta_file, grid), 0);
  }
  return State::zero(grid);
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.raw = j;
  cfg.grid = parse_grid(j.at("grid"));

  const auto& jm = j.at("model");
  cfg.model.kappa = get_or(jm, "kappa", 1.0);
  cfg.model.M0 = get_or(jm, "M0", 1.0);
  cfg.model.nu0 = get_or(jm, "nu0", 0.0);
  cfg.model.delta_star = get_or(jm, "delta_star", 0.1);
  if (jm.contains("g")) {
    const auto& jg = jm.at("g");
    cfg.model.g_family = GFamily::parse(jg.value("family", "linear"),
                                        get_or(jg, "a", 2.0),
                                        get_or(jg, "b", 3.0));
  }
  if (jm.contains("alpha")) {
    const auto& ja = jm.at("alpha");
    if (ja.value("family", "quadratic") != "quadratic")
      throw std::invalid_argument("unknown alpha family");
    cfg.model.alpha_family.c = get_or(ja, "c", 1.0);
  }
  if (jm.contains("alpha0")) {
    const auto& ja = jm.at("alpha0");
    if (ja.value("family", "quadratic") != "quadratic")
      throw std::invalid_argument("unknown alpha0 family");
    cfg.model.alpha0_family.c = get_or(ja, "c", 1.0);
  }
  cfg.model.sync_floors();

  const auto& js = j.at("scheme");
  cfg.scheme.m = get_or(js, "m", 32);
  cfg.scheme.T = get_or(js, "T", 1.0);
  cfg.scheme.nu = get_or(js, "nu", 0.5);
  cfg.scheme.eps = get_or(js, "eps", 0.01);
  cfg.scheme.L = get_or(js, "L", 1.0);
  cfg.scheme.newton_tol = get_or(js, "newton_tol", 1e-10);
  cfg.scheme.cg_tol = get_or(js, "cg_tol", 1e-12);
  cfg.scheme.fp_tol = get_or(js, "fp_tol", -1.0);
  cfg.scheme.relaxation = get_or(js, "relaxation", 1.0);
  cfg.scheme.newton_max = get_or(js, "newton_max", 60);
  cfg.scheme.cg_max = get_or(js, "cg_max", 20000);
  cfg.scheme.fp_max = get_or(js, "fp_max", 500);

  if (j.contains("forcing")) {
    const auto& jf = j.at("forcing");
    if (jf.contains("u")) cfg.forcing_u = parse_waveform(jf.at("u"));
    if (jf.contains("v")) cfg.forcing_v = parse_waveform(jf.at("v"));
  }

  if (j.contains("seed_state")) {
    const auto& jd = j.at("seed_state");
    const std::string kind = jd.value("kind", "constant");
    if (kind == "constant") {
      cfg.seed.kind = SeedSpec::Kind::constant;
      cfg.seed.eta = get_or(jd, "eta", 0.0);
      cfg.seed.theta = get_or(jd, "theta", 0.0);
    } else if (kind == "random") {
      cfg.seed.kind = SeedSpec::Kind::random;
      cfg.seed.bound = get_or(jd, "bound", 0.1);
      cfg.seed.rng_seed = jd.value("rng_seed", std::uint64_t{1});
    } else if (kind == "file") {
      cfg.seed.kind = SeedSpec::Kind::file;
      cfg.seed.eta_file = jd.at("eta").get<std::string>();
      cfg.seed.theta_file = jd.at("theta").get<std::string>();
    } else {
      throw std::invalid_argument("unknown seed_state kind: " + kind);
    }
  }

  if (j.contains("refine")) {
    const auto& jr = j.at("refine");
    cfg.has_refine = true;
    if (jr.contains("nu_seq")) {
      cfg.refine.nu_seq = jr.at("nu_seq").get<std::vector<double>>();
      cfg.refine.eps_seq = jr.at("eps_seq").get<std::vector<double>>();
      cfg.refine.m_seq = jr.at("m_seq").get<std::vector<int>>();
    } else {
      cfg.refine = RefinementPlan::dyadic(cfg.model, get_or(jr, "levels", 8),
                                          get_or(jr, "m0", 16),
                                          get_or(jr, "m_cap", 1024));
    }
  }

  if (j.contains("mosco")) {
    cfg.mosco_levels = get_or(j.at("mosco"), "levels", 8);
    cfg.mosco_rng_seed = j.at("mosco").value("rng_seed", std::uint64_t{1});
  }
  if (j.contains("probe") && j.at("probe").contains("deltas"))
    cfg.probe_deltas = j.at("probe").at("deltas").get<std::vector<double>>();
  if (j.contains("output"))
    cfg.snapshots = j.at("output").value("snapshots", false);
  return cfg;
}

void apply_override(nlohmann::json& j, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must be KEY=VALUE: " + spec);
  std::string key = spec.substr(0, eq);
  const std::string value = spec.substr(eq + 1);
  std::string pointer = "/";
  for (char c : key) pointer += (c == '.') ? '/' : c;
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(value);
  } catch (const nlohmann::json::parse_error&) {
    parsed = value;
  }
  j[nlohmann::json::json_pointer(pointer)] = parsed;
}

RunConfig RunConfig::load(const std::string& path,
                          const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  for (const auto& o : overrides) apply_override(j, o);
  return from_json(j);
}

std::vector<std::string> RunConfig::validate() const {
  std::vector<std::string> bad;
  auto structural = model.structural_violations();
  for (const auto& tag : structural)
    bad.push_back(tag + " violated: coefficient family structure");

  if (!(model.delta_star > 0.0 && model.delta_star < 1.0))
    bad.push_back("(A3) violated: delta_star must lie in (0,1)");

  auto finite_waveform = [](const Waveform& w) {
    if (!std::isfinite(w.value) || !std::isfinite(w.amplitude) ||
        !std::isfinite(w.phase))
      return false;
    for (double s : w.samples)
      if (!std::isfinite(s)) return false;
    return true;
  };
  if (!finite_waveform(forcing_u) || !finite_waveform(forcing_v))
    bad.push_back("(A2) violated: forcing must be bounded (finite values)");

  const double lip = model.dg_sup();
  if (!(scheme.m > 4.0 * scheme.T * (lip + 1.0))) {
    std::ostringstream msg;
    msg << "(A5) violated: m = " << scheme.m << " must exceed 4 T (|g'|+1) = "
        << 4.0 * scheme.T * (lip + 1.0);
    bad.push_back(msg.str());
  }
  if (!(scheme.eps > 0.0 && scheme.eps < 1.0))
    bad.push_back("(A6) violated: eps must lie in (0,1)");
  if (!(scheme.nu > 0.0 && scheme.nu <= model.nu0 + 1.0))
    bad.push_back("(A6) violated: nu must lie in (0, nu0 + 1]");
  if (forcing_u.kind == Waveform::Kind::tabulated &&
      static_cast<int>(forcing_u.samples.size()) != scheme.m)
    bad.push_back("(A7) violated: tabulated u must supply m step averages");
  if (forcing_v.kind == Waveform::Kind::tabulated &&
      static_cast<int>(forcing_v.samples.size()) != scheme.m)
    bad.push_back("(A7) violated: tabulated v must supply m step averages");

  if (!(scheme.T > 0.0) || scheme.m < 1)
    bad.push_back("(A5) violated: T > 0 and m >= 1 required");
  if (!(scheme.newton_tol > 0.0) || !(scheme.cg_tol > 0.0) ||
      scheme.newton_max < 1 || scheme.cg_max < 1 || scheme.fp_max < 1)
    bad.push_back("config: solver tolerances and caps must be positive");
  if (!(scheme.relaxation > 0.0 && scheme.relaxation <= 1.0))
    bad.push_back("config: relaxation must lie in (0,1]");
  if (seed.kind == SeedSpec::Kind::random && seed.bound < 0.0)
    bad.push_back("config: random seed bound must be nonnegative");
  return bad;
}

std::string RunConfig::hash() const { return config_hash(raw); }

ForcingSchedule RunConfig::build_forcing() const {
  return ForcingSchedule::from_waveforms(grid, forcing_u, forcing_v, scheme,
                                         model, seed.sup_bound());
}

namespace {

struct CliOptions {
  std::string subcommand;
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  bool snapshots = false;
  bool seed_given = false;
  std::uint64_t seed = 0;
};

const char* kUsage =
    "usage: kwc <subcommand> --config PATH [--out DIR]\n"
    "           [--override KEY=VALUE]... [--snapshots] [--seed N]\n"
    "subcommands:\n"
    "  constants         evaluate the a-priori constants report\n"
    "  run-trajectory    run m scheme steps from the seed state\n"
    "  solve-periodic    Picard search for the periodic solution\n"
    "  refine-study      eps/nu/m refinement study of periodic solves\n"
    "  mosco-check       functional-convergence diagnostic on random data\n"
    "  dependence-probe  continuous-dependence probe on data perturbations\n";

int parse_cli(const std::vector<std::string>& args, CliOptions& opt,
              std::string& err) {
  static const std::vector<std::string> subcommands = {
      "constants",    "run-trajectory", "solve-periodic",
      "refine-study", "mosco-check",    "dependence-probe"};
  if (args.empty()) {
    err = "missing subcommand";
    return 2;
  }
  opt.subcommand = args[0];
  bool known = false;
  for (const auto& s : subcommands) known = known || s == opt.subcommand;
  if (!known) {
    err = "unknown subcommand: " + opt.subcommand;
    return 2;
  }
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto next = [&](const char* flag) -> const std::string& {
      if (i + 1 >= args.size())
        throw std::invalid_argument(std::string(flag) + " needs a value");
      return args[++i];
    };
    try {
      if (a == "--config")
        opt.config_path = next("--config");
      else if (a == "--out")
        opt.out_dir = next("--out");
      else if (a == "--override")
        opt.overrides.push_back(next("--override"));
      else if (a == "--snapshots")
        opt.snapshots = true;
      else if (a == "--seed") {
        opt.seed = std::stoull(next("--seed"));
        opt.seed_given = true;
      } else {
        err = "unknown flag: " + a;
        return 2;
      }
    } catch (const std::exception& e) {
      err = e.what();
      return 2;
    }
  }
  if (opt.config_path.empty()) {
    err = "--config PATH is required";
    return 2;
  }
  return 0;
}

int cmd_constants(const RunConfig& cfg, const CliOptions& opt) {
  const ForcingSchedule f = cfg.build_forcing();
  const ConstantsReport c =
      compute_constants(cfg.model, cfg.scheme, cfg.grid, f.R0, cfg.scheme.nu);
  const nlohmann::json j = to_json(c);
  std::filesystem::create_directories(opt.out_dir);
  write_text(std::filesystem::path(opt.out_dir) /
                 ("constants_" + cfg.hash() + ".json"),
             j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_run_trajectory(const RunConfig& cfg, const CliOptions& opt) {
  const ForcingSchedule f = cfg.build_forcing();
  const State seed = cfg.seed.build(cfg.grid);
  const Trajectory traj = run_trajectory(seed, f, cfg.scheme, cfg.model);
  const ConstantsReport c =
      compute_constants(cfg.model, cfg.scheme, cfg.grid, f.R0, cfg.scheme.nu);
  const XSequenceReport xs = x_sequence(traj, c, cfg.scheme);
  nlohmann::json extra = {{"command", "run-trajectory"},
                          {"config_hash", cfg.hash()},
                          {"constants", to_json(c)},
                          {"in_class_Z", f.in_class_Z}};
  const auto paths = write_trajectory_outputs(
      opt.out_dir, cfg.hash(), traj, xs, extra, opt.snapshots || cfg.snapshots);
  std::cout << "wrote " << paths.report_path.string() << "\n";
  return 0;
}

int cmd_solve_periodic(const RunConfig& cfg, const CliOptions& opt) {
  const ForcingSchedule f = cfg.build_forcing();
  const State seed = cfg.seed.build(cfg.grid);
  const PeriodicSolution sol =
      find_periodic(f, cfg.scheme, cfg.model, cfg.scheme.relaxation, seed);
  const ConstantsReport c =
      compute_constants(cfg.model, cfg.scheme, cfg.grid, f.R0, cfg.scheme.nu);
  const XSequenceReport xs = x_sequence(sol.trajectory, c, cfg.scheme);
  nlohmann::json extra = {{"command", "solve-periodic"},
                          {"config_hash", cfg.hash()},
                          {"fp_residual", sol.fp_residual},
                          {"iterations", sol.iterations},
                          {"residual_history", sol.residual_history},
                          {"membership", to_json(sol.membership)},
                          {"constants", to_json(c)},
                          {"in_class_Z", f.in_class_Z}};
  const auto paths =
      write_trajectory_outputs(opt.out_dir, cfg.hash(), sol.trajectory, xs,
                               extra, opt.snapshots || cfg.snapshots);
  std::cout << "periodic solution: residual " << sol.fp_residual << " after "
            << sol.iterations << " iterations; wrote "
            << paths.report_path.string() << "\n";
  return 0;
}

int cmd_refine_study(const RunConfig& cfg, const CliOptions& opt) {
  const RefinementPlan plan =
      cfg.has_refine ? cfg.refine : RefinementPlan::dyadic(cfg.model);
  const State seed = cfg.seed.build(cfg.grid);
  const ConvergenceReport rep =
      refine_study(plan, cfg.grid, cfg.forcing_u, cfg.forcing_v, cfg.model,
                   cfg.scheme, seed);
  write_refine_outputs(opt.out_dir, cfg.hash(), rep);
  int solved = 0;
  for (const auto& l : rep.levels) solved += l.solved ? 1 : 0;
  std::cout << "refine study: " << solved << "/" << rep.levels.size()
            << " levels solved\n";
  return 0;
}

int cmd_mosco_check(const RunConfig& cfg, const CliOptions& opt) {
  std::mt19937_64 rng(cfg.mosco_rng_seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const Grid& g = cfg.grid;

  auto random_field = [&](double bound) {
    ScalarField f(g);
    for (int c = 0; c < f.size(); ++c) f[c] = bound * unit(rng);
    return f;
  };
  const ScalarField eta_lim = random_field(0.5);
  const ScalarField theta_probe = random_field(1.0);
  const double nu_lim = cfg.scheme.nu;
  const double eps_lim = cfg.scheme.eps;
  std::vector<ScalarField> eta_seq;
  std::vector<double> nu_seq, eps_seq;
  for (int n = 1; n <= cfg.mosco_levels; ++n) {
    const double level = std::pow(2.0, -n);
    ScalarField e = eta_lim;
    const ScalarField bump = random_field(level);
    for (int c = 0; c < e.size(); ++c) e[c] += bump[c];
    eta_seq.push_back(std::move(e));
    nu_seq.push_back(std::min(nu_lim + 0.25 * level, cfg.model.nu0 + 1.0));
    eps_seq.push_back(eps_lim + 0.5 * (1.0 - eps_lim) * level);
  }
  const MoscoReport rep = mosco_diagnostic(eta_seq, eta_lim, theta_probe,
                                           nu_seq, eps_seq, nu_lim, eps_lim,
                                           cfg.model);
  nlohmann::json j = {{"command", "mosco-check"},
                      {"config_hash", cfg.hash()},
                      {"difference", rep.difference},
                      {"bound", rep.bound},
                      {"all_within", rep.all_within}};
  std::filesystem::create_directories(opt.out_dir);
  write_text(std::filesystem::path(opt.out_dir) /
                 ("mosco_" + cfg.hash() + ".json"),
             j.dump(2) + "\n");
  std::cout << "mosco diagnostic: "
            << (rep.all_within ? "bound holds at every level"
                               : "bound violated")
            << "\n";
  return rep.all_within ? 0 : 1;
}

int cmd_dependence_probe(const RunConfig& cfg, const CliOptions& opt) {
  const State base = cfg.seed.build(cfg.grid);
  const DependenceProbeResult rep = continuous_dependence_probe(
      cfg.grid, cfg.model, cfg.scheme, cfg.forcing_u, cfg.forcing_v, base,
      cfg.probe_deltas);
  nlohmann::json j = {{"command", "dependence-probe"},
                      {"config_hash", cfg.hash()},
                      {"deltas", rep.deltas},
                      {"eta_distance_H1", rep.eta_distance_H1},
                      {"theta_distance_X", rep.theta_distance_X},
                      {"admissible", rep.admissible},
                      {"distances_decrease", rep.distances_decrease}};
  std::filesystem::create_directories(opt.out_dir);
  write_text(std::filesystem::path(opt.out_dir) /
                 ("dependence_" + cfg.hash() + ".json"),
             j.dump(2) + "\n");
  std::cout << "dependence probe: distances "
            << (rep.distances_decrease ? "decrease" : "do not decrease")
            << " with delta\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CliOptions opt;
  std::string err;
  if (parse_cli(args, opt, err) != 0) {
    std::cerr << "error: " << err << "\n" << kUsage;
    return 2;
  }

  RunConfig cfg;
  try {
    cfg = RunConfig::load(opt.config_path, opt.overrides);
    if (opt.seed_given) {
      cfg.raw["seed_state"]["rng_seed"] = opt.seed;
      cfg.raw["mosco"]["rng_seed"] = opt.seed;
      cfg = RunConfig::from_json(cfg.raw);
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  const auto violations = cfg.validate();
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << v << "\n";
    return 2;
  }

  try {
    if (opt.subcommand == "constants") return cmd_constants(cfg, opt);
    if (opt.subcommand == "run-trajectory") return cmd_run_trajectory(cfg, opt);
    if (opt.subcommand == "solve-periodic") return cmd_solve_periodic(cfg, opt);
    if (opt.subcommand == "refine-study") return cmd_refine_study(cfg, opt);
    if (opt.subcommand == "mosco-check") return cmd_mosco_check(cfg, opt);
    if (opt.subcommand == "dependence-probe")
      return cmd_dependence_probe(cfg, opt);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (residual " << e.residual
              << " after " << e.iterations << " iterations)\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace kwc
