#ifndef KWC_CONFIG_HPP
#define KWC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kwc/coefficients.hpp"
#include "kwc/constants.hpp"
#include "kwc/forcing.hpp"
#include "kwc/lab.hpp"
#include "kwc/stepper.hpp"

namespace kwc {

struct SeedSpec {
  enum class Kind { constant, random, file };
  Kind kind = Kind::constant;
  double eta = 0.0, theta = 0.0;      // constant
  double bound = 0.0;                 // random
  std::uint64_t rng_seed = 1;         // random
  std::string eta_file, theta_file;   // file (snapshot format)

  double sup_bound() const;
  State build(const Grid& grid) const;
};

/// Parsed run configuration. `raw` keeps the effective JSON (after
/// overrides) whose canonical dump feeds the config hash, so identical
/// hashes mean identical runs.
struct RunConfig {
  Grid grid;
  ModelParams model;
  SchemeParams scheme;
  Waveform forcing_u, forcing_v;
  SeedSpec seed;
  bool snapshots = false;

  bool has_refine = false;
  RefinementPlan refine;

  int mosco_levels = 8;
  std::uint64_t mosco_rng_seed = 1;

  std::vector<double> probe_deltas = {0.5,   0.25,   0.125,
                                      0.0625, 0.03125, 0.015625};

  nlohmann::json raw;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path,
                        const std::vector<std::string>& overrides);

  /// Checks (A1)-(A7) plus basic value sanity; returns one message per
  /// violation, each naming its assumption tag. Empty means admissible.
  std::vector<std::string> validate() const;

  std::string hash() const;
  ForcingSchedule build_forcing() const;
};

/// Applies "dotted.key=value" overrides onto a JSON document (values are
/// parsed as JSON when possible, else taken as strings).
void apply_override(nlohmann::json& j, const std::string& spec);

/// Entry point behind the kwc binary; exposed for direct testing.
/// Exit codes: 0 success, 1 solver nonconvergence, 2 invalid config/usage.
int run_cli(const std::vector<std::string>& args);

}  // namespace kwc

#endif
