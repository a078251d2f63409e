#pragma once

// Flat key = value run configuration with [sections], shared by every CLI
// subcommand. A config file is optional; any key can also arrive from a
// same-named command-line flag, which wins over the file. Unknown sections
// or keys are rejected so a typo cannot silently fall back to a default.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "twist/verify.hpp"

namespace twist {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // [parameters]
  std::optional<double> R, beta, rho, delta, N, Ts;
  // [gains] — optional; synthesized from the bounds when absent
  std::optional<double> mu1, mu2;
  // [sim]
  std::optional<double> dt, t_end, settle_eps;
  std::optional<std::int64_t> record_stride;
  std::optional<std::string> plant;  // "double-integrator" | "pendulum"
  std::optional<double> x1_0, x2_0;
  // [disturbance]
  std::optional<std::string> kind;  // zero | constant | sinusoid | adversarial
  std::optional<double> amplitude, frequency, sign;
  // [campaign]
  std::optional<int> boundary_count, interior_count;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> profiles;  // "battery" or comma list of kinds
  // [pendulum]
  std::optional<double> m, l, J, g, fv, r;

  // Overlay: any value set in `other` replaces the value here.
  void merge_from(const RunConfig& other);
};

// Parses the [section] key = value format. '#' starts a comment. Throws
// ConfigError with a line number for malformed lines, unknown sections,
// unknown keys or unparsable values.
RunConfig parse_config(std::istream& is, const std::string& origin = "<config>");
RunConfig load_config_file(const std::string& path);

// ---- materializers: RunConfig -> domain objects -------------------------
// All throw ConfigError naming the missing or offending key.

// Requires all six of R, beta, rho, delta, N, Ts.
TuningParameters require_parameters(const RunConfig& cfg);

// Explicit gains when both mu1 and mu2 are present (one alone is an error);
// otherwise synthesized from the bounds with the given margin.
// `synthesized`, when non-null, reports which route was taken.
Gains gains_or_synthesized(const RunConfig& cfg, const TuningParameters& p, double margin,
                           bool* synthesized = nullptr);

// SimConfig from [sim] keys; defaults dt = 1e-5, t_end = 2*Ts, settle_eps =
// 1e-2 and a record stride keeping at most 20000 samples per run.
SimConfig make_sim_config(const RunConfig& cfg, double Ts);

// One disturbance profile from [disturbance]; defaults to the zero profile.
// amplitude defaults to N for the non-zero kinds.
DisturbanceProfile make_profile(const RunConfig& cfg, double N);

// Campaign battery: "battery" (default) expands to default_battery(N);
// otherwise a comma list of zero|constant+|constant-|sinusoid|adversarial,
// each at amplitude N (or the [disturbance] amplitude when given).
std::vector<DisturbanceProfile> make_battery(const RunConfig& cfg, const TuningParameters& p);

// Pendulum parameters from [pendulum]; any missing key falls back to the
// bundled bench pendulum used by the demo.
PendulumParams make_pendulum_params(const RunConfig& cfg);

// The bench-scale actuated pendulum shipped as the demo plant.
PendulumParams demo_pendulum();

}  // namespace twist
