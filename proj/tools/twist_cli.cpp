// twist — gain tuning, closed-loop simulation and robustness verification
// for the twisting controller on the perturbed double integrator, plus a
// compensated-pendulum demo.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 verification
// failure (campaign or demo did not meet the deadline), 4 numerical failure
// during integration.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "twist/config.hpp"

namespace fs = std::filesystem;
using namespace twist;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;
constexpr int kExitNumerical = 4;

struct CliOptions {
  std::optional<std::string> config_path;
  std::string out_dir = "out";
  double margin = 0.01;
  RunConfig flags;  // same-named flag overrides for every config key
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "configuration file ([section] key = value)");
  cmd->add_option("--out", opt.out_dir, "output directory, created if needed")
      ->capture_default_str();
  cmd->add_option("--margin", opt.margin, "synthesis margin applied to the gain bounds")
      ->capture_default_str();

  RunConfig& f = opt.flags;
  cmd->add_option("--R", f.R, "level-set size");
  cmd->add_option("--beta", f.beta, "shape ratio (> 1)");
  cmd->add_option("--rho", f.rho, "inner-radius fraction in (0,1)");
  cmd->add_option("--delta", f.delta, "bounding-ball radius");
  cmd->add_option("--N", f.N, "disturbance magnitude bound");
  cmd->add_option("--Ts", f.Ts, "prescribed settling time, s");
  cmd->add_option("--mu1", f.mu1, "first twisting gain");
  cmd->add_option("--mu2", f.mu2, "second twisting gain");
  cmd->add_option("--dt", f.dt, "integration step, s");
  cmd->add_option("--t-end", f.t_end, "simulation horizon, s");
  cmd->add_option("--record-stride", f.record_stride, "steps between recorded samples");
  cmd->add_option("--settle-eps", f.settle_eps, "settling tolerance (Euclidean norm)");
  cmd->add_option("--plant", f.plant, "double-integrator | pendulum");
  cmd->add_option("--x1-0", f.x1_0, "initial position error");
  cmd->add_option("--x2-0", f.x2_0, "initial velocity error");
  cmd->add_option("--kind", f.kind, "disturbance kind: zero|constant|sinusoid|adversarial");
  cmd->add_option("--amplitude", f.amplitude, "disturbance amplitude");
  cmd->add_option("--frequency", f.frequency, "sinusoid frequency, rad/s");
  cmd->add_option("--sign", f.sign, "disturbance orientation, +-1");
  cmd->add_option("--boundary-count", f.boundary_count, "boundary initial states (>= 4)");
  cmd->add_option("--interior-count", f.interior_count, "interior initial states");
  cmd->add_option("--seed", f.seed, "campaign RNG seed");
  cmd->add_option("--profiles", f.profiles, "battery | comma list of profile kinds");
  cmd->add_option("--m", f.m, "pendulum mass, kg");
  cmd->add_option("--l", f.l, "pendulum center-of-mass distance, m");
  cmd->add_option("--J", f.J, "pendulum inertia, kg m^2");
  cmd->add_option("--g", f.g, "gravity, m/s^2");
  cmd->add_option("--fv", f.fv, "viscous friction, N s/rad");
  cmd->add_option("--r", f.r, "pendulum setpoint, rad");
}

RunConfig resolve_config(const CliOptions& opt) {
  RunConfig cfg;
  if (opt.config_path) cfg = load_config_file(*opt.config_path);
  cfg.merge_from(opt.flags);
  return cfg;
}

fs::path prepare_out_dir(const CliOptions& opt) {
  fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  return dir;
}

template <typename Writer>
void write_file(const fs::path& path, Writer writer) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file: " + path.string());
  writer(file);
  file.flush();
  if (!file) throw std::runtime_error("write failed: " + path.string());
}

std::string fmt(double v, int digits = 9) {
  std::ostringstream oss;
  oss << std::setprecision(digits) << v;
  return oss.str();
}

void write_boundary_polyline(std::ostream& os, const TuningParameters& p, const Gains& g) {
  os << "x1,x2\n";
  for (const State& x : boundary_polyline(p, g))
    os << fmt(x[0], 17) << ',' << fmt(x[1], 17) << '\n';
}

int cmd_tune(const CliOptions& opt) {
  const RunConfig cfg = resolve_config(opt);
  const TuningParameters p = require_parameters(cfg);

  std::cout << "parameters: R=" << fmt(p.R) << " beta=" << fmt(p.beta) << " rho=" << fmt(p.rho)
            << " delta=" << fmt(p.delta) << " N=" << fmt(p.N) << " Ts=" << fmt(p.Ts) << "\n";
  const ValidationReport param_report = validate_parameters(p);
  std::cout << param_report.summary();
  std::cout << "  delta lower bound: " << fmt(delta_lower_bound(p.R, p.beta)) << "\n";
  if (!param_report.ok()) {
    std::cerr << "error: parameter constraints violated\n";
    return kExitConfig;
  }

  const double mu1_lb = mu1_lower_bound(p);
  bool synthesized = false;
  const Gains g = gains_or_synthesized(cfg, p, opt.margin, &synthesized);
  std::cout << "mu1 lower bound: " << fmt(mu1_lb, 15) << "\n";
  std::cout << "mu2 lower bound (at mu1=" << fmt(g.mu1, 15)
            << "): " << fmt(mu2_lower_bound(p, g.mu1), 15) << "\n";
  std::cout << "gains: mu1=" << fmt(g.mu1, 15) << " mu2=" << fmt(g.mu2, 15)
            << (synthesized ? "  (synthesized, margin " + fmt(opt.margin) + ")" : "  (given)")
            << "\n";

  const ValidationReport gain_report = validate_gains(p, g);
  std::cout << gain_report.summary();
  if (!gain_report.ok()) {
    std::cerr << "error: gain constraints violated\n";
    return kExitConfig;
  }

  const SettlingEstimate est = settling_estimate(p, g);
  std::cout << "estimate: r1=" << fmt(est.r1) << " r2=" << fmt(est.r2) << " eta=" << fmt(est.eta)
            << "\n          t2=" << fmt(est.t2) << " s, t2_bound=" << fmt(est.t2_bound)
            << " s <= Ts=" << fmt(p.Ts) << " s\n";
  return kExitOk;
}

int cmd_simulate(const CliOptions& opt) {
  const RunConfig cfg = resolve_config(opt);
  const TuningParameters p = require_parameters(cfg);
  const Gains g = gains_or_synthesized(cfg, p, opt.margin, nullptr);

  const ValidationReport report = validate_gains(p, g);
  if (!report.ok()) {
    std::cerr << "error: refusing to simulate with invalid parameters/gains:\n"
              << report.summary();
    return kExitConfig;
  }

  const DisturbanceProfile profile = make_profile(cfg, p.N);
  if (profile.amplitude > p.N) {
    std::cerr << "error: disturbance amplitude " << profile.amplitude
              << " exceeds the bound N = " << p.N << "\n";
    return kExitConfig;
  }

  Plant plant = DoubleIntegratorPlant{};
  const std::string plant_name = cfg.plant.value_or("double-integrator");
  if (plant_name == "pendulum")
    plant = PendulumPlant{make_pendulum_params(cfg)};
  else if (plant_name != "double-integrator") {
    std::cerr << "error: unknown plant '" << plant_name << "'\n";
    return kExitConfig;
  }

  const SimConfig sim = make_sim_config(cfg, p.Ts);
  const State x0(cfg.x1_0.value_or(0.0), cfg.x2_0.value_or(0.0));
  const Trajectory traj = simulate(plant, g, profile, x0, sim);

  const fs::path out = prepare_out_dir(opt);
  const fs::path csv = out / "trajectory.csv";
  write_file(csv, [&](std::ostream& os) { write_trajectory_csv(traj, os); });

  std::cout << "plant: " << plant_name << ", profile: " << profile.describe() << ", x0 = ["
            << fmt(x0[0]) << ", " << fmt(x0[1]) << "]\n";
  std::cout << "samples: " << traj.samples.size() << " (dt=" << fmt(sim.dt)
            << ", t_end=" << fmt(traj.t_end) << ", stride=" << sim.record_stride << ")\n";

  const auto settle = settling_time(traj, sim.settle_eps);
  if (settle)
    std::cout << "settling time (eps=" << fmt(sim.settle_eps) << "): " << fmt(*settle) << " s"
              << (*settle <= p.Ts ? " (within Ts)" : " (EXCEEDS Ts)") << "\n";
  else
    std::cout << "settling time: did not settle within the horizon\n";

  const LevelSetReport level = level_set_monitor(traj, g, p.R);
  if (level.entered)
    std::cout << "level set V <= " << fmt(p.R) << ": entered at t=" << fmt(level.first_entry_time)
              << " s, max V after entry " << fmt(level.max_v_after_entry) << ", excursions "
              << level.excursions << "\n";
  else
    std::cout << "level set V <= " << fmt(p.R) << ": never entered\n";

  std::cout << "wrote " << csv.string() << "\n";
  return kExitOk;
}

int cmd_verify(const CliOptions& opt) {
  const RunConfig cfg = resolve_config(opt);

  CampaignSpec spec;
  spec.params = require_parameters(cfg);
  spec.gains = gains_or_synthesized(cfg, spec.params, opt.margin, nullptr);
  spec.boundary_count = cfg.boundary_count.value_or(100);
  spec.interior_count = cfg.interior_count.value_or(0);
  spec.profiles = make_battery(cfg, spec.params);
  spec.sim = make_sim_config(cfg, spec.params.Ts);
  spec.rng_seed = cfg.seed.value_or(0);

  const CampaignReport report = run_campaign(spec);

  const fs::path out = prepare_out_dir(opt);
  const fs::path csv = out / "campaign.csv";
  write_file(csv, [&](std::ostream& os) { write_campaign_csv(report, os); });

  std::cout << report.summary();
  std::cout << "wrote " << csv.string() << "\n";
  return report.aggregate_pass ? kExitOk : kExitVerification;
}

int cmd_demo_pendulum(const CliOptions& opt) {
  const RunConfig cfg = resolve_config(opt);

  // Bundled defaults: the bench pendulum, its reference tuning and the
  // sinusoidal torque disturbance d(t) = 7e-4 * sin(2t).
  TuningParameters p{2.0, 5.0, 0.5, 3.1, 0.2, 1.0};
  if (cfg.R) p.R = *cfg.R;
  if (cfg.beta) p.beta = *cfg.beta;
  if (cfg.rho) p.rho = *cfg.rho;
  if (cfg.delta) p.delta = *cfg.delta;
  if (cfg.N) p.N = *cfg.N;
  if (cfg.Ts) p.Ts = *cfg.Ts;
  const Gains g{cfg.mu1.value_or(6.63), cfg.mu2.value_or(33.24)};

  const ValidationReport report = validate_gains(p, g);
  if (!report.ok()) {
    std::cerr << "error: demo parameters/gains invalid:\n" << report.summary();
    return kExitConfig;
  }

  const PendulumParams pp = make_pendulum_params(cfg);
  const double torque_amp = 7e-4;
  const DisturbanceProfile profile = DisturbanceProfile::sinusoid(
      cfg.amplitude.value_or(pp.b * torque_amp), cfg.frequency.value_or(2.0));

  const SimConfig sim = make_sim_config(cfg, p.Ts);
  const State ic1(0.0, 0.8 * std::sqrt(2.0 * p.R));
  const State ic2(0.9 * p.R / g.mu2, 0.0);

  const Trajectory pend1 = simulate(PendulumPlant{pp}, g, profile, ic1, sim);
  const Trajectory pend2 = simulate(PendulumPlant{pp}, g, profile, ic2, sim);
  const Trajectory ref1 = simulate(DoubleIntegratorPlant{}, g, profile, ic1, sim);

  const fs::path out = prepare_out_dir(opt);
  write_file(out / "demo_pendulum_ic1.csv",
             [&](std::ostream& os) { write_trajectory_csv(pend1, os); });
  write_file(out / "demo_pendulum_ic2.csv",
             [&](std::ostream& os) { write_trajectory_csv(pend2, os); });
  write_file(out / "demo_integrator_ic1.csv",
             [&](std::ostream& os) { write_trajectory_csv(ref1, os); });
  write_file(out / "demo_level_set_boundary.csv",
             [&](std::ostream& os) { write_boundary_polyline(os, p, g); });

  std::cout << "pendulum demo: " << profile.describe() << ", dt=" << fmt(sim.dt)
            << ", t_end=" << fmt(sim.t_end) << "\n";
  int exit_code = kExitOk;
  const std::pair<const char*, const Trajectory*> runs[] = {
      {"pendulum ic1 (0, 0.8*sqrt(2R))", &pend1},
      {"pendulum ic2 (0.9R/mu2, 0)", &pend2},
      {"double-integrator reference at ic1", &ref1},
  };
  for (const auto& [name, traj] : runs) {
    const auto settle = settling_time(*traj, sim.settle_eps);
    const LevelSetReport level = level_set_monitor(*traj, g, p.R);
    std::cout << "  " << name << ": settling "
              << (settle ? fmt(*settle) + " s" : std::string("none"))
              << ((settle && *settle <= p.Ts) ? " (within Ts)" : "") << ", max V after entry "
              << fmt(level.max_v_after_entry) << "\n";
    if (!settle || *settle > p.Ts) exit_code = kExitVerification;
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < pend1.samples.size(); ++i) {
    worst = std::max(worst, std::abs(pend1.samples[i].x1 - ref1.samples[i].x1));
    worst = std::max(worst, std::abs(pend1.samples[i].x2 - ref1.samples[i].x2));
  }
  std::cout << "  compensation equivalence (pendulum vs double integrator at ic1): max |diff| = "
            << fmt(worst, 3) << "\n";
  std::cout << "wrote demo_pendulum_ic1.csv demo_pendulum_ic2.csv demo_integrator_ic1.csv "
               "demo_level_set_boundary.csv under "
            << out.string() << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisting controller tuning, simulation and verification"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* tune = app.add_subcommand("tune", "validate parameters, compute bounds and estimates");
  CLI::App* sim = app.add_subcommand("simulate", "run one closed-loop trajectory to CSV");
  CLI::App* verify = app.add_subcommand("verify", "run a boundary/interior disturbance campaign");
  CLI::App* demo = app.add_subcommand("demo-pendulum", "run the compensated pendulum demo");
  for (CLI::App* cmd : {tune, sim, verify, demo}) add_common_options(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (tune->parsed()) return cmd_tune(opt);
    if (sim->parsed()) return cmd_simulate(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (demo->parsed()) return cmd_demo_pendulum(opt);
  } catch (const SimulationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
