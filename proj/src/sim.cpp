#include "twist/sim.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

namespace twist {

namespace {

// Shortest representation that round-trips through from_chars.
void append_double(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("bad CSV number: '" + std::string(text) + "'");
  return value;
}

std::int64_t step_count(const SimConfig& cfg) {
  return std::llround(cfg.t_end / cfg.dt);
}

void check_config(const SimConfig& cfg, const Gains& gains, const DisturbanceProfile& profile,
                  const State& x0) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw std::invalid_argument("dt must be finite and > 0");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end))
    throw std::invalid_argument("t_end must be finite and > 0");
  if (cfg.dt > cfg.t_end) throw std::invalid_argument("dt must not exceed t_end");
  if (cfg.record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  if (!(cfg.settle_eps > 0.0) || !std::isfinite(cfg.settle_eps))
    throw std::invalid_argument("settle_eps must be finite and > 0");
  if (cfg.t_end / cfg.dt > 4e9) throw std::invalid_argument("t_end/dt too large for the step counter");
  if (!x0.allFinite()) throw std::invalid_argument("x0 must be finite");
  if (!std::isfinite(profile.amplitude) || profile.amplitude < 0.0)
    throw std::invalid_argument("disturbance amplitude must be finite and >= 0");

  // Settling is decided on recorded samples; between samples the state can
  // move by at most stride*dt*(|mu1|+|mu2|+amplitude) in x2, so that spacing
  // must stay below the settling tolerance or the band could be crossed
  // unobserved.
  const double authority = std::abs(gains.mu1) + std::abs(gains.mu2) + profile.amplitude;
  if (static_cast<double>(cfg.record_stride) * cfg.dt * authority > cfg.settle_eps) {
    std::ostringstream oss;
    oss << "record_stride too coarse for reliable settling detection: stride*dt must not "
           "exceed settle_eps/(mu1+mu2+amplitude) = "
        << cfg.settle_eps / authority << " s; lower record_stride or raise settle_eps";
    throw std::invalid_argument(oss.str());
  }
}

template <typename Rhs>
Trajectory run_euler(PlantKind kind, const Gains& gains, const DisturbanceProfile& profile,
                     const State& x0, const SimConfig& cfg, Rhs rhs) {
  const std::int64_t n = step_count(cfg);
  Trajectory traj;
  traj.dt = cfg.dt;
  traj.t_end = static_cast<double>(n) * cfg.dt;
  traj.plant = kind;
  traj.samples.reserve(static_cast<std::size_t>(n / cfg.record_stride) + 2);

  State x = x0;
  for (std::int64_t i = 0; i <= n; ++i) {
    if (!x.allFinite())
      throw SimulationError("state became non-finite at step " + std::to_string(i), i);
    const double t = static_cast<double>(i) * cfg.dt;
    const double u = twisting_control(x, gains);
    const double omega = evaluate_disturbance(profile, t, x);
    if (i % cfg.record_stride == 0 || i == n)
      traj.samples.push_back({t, x[0], x[1], u, omega, lyapunov_v(x, gains)});
    if (i == n) break;
    x += cfg.dt * rhs(x, u, omega);
  }
  return traj;
}

}  // namespace

SimConfig default_sim_config(double Ts, double dt, std::int64_t max_samples) {
  SimConfig cfg;
  cfg.dt = dt;
  cfg.t_end = 2.0 * Ts;
  // steps+1 samples would be recorded at stride 1 (the final state is always
  // kept), so size the stride against that count.
  const auto steps = static_cast<std::int64_t>(std::llround(cfg.t_end / cfg.dt));
  cfg.record_stride = std::max<std::int64_t>(1, (steps + max_samples) / max_samples);
  return cfg;
}

Trajectory simulate(const Plant& plant, const Gains& gains, const DisturbanceProfile& profile,
                    const State& x0, const SimConfig& cfg) {
  check_config(cfg, gains, profile, x0);
  return std::visit(
      [&](const auto& p) -> Trajectory {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DoubleIntegratorPlant>) {
          return run_euler(PlantKind::DoubleIntegrator, gains, profile, x0, cfg,
                           [](const State& x, double u, double omega) {
                             return double_integrator_rhs(x, u, omega);
                           });
        } else {
          const PendulumParams pp = p.params;
          return run_euler(PlantKind::Pendulum, gains, profile, x0, cfg,
                           [pp](const State& x, double u, double omega) {
                             const double tau = compensating_torque(x, pp, u);
                             return pendulum_rhs(x, pp, tau, omega / pp.b);
                           });
        }
      },
      plant);
}

std::optional<double> settling_time(const Trajectory& traj, double eps) {
  if (traj.samples.empty()) throw std::invalid_argument("settling_time: empty trajectory");
  if (!(eps > 0.0)) throw std::invalid_argument("settling_time: eps must be > 0");

  auto inside = [eps](const Sample& s) { return std::hypot(s.x1, s.x2) <= eps; };

  if (!inside(traj.samples.back())) return std::nullopt;
  // Backward scan for the last sample outside the band; settling starts at
  // the next recorded sample.
  for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
    if (!inside(*it)) return std::prev(it)->t;
  }
  return traj.samples.front().t;  // never left the band
}

LevelSetReport level_set_monitor(const Trajectory& traj, const Gains& gains, double R) {
  if (traj.samples.empty()) throw std::invalid_argument("level_set_monitor: empty trajectory");

  // V is recomputed from the state columns so the monitor stands on its own
  // even if a trajectory was assembled by hand.
  auto v_of = [&gains](const Sample& s) { return lyapunov_v(State(s.x1, s.x2), gains); };

  LevelSetReport report;
  std::size_t entry = traj.samples.size();
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    if (v_of(traj.samples[i]) <= R) {
      entry = i;
      break;
    }
  }
  if (entry == traj.samples.size()) return report;  // never entered

  report.entered = true;
  report.first_entry_time = traj.samples[entry].t;
  report.max_v_after_entry = v_of(traj.samples[entry]);
  for (std::size_t i = entry; i < traj.samples.size(); ++i) {
    const double v = v_of(traj.samples[i]);
    if (v > report.max_v_after_entry) report.max_v_after_entry = v;
    if (v > R) ++report.excursions;
  }
  return report;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  std::string line = "t,x1,x2,u,omega,V\n";
  os.write(line.data(), static_cast<std::streamsize>(line.size()));
  for (const Sample& s : traj.samples) {
    line.clear();
    append_double(line, s.t);
    line.push_back(',');
    append_double(line, s.x1);
    line.push_back(',');
    append_double(line, s.x2);
    line.push_back(',');
    append_double(line, s.u);
    line.push_back(',');
    append_double(line, s.omega);
    line.push_back(',');
    append_double(line, s.v);
    line.push_back('\n');
    os.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

std::vector<Sample> read_trajectory_csv(std::istream& is) {
  std::vector<Sample> samples;
  std::string line;
  if (!std::getline(is, line) || line != "t,x1,x2,u,omega,V")
    throw std::invalid_argument("trajectory CSV: missing or wrong header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double fields[6];
    std::size_t begin = 0;
    for (int f = 0; f < 6; ++f) {
      const std::size_t end = (f == 5) ? line.size() : line.find(',', begin);
      if (end == std::string::npos)
        throw std::invalid_argument("trajectory CSV: expected 6 columns");
      fields[f] = parse_double(std::string_view(line).substr(begin, end - begin));
      begin = end + 1;
    }
    samples.push_back({fields[0], fields[1], fields[2], fields[3], fields[4], fields[5]});
  }
  return samples;
}

}  // namespace twist
