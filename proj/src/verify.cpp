#include "twist/verify.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace twist {

namespace {

void require_valid_pair(const TuningParameters& p, const Gains& g, const char* who) {
  const ValidationReport report = validate_gains(p, g);
  if (report.ok()) return;
  std::ostringstream oss;
  oss << who << ": invalid parameters/gains:";
  for (const auto& v : report.violations()) oss << " [" << v << "]";
  throw std::invalid_argument(oss.str());
}

void append_double(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

}  // namespace

std::vector<State> sample_boundary(const TuningParameters& p, const Gains& g, int count,
                                   std::uint64_t seed) {
  require_valid_pair(p, g, "sample_boundary");
  if (count < 4) throw std::invalid_argument("sample_boundary: count must be >= 4");

  const double x1_extreme = p.R / g.mu2;
  const double x2_extreme = std::sqrt(2.0 * p.R);

  std::vector<State> states;
  states.reserve(static_cast<std::size_t>(count));
  states.emplace_back(x1_extreme, 0.0);
  states.emplace_back(-x1_extreme, 0.0);
  states.emplace_back(0.0, x2_extreme);
  states.emplace_back(0.0, -x2_extreme);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x2_dist(-x2_extreme, x2_extreme);
  double branch = 1.0;
  while (states.size() < static_cast<std::size_t>(count)) {
    const double x2 = x2_dist(rng);
    const double x1 = branch * (p.R - 0.5 * x2 * x2) / g.mu2;
    states.emplace_back(x1, x2);
    branch = -branch;
  }
  return states;
}

std::vector<State> sample_interior(const TuningParameters& p, const Gains& g, int count,
                                   std::uint64_t seed) {
  require_valid_pair(p, g, "sample_interior");
  if (count < 0) throw std::invalid_argument("sample_interior: count must be >= 0");

  std::vector<State> states;
  states.reserve(static_cast<std::size_t>(count));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x1_dist(-p.R / g.mu2, p.R / g.mu2);
  std::uniform_real_distribution<double> x2_dist(-std::sqrt(2.0 * p.R), std::sqrt(2.0 * p.R));
  while (states.size() < static_cast<std::size_t>(count)) {
    const State x(x1_dist(rng), x2_dist(rng));
    if (lyapunov_v(x, g) <= p.R) states.push_back(x);
  }
  return states;
}

std::vector<State> boundary_polyline(const TuningParameters& p, const Gains& g,
                                     int half_points) {
  require_valid_pair(p, g, "boundary_polyline");
  if (half_points < 2) throw std::invalid_argument("boundary_polyline: half_points must be >= 2");

  std::vector<State> points;
  points.reserve(2 * static_cast<std::size_t>(half_points) + 1);
  const double x2_max = std::sqrt(2.0 * p.R);
  auto emit = [&](double branch, int i) {
    const double s = static_cast<double>(i) / half_points;
    const double x2 = branch > 0.0 ? x2_max - s * 2.0 * x2_max : -x2_max + s * 2.0 * x2_max;
    points.emplace_back(branch * (p.R - 0.5 * x2 * x2) / g.mu2, x2);
  };
  for (int i = 0; i <= half_points; ++i) emit(+1.0, i);
  for (int i = 1; i <= half_points; ++i) emit(-1.0, i);
  return points;
}

std::vector<DisturbanceProfile> default_battery(double N, double sinusoid_frequency) {
  if (N == 0.0) return {DisturbanceProfile::zero()};
  return {
      DisturbanceProfile::zero(),
      DisturbanceProfile::constant(N, +1.0),
      DisturbanceProfile::constant(N, -1.0),
      DisturbanceProfile::sinusoid(N, sinusoid_frequency),
      // sign = -1 makes the profile omega = +N*sgn(x2), the disturbance that
      // minimizes the Lyapunov decay -(mu1 - N)|x2|.
      DisturbanceProfile::adversarial(N, -1.0),
  };
}

CampaignReport run_campaign(const CampaignSpec& spec) {
  require_valid_pair(spec.params, spec.gains, "run_campaign");
  if (spec.boundary_count < 4)
    throw std::invalid_argument("run_campaign: boundary_count must be >= 4");
  if (spec.interior_count < 0)
    throw std::invalid_argument("run_campaign: interior_count must be >= 0");
  if (spec.profiles.empty())
    throw std::invalid_argument("run_campaign: at least one disturbance profile is required");
  for (const auto& profile : spec.profiles) {
    if (!(profile.amplitude <= spec.params.N))
      throw std::invalid_argument("run_campaign: profile '" + profile.describe() +
                                  "' exceeds the disturbance bound N = " +
                                  std::to_string(spec.params.N));
  }

  std::vector<State> states = sample_boundary(spec.params, spec.gains, spec.boundary_count,
                                              spec.rng_seed);
  if (spec.interior_count > 0) {
    // Decorrelated stream for the interior draw; keeps both samplers
    // deterministic in the single seed.
    const std::vector<State> interior =
        sample_interior(spec.params, spec.gains, spec.interior_count, spec.rng_seed ^ 0x9e3779b97f4a7c15ull);
    states.insert(states.end(), interior.begin(), interior.end());
  }

  CampaignReport report;
  report.estimate = settling_estimate(spec.params, spec.gains);
  report.invariance_tolerance = spec.sim.dt * (spec.gains.mu1 + spec.gains.mu2 + spec.params.N) *
                                std::sqrt(2.0 * spec.params.R) * 2.0;
  report.cases.reserve(states.size() * spec.profiles.size());
  report.worst_settle_time = std::numeric_limits<double>::quiet_NaN();
  report.worst_v_after_entry = 0.0;
  report.aggregate_pass = true;

  const Plant plant = DoubleIntegratorPlant{};
  int case_id = 0;
  for (const State& x0 : states) {
    for (const auto& profile : spec.profiles) {
      CaseResult result;
      result.case_id = case_id;
      result.x0 = x0;
      result.profile = profile.describe();

      Trajectory traj;
      try {
        traj = simulate(plant, spec.gains, profile, x0, spec.sim);
      } catch (const SimulationError& e) {
        std::ostringstream oss;
        oss << "campaign case " << case_id << " (x0 = [" << x0[0] << ", " << x0[1]
            << "], profile " << result.profile << "): " << e.what();
        throw SimulationError(oss.str(), e.step());
      }

      const auto settle = settling_time(traj, spec.sim.settle_eps);
      const LevelSetReport level = level_set_monitor(traj, spec.gains, spec.params.R);

      result.settled = settle.has_value();
      result.settle_time = settle.value_or(std::numeric_limits<double>::quiet_NaN());
      result.max_v_after_entry =
          level.entered ? level.max_v_after_entry : std::numeric_limits<double>::infinity();
      result.pass = result.settled && result.settle_time <= spec.params.Ts && level.entered &&
                    result.max_v_after_entry <= spec.params.R + report.invariance_tolerance;

      if (result.settled && (std::isnan(report.worst_settle_time) ||
                             result.settle_time > report.worst_settle_time))
        report.worst_settle_time = result.settle_time;
      report.worst_v_after_entry = std::max(report.worst_v_after_entry, result.max_v_after_entry);
      report.pass_count += result.pass ? 1 : 0;
      report.aggregate_pass = report.aggregate_pass && result.pass;
      report.cases.push_back(std::move(result));
      ++case_id;
    }
  }
  return report;
}

std::string CampaignReport::summary() const {
  std::ostringstream oss;
  oss << "campaign: " << cases.size() << " cases, " << pass_count << " passed, "
      << (cases.size() - static_cast<std::size_t>(pass_count)) << " failed\n";
  oss << "  aggregate: " << (aggregate_pass ? "PASS" : "FAIL") << "\n";
  oss << "  worst settling time: " << worst_settle_time << " s\n";
  oss << "  worst V after level-set entry: " << worst_v_after_entry
      << " (allowed transient excess " << invariance_tolerance << ")\n";
  oss << "  estimate context: eta = " << estimate.eta << ", t2 = " << estimate.t2
      << " s, t2_bound = " << estimate.t2_bound << " s\n";
  return oss.str();
}

void write_campaign_csv(const CampaignReport& report, std::ostream& os) {
  std::string line = "case_id,x1_0,x2_0,profile,settled,settle_time,max_v_after_entry,pass\n";
  os.write(line.data(), static_cast<std::streamsize>(line.size()));
  for (const CaseResult& c : report.cases) {
    line.clear();
    line += std::to_string(c.case_id);
    line.push_back(',');
    append_double(line, c.x0[0]);
    line.push_back(',');
    append_double(line, c.x0[1]);
    line.push_back(',');
    line += c.profile;
    line.push_back(',');
    line += c.settled ? '1' : '0';
    line.push_back(',');
    append_double(line, c.settle_time);
    line.push_back(',');
    append_double(line, c.max_v_after_entry);
    line.push_back(',');
    line += c.pass ? '1' : '0';
    line.push_back('\n');
    os.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

}  // namespace twist
