#pragma once

// Fixed-step explicit Euler integration of the discontinuous closed loops,
// trajectory recording, settling-time measurement and level-set monitoring.
//
// Euler with a fixed step is deliberate: the right-hand side switches sign
// on the coordinate axes, so higher-order smooth-ODE methods buy nothing,
// and a fixed step keeps runs bit-for-bit reproducible.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "twist/dynamics.hpp"

namespace twist {

struct SimConfig {
  double dt = 1e-5;                // step size, s
  double t_end = 2.0;              // horizon, s
  std::int64_t record_stride = 1;  // steps between recorded samples
  double settle_eps = 1e-2;        // Euclidean-norm settling tolerance
};

// dt/settle_eps defaults with t_end = 2*Ts and the stride chosen so that at
// most max_samples samples are kept.
SimConfig default_sim_config(double Ts, double dt = 1e-5, std::int64_t max_samples = 20000);

struct DoubleIntegratorPlant {};
struct PendulumPlant {
  PendulumParams params;
};
using Plant = std::variant<DoubleIntegratorPlant, PendulumPlant>;

enum class PlantKind { DoubleIntegrator, Pendulum };

struct Sample {
  double t = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double u = 0.0;
  double omega = 0.0;
  double v = 0.0;  // Lyapunov value at (x1, x2)
};

struct Trajectory {
  std::vector<Sample> samples;  // strictly increasing t; final state always included
  double dt = 0.0;
  double t_end = 0.0;  // realized horizon steps*dt (= config t_end when divisible)
  PlantKind plant = PlantKind::DoubleIntegrator;
};

// Raised when the integrator state goes non-finite; carries the step index.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, std::int64_t step)
      : std::runtime_error(what), step_(step) {}
  std::int64_t step() const { return step_; }

 private:
  std::int64_t step_;
};

// Explicit forward Euler over the closed loop. u is recomputed from the
// current state every step; omega is evaluated at the step's start
// time/state, so state-dependent profiles switch with a one-step delay.
// For the pendulum plant the loop applies compensating_torque and drives
// pendulum_rhs with d = omega/b. Identical inputs give bit-identical output.
//
// Gains are taken as given here — callers are responsible for validate_gains
// (the CLI and campaign layers enforce it; tests may bypass deliberately).
// Throws std::invalid_argument for a bad config and SimulationError when the
// state stops being finite.
Trajectory simulate(const Plant& plant, const Gains& gains, const DisturbanceProfile& profile,
                    const State& x0, const SimConfig& cfg);

// Smallest recorded t* such that ||(x1,x2)(s)|| <= eps for every recorded
// s in [t*, t_end]; single backward scan. nullopt when even the final
// sample exceeds eps.
std::optional<double> settling_time(const Trajectory& traj, double eps);

struct LevelSetReport {
  bool entered = false;  // false when V > R throughout
  double first_entry_time = 0.0;
  double max_v_after_entry = 0.0;
  std::int64_t excursions = 0;  // samples at or after entry with V > R
};

// Finds the first sample with V <= R, then the worst V over the rest of the
// trajectory and how many of those samples exceed R.
LevelSetReport level_set_monitor(const Trajectory& traj, const Gains& gains, double R);

// CSV with header t,x1,x2,u,omega,V; shortest round-trip number formatting,
// one row per recorded sample.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

// Parses rows written by write_trajectory_csv; exact (bitwise) round trip.
std::vector<Sample> read_trajectory_csv(std::istream& is);

}  // namespace twist
