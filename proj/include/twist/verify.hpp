#pragma once

// Campaign harness: samples initial conditions on and inside the boundary of
// the Lyapunov level set, runs every (initial state x disturbance) pair on
// the double integrator, and checks the prescribed-time settling claim
// together with level-set invariance. A finite battery cannot prove the
// claim for every admissible disturbance; the campaign is a falsification
// attempt that includes the presumptive worst case.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twist/sim.hpp"

namespace twist {

// `count` states with V(state) = R to within 1e-12. The four axis extremes
// (+-R/mu2, 0), (0, +-sqrt(2R)) are always included; the remaining points
// draw x2 uniformly in (-sqrt(2R), sqrt(2R)) with x1 = +-(R - x2^2/2)/mu2,
// the branch sign alternating. Uniform-in-x2 sampling is used because the
// level set is a narrow lens when mu2 is large and uniform-angle sampling
// would starve the high-|x1| region. Throws when count < 4 or the pair is
// invalid.
std::vector<State> sample_boundary(const TuningParameters& p, const Gains& g, int count,
                                   std::uint64_t seed);

// Seeded rejection sampling, uniform over the level set's bounding box
// [-R/mu2, R/mu2] x [-sqrt(2R), sqrt(2R)], keeping states with V <= R.
std::vector<State> sample_interior(const TuningParameters& p, const Gains& g, int count,
                                   std::uint64_t seed);

// Closed polyline tracing the boundary V = R for phase-portrait plots: down
// the x1 >= 0 branch, back along the x1 <= 0 branch, 2*half_points + 1
// points ending where it starts. Every point satisfies V = R to 1e-12.
std::vector<State> boundary_polyline(const TuningParameters& p, const Gains& g,
                                     int half_points = 200);

// The fixed disturbance battery: zero, +N and -N constant, a sinusoid at
// amplitude N, and the adversarial-sign profile at N oriented to oppose
// convergence (omega = +N*sgn(x2), which minimizes the Lyapunov decay rate).
std::vector<DisturbanceProfile> default_battery(double N, double sinusoid_frequency = 2.0);

struct CampaignSpec {
  TuningParameters params;
  Gains gains;
  int boundary_count = 100;  // >= 4
  int interior_count = 0;    // >= 0
  std::vector<DisturbanceProfile> profiles;
  SimConfig sim;
  std::uint64_t rng_seed = 0;
};

struct CaseResult {
  int case_id = 0;
  State x0{0.0, 0.0};
  std::string profile;
  bool settled = false;
  double settle_time = 0.0;        // NaN when not settled
  double max_v_after_entry = 0.0;  // +inf when the level set was never entered
  bool pass = false;
};

struct CampaignReport {
  std::vector<CaseResult> cases;
  SettlingEstimate estimate;          // context for the Ts the cases were judged against
  double invariance_tolerance = 0.0;  // allowed transient V excess over R
  double worst_settle_time = 0.0;     // NaN when nothing settled
  double worst_v_after_entry = 0.0;
  int pass_count = 0;
  bool aggregate_pass = false;

  std::string summary() const;  // plain-text block
};

// Simulates every (initial state x profile) pair. A case passes iff it
// settles within Ts at the configured tolerance AND V never exceeds
// R + dt*(mu1+mu2+N)*sqrt(2R)*2 after first entering the level set (the
// one-step discretization overshoot bound). Deterministic given rng_seed.
// Throws std::invalid_argument when the spec violates its invariants and
// SimulationError (with the offending case named) if an integration blows up.
CampaignReport run_campaign(const CampaignSpec& spec);

// Per-case rows: case_id,x1_0,x2_0,profile,settled,settle_time,max_v_after_entry,pass
void write_campaign_csv(const CampaignReport& report, std::ostream& os);

}  // namespace twist
