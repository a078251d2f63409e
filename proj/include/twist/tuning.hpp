#pragma once

// Design-parameter math for the twisting controller: constraint validation,
// gain lower bounds and synthesis, and the convergence-time estimate chain.
//
// All functions are pure; they can be called from any number of threads.

#include <string>
#include <vector>

namespace twist {

// Design inputs. R sizes the initial level set of the Lyapunov function,
// beta / rho / delta shape the convergence-time estimate, N bounds the
// disturbance magnitude and Ts is the prescribed settling deadline.
struct TuningParameters {
  double R = 0.0;      // level-set size, > 0
  double beta = 0.0;   // shape ratio, > 1
  double rho = 0.0;    // inner-radius fraction, in (0,1)
  double delta = 0.0;  // bounding-ball radius, > sqrt(2R)(beta+1)/(beta-1)
  double N = 0.0;      // disturbance magnitude bound, >= 0
  double Ts = 0.0;     // prescribed settling time, > 0
};

// Twisting controller gain pair. Validity is always relative to a
// TuningParameters instance; see validate_gains.
struct Gains {
  double mu1 = 0.0;
  double mu2 = 0.0;
};

// Derived radii and convergence-time estimates for a valid pair.
struct SettlingEstimate {
  double r1 = 0.0;        // outer ball radius sqrt(2R)
  double r2 = 0.0;        // inner ball radius rho*R/mu2
  double eta = 0.0;       // (mu1 - N)/mu2, always < 1/beta for valid gains
  double t2 = 0.0;        // delta*(sqrt(1-eta^2)+1)/((mu1-N)*sqrt(1-eta^2))
  double t2_bound = 0.0;  // 2*delta/((mu1-N)*sqrt(1-beta^-2)), <= Ts
};

// One strict-inequality (or interval) check. `margin` is the slack towards
// the violated side: positive when satisfied, <= 0 when violated.
struct ConstraintCheck {
  std::string name;
  bool ok = false;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

struct ValidationReport {
  std::vector<ConstraintCheck> checks;
  std::vector<std::string> advisories;  // non-fatal notes

  bool ok() const;
  std::vector<std::string> violations() const;
  std::string summary() const;  // one line per check, then advisories
};

// sqrt(2R)(beta+1)/(beta-1). NaN when R or beta make it meaningless.
double delta_lower_bound(double R, double beta);

// Checks every design constraint with strict inequalities, treating exact
// equality at a bound as a violation. Non-finite inputs fail a dedicated
// "finite" check. Emits a non-fatal advisory when delta exceeds 10x its
// lower bound, since an oversized delta inflates mu1.
ValidationReport validate_parameters(const TuningParameters& p);

// 2*delta/(Ts*sqrt(1-beta^-2)) + N.
// Throws std::invalid_argument when p fails validate_parameters.
double mu1_lower_bound(const TuningParameters& p);

// max{ sqrt(R/2), rho*sqrt(R/(2(1-rho))), rho, beta*mu1, mu1+N }.
// mu1 may be any finite candidate value, not necessarily one that passes
// its own bound. Throws std::invalid_argument when p is invalid.
double mu2_lower_bound(const TuningParameters& p, double mu1);

// Turns the strict lower bounds into concrete gains by scaling each bound
// by (1+margin), mu1 first since the mu2 bound depends on it. The result
// passes validate_gains for any margin > 0.
Gains synthesize_gains(const TuningParameters& p, double margin = 0.01);

// Report-style check of mu1 and mu2 against their strict lower bounds.
// Parameter violations are folded into the report rather than thrown.
ValidationReport validate_gains(const TuningParameters& p, const Gains& g);

// Computes the estimate chain. Throws std::invalid_argument naming the
// violated inequality when (p, g) do not pass validate_gains; this also
// rules out eta >= 1 and the division hazards in t2.
SettlingEstimate settling_estimate(const TuningParameters& p, const Gains& g);

}  // namespace twist
