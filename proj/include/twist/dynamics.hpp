#pragma once

// Plants (double integrator, actuated pendulum), the twisting control law,
// the friction/gravity compensating torque, the Lyapunov function and the
// admissible disturbance profiles.

#include <cmath>
#include <string>

#include "twist/tuning.hpp"
#include "twist/types.hpp"

namespace twist {

// u = -mu2*sgn(x1) - mu1*sgn(x2), with sgn(0) = 0 so u vanishes at the origin.
inline double twisting_control(const State& x, const Gains& g) {
  return -g.mu2 * sgn(x[0]) - g.mu1 * sgn(x[1]);
}

// V = mu2*|x1| + x2^2/2; positive definite, zero only at the origin.
inline double lyapunov_v(const State& x, const Gains& g) {
  return g.mu2 * std::abs(x[0]) + 0.5 * x[1] * x[1];
}

// (x1', x2') = (x2, u + omega).
inline Vec2 double_integrator_rhs(const State& x, double u, double omega) {
  return {x[1], u + omega};
}

struct PendulumParams {
  double m = 0.0;   // mass, kg
  double l = 0.0;   // distance from the rotation axis to the center of mass, m
  double J = 0.0;   // moment of inertia about the center of mass, kg m^2
  double g = 0.0;   // gravity, m/s^2
  double fv = 0.0;  // viscous friction, N s/rad
  double r = 0.0;   // desired angular position, rad
  double b = 0.0;   // input coefficient, always 1/(m*l^2 + J)

  // Computes b from the physical parameters. m, l, J, g must be > 0, fv >= 0.
  static PendulumParams from_physical(double m, double l, double J, double g,
                                      double fv, double r = 0.0);
};

// tau = u/b + fv*x2 + m*g*l*sin(x1 + r): the twisting command lifted to
// torque level plus the friction/gravity compensator.
double compensating_torque(const State& x, const PendulumParams& pp, double u);

// Error dynamics of the actuated pendulum under torque tau and torque-level
// disturbance d: (x2, b*(tau - fv*x2 - m*g*l*sin(x1+r)) + b*d). With tau from
// compensating_torque this reduces to the double integrator with omega = b*d.
Vec2 pendulum_rhs(const State& x, const PendulumParams& pp, double tau, double d);

enum class DisturbanceKind { Zero, Constant, Sinusoid, AdversarialSign };

// A family of admissible disturbances, all bounded by `amplitude`:
//   zero             -> 0
//   constant         -> sign*amplitude
//   sinusoid         -> amplitude*sin(frequency*t)
//   adversarial-sign -> -sign*amplitude*sgn(x2), 0 when x2 = 0
struct DisturbanceProfile {
  DisturbanceKind kind = DisturbanceKind::Zero;
  double amplitude = 0.0;
  double frequency = 0.0;  // rad/s, sinusoid only
  double sign = 1.0;       // orientation for constant / adversarial-sign

  static DisturbanceProfile zero();
  static DisturbanceProfile constant(double amplitude, double sign = 1.0);
  static DisturbanceProfile sinusoid(double amplitude, double frequency);
  static DisturbanceProfile adversarial(double amplitude, double sign = 1.0);

  // Short CSV-safe tag, e.g. "constant(+0.2)".
  std::string describe() const;
};

double evaluate_disturbance(const DisturbanceProfile& profile, double t, const State& x);

}  // namespace twist
