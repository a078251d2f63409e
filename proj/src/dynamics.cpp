#include "twist/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twist {

PendulumParams PendulumParams::from_physical(double m, double l, double J, double g,
                                             double fv, double r) {
  if (!(m > 0.0) || !(l > 0.0) || !(J > 0.0) || !(g > 0.0))
    throw std::invalid_argument("pendulum m, l, J, g must be > 0");
  if (!(fv >= 0.0)) throw std::invalid_argument("pendulum fv must be >= 0");
  if (!std::isfinite(m) || !std::isfinite(l) || !std::isfinite(J) || !std::isfinite(g) ||
      !std::isfinite(fv) || !std::isfinite(r))
    throw std::invalid_argument("pendulum parameters must be finite");
  PendulumParams pp;
  pp.m = m;
  pp.l = l;
  pp.J = J;
  pp.g = g;
  pp.fv = fv;
  pp.r = r;
  pp.b = 1.0 / (m * l * l + J);
  return pp;
}

double compensating_torque(const State& x, const PendulumParams& pp, double u) {
  return u / pp.b + pp.fv * x[1] + pp.m * pp.g * pp.l * std::sin(x[0] + pp.r);
}

Vec2 pendulum_rhs(const State& x, const PendulumParams& pp, double tau, double d) {
  const double gravity = pp.m * pp.g * pp.l * std::sin(x[0] + pp.r);
  return {x[1], pp.b * (tau - pp.fv * x[1] - gravity) + pp.b * d};
}

DisturbanceProfile DisturbanceProfile::zero() { return {DisturbanceKind::Zero, 0.0, 0.0, 1.0}; }

DisturbanceProfile DisturbanceProfile::constant(double amplitude, double sign) {
  return {DisturbanceKind::Constant, amplitude, 0.0, sign};
}

DisturbanceProfile DisturbanceProfile::sinusoid(double amplitude, double frequency) {
  return {DisturbanceKind::Sinusoid, amplitude, frequency, 1.0};
}

DisturbanceProfile DisturbanceProfile::adversarial(double amplitude, double sign) {
  return {DisturbanceKind::AdversarialSign, amplitude, 0.0, sign};
}

std::string DisturbanceProfile::describe() const {
  std::ostringstream oss;
  switch (kind) {
    case DisturbanceKind::Zero:
      return "zero";
    case DisturbanceKind::Constant:
      oss << "constant(" << (sign >= 0.0 ? "+" : "-") << amplitude << ")";
      break;
    case DisturbanceKind::Sinusoid:
      oss << "sinusoid(" << amplitude << " @ " << frequency << " rad/s)";
      break;
    case DisturbanceKind::AdversarialSign:
      oss << "adversarial(" << (sign >= 0.0 ? "+" : "-") << amplitude << ")";
      break;
  }
  return oss.str();
}

double evaluate_disturbance(const DisturbanceProfile& profile, double t, const State& x) {
  switch (profile.kind) {
    case DisturbanceKind::Zero:
      return 0.0;
    case DisturbanceKind::Constant:
      return profile.sign * profile.amplitude;
    case DisturbanceKind::Sinusoid:
      return profile.amplitude * std::sin(profile.frequency * t);
    case DisturbanceKind::AdversarialSign:
      return -profile.sign * profile.amplitude * sgn(x[1]);
  }
  return 0.0;
}

}  // namespace twist
