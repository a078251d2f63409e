#include "twist/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace twist {

namespace {

ConstraintCheck greater_than(std::string name, double value, double bound) {
  // Strict: equality at the bound is a violation.
  return {std::move(name), value > bound, value, bound, value - bound};
}

ConstraintCheck at_least(std::string name, double value, double bound) {
  return {std::move(name), value >= bound, value, bound, value - bound};
}

ConstraintCheck less_than(std::string name, double value, double bound) {
  return {std::move(name), value < bound, value, bound, bound - value};
}

void throw_if_invalid(const TuningParameters& p) {
  const ValidationReport report = validate_parameters(p);
  if (report.ok()) return;
  std::ostringstream oss;
  oss << "invalid tuning parameters:";
  for (const auto& v : report.violations()) oss << " [" << v << "]";
  throw std::invalid_argument(oss.str());
}

}  // namespace

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConstraintCheck& c) { return c.ok; });
}

std::vector<std::string> ValidationReport::violations() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.ok) out.push_back(c.name);
  return out;
}

std::string ValidationReport::summary() const {
  std::ostringstream oss;
  for (const auto& c : checks) {
    oss << (c.ok ? "  [ok]   " : "  [FAIL] ") << c.name;
    if (std::isfinite(c.margin))
      oss << "  (value " << c.value << ", bound " << c.bound << ", margin " << c.margin << ")";
    oss << "\n";
  }
  for (const auto& a : advisories) oss << "  [note] " << a << "\n";
  return oss.str();
}

double delta_lower_bound(double R, double beta) {
  return std::sqrt(2.0 * R) * (beta + 1.0) / (beta - 1.0);
}

ValidationReport validate_parameters(const TuningParameters& p) {
  ValidationReport report;

  const bool finite = std::isfinite(p.R) && std::isfinite(p.beta) && std::isfinite(p.rho) &&
                      std::isfinite(p.delta) && std::isfinite(p.N) && std::isfinite(p.Ts);
  report.checks.push_back({"all parameters finite", finite,
                           std::numeric_limits<double>::quiet_NaN(), 0.0,
                           std::numeric_limits<double>::quiet_NaN()});

  report.checks.push_back(greater_than("R > 0", p.R, 0.0));
  report.checks.push_back(greater_than("beta > 1", p.beta, 1.0));
  report.checks.push_back(greater_than("rho > 0", p.rho, 0.0));
  report.checks.push_back(less_than("rho < 1", p.rho, 1.0));
  report.checks.push_back(at_least("N >= 0", p.N, 0.0));
  report.checks.push_back(greater_than("Ts > 0", p.Ts, 0.0));

  // The delta bound is reported even when it fails, so callers can see how
  // far off the input was. NaN bounds (bad R/beta) fail the comparison.
  const double dmin = delta_lower_bound(p.R, p.beta);
  report.checks.push_back(greater_than("delta > sqrt(2R)(beta+1)/(beta-1)", p.delta, dmin));

  if (finite && std::isfinite(dmin) && dmin > 0.0 && p.delta > 10.0 * dmin) {
    std::ostringstream oss;
    oss << "delta (" << p.delta << ") exceeds 10x its lower bound (" << dmin
        << "); mu1 scales with delta and will be correspondingly large";
    report.advisories.push_back(oss.str());
  }
  return report;
}

double mu1_lower_bound(const TuningParameters& p) {
  throw_if_invalid(p);
  const double shape = std::sqrt(1.0 - 1.0 / (p.beta * p.beta));
  return 2.0 * p.delta / (p.Ts * shape) + p.N;
}

double mu2_lower_bound(const TuningParameters& p, double mu1) {
  throw_if_invalid(p);
  if (!std::isfinite(mu1)) throw std::invalid_argument("mu1 must be finite");
  return std::max({std::sqrt(p.R / 2.0),
                   p.rho * std::sqrt(p.R / (2.0 * (1.0 - p.rho))),
                   p.rho,
                   p.beta * mu1,
                   mu1 + p.N});
}

Gains synthesize_gains(const TuningParameters& p, double margin) {
  throw_if_invalid(p);
  if (!(margin > 0.0) || !std::isfinite(margin))
    throw std::invalid_argument("margin must be > 0: the gain bounds are strict");
  Gains g;
  g.mu1 = (1.0 + margin) * mu1_lower_bound(p);
  g.mu2 = (1.0 + margin) * mu2_lower_bound(p, g.mu1);
  return g;
}

ValidationReport validate_gains(const TuningParameters& p, const Gains& g) {
  ValidationReport report = validate_parameters(p);

  const bool finite = std::isfinite(g.mu1) && std::isfinite(g.mu2);
  report.checks.push_back({"gains finite", finite, std::numeric_limits<double>::quiet_NaN(),
                           0.0, std::numeric_limits<double>::quiet_NaN()});

  double mu1_bound = std::numeric_limits<double>::quiet_NaN();
  double mu2_bound = std::numeric_limits<double>::quiet_NaN();
  if (report.ok()) {
    mu1_bound = mu1_lower_bound(p);
    mu2_bound = mu2_lower_bound(p, g.mu1);
  }
  report.checks.push_back(greater_than("mu1 > 2delta/(Ts sqrt(1-beta^-2)) + N", g.mu1, mu1_bound));
  report.checks.push_back(greater_than("mu2 > max{sqrt(R/2), rho sqrt(R/(2(1-rho))), rho, beta mu1, mu1+N}",
                                       g.mu2, mu2_bound));
  return report;
}

SettlingEstimate settling_estimate(const TuningParameters& p, const Gains& g) {
  const ValidationReport report = validate_gains(p, g);
  if (!report.ok()) {
    std::ostringstream oss;
    oss << "gain validation failed:";
    for (const auto& v : report.violations()) oss << " [" << v << "]";
    throw std::invalid_argument(oss.str());
  }

  SettlingEstimate est;
  est.r1 = std::sqrt(2.0 * p.R);
  est.r2 = p.rho * p.R / g.mu2;
  est.eta = (g.mu1 - p.N) / g.mu2;
  const double root = std::sqrt(1.0 - est.eta * est.eta);
  est.t2 = p.delta * (root + 1.0) / ((g.mu1 - p.N) * root);
  est.t2_bound = 2.0 * p.delta / ((g.mu1 - p.N) * std::sqrt(1.0 - 1.0 / (p.beta * p.beta)));
  return est;
}

}  // namespace twist
