#include "twist/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace twist {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ConfigError(where + ": cannot parse '" + text + "' as a number");
  return value;
}

std::int64_t to_int(const std::string& text, const std::string& where) {
  std::int64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError(where + ": cannot parse '" + text + "' as an integer");
  return value;
}

std::uint64_t to_uint(const std::string& text, const std::string& where) {
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError(where + ": cannot parse '" + text + "' as an unsigned integer");
  return value;
}

}  // namespace

void RunConfig::merge_from(const RunConfig& other) {
  auto take = [](auto& mine, const auto& theirs) {
    if (theirs.has_value()) mine = theirs;
  };
  take(R, other.R);
  take(beta, other.beta);
  take(rho, other.rho);
  take(delta, other.delta);
  take(N, other.N);
  take(Ts, other.Ts);
  take(mu1, other.mu1);
  take(mu2, other.mu2);
  take(dt, other.dt);
  take(t_end, other.t_end);
  take(settle_eps, other.settle_eps);
  take(record_stride, other.record_stride);
  take(plant, other.plant);
  take(x1_0, other.x1_0);
  take(x2_0, other.x2_0);
  take(kind, other.kind);
  take(amplitude, other.amplitude);
  take(frequency, other.frequency);
  take(sign, other.sign);
  take(boundary_count, other.boundary_count);
  take(interior_count, other.interior_count);
  take(seed, other.seed);
  take(profiles, other.profiles);
  take(m, other.m);
  take(l, other.l);
  take(J, other.J);
  take(g, other.g);
  take(fv, other.fv);
  take(r, other.r);
}

RunConfig parse_config(std::istream& is, const std::string& origin) {
  RunConfig cfg;

  using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
  auto dbl = [](std::optional<double> RunConfig::* field) {
    return Setter([field](RunConfig& c, const std::string& v, const std::string& where) {
      c.*field = to_double(v, where);
    });
  };
  auto str = [](std::optional<std::string> RunConfig::* field) {
    return Setter([field](RunConfig& c, const std::string& v, const std::string&) {
      c.*field = v;
    });
  };

  const std::map<std::string, std::map<std::string, Setter>> schema = {
      {"parameters",
       {{"R", dbl(&RunConfig::R)},
        {"beta", dbl(&RunConfig::beta)},
        {"rho", dbl(&RunConfig::rho)},
        {"delta", dbl(&RunConfig::delta)},
        {"N", dbl(&RunConfig::N)},
        {"Ts", dbl(&RunConfig::Ts)}}},
      {"gains", {{"mu1", dbl(&RunConfig::mu1)}, {"mu2", dbl(&RunConfig::mu2)}}},
      {"sim",
       {{"dt", dbl(&RunConfig::dt)},
        {"t_end", dbl(&RunConfig::t_end)},
        {"settle_eps", dbl(&RunConfig::settle_eps)},
        {"record_stride",
         Setter([](RunConfig& c, const std::string& v, const std::string& w) {
           c.record_stride = to_int(v, w);
         })},
        {"plant", str(&RunConfig::plant)},
        {"x1_0", dbl(&RunConfig::x1_0)},
        {"x2_0", dbl(&RunConfig::x2_0)}}},
      {"disturbance",
       {{"kind", str(&RunConfig::kind)},
        {"amplitude", dbl(&RunConfig::amplitude)},
        {"frequency", dbl(&RunConfig::frequency)},
        {"sign", dbl(&RunConfig::sign)}}},
      {"campaign",
       {{"boundary_count",
         Setter([](RunConfig& c, const std::string& v, const std::string& w) {
           c.boundary_count = static_cast<int>(to_int(v, w));
         })},
        {"interior_count",
         Setter([](RunConfig& c, const std::string& v, const std::string& w) {
           c.interior_count = static_cast<int>(to_int(v, w));
         })},
        {"seed",
         Setter([](RunConfig& c, const std::string& v, const std::string& w) {
           c.seed = to_uint(v, w);
         })},
        {"profiles", str(&RunConfig::profiles)}}},
      {"pendulum",
       {{"m", dbl(&RunConfig::m)},
        {"l", dbl(&RunConfig::l)},
        {"J", dbl(&RunConfig::J)},
        {"g", dbl(&RunConfig::g)},
        {"fv", dbl(&RunConfig::fv)},
        {"r", dbl(&RunConfig::r)}}},
  };

  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = origin + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (schema.find(section) == schema.end())
        throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value' or '[section]'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(where + ": key '" + key + "' outside any section");
    if (key.empty() || value.empty())
      throw ConfigError(where + ": empty key or value");

    const auto& keys = schema.at(section);
    const auto it = keys.find(key);
    if (it == keys.end())
      throw ConfigError(where + ": unknown key '" + key + "' in section [" + section + "]");
    it->second(cfg, value, where);
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file: " + path);
  return parse_config(file, path);
}

TuningParameters require_parameters(const RunConfig& cfg) {
  std::vector<std::string> missing;
  auto need = [&missing](const std::optional<double>& field, const char* name) {
    if (!field.has_value()) missing.emplace_back(name);
    return field.value_or(0.0);
  };
  TuningParameters p;
  p.R = need(cfg.R, "R");
  p.beta = need(cfg.beta, "beta");
  p.rho = need(cfg.rho, "rho");
  p.delta = need(cfg.delta, "delta");
  p.N = need(cfg.N, "N");
  p.Ts = need(cfg.Ts, "Ts");
  if (!missing.empty()) {
    std::ostringstream oss;
    oss << "missing required parameter key" << (missing.size() > 1 ? "s:" : ":");
    for (const auto& name : missing) oss << " " << name << " required";
    throw ConfigError(oss.str());
  }
  return p;
}

Gains gains_or_synthesized(const RunConfig& cfg, const TuningParameters& p, double margin,
                           bool* synthesized) {
  if (cfg.mu1.has_value() != cfg.mu2.has_value())
    throw ConfigError("gains must be given as a pair: both mu1 and mu2, or neither");
  if (cfg.mu1.has_value()) {
    if (synthesized) *synthesized = false;
    return Gains{*cfg.mu1, *cfg.mu2};
  }
  if (synthesized) *synthesized = true;
  return synthesize_gains(p, margin);
}

SimConfig make_sim_config(const RunConfig& cfg, double Ts) {
  SimConfig sim = default_sim_config(Ts, cfg.dt.value_or(1e-5));
  if (cfg.t_end.has_value()) {
    sim.t_end = *cfg.t_end;
    // Re-derive the stride for the explicit horizon unless one was given.
    sim = default_sim_config(sim.t_end / 2.0, sim.dt);
  }
  if (cfg.record_stride.has_value()) sim.record_stride = *cfg.record_stride;
  if (cfg.settle_eps.has_value()) sim.settle_eps = *cfg.settle_eps;
  return sim;
}

DisturbanceProfile make_profile(const RunConfig& cfg, double N) {
  const std::string kind = cfg.kind.value_or("zero");
  const double amplitude = cfg.amplitude.value_or(N);
  const double sign = cfg.sign.value_or(1.0);
  if (kind == "zero") return DisturbanceProfile::zero();
  if (kind == "constant") return DisturbanceProfile::constant(amplitude, sign);
  if (kind == "sinusoid") return DisturbanceProfile::sinusoid(amplitude, cfg.frequency.value_or(2.0));
  if (kind == "adversarial") return DisturbanceProfile::adversarial(amplitude, sign);
  throw ConfigError("unknown disturbance kind '" + kind +
                    "' (expected zero|constant|sinusoid|adversarial)");
}

std::vector<DisturbanceProfile> make_battery(const RunConfig& cfg, const TuningParameters& p) {
  const std::string spec = cfg.profiles.value_or("battery");
  const double amplitude = cfg.amplitude.value_or(p.N);
  const double frequency = cfg.frequency.value_or(2.0);
  if (spec == "battery") return default_battery(amplitude, frequency);

  std::vector<DisturbanceProfile> battery;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token == "zero")
      battery.push_back(DisturbanceProfile::zero());
    else if (token == "constant+" || token == "constant")
      battery.push_back(DisturbanceProfile::constant(amplitude, +1.0));
    else if (token == "constant-")
      battery.push_back(DisturbanceProfile::constant(amplitude, -1.0));
    else if (token == "sinusoid")
      battery.push_back(DisturbanceProfile::sinusoid(amplitude, frequency));
    else if (token == "adversarial")
      battery.push_back(DisturbanceProfile::adversarial(amplitude, -1.0));
    else
      throw ConfigError("unknown profile token '" + token +
                        "' (expected zero|constant+|constant-|sinusoid|adversarial)");
  }
  if (battery.empty()) throw ConfigError("profiles list is empty");
  return battery;
}

PendulumParams demo_pendulum() {
  return PendulumParams::from_physical(0.0474, 0.11, 3.11e-3, 9.81, 2.43e-4, 0.0);
}

PendulumParams make_pendulum_params(const RunConfig& cfg) {
  const PendulumParams fallback = demo_pendulum();
  return PendulumParams::from_physical(cfg.m.value_or(fallback.m), cfg.l.value_or(fallback.l),
                                       cfg.J.value_or(fallback.J), cfg.g.value_or(fallback.g),
                                       cfg.fv.value_or(fallback.fv), cfg.r.value_or(fallback.r));
}

}  // namespace twist
