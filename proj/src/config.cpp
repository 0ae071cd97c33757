#include "cvteleport/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cvteleport/report.hpp"

namespace cvt::harness {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" + value + "'");
  }
  return out;
}

long parse_long(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("config: bad integer value for " + key + ": '" + value + "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument("config: bad seed value for " + key + ": '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config: bad boolean value for " + key + ": '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream stream(value);
  while (std::getline(stream, item, ',')) {
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) {
    throw std::invalid_argument("config: empty list for " + key);
  }
  return out;
}

// Shortest text that parses back to the same double; used for hashing so
// the hash keys on exact values, not on a display precision.
std::string full_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string join_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ',';
    out += full_number(values[k]);
  }
  return out;
}

}  // namespace

double Config::omega_rad() const {
  return omega_is_angular ? omega_hz : 2.0 * std::numbers::pi * omega_hz;
}

freespace::InputOrientation Config::orientation() const {
  if (input_orientation == "x_antisqueezed") return freespace::InputOrientation::kAntisqueezedX;
  if (input_orientation == "x_squeezed") return freespace::InputOrientation::kSqueezedX;
  throw std::invalid_argument("config: input_orientation must be x_antisqueezed or x_squeezed");
}

std::vector<double> Config::r_values() const {
  if (r_count < 1) {
    throw std::invalid_argument("config: r_count must be >= 1");
  }
  if (r_max < r_min) {
    throw std::invalid_argument("config: r_max must be >= r_min");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(r_count));
  if (r_count == 1) {
    out.push_back(r_min);
    return out;
  }
  const double step = (r_max - r_min) / static_cast<double>(r_count - 1);
  for (long k = 0; k < r_count; ++k) {
    out.push_back(r_min + step * static_cast<double>(k));
  }
  return out;
}

microwave::RunSettings Config::to_run_settings() const {
  if (chain != "HEMT" && chain != "JPA_CHAIN") {
    throw std::invalid_argument("config: chain must be HEMT or JPA_CHAIN");
  }
  if (!(g_j > 0.0)) {
    throw std::invalid_argument("config: gJ must be > 0");
  }
  if (r_j > 0.0) {
    // rJ is redundant with gJ; accept it only when the two agree.
    const double derived = 0.5 * std::log(g_j);
    if (std::abs(r_j - derived) > 0.02 * std::max(std::abs(derived), 0.1)) {
      throw std::invalid_argument("config: rJ disagrees with ln(gJ)/2 by more than 2%");
    }
  }
  microwave::RunSettings settings;
  settings.budget.epsilon = epsilon;
  settings.budget.eta = eta;
  settings.budget.kappa = kappa;
  settings.budget.nu = nu;
  settings.budget.temps = {t1, t2, t3, t4};
  settings.gains.g_j = g_j;
  settings.gains.g_h = g_h;
  settings.gains.chain = chain == "HEMT" ? microwave::AmplifierChain::kHemt
                                         : microwave::AmplifierChain::kJpaChain;
  settings.gains.added_photons = hemt_added_photons;
  settings.adc.omega = omega_rad();
  settings.adc.bandwidth = bandwidth_hz;
  settings.adc.resistance = resistance_ohm;
  settings.adc.lo_amplitude = lo_amplitude;
  settings.r = r;
  settings.resource_n = n;
  settings.y = y;
  settings.input_mean = {x_in, p_in};
  settings.shots = shots;
  settings.seed = seed;
  settings.deterministic = deterministic;
  settings.lambda_override = lambda;
  return settings;
}

void apply_config_line(Config& config, const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("config: expected key=value, got '" + line + "'");
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty()) {
    throw std::invalid_argument("config: empty key in '" + line + "'");
  }

  if (key == "epsilon") config.epsilon = parse_double(key, value);
  else if (key == "eta") config.eta = parse_double(key, value);
  else if (key == "kappa") config.kappa = parse_double(key, value);
  else if (key == "nu") config.nu = parse_double(key, value);
  else if (key == "T1") config.t1 = parse_double(key, value);
  else if (key == "T2") config.t2 = parse_double(key, value);
  else if (key == "T3") config.t3 = parse_double(key, value);
  else if (key == "T4") config.t4 = parse_double(key, value);
  else if (key == "gJ") config.g_j = parse_double(key, value);
  else if (key == "gH") config.g_h = parse_double(key, value);
  else if (key == "chain") config.chain = value;
  else if (key == "rJ") config.r_j = parse_double(key, value);
  else if (key == "hemt_added_photons") config.hemt_added_photons = parse_double(key, value);
  else if (key == "omega_hz") config.omega_hz = parse_double(key, value);
  else if (key == "omega_is_angular") config.omega_is_angular = parse_bool(key, value);
  else if (key == "bandwidth_hz") config.bandwidth_hz = parse_double(key, value);
  else if (key == "resistance_ohm") config.resistance_ohm = parse_double(key, value);
  else if (key == "lo_amplitude") config.lo_amplitude = parse_double(key, value);
  else if (key == "r") config.r = parse_double(key, value);
  else if (key == "n") config.n = parse_double(key, value);
  else if (key == "y") config.y = parse_double(key, value);
  else if (key == "x_in") config.x_in = parse_double(key, value);
  else if (key == "p_in") config.p_in = parse_double(key, value);
  else if (key == "shots") config.shots = parse_long(key, value);
  else if (key == "seed") config.seed = parse_u64(key, value);
  else if (key == "deterministic") config.deterministic = parse_bool(key, value);
  else if (key == "lambda") config.lambda = parse_double(key, value);
  else if (key == "y_values") config.y_values = parse_list(key, value);
  else if (key == "eta_values") config.eta_values = parse_list(key, value);
  else if (key == "N_values") config.n_values = parse_list(key, value);
  else if (key == "r_min") config.r_min = parse_double(key, value);
  else if (key == "r_max") config.r_max = parse_double(key, value);
  else if (key == "r_count") config.r_count = parse_long(key, value);
  else if (key == "input_orientation") config.input_orientation = value;
  else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

Config load_config(const std::string& file_text, const std::vector<std::string>& overrides) {
  Config config;
  std::istringstream stream(file_text);
  std::string line;
  while (std::getline(stream, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    apply_config_line(config, line);
  }
  for (const auto& entry : overrides) {
    apply_config_line(config, entry);
  }
  return config;
}

std::string canonical_text(const Config& config) {
  std::ostringstream out;
  out << "N_values=" << join_list(config.n_values) << '\n'
      << "T1=" << full_number(config.t1) << '\n'
      << "T2=" << full_number(config.t2) << '\n'
      << "T3=" << full_number(config.t3) << '\n'
      << "T4=" << full_number(config.t4) << '\n'
      << "bandwidth_hz=" << full_number(config.bandwidth_hz) << '\n'
      << "chain=" << config.chain << '\n'
      << "deterministic=" << (config.deterministic ? 1 : 0) << '\n'
      << "epsilon=" << full_number(config.epsilon) << '\n'
      << "eta=" << full_number(config.eta) << '\n'
      << "eta_values=" << join_list(config.eta_values) << '\n'
      << "gH=" << full_number(config.g_h) << '\n'
      << "gJ=" << full_number(config.g_j) << '\n'
      << "hemt_added_photons=" << full_number(config.hemt_added_photons) << '\n'
      << "input_orientation=" << config.input_orientation << '\n'
      << "kappa=" << full_number(config.kappa) << '\n'
      << "lambda=" << full_number(config.lambda) << '\n'
      << "lo_amplitude=" << full_number(config.lo_amplitude) << '\n'
      << "n=" << full_number(config.n) << '\n'
      << "nu=" << full_number(config.nu) << '\n'
      << "omega_hz=" << full_number(config.omega_hz) << '\n'
      << "omega_is_angular=" << (config.omega_is_angular ? 1 : 0) << '\n'
      << "p_in=" << full_number(config.p_in) << '\n'
      << "r=" << full_number(config.r) << '\n'
      << "rJ=" << full_number(config.r_j) << '\n'
      << "r_count=" << config.r_count << '\n'
      << "r_max=" << full_number(config.r_max) << '\n'
      << "r_min=" << full_number(config.r_min) << '\n'
      << "resistance_ohm=" << full_number(config.resistance_ohm) << '\n'
      << "seed=" << config.seed << '\n'
      << "shots=" << config.shots << '\n'
      << "x_in=" << full_number(config.x_in) << '\n'
      << "y=" << full_number(config.y) << '\n'
      << "y_values=" << join_list(config.y_values) << '\n';
  return out.str();
}

std::uint64_t config_hash(const Config& config) { return fnv1a_64(canonical_text(config)); }

}  // namespace cvt::harness
