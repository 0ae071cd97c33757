#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvteleport/freespace.hpp"
#include "cvteleport/microwave.hpp"

namespace cvt::harness {

// Flat key=value configuration shared by every CLI command.  Defaults are
// the cryogenic reference budget of the hardware study shipped with the
// tool (see README).  Unknown keys are rejected, not ignored.
struct Config {
  // loss budget and stage temperatures (kelvin)
  double epsilon = 0.95;
  double eta = 0.90;
  double kappa = 0.65;
  double nu = 0.75;
  double t1 = 0.04;
  double t2 = 4.0;
  double t3 = 4.0;
  double t4 = 0.1;

  // amplification
  double g_j = 100.0;
  double g_h = 1e4;
  std::string chain = "HEMT";  // HEMT | JPA_CHAIN
  double r_j = 0.0;            // 0 = derive as ln(gJ)/2
  double hemt_added_photons = 0.0;

  // carrier and digitizer
  double omega_hz = 5e9;
  bool omega_is_angular = false;
  double bandwidth_hz = 420e3;
  double resistance_ohm = 50.0;
  double lo_amplitude = 1e6;

  // states
  double r = 1.32;   // resource squeezing
  double n = 0.0;    // resource thermal occupation
  double y = 0.0;    // input squeezing
  double x_in = 1.0;
  double p_in = 1.0;

  // execution
  long shots = 10000;
  std::uint64_t seed = 42;
  bool deterministic = true;
  double lambda = 0.0;  // > 0 overrides the derived gain-noise coefficient

  // free-space sweep grids
  std::vector<double> y_values = {0.0};
  std::vector<double> eta_values = {0.9};
  std::vector<double> n_values = {0.5};
  double r_min = 0.0;
  double r_max = 2.0;
  long r_count = 41;
  std::string input_orientation = "x_antisqueezed";  // x_antisqueezed | x_squeezed

  double omega_rad() const;
  microwave::RunSettings to_run_settings() const;
  freespace::InputOrientation orientation() const;
  std::vector<double> r_values() const;
};

// Apply one "key=value" assignment; throws std::invalid_argument on an
// unknown key or an unparsable value.
void apply_config_line(Config& config, const std::string& line);

// Parse file text (one assignment per line, '#' comments, blank lines
// allowed), then the command-line overrides, in order.
Config load_config(const std::string& file_text, const std::vector<std::string>& overrides);

// Every effective key, sorted, one per line, values at full precision.
// Two configs hash equal iff every effective setting matches.
std::string canonical_text(const Config& config);
std::uint64_t config_hash(const Config& config);

}  // namespace cvt::harness
