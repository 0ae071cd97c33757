#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "cvteleport/gaussian.hpp"
#include "cvteleport/rng.hpp"

// Ideal continuous-variable teleportation of a single-mode Gaussian state
// using a two-mode squeezed resource, dual homodyne detection and linear
// feed-forward.
namespace cvt::protocol {

// Local oscillator settings for the dual homodyne stage.
struct HomodyneConfig {
  double lo_amplitude = 1.0;  // |alpha|, must be > 0
  double theta_x = 0.0;       // LO phase on the x-measuring arm
  double theta_p = 1.5707963267948966;  // LO phase on the p-measuring arm
};

// Resource squeezing r and thermal occupation n of the shared pair.
struct ResourceSpec {
  double r = 0.0;
  double n = 0.0;
};

// Input is a squeezed coherent state: fluctuation covariance
// diag(e^2y, e^-2y) around `mean`.
struct InputSpec {
  double y = 0.0;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
};

struct MeasurementRecord {
  double current_x = 0.0;  // differenced photocurrent, x-measuring pair
  double current_p = 0.0;  // differenced photocurrent, p-measuring pair
  double xu = 0.0;         // current_x / |alpha|
  double pv = 0.0;         // current_p / |alpha|
  std::complex<double> delta;  // xu + i pv, the classical feed-forward
};

// Quadratures of a strong local oscillator at phase theta:
// (sqrt(2)|alpha| cos(theta), sqrt(2)|alpha| sin(theta)).
Eigen::Vector2d lo_quadratures(double amplitude, double theta);

// Propagate an eight-quadrature vector through the fixed four-splitter
// network of the dual homodyne detector.  Input mode order: x-arm LO,
// input state, scaled resource mode (e^r x1, e^-r p1), p-arm LO.
Eigen::Matrix<double, 8, 1> double_homodyne_propagate(const Eigen::Matrix<double, 8, 1>& in);

// Idealized detector: photon number minus the vacuum offset,
// (x^2 + p^2)/2 - 1/2.
double detector_current(double x, double p);

// Mix the input quadratures with half of the resource pair, difference the
// four detector currents and normalize by the LO amplitude.
MeasurementRecord alice_measure(const Eigen::Vector2d& input,
                                const Eigen::Vector2d& resource_mode1, double r,
                                const HomodyneConfig& cfg = HomodyneConfig{});

// Feed-forward onto the second resource mode:
// (e^r x2 + xu, e^-r p2 + pv).
Eigen::Vector2d bob_reconstruct(const Eigen::Vector2d& resource_mode2, double r,
                                const MeasurementRecord& record);

// Teleportation fidelity of a single-mode Gaussian input with fluctuation
// covariance v_in through a two-mode Gaussian resource, from the 2x2 noise
// matrix 2 v_in + Z A Z + B - C Z - Z C^T.
double fidelity_gamma(const Eigen::Matrix2d& v_in, const GaussianState& resource);

// Same quantity for a squeezed input and a two-mode squeezed thermal
// resource: 1 / sqrt((e^-2y + s)(e^2y + s)) with s = (2n+1) e^-2r.
double fidelity_closed_form(double y, double r, double n);

// Mean of fidelity_closed_form over y in [y_low, y_high] (adaptive
// Simpson, absolute tolerance abs_tol).  A degenerate interval returns the
// integrand at y_low.
double average_fidelity(double r, double n, double y_low = 0.0, double y_high = 1.0,
                        double abs_tol = 1e-9);

// Draws one resource pair per call in the laboratory frame (x1, p1, x2, p2),
// correlated so that x2 ~ -x1 and p2 ~ p1 as squeezing grows.
class ResourceSampler {
 public:
  ResourceSampler(double r, double n);
  Eigen::Vector4d draw(CounterRng& rng) const;

 private:
  double r_ = 0.0;
  Eigen::Matrix4d chol_;  // lower factor of the scaled-frame covariance
};

struct ShotStats {
  long shots = 0;
  std::uint64_t seed = 0;
  bool deterministic = false;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();      // output mean
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();       // sample covariance
  Eigen::Vector2d input_mean = Eigen::Vector2d::Zero();

  std::string to_csv_row() const;
};

// Monte Carlo teleportation: per shot, draw the input fluctuation and the
// resource pair, measure, reconstruct and accumulate output statistics.
// With deterministic = true all draws are zero, so a single shot returns
// the exact output mean.
ShotStats simulate_shots(const InputSpec& input, const ResourceSpec& resource, long shots,
                         std::uint64_t seed, bool deterministic = false);

}  // namespace cvt::protocol
