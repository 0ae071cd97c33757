#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "cvteleport/gaussian.hpp"
#include "cvteleport/rng.hpp"

// Lossy microwave implementation of the teleporter: four insertion-loss
// stages with their own thermal baths, amplification, digitization and a
// calibrated directional-coupler reconstruction.
namespace cvt::microwave {

// CODATA 2018.
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J / K

enum class AmplifierChain { kHemt, kJpaChain };

// Power transmission budget of the receiver chain.  Stage i couples the
// signal with weight w_i to a bath at temps[i]:
//   w1 = nu kappa eta (1-epsilon), w2 = nu kappa (1-eta),
//   w3 = nu (1-kappa),             w4 = 1-nu,
// and the surviving signal fraction is nu kappa eta epsilon.
struct CircuitBudget {
  double epsilon = 0.95;
  double eta = 0.90;
  double kappa = 0.65;
  double nu = 0.75;
  std::array<double, 4> temps = {0.04, 4.0, 4.0, 0.1};  // kelvin
};

// Amplification: a phase-preserving front-end power gain g_j (equivalently
// squeezing r_j = ln(g_j)/2) followed by either a HEMT of power gain g_h
// or a second JPA chain with effective power gain g_j^2.
struct GainConfig {
  double g_j = 100.0;
  double g_h = 1e4;
  AmplifierChain chain = AmplifierChain::kHemt;
  // Informational: HEMT added noise referred to its input, photons.
  double added_photons = 0.0;
};

// Digitizer front end.  omega is the angular carrier frequency.
struct AdcConfig {
  double omega = 2.0 * 3.141592653589793 * 5e9;  // rad/s
  double bandwidth = 420e3;                      // Hz
  double resistance = 50.0;                      // ohm
  double lo_amplitude = 1e6;                     // |alpha|
};

// Bose occupation 1/(e^{hbar omega / k T} - 1); zero at T = 0.
double thermal_occupation(double temperature, double omega);

// Quadrature variances 2 n(T_i) + 1 of the four stage baths.
std::array<double, 4> stage_variances(const CircuitBudget& budget, double omega);

// One thermal quadrature pair per stage.
struct StageDraws {
  std::array<double, 4> x = {0, 0, 0, 0};
  std::array<double, 4> p = {0, 0, 0, 0};
};

// Loss-weighted bath admixture (zeta_x, zeta_p) entering the measured
// currents.  The squared weights plus the signal fraction sum to one.
Eigen::Vector2d bath_admixture(const CircuitBudget& budget, const StageDraws& draws);

// Amplified heterodyne outcomes before digitization:
//   X_u = |alpha| (sqrt(nu kappa g_j) (sqrt(eta epsilon) e^r x1 + x_in') + zeta_x)
//   P_v = |alpha| (sqrt(nu kappa g_j) (p_in' - sqrt(eta epsilon) e^-r p1) + zeta_p)
// where (x_in', p_in') are the squeezed input quadratures.
Eigen::Vector2d heterodyne_outcomes(const Eigen::Vector2d& squeezed_input,
                                    const Eigen::Vector2d& resource_mode1, double r,
                                    const CircuitBudget& budget, const GainConfig& gains,
                                    double lo_amplitude, const Eigen::Vector2d& admixture);

// Voltage-referred digitizer scale sqrt(hbar omega B R g), with g the
// back-end power gain of the selected chain.
double adc_scale(const AdcConfig& adc, const GainConfig& gains);

// Records digitized as I1 = scale * X_u and Q2 = scale * P_v.
Eigen::Vector2d digitize(const Eigen::Vector2d& outcomes, const AdcConfig& adc,
                         const GainConfig& gains);

// Gain-noise coefficient of the full chain,
// lambda = |alpha|^2 hbar omega B R nu kappa g_j g.
double lambda_coefficient(const AdcConfig& adc, const CircuitBudget& budget,
                          const GainConfig& gains);

// Directional-coupler operating point derived from lambda.
struct CouplerSettings {
  double lambda = 0.0;
  double tau = 0.0;      // 1 - 1/lambda
  double beta_db = 0.0;  // 10 log10(1/lambda)
  bool feasible = false;  // requires 1 < lambda <= 2
  // |epsilon eta / 2 - tau|: how far the loss budget sits from the
  // operating point the coupler actually needs.
  double tau_residual = 0.0;
};

CouplerSettings coupler_settings(double lambda, const CircuitBudget& budget);

// Feed-forward through the coupler:
// (I1 / sqrt(lambda) + sqrt(tau) e^r x2, Q2 / sqrt(lambda) + sqrt(tau) e^-r p2).
// A negative tau is clamped to zero under the square root.
Eigen::Vector2d reconstruct(const Eigen::Vector2d& records,
                            const Eigen::Vector2d& resource_mode2, double r,
                            const CouplerSettings& coupler);

// Everything one end-to-end run needs.
struct RunSettings {
  CircuitBudget budget;
  GainConfig gains;
  AdcConfig adc;
  double r = 1.32;            // resource squeezing
  double resource_n = 0.0;    // resource thermal occupation
  double y = 0.0;             // input squeezing
  Eigen::Vector2d input_mean = Eigen::Vector2d::Zero();
  long shots = 1;
  std::uint64_t seed = 42;
  bool deterministic = true;  // zero every stochastic draw
  double lambda_override = 0.0;  // > 0 replaces the derived lambda
};

struct RunReport {
  CouplerSettings coupler;
  double adc_scale = 0.0;
  long shots = 0;
  std::uint64_t seed = 0;
  bool deterministic = false;
  Eigen::Vector2d target = Eigen::Vector2d::Zero();  // (e^-y x_in, e^y p_in)
  Eigen::Vector2d out_mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d out_var = Eigen::Vector2d::Zero();  // sample variance
  Eigen::Vector2d residual_mean = Eigen::Vector2d::Zero();
  // Analytic feed-forward coefficients (1/sqrt(lambda), sqrt(tau) e^r,
  // sqrt(tau) e^-r).
  double coeff_record = 0.0;
  double coeff_x2 = 0.0;
  double coeff_p2 = 0.0;
};

// Monte Carlo (or deterministic) run of the full chain: squeeze the input,
// mix with the lossy resource, amplify, digitize, reconstruct.
RunReport end_to_end_run(const RunSettings& settings);

struct CalibrationReport {
  CouplerSettings coupler;
  long shots = 0;
  std::uint64_t seed = 0;
  Eigen::Vector2d residual_mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d residual_var = Eigen::Vector2d::Zero();
  // Predicted residual variance per quadrature from the stage budget.
  double predicted_var = 0.0;
  // Least-squares gain of the residual on the digitized record (and, when
  // the resource is drawn, on the second resource mode); equals the
  // analytic coefficients when the model holds.  Unidentifiable gains are
  // reported as NaN.
  double fitted_record_gain_x = 0.0;
  double fitted_record_gain_p = 0.0;
  double fitted_resource_gain_x = 0.0;
  double fitted_resource_gain_p = 0.0;
  double coeff_record = 0.0;
  double coeff_x2 = 0.0;
  double coeff_p2 = 0.0;
};

// Zero-input noise calibration: runs the chain with the input port blocked
// (mean zero and no input fluctuations), thermal draws always on, resource
// draws controlled by settings.deterministic.  The reconstruction residual
// is then exactly the referred bath noise.
CalibrationReport calibrate_noise(const RunSettings& settings);

}  // namespace cvt::microwave
