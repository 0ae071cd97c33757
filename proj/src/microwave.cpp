#include "cvteleport/microwave.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvteleport/protocol.hpp"

namespace cvt::microwave {

namespace {

void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

void check_budget(const CircuitBudget& budget) {
  check_unit_interval(budget.epsilon, "epsilon");
  check_unit_interval(budget.eta, "eta");
  check_unit_interval(budget.kappa, "kappa");
  check_unit_interval(budget.nu, "nu");
  for (const double t : budget.temps) {
    if (t < 0.0) {
      throw std::invalid_argument("stage temperature must be >= 0");
    }
  }
}

double effective_backend_gain(const GainConfig& gains) {
  if (!(gains.g_j > 0.0) || !(gains.g_h > 0.0)) {
    throw std::invalid_argument("amplifier gains must be > 0");
  }
  return gains.chain == AmplifierChain::kHemt ? gains.g_h : gains.g_j * gains.g_j;
}

void check_adc(const AdcConfig& adc) {
  if (!(adc.omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (!(adc.bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
  if (!(adc.resistance > 0.0)) throw std::invalid_argument("resistance must be > 0");
  if (!(adc.lo_amplitude > 0.0)) throw std::invalid_argument("lo_amplitude must be > 0");
}

struct Weights {
  std::array<double, 4> w;
  double signal;  // nu kappa eta epsilon
};

Weights loss_weights(const CircuitBudget& b) {
  Weights out;
  out.w[0] = std::sqrt(b.nu * b.kappa * b.eta * (1.0 - b.epsilon));
  out.w[1] = std::sqrt(b.nu * b.kappa * (1.0 - b.eta));
  out.w[2] = std::sqrt(b.nu * (1.0 - b.kappa));
  out.w[3] = std::sqrt(1.0 - b.nu);
  out.signal = b.nu * b.kappa * b.eta * b.epsilon;
  return out;
}

}  // namespace

double thermal_occupation(double temperature, double omega) {
  if (temperature < 0.0) {
    throw std::invalid_argument("thermal_occupation: temperature must be >= 0");
  }
  if (!(omega > 0.0)) {
    throw std::invalid_argument("thermal_occupation: omega must be > 0");
  }
  if (temperature == 0.0) return 0.0;
  const double x = kHbar * omega / (kBoltzmann * temperature);
  if (x > 700.0) return 0.0;  // below double underflow anyway
  return 1.0 / std::expm1(x);
}

std::array<double, 4> stage_variances(const CircuitBudget& budget, double omega) {
  check_budget(budget);
  std::array<double, 4> out = {};
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = 2.0 * thermal_occupation(budget.temps[k], omega) + 1.0;
  }
  return out;
}

Eigen::Vector2d bath_admixture(const CircuitBudget& budget, const StageDraws& draws) {
  check_budget(budget);
  const Weights weights = loss_weights(budget);
  Eigen::Vector2d zeta = Eigen::Vector2d::Zero();
  for (std::size_t k = 0; k < 4; ++k) {
    zeta(0) += weights.w[k] * draws.x[k];
    zeta(1) += weights.w[k] * draws.p[k];
  }
  return zeta;
}

Eigen::Vector2d heterodyne_outcomes(const Eigen::Vector2d& squeezed_input,
                                    const Eigen::Vector2d& resource_mode1, double r,
                                    const CircuitBudget& budget, const GainConfig& gains,
                                    double lo_amplitude, const Eigen::Vector2d& admixture) {
  check_budget(budget);
  if (!(gains.g_j > 0.0)) throw std::invalid_argument("g_j must be > 0");
  if (!(lo_amplitude > 0.0)) throw std::invalid_argument("lo_amplitude must be > 0");
  const double front = std::sqrt(budget.nu * budget.kappa * gains.g_j);
  const double sig = std::sqrt(budget.eta * budget.epsilon);
  const double xu =
      front * (sig * std::exp(r) * resource_mode1(0) + squeezed_input(0)) + admixture(0);
  const double pv =
      front * (squeezed_input(1) - sig * std::exp(-r) * resource_mode1(1)) + admixture(1);
  return {lo_amplitude * xu, lo_amplitude * pv};
}

double adc_scale(const AdcConfig& adc, const GainConfig& gains) {
  check_adc(adc);
  return std::sqrt(kHbar * adc.omega * adc.bandwidth * adc.resistance *
                   effective_backend_gain(gains));
}

Eigen::Vector2d digitize(const Eigen::Vector2d& outcomes, const AdcConfig& adc,
                         const GainConfig& gains) {
  return adc_scale(adc, gains) * outcomes;
}

double lambda_coefficient(const AdcConfig& adc, const CircuitBudget& budget,
                          const GainConfig& gains) {
  check_adc(adc);
  check_budget(budget);
  return adc.lo_amplitude * adc.lo_amplitude * kHbar * adc.omega * adc.bandwidth *
         adc.resistance * budget.nu * budget.kappa * gains.g_j *
         effective_backend_gain(gains);
}

CouplerSettings coupler_settings(double lambda, const CircuitBudget& budget) {
  check_budget(budget);
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("coupler_settings: lambda must be > 0");
  }
  CouplerSettings out;
  out.lambda = lambda;
  out.tau = 1.0 - 1.0 / lambda;
  out.beta_db = 10.0 * std::log10(1.0 / lambda);
  out.feasible = lambda > 1.0 && lambda <= 2.0;
  out.tau_residual = std::abs(0.5 * budget.epsilon * budget.eta - out.tau);
  return out;
}

Eigen::Vector2d reconstruct(const Eigen::Vector2d& records,
                            const Eigen::Vector2d& resource_mode2, double r,
                            const CouplerSettings& coupler) {
  if (!(coupler.lambda > 0.0)) {
    throw std::invalid_argument("reconstruct: lambda must be > 0");
  }
  const double gain = 1.0 / std::sqrt(coupler.lambda);
  const double tap = std::sqrt(std::max(coupler.tau, 0.0));
  return {records(0) * gain + tap * std::exp(r) * resource_mode2(0),
          records(1) * gain + tap * std::exp(-r) * resource_mode2(1)};
}

RunReport end_to_end_run(const RunSettings& settings) {
  check_budget(settings.budget);
  check_adc(settings.adc);
  if (settings.shots < 1) {
    throw std::invalid_argument("end_to_end_run: shots must be >= 1");
  }
  const std::array<double, 4> variance = stage_variances(settings.budget, settings.adc.omega);
  std::array<double, 4> sigma = {};
  for (std::size_t k = 0; k < 4; ++k) sigma[k] = std::sqrt(variance[k]);
  const double lambda = settings.lambda_override > 0.0
                            ? settings.lambda_override
                            : lambda_coefficient(settings.adc, settings.budget, settings.gains);
  const CouplerSettings coupler = coupler_settings(lambda, settings.budget);
  const protocol::ResourceSampler sampler(settings.r, settings.resource_n);
  const double sq_x = std::exp(-settings.y);
  const double sq_p = std::exp(settings.y);
  const Eigen::Vector2d target(sq_x * settings.input_mean(0), sq_p * settings.input_mean(1));

  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d m2 = Eigen::Vector2d::Zero();
  for (long shot = 0; shot < settings.shots; ++shot) {
    Eigen::Vector4d pair = Eigen::Vector4d::Zero();
    Eigen::Vector2d in = target;
    StageDraws draws;
    if (!settings.deterministic) {
      CounterRng rng(settings.seed, static_cast<std::uint64_t>(shot));
      pair = sampler.draw(rng);
      in(0) += sq_x * rng.normal();
      in(1) += sq_p * rng.normal();
      for (std::size_t k = 0; k < 4; ++k) {
        draws.x[k] = sigma[k] * rng.normal();
        draws.p[k] = sigma[k] * rng.normal();
      }
    }
    const Eigen::Vector2d zeta = bath_admixture(settings.budget, draws);
    const Eigen::Vector2d outcomes =
        heterodyne_outcomes(in, {pair(0), pair(1)}, settings.r, settings.budget,
                            settings.gains, settings.adc.lo_amplitude, zeta);
    const Eigen::Vector2d records = digitize(outcomes, settings.adc, settings.gains);
    const Eigen::Vector2d out = reconstruct(records, {pair(2), pair(3)}, settings.r, coupler);
    const Eigen::Vector2d diff = out - mean;
    mean += diff / static_cast<double>(shot + 1);
    m2 += diff.cwiseProduct(out - mean);
  }

  RunReport report;
  report.coupler = coupler;
  report.adc_scale = adc_scale(settings.adc, settings.gains);
  report.shots = settings.shots;
  report.seed = settings.seed;
  report.deterministic = settings.deterministic;
  report.target = target;
  report.out_mean = mean;
  if (settings.shots > 1) {
    report.out_var = m2 / static_cast<double>(settings.shots - 1);
  }
  report.residual_mean = mean - target;
  report.coeff_record = 1.0 / std::sqrt(coupler.lambda);
  const double tap = std::sqrt(std::max(coupler.tau, 0.0));
  report.coeff_x2 = tap * std::exp(settings.r);
  report.coeff_p2 = tap * std::exp(-settings.r);
  return report;
}

CalibrationReport calibrate_noise(const RunSettings& settings) {
  check_budget(settings.budget);
  check_adc(settings.adc);
  if (settings.shots < 2) {
    throw std::invalid_argument("calibrate_noise: needs at least two shots");
  }
  const std::array<double, 4> variance = stage_variances(settings.budget, settings.adc.omega);
  std::array<double, 4> sigma = {};
  for (std::size_t k = 0; k < 4; ++k) sigma[k] = std::sqrt(variance[k]);
  const double lambda = settings.lambda_override > 0.0
                            ? settings.lambda_override
                            : lambda_coefficient(settings.adc, settings.budget, settings.gains);
  const CouplerSettings coupler = coupler_settings(lambda, settings.budget);
  const protocol::ResourceSampler sampler(settings.r, settings.resource_n);
  const Weights weights = loss_weights(settings.budget);

  const long shots = settings.shots;
  // Accumulators for the residual statistics and the least-squares fits of
  // the residual on (record, second resource mode), per quadrature.
  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  Eigen::Vector2d sum_sq = Eigen::Vector2d::Zero();
  double s_rr_x = 0, s_rm_x = 0, s_mm_x = 0, s_ry_x = 0, s_my_x = 0;
  double s_rr_p = 0, s_rm_p = 0, s_mm_p = 0, s_ry_p = 0, s_my_p = 0;
  for (long shot = 0; shot < shots; ++shot) {
    CounterRng rng(settings.seed, static_cast<std::uint64_t>(shot));
    Eigen::Vector4d pair = Eigen::Vector4d::Zero();
    if (!settings.deterministic) {
      pair = sampler.draw(rng);
    }
    StageDraws draws;
    for (std::size_t k = 0; k < 4; ++k) {
      draws.x[k] = sigma[k] * rng.normal();
      draws.p[k] = sigma[k] * rng.normal();
    }
    const Eigen::Vector2d zeta = bath_admixture(settings.budget, draws);
    const Eigen::Vector2d outcomes =
        heterodyne_outcomes(Eigen::Vector2d::Zero(), {pair(0), pair(1)}, settings.r,
                            settings.budget, settings.gains, settings.adc.lo_amplitude, zeta);
    const Eigen::Vector2d records = digitize(outcomes, settings.adc, settings.gains);
    const Eigen::Vector2d out = reconstruct(records, {pair(2), pair(3)}, settings.r, coupler);
    sum += out;
    sum_sq += out.cwiseProduct(out);
    const double mx = pair(2);
    const double mp = pair(3);
    s_rr_x += records(0) * records(0);
    s_rm_x += records(0) * mx;
    s_mm_x += mx * mx;
    s_ry_x += records(0) * out(0);
    s_my_x += mx * out(0);
    s_rr_p += records(1) * records(1);
    s_rm_p += records(1) * mp;
    s_mm_p += mp * mp;
    s_ry_p += records(1) * out(1);
    s_my_p += mp * out(1);
  }

  CalibrationReport report;
  report.coupler = coupler;
  report.shots = shots;
  report.seed = settings.seed;
  report.residual_mean = sum / static_cast<double>(shots);
  const Eigen::Vector2d mean = report.residual_mean;
  report.residual_var =
      (sum_sq - static_cast<double>(shots) * mean.cwiseProduct(mean)) /
      static_cast<double>(shots - 1);
  double predicted = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    predicted += weights.w[k] * weights.w[k] * variance[k];
  }
  report.predicted_var =
      predicted / (settings.budget.nu * settings.budget.kappa * settings.gains.g_j);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto fit = [nan](double s_rr, double s_rm, double s_mm, double s_ry, double s_my,
                         double& record_gain, double& resource_gain) {
    if (s_mm > 0.0) {
      const double det = s_rr * s_mm - s_rm * s_rm;
      if (det <= 0.0) {
        record_gain = nan;
        resource_gain = nan;
        return;
      }
      record_gain = (s_ry * s_mm - s_my * s_rm) / det;
      resource_gain = (s_my * s_rr - s_ry * s_rm) / det;
    } else {
      record_gain = s_rr > 0.0 ? s_ry / s_rr : nan;
      resource_gain = nan;
    }
  };
  fit(s_rr_x, s_rm_x, s_mm_x, s_ry_x, s_my_x, report.fitted_record_gain_x,
      report.fitted_resource_gain_x);
  fit(s_rr_p, s_rm_p, s_mm_p, s_ry_p, s_my_p, report.fitted_record_gain_p,
      report.fitted_resource_gain_p);
  report.coeff_record = 1.0 / std::sqrt(coupler.lambda);
  const double tap = std::sqrt(std::max(coupler.tau, 0.0));
  report.coeff_x2 = tap * std::exp(settings.r);
  report.coeff_p2 = tap * std::exp(-settings.r);
  return report;
}

}  // namespace cvt::microwave
