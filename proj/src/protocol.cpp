#include "cvteleport/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "cvteleport/report.hpp"

namespace cvt::protocol {

namespace {

// Fixed splitter network: first the input meets the resource mode, then
// each arm meets its local oscillator on a balanced splitter.
const Eigen::Matrix<double, 8, 8>& homodyne_matrix() {
  static const Eigen::Matrix<double, 8, 8> s = [] {
    const SymplecticTransform stage1 =
        direct_sum({identity_transform(1), beamsplitter(0.5), identity_transform(1)});
    const SymplecticTransform stage2 = direct_sum({beamsplitter(0.5), beamsplitter(0.5)});
    Eigen::Matrix<double, 8, 8> out = (stage2.matrix * stage1.matrix);
    return out;
  }();
  return s;
}

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

Eigen::Vector2d lo_quadratures(double amplitude, double theta) {
  if (!(amplitude > 0.0)) {
    throw std::invalid_argument("lo_quadratures: amplitude must be > 0");
  }
  const double scale = std::sqrt(2.0) * amplitude;
  return {scale * std::cos(theta), scale * std::sin(theta)};
}

Eigen::Matrix<double, 8, 1> double_homodyne_propagate(const Eigen::Matrix<double, 8, 1>& in) {
  return homodyne_matrix() * in;
}

double detector_current(double x, double p) { return 0.5 * (x * x + p * p) - 0.5; }

MeasurementRecord alice_measure(const Eigen::Vector2d& input,
                                const Eigen::Vector2d& resource_mode1, double r,
                                const HomodyneConfig& cfg) {
  const Eigen::Vector2d lo_x = lo_quadratures(cfg.lo_amplitude, cfg.theta_x);
  const Eigen::Vector2d lo_p = lo_quadratures(cfg.lo_amplitude, cfg.theta_p);
  Eigen::Matrix<double, 8, 1> in;
  in << lo_x(0), lo_x(1), input(0), input(1), std::exp(r) * resource_mode1(0),
      std::exp(-r) * resource_mode1(1), lo_p(0), lo_p(1);
  const Eigen::Matrix<double, 8, 1> out = double_homodyne_propagate(in);
  MeasurementRecord record;
  record.current_x = detector_current(out(0), out(1)) - detector_current(out(2), out(3));
  record.current_p = detector_current(out(6), out(7)) - detector_current(out(4), out(5));
  record.xu = record.current_x / cfg.lo_amplitude;
  record.pv = record.current_p / cfg.lo_amplitude;
  record.delta = {record.xu, record.pv};
  return record;
}

Eigen::Vector2d bob_reconstruct(const Eigen::Vector2d& resource_mode2, double r,
                                const MeasurementRecord& record) {
  return {std::exp(r) * resource_mode2(0) + record.xu,
          std::exp(-r) * resource_mode2(1) + record.pv};
}

double fidelity_gamma(const Eigen::Matrix2d& v_in, const GaussianState& resource) {
  if (resource.modes() != 2) {
    throw std::invalid_argument("fidelity_gamma: resource must have two modes");
  }
  Eigen::Matrix2d z = Eigen::Matrix2d::Identity();
  z(1, 1) = -1.0;
  const Eigen::Matrix2d a = resource.cov.block<2, 2>(0, 0);
  const Eigen::Matrix2d b = resource.cov.block<2, 2>(2, 2);
  const Eigen::Matrix2d c = resource.cov.block<2, 2>(0, 2);
  const Eigen::Matrix2d gamma =
      2.0 * v_in + z * a * z + b - c * z - z * c.transpose();
  const double det = gamma.determinant();
  if (!(det > 0.0)) {
    throw std::domain_error("fidelity_gamma: noise matrix is not positive");
  }
  return 2.0 / std::sqrt(det);
}

double fidelity_closed_form(double y, double r, double n) {
  if (n < 0.0) {
    throw std::invalid_argument("fidelity_closed_form: occupation must be >= 0");
  }
  const double s = (2.0 * n + 1.0) * std::exp(-2.0 * r);
  return 1.0 / std::sqrt((std::exp(-2.0 * y) + s) * (std::exp(2.0 * y) + s));
}

double average_fidelity(double r, double n, double y_low, double y_high, double abs_tol) {
  if (y_low > y_high) {
    throw std::invalid_argument("average_fidelity: y_low must be <= y_high");
  }
  if (y_low == y_high) {
    return fidelity_closed_form(y_low, r, n);
  }
  const auto f = [r, n](double y) { return fidelity_closed_form(y, r, n); };
  const double fa = f(y_low);
  const double fb = f(y_high);
  const double fm = f(0.5 * (y_low + y_high));
  const double whole = simpson(fa, fm, fb, y_high - y_low);
  const double integral =
      adaptive_simpson(f, y_low, y_high, fa, fm, fb, whole, abs_tol, 48);
  return integral / (y_high - y_low);
}

ResourceSampler::ResourceSampler(double r, double n) : r_(r) {
  if (n < 0.0) {
    throw std::invalid_argument("ResourceSampler: occupation must be >= 0");
  }
  // Covariance of the pair actually sampled: like tmst(r, n) but with the
  // second mode rotated by pi, so x2 anticorrelates with x1.
  const double scale = 2.0 * n + 1.0;
  const double ch = scale * std::cosh(2.0 * r);
  const double sh = scale * std::sinh(2.0 * r);
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  cov.diagonal() << ch, ch, ch, ch;
  cov(0, 2) = cov(2, 0) = -sh;
  cov(1, 3) = cov(3, 1) = sh;
  Eigen::LLT<Eigen::Matrix4d> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("ResourceSampler: covariance is not positive definite");
  }
  chol_ = llt.matrixL();
}

Eigen::Vector4d ResourceSampler::draw(CounterRng& rng) const {
  Eigen::Vector4d z;
  for (int k = 0; k < 4; ++k) z(k) = rng.normal();
  const Eigen::Vector4d w = chol_ * z;
  // Laboratory draws w carry the physical covariance; the frame handed to
  // the measurement and feed-forward stages absorbs one squeezer each way.
  return {std::exp(-r_) * w(0), std::exp(r_) * w(1), std::exp(-r_) * w(2),
          std::exp(r_) * w(3)};
}

std::string ShotStats::to_csv_row() const {
  std::string row;
  row += csv_number(static_cast<double>(shots));
  row += ',';
  row += csv_number(static_cast<double>(seed));
  row += ',';
  row += deterministic ? "1" : "0";
  row += ',';
  row += csv_number(input_mean(0));
  row += ',';
  row += csv_number(input_mean(1));
  row += ',';
  row += csv_number(mean(0));
  row += ',';
  row += csv_number(mean(1));
  row += ',';
  row += csv_number(cov(0, 0));
  row += ',';
  row += csv_number(cov(0, 1));
  row += ',';
  row += csv_number(cov(1, 1));
  return row;
}

ShotStats simulate_shots(const InputSpec& input, const ResourceSpec& resource, long shots,
                         std::uint64_t seed, bool deterministic) {
  if (shots < 1) {
    throw std::invalid_argument("simulate_shots: shots must be >= 1");
  }
  const ResourceSampler sampler(resource.r, resource.n);
  const double sx = std::exp(input.y);    // input fluctuation widths
  const double sp = std::exp(-input.y);
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d m2 = Eigen::Matrix2d::Zero();
  const HomodyneConfig cfg{};
  for (long shot = 0; shot < shots; ++shot) {
    Eigen::Vector4d pair = Eigen::Vector4d::Zero();
    Eigen::Vector2d in = input.mean;
    if (!deterministic) {
      CounterRng rng(seed, static_cast<std::uint64_t>(shot));
      pair = sampler.draw(rng);
      in(0) += sx * rng.normal();
      in(1) += sp * rng.normal();
    }
    const MeasurementRecord record =
        alice_measure(in, {pair(0), pair(1)}, resource.r, cfg);
    const Eigen::Vector2d out = bob_reconstruct({pair(2), pair(3)}, resource.r, record);
    // Welford update keeps the accumulation stable over long runs.
    const Eigen::Vector2d diff = out - mean;
    mean += diff / static_cast<double>(shot + 1);
    m2 += diff * (out - mean).transpose();
  }
  ShotStats stats;
  stats.shots = shots;
  stats.seed = seed;
  stats.deterministic = deterministic;
  stats.input_mean = input.mean;
  stats.mean = mean;
  if (shots > 1) {
    const Eigen::Matrix2d sym = 0.5 * (m2 + m2.transpose());
    stats.cov = sym / static_cast<double>(shots - 1);
  }
  return stats;
}

}  // namespace cvt::protocol
