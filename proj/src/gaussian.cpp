#include "cvteleport/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cvteleport/report.hpp"

namespace cvt {

namespace {

void check_state(const GaussianState& state, const char* who) {
  const auto dim = state.mean.size();
  if (dim <= 0 || dim % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": mean length must be positive and even");
  }
  if (state.cov.rows() != dim || state.cov.cols() != dim) {
    throw std::invalid_argument(std::string(who) + ": covariance shape must match the mean");
  }
}

Eigen::Matrix2d rotation2(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace

Mat symplectic_form(int modes) {
  if (modes < 1) {
    throw std::invalid_argument("symplectic_form: modes must be >= 1");
  }
  Mat omega = Mat::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

GaussianState vacuum(int modes) {
  if (modes < 1) {
    throw std::invalid_argument("vacuum: modes must be >= 1");
  }
  return {Vec::Zero(2 * modes), Mat::Identity(2 * modes, 2 * modes)};
}

GaussianState coherent(const Vec& mean) {
  if (mean.size() <= 0 || mean.size() % 2 != 0) {
    throw std::invalid_argument("coherent: mean length must be positive and even");
  }
  return {mean, Mat::Identity(mean.size(), mean.size())};
}

GaussianState thermal(double n) {
  if (n < 0.0) {
    throw std::invalid_argument("thermal: occupation must be >= 0");
  }
  return {Vec::Zero(2), (2.0 * n + 1.0) * Mat::Identity(2, 2)};
}

GaussianState squeezed(double r, const Eigen::Vector2d& mean) {
  Mat cov(2, 2);
  cov << std::exp(-2.0 * r), 0.0, 0.0, std::exp(2.0 * r);
  return {mean, cov};
}

GaussianState general_single_mode(double n, double r, double theta, const Eigen::Vector2d& mean) {
  if (n < 0.0) {
    throw std::invalid_argument("general_single_mode: occupation must be >= 0");
  }
  const Eigen::Matrix2d rot = rotation2(theta);
  Eigen::Matrix2d core = Eigen::Matrix2d::Zero();
  core(0, 0) = std::exp(-2.0 * r);
  core(1, 1) = std::exp(2.0 * r);
  Mat cov = (2.0 * n + 1.0) * rot * core * rot.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();  // exact symmetry despite rounding
  return {mean, cov};
}

GaussianState tmsv(double r) { return tmst(r, 0.0); }

GaussianState tmst(double r, double n) {
  if (n < 0.0) {
    throw std::invalid_argument("tmst: occupation must be >= 0");
  }
  const double scale = 2.0 * n + 1.0;
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  Mat cov = Mat::Zero(4, 4);
  cov.block<2, 2>(0, 0) = scale * ch * Eigen::Matrix2d::Identity();
  cov.block<2, 2>(2, 2) = scale * ch * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d z = Eigen::Matrix2d::Identity();
  z(1, 1) = -1.0;
  cov.block<2, 2>(0, 2) = scale * sh * z;
  cov.block<2, 2>(2, 0) = scale * sh * z;
  return {Vec::Zero(4), cov};
}

SymplecticTransform identity_transform(int modes) {
  if (modes < 1) {
    throw std::invalid_argument("identity_transform: modes must be >= 1");
  }
  return {Mat::Identity(2 * modes, 2 * modes), Vec::Zero(2 * modes)};
}

SymplecticTransform rotation(double theta) {
  return {rotation2(theta), Vec::Zero(2)};
}

SymplecticTransform squeezer(double r) {
  Mat s = Mat::Zero(2, 2);
  s(0, 0) = std::exp(-r);
  s(1, 1) = std::exp(r);
  return {s, Vec::Zero(2)};
}

SymplecticTransform beamsplitter(double tau) {
  if (tau < 0.0 || tau > 1.0) {
    throw std::invalid_argument("beamsplitter: transmissivity must lie in [0, 1]");
  }
  const double t = std::sqrt(tau);
  const double u = std::sqrt(1.0 - tau);
  Mat s = Mat::Zero(4, 4);
  s.block<2, 2>(0, 0) = u * Eigen::Matrix2d::Identity();
  s.block<2, 2>(0, 2) = t * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2, 0) = -t * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2, 2) = u * Eigen::Matrix2d::Identity();
  return {s, Vec::Zero(4)};
}

SymplecticTransform two_mode_squeezer(double r) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  Eigen::Matrix2d z = Eigen::Matrix2d::Identity();
  z(1, 1) = -1.0;
  Mat s = Mat::Zero(4, 4);
  s.block<2, 2>(0, 0) = ch * Eigen::Matrix2d::Identity();
  s.block<2, 2>(0, 2) = sh * z;
  s.block<2, 2>(2, 0) = sh * z;
  s.block<2, 2>(2, 2) = ch * Eigen::Matrix2d::Identity();
  return {s, Vec::Zero(4)};
}

SymplecticTransform direct_sum(const std::vector<SymplecticTransform>& parts) {
  if (parts.empty()) {
    throw std::invalid_argument("direct_sum: needs at least one block");
  }
  Eigen::Index dim = 0;
  for (const auto& part : parts) {
    if (part.matrix.rows() != part.matrix.cols() || part.matrix.rows() % 2 != 0 ||
        part.matrix.rows() == 0) {
      throw std::invalid_argument("direct_sum: blocks must be square with even dimension");
    }
    if (part.displacement.size() != part.matrix.rows()) {
      throw std::invalid_argument("direct_sum: displacement length must match the block");
    }
    dim += part.matrix.rows();
  }
  Mat s = Mat::Zero(dim, dim);
  Vec d = Vec::Zero(dim);
  Eigen::Index at = 0;
  for (const auto& part : parts) {
    const Eigen::Index n = part.matrix.rows();
    s.block(at, at, n, n) = part.matrix;
    d.segment(at, n) = part.displacement;
    at += n;
  }
  return {std::move(s), std::move(d)};
}

GaussianState apply(const GaussianState& state, const SymplecticTransform& t, double tol) {
  check_state(state, "apply");
  if (t.matrix.rows() != state.mean.size() || t.matrix.cols() != state.mean.size()) {
    throw std::invalid_argument("apply: transform dimension must match the state");
  }
  if (t.displacement.size() != state.mean.size()) {
    throw std::invalid_argument("apply: displacement length must match the state");
  }
  if (!is_symplectic(t.matrix, tol)) {
    throw std::invalid_argument("apply: matrix is not symplectic within tolerance");
  }
  return {t.matrix * state.mean + t.displacement, t.matrix * state.cov * t.matrix.transpose()};
}

GaussianState displace(const GaussianState& state, const Eigen::Vector2d& delta, int mode) {
  check_state(state, "displace");
  if (mode < 0 || mode >= state.modes()) {
    throw std::out_of_range("displace: mode index out of range");
  }
  GaussianState out = state;
  out.mean(2 * mode) += delta(0);
  out.mean(2 * mode + 1) += delta(1);
  return out;
}

bool is_symplectic(const Mat& s, double tol) {
  if (s.rows() != s.cols()) {
    throw std::invalid_argument("is_symplectic: matrix must be square");
  }
  if (s.rows() == 0 || s.rows() % 2 != 0) {
    throw std::invalid_argument("is_symplectic: dimension must be positive and even");
  }
  const Mat omega = symplectic_form(static_cast<int>(s.rows()) / 2);
  const Mat defect = s * omega * s.transpose() - omega;
  return defect.cwiseAbs().maxCoeff() <= tol;
}

PhysicalityReport physicality(const Mat& cov, double tol) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0) {
    throw std::invalid_argument("physicality: covariance must be square with even dimension");
  }
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw std::invalid_argument("physicality: covariance must be symmetric");
  }
  const int modes = static_cast<int>(cov.rows()) / 2;
  const Mat omega = symplectic_form(modes);
  // The symplectic spectrum is the set of moduli of the eigenvalues of
  // i Omega V; each value shows up twice, once per conjugate pair.
  Eigen::EigenSolver<Mat> solver(omega * cov, /*computeEigenvectors=*/false);
  std::vector<double> moduli(2 * modes);
  for (int k = 0; k < 2 * modes; ++k) {
    moduli[static_cast<std::size_t>(k)] = std::abs(solver.eigenvalues()(k));
  }
  std::sort(moduli.begin(), moduli.end());
  PhysicalityReport report;
  report.spectrum.resize(static_cast<std::size_t>(modes));
  for (int k = 0; k < modes; ++k) {
    report.spectrum[static_cast<std::size_t>(k)] =
        0.5 * (moduli[static_cast<std::size_t>(2 * k)] + moduli[static_cast<std::size_t>(2 * k + 1)]);
  }
  report.physical = report.spectrum.front() >= 1.0 - tol;
  return report;
}

double wigner(const GaussianState& state, const Vec& point, double det_tol) {
  check_state(state, "wigner");
  if (point.size() != state.mean.size()) {
    throw std::invalid_argument("wigner: point length must match the state");
  }
  Eigen::PartialPivLU<Mat> lu(state.cov);
  const double det = lu.determinant();
  if (!(det > det_tol)) {
    throw std::domain_error("wigner: covariance is numerically singular");
  }
  const Vec diff = point - state.mean;
  const double quad = diff.dot(lu.solve(diff));
  const double norm = std::pow(2.0 * std::numbers::pi, state.modes()) * std::sqrt(det);
  return std::exp(-0.5 * quad) / norm;
}

std::string to_csv_row(const GaussianState& state) {
  check_state(state, "to_csv_row");
  std::string row;
  for (Eigen::Index k = 0; k < state.mean.size(); ++k) {
    if (k > 0) row += ',';
    row += csv_number(state.mean(k));
  }
  for (Eigen::Index i = 0; i < state.cov.rows(); ++i) {
    for (Eigen::Index j = 0; j < state.cov.cols(); ++j) {
      row += ',';
      row += csv_number(state.cov(i, j));
    }
  }
  return row;
}

}  // namespace cvt
