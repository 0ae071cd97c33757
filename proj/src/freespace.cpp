#include "cvteleport/freespace.hpp"

#include <cmath>
#include <limits>

#include "cvteleport/gaussian.hpp"
#include "cvteleport/protocol.hpp"

namespace cvt::freespace {

namespace {

void check_bath(const BathParams& bath) {
  if (!(bath.eta >= 0.0 && bath.eta <= 1.0)) {
    throw std::invalid_argument("bath eta must lie in [0, 1]");
  }
  if (bath.mean_photons < 0.0) {
    throw std::invalid_argument("bath occupation must be >= 0");
  }
}

double big_d(double r, const BathParams& bath) {
  return (1.0 - bath.eta) * (2.0 * bath.mean_photons + 1.0) + bath.eta * std::cosh(2.0 * r);
}

}  // namespace

ResourceBlocks lossy_resource_blocks(double r, const BathParams& bath) {
  check_bath(bath);
  ResourceBlocks blocks;
  blocks.a = big_d(r, bath) * Eigen::Matrix2d::Identity();
  blocks.b = std::cosh(2.0 * r) * Eigen::Matrix2d::Identity();
  blocks.c = Eigen::Matrix2d::Zero();
  blocks.c(0, 0) = std::sqrt(bath.eta) * std::sinh(2.0 * r);
  blocks.c(1, 1) = -blocks.c(0, 0);
  return blocks;
}

double equivalence_margin(double r, const BathParams& bath) {
  check_bath(bath);
  const double d = big_d(r, bath);
  const double sh = std::sinh(2.0 * r);
  return 1.0 - bath.eta * sh * sh / (d * d);
}

TmstEquivalence equivalent_tmst(double r, const BathParams& bath, double margin_tol) {
  const double margin = equivalence_margin(r, bath);
  if (!(margin > margin_tol)) {
    throw EquivalenceError(
        "equivalent_tmst: no squeezed-thermal description at this point", margin);
  }
  const double d = big_d(r, bath);
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const double k = d / ch;
  TmstEquivalence eq;
  eq.s = 0.5 * std::atanh(std::sqrt(bath.eta) * sh / d);
  eq.x1 = std::log(k) / 8.0;
  eq.x2 = -3.0 * eq.x1;
  eq.n = 0.5 * (std::sqrt(k * (d * d - bath.eta * sh * sh)) - 1.0);
  return eq;
}

ResourceBlocks equivalence_blocks(const TmstEquivalence& eq) {
  const double scale = 2.0 * eq.n + 1.0;
  const double ch = std::cosh(2.0 * eq.s);
  const double sh = std::sinh(2.0 * eq.s);
  ResourceBlocks blocks;
  blocks.a = Eigen::Matrix2d::Zero();
  blocks.a(0, 0) = scale * ch * std::exp(-4.0 * eq.x1);
  blocks.a(1, 1) = scale * ch * std::exp(4.0 * eq.x1);
  blocks.b = Eigen::Matrix2d::Zero();
  blocks.b(0, 0) = scale * ch * std::exp(-4.0 * eq.x2);
  blocks.b(1, 1) = scale * ch * std::exp(4.0 * eq.x2);
  blocks.c = Eigen::Matrix2d::Zero();
  blocks.c(0, 0) = scale * sh * std::exp(-2.0 * (eq.x1 + eq.x2));
  blocks.c(1, 1) = -scale * sh * std::exp(2.0 * (eq.x1 + eq.x2));
  return blocks;
}

double fidelity(double y, double r, const BathParams& bath, InputOrientation orientation) {
  const TmstEquivalence eq = equivalent_tmst(r, bath);
  const ResourceBlocks blocks = equivalence_blocks(eq);
  GaussianState resource;
  resource.mean = Vec::Zero(4);
  resource.cov = Mat::Zero(4, 4);
  resource.cov.block<2, 2>(0, 0) = blocks.a;
  resource.cov.block<2, 2>(2, 2) = blocks.b;
  resource.cov.block<2, 2>(0, 2) = blocks.c;
  resource.cov.block<2, 2>(2, 0) = blocks.c.transpose();
  Eigen::Matrix2d v_in = Eigen::Matrix2d::Zero();
  if (orientation == InputOrientation::kAntisqueezedX) {
    v_in(0, 0) = std::exp(2.0 * y);
    v_in(1, 1) = std::exp(-2.0 * y);
  } else {
    v_in(0, 0) = std::exp(-2.0 * y);
    v_in(1, 1) = std::exp(2.0 * y);
  }
  return protocol::fidelity_gamma(v_in, resource);
}

std::vector<SweepPoint> fidelity_sweep(const std::vector<double>& y_values,
                                       const std::vector<double>& eta_values,
                                       const std::vector<double>& n_values,
                                       const std::vector<double>& r_values,
                                       InputOrientation orientation) {
  if (y_values.empty() || eta_values.empty() || n_values.empty() || r_values.empty()) {
    throw std::invalid_argument("fidelity_sweep: every grid must be non-empty");
  }
  std::vector<SweepPoint> out;
  out.reserve(y_values.size() * eta_values.size() * n_values.size() * r_values.size());
  for (const double y : y_values) {
    for (const double eta : eta_values) {
      for (const double n : n_values) {
        const BathParams bath{eta, n};
        check_bath(bath);
        for (const double r : r_values) {
          SweepPoint point;
          point.y = y;
          point.eta = eta;
          point.mean_photons = n;
          point.r = r;
          point.margin = equivalence_margin(r, bath);
          point.feasible = point.margin > 1e-12;
          point.fidelity = point.feasible
                               ? fidelity(y, r, bath, orientation)
                               : std::numeric_limits<double>::quiet_NaN();
          out.push_back(point);
        }
      }
    }
  }
  return out;
}

}  // namespace cvt::freespace
