#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

// Teleportation with the second resource mode sent through a thermal
// free-space channel of transfer efficiency eta and bath occupation N.
namespace cvt::freespace {

struct BathParams {
  double eta = 1.0;           // power transfer efficiency in [0, 1]
  double mean_photons = 0.0;  // bath occupation N >= 0
};

// 2x2 blocks of a two-mode covariance [[A, C], [C^T, B]].
struct ResourceBlocks {
  Eigen::Matrix2d a;
  Eigen::Matrix2d b;
  Eigen::Matrix2d c;
};

// Resource after one arm passes the bath: with D = (1-eta)(2N+1) +
// eta cosh(2r), the blocks are A = D I, B = cosh(2r) I,
// C = sqrt(eta) sinh(2r) Z.
ResourceBlocks lossy_resource_blocks(double r, const BathParams& bath);

// 1 - eta sinh^2(2r) / D^2.  The lossy resource maps onto a squeezed
// thermal pair only while this is positive.
double equivalence_margin(double r, const BathParams& bath);

struct EquivalenceError : std::domain_error {
  EquivalenceError(const std::string& what, double margin_)
      : std::domain_error(what), margin(margin_) {}
  double margin;
};

// Local-squeezer + thermal-pair description of the lossy resource:
// squeezing s of the pair, local squeezing parameters x1 and x2 = -3 x1,
// occupation n.  Throws EquivalenceError when the margin is not positive.
struct TmstEquivalence {
  double s = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double n = 0.0;
};

TmstEquivalence equivalent_tmst(double r, const BathParams& bath, double margin_tol = 1e-12);

// Blocks rebuilt from an equivalence:
//   A = (2n+1) cosh(2s) diag(e^-4x1, e^4x1)
//   B = (2n+1) cosh(2s) diag(e^-4x2, e^4x2)
//   C = (2n+1) sinh(2s) diag(e^-2(x1+x2), -e^2(x1+x2)).
ResourceBlocks equivalence_blocks(const TmstEquivalence& eq);

// Which quadrature of the input carries the antisqueezing e^2y.
enum class InputOrientation { kAntisqueezedX, kSqueezedX };

// Fidelity 2/sqrt(det Gamma) of teleporting a squeezed input through the
// lossy resource, evaluated on the equivalence blocks.  Throws
// EquivalenceError outside the feasible region.
double fidelity(double y, double r, const BathParams& bath,
                InputOrientation orientation = InputOrientation::kAntisqueezedX);

struct SweepPoint {
  double y = 0.0;
  double eta = 0.0;
  double mean_photons = 0.0;
  double r = 0.0;
  double margin = 0.0;
  bool feasible = false;
  double fidelity = 0.0;  // NaN when infeasible
};

// Cartesian sweep over (y, eta, N, r); rows in loop order y, eta, N, r with
// r innermost.  Infeasible points carry margin <= 0 and a NaN fidelity.
std::vector<SweepPoint> fidelity_sweep(const std::vector<double>& y_values,
                                       const std::vector<double>& eta_values,
                                       const std::vector<double>& n_values,
                                       const std::vector<double>& r_values,
                                       InputOrientation orientation = InputOrientation::kAntisqueezedX);

}  // namespace cvt::freespace
