#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

// Gaussian states over N bosonic modes in the quadrature ordering
// (x1, p1, ..., xN, pN).  Units are fixed so that the vacuum covariance
// is the identity (variance 1 per quadrature); a thermal state with mean
// photon number n has covariance (2n+1)*I.
namespace cvt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Default tolerance for symmetry / symplecticity checks.
inline constexpr double kDefaultTol = 1e-10;

struct GaussianState {
  Vec mean;  // length 2N
  Mat cov;   // 2N x 2N, symmetric

  int modes() const { return static_cast<int>(mean.size()) / 2; }
};

// Affine phase-space map: x -> S x + d.
struct SymplecticTransform {
  Mat matrix;
  Vec displacement;

  int modes() const { return static_cast<int>(matrix.rows()) / 2; }
};

// Block-diagonal form with 2x2 blocks [[0,1],[-1,0]], one per mode.
Mat symplectic_form(int modes);

// --- state factories ---------------------------------------------------

GaussianState vacuum(int modes);
// Identity covariance around an arbitrary displacement; mean must have
// even length.
GaussianState coherent(const Vec& mean);
// Single mode, covariance (2n+1)*I; rejects n < 0.
GaussianState thermal(double n);
// Single mode squeezed along x for r > 0: covariance diag(e^-2r, e^2r).
// The opposite orientation is squeezed(-r).
GaussianState squeezed(double r, const Eigen::Vector2d& mean = Eigen::Vector2d::Zero());
// (2n+1) * R(theta) * diag(e^-2r, e^2r) * R(theta)^T around `mean`.
GaussianState general_single_mode(double n, double r, double theta,
                                  const Eigen::Vector2d& mean = Eigen::Vector2d::Zero());
// Two-mode squeezed vacuum: A = B = cosh(2r) I, C = sinh(2r) Z.
GaussianState tmsv(double r);
// Two-mode squeezed thermal state: the tmsv blocks scaled by (2n+1).
GaussianState tmst(double r, double n);

// --- transform factories ------------------------------------------------

SymplecticTransform identity_transform(int modes);
// [[cos, sin], [-sin, cos]] on one mode.
SymplecticTransform rotation(double theta);
// diag(e^-r, e^r) on one mode.
SymplecticTransform squeezer(double r);
// Two-mode mixer with transmissivity tau in [0, 1]:
// [sqrt(1-tau) I, sqrt(tau) I; -sqrt(tau) I, sqrt(1-tau) I].
SymplecticTransform beamsplitter(double tau);
// Two-mode squeezer [cosh(r) I, sinh(r) Z; sinh(r) Z, cosh(r) I];
// applied to vacuum it produces tmsv(r).
SymplecticTransform two_mode_squeezer(double r);
// Block-diagonal concatenation; rejects an empty list.
SymplecticTransform direct_sum(const std::vector<SymplecticTransform>& parts);

// x -> S x + d, V -> S V S^T.  Rejects dimension mismatches and matrices
// that are not symplectic within tol.
GaussianState apply(const GaussianState& state, const SymplecticTransform& t,
                    double tol = kDefaultTol);
// Shift the mean of one mode by delta; covariance untouched.
GaussianState displace(const GaussianState& state, const Eigen::Vector2d& delta, int mode);

// S Omega S^T == Omega entrywise within tol.  Rejects odd dimensions.
bool is_symplectic(const Mat& s, double tol = kDefaultTol);

struct PhysicalityReport {
  bool physical = false;
  // One symplectic eigenvalue per mode, ascending.  A covariance is
  // physical iff every entry is >= 1 - tol.
  std::vector<double> spectrum;
};

// Symplectic spectrum of a symmetric covariance matrix (moduli of the
// eigenvalues of i*Omega*V, duplicate pairs collapsed).  Rejects
// asymmetric input.
PhysicalityReport physicality(const Mat& cov, double tol = kDefaultTol);

// Wigner density at a phase-space point:
// exp(-(x-m)^T V^-1 (x-m) / 2) / ((2 pi)^N sqrt(det V)).
// Rejects numerically singular covariances (det V <= det_tol).
double wigner(const GaussianState& state, const Vec& point, double det_tol = 1e-12);

// One CSV row: mean entries, then covariance entries in row-major order.
std::string to_csv_row(const GaussianState& state);

}  // namespace cvt
