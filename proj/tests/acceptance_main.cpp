// Acceptance gate: one numbered criterion per check, one PASS/FAIL line each,
// exit code = number of failures.  Run with no argument for all criteria or
// with a single number to run one.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "cvteleport/freespace.hpp"
#include "cvteleport/gaussian.hpp"
#include "cvteleport/harness.hpp"
#include "cvteleport/microwave.hpp"
#include "cvteleport/protocol.hpp"
#include "cvteleport/rng.hpp"

using namespace cvt;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

struct Check {
  const char* label;
  double computed;
  double expected;
  double tol;
  bool ok() const { return std::abs(computed - expected) <= tol; }
};

// prints the per-quantity breakdown for the table-reproduction criteria
bool report_checks(const std::vector<Check>& checks) {
  bool all_ok = true;
  for (const auto& check : checks) {
    std::printf("      %-22s %12.6f vs %9.6f +- %g  %s\n", check.label, check.computed,
                check.expected, check.tol, check.ok() ? "ok" : "OUT OF TOLERANCE");
    all_ok = all_ok && check.ok();
  }
  return all_ok;
}

// --------------------------------------------------------------------------
// 1: cryostat operating row, derived reading by reading
// --------------------------------------------------------------------------

bool criterion_1() {
  const auto start = clock_type::now();
  const double tau_printed = 0.427, lambda_printed = 1.74, r = 1.32;
  const double tau_c = 0.95 * 0.90 / 2.0;
  const double lambda_c = 1.0 / (1.0 - tau_printed);
  const double beta_c = 10.0 * std::log10(1.0 / lambda_c);
  std::printf("[ 1] cryostat operating row\n");
  const bool ok = report_checks({
      {"tau", tau_c, tau_printed, 1e-3},
      {"lambda", lambda_c, lambda_printed, 1e-2},
      {"beta_db", beta_c, -2.40, 2e-2},
      {"record coefficient", 1.0 / std::sqrt(lambda_printed), 0.758, 2e-3},
      {"x2 feed-forward", std::sqrt(tau_printed) * std::exp(r), 2.444, 2e-3},
      {"p2 feed-forward", std::sqrt(tau_printed) * std::exp(-r), 0.174, 2e-3},
  });
  const double elapsed = seconds_since(start);
  std::printf("[ 1] %s cryostat operating row (%.2fs)\n", ok ? "PASS" : "FAIL", elapsed);
  if (!ok) {
    std::printf("      the x2 feed-forward recomputes to 2.446148 from the published tau,\n"
                "      0.002148 away from the printed 2.444; every derivation chain tried\n"
                "      lands on the same value, so the tolerance cannot be met honestly.\n");
  }
  return ok && elapsed < 1.0;
}

// --------------------------------------------------------------------------
// 2: free-space operating row, including the half-tau inconsistency
// --------------------------------------------------------------------------

bool criterion_2() {
  const double tau_printed = 0.095;
  const double tau_c = 0.95 * 0.10;
  const double lambda_c = 1.0 / (1.0 - tau_printed);
  const double beta_c = 10.0 * std::log10(1.0 / lambda_c);
  const double half_residual = std::abs(0.95 * 0.10 / 2.0 - tau_printed);
  std::printf("[ 2] free-space operating row\n");
  bool ok = report_checks({
      {"tau", tau_c, tau_printed, 1e-2},
      {"lambda", lambda_c, 1.10, 1e-2},
      {"beta_db", beta_c, -0.434, 1e-2},
  });
  // the row only closes with tau = epsilon*eta; the half-coupling reading
  // used by the cryostat row misses by 0.0475, which must be visible
  ok = ok && half_residual > 1e-3;
  std::printf("      half-coupling residual %.4f (printed tau is epsilon*eta, not /2)\n",
              half_residual);
  std::printf("      beta vs printed -0.41: residual %.4f\n", std::abs(beta_c + 0.41));
  std::printf("[ 2] %s free-space operating row\n", ok ? "PASS" : "FAIL");
  return ok;
}

// --------------------------------------------------------------------------
// 3: covariance-form fidelity equals the closed form
// --------------------------------------------------------------------------

bool criterion_3() {
  const auto start = clock_type::now();
  double worst = 0.0;
  for (int iy = 0; iy < 20; ++iy) {
    const double y = -1.0 + 2.0 * iy / 19.0;
    for (int ir = 0; ir < 20; ++ir) {
      const double r = 2.0 * ir / 19.0;
      for (const double n : {0.0, 0.5, 2.0}) {
        const GaussianState resource = tmst(r, n);
        Eigen::Matrix2d v_in = Eigen::Matrix2d::Zero();
        v_in(0, 0) = std::exp(2.0 * y);
        v_in(1, 1) = std::exp(-2.0 * y);
        const double gap = std::abs(protocol::fidelity_gamma(v_in, resource) -
                                    protocol::fidelity_closed_form(y, r, n));
        worst = std::max(worst, gap);
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst <= 1e-12 && elapsed < 1.0;
  std::printf("[ 3] %s covariance fidelity == closed form: max gap %.3e (tol 1e-12, %.2fs)\n",
              ok ? "PASS" : "FAIL", worst, elapsed);
  return ok;
}

// --------------------------------------------------------------------------
// 4: classical boundary and strong-squeezing limit
// --------------------------------------------------------------------------

bool criterion_4() {
  const double at_zero = protocol::fidelity_closed_form(0.0, 0.0, 0.0);
  const double at_ten = protocol::fidelity_closed_form(0.0, 10.0, 0.0);
  const bool ok = at_zero == 0.5 && at_ten >= 1.0 - 1e-8;
  std::printf("[ 4] %s no-resource fidelity %.17g (exactly 0.5), r=10 gives 1-%.3e\n",
              ok ? "PASS" : "FAIL", at_zero, 1.0 - at_ten);
  return ok;
}

// --------------------------------------------------------------------------
// 5: lossless bath reduces the equivalence to the bare resource
// --------------------------------------------------------------------------

bool criterion_5() {
  const freespace::BathParams ideal{1.0, 0.0};
  double worst = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double r = 0.1 * k;
    const auto eq = freespace::equivalent_tmst(r, ideal);
    worst = std::max({worst, std::abs(eq.s - r), std::abs(eq.x1), std::abs(eq.x2),
                      std::abs(eq.n)});
  }
  double fidelity_gap = 0.0;
  for (const double y : {-0.5, 0.0, 0.5}) {
    for (const double r : {0.1, 0.5, 1.0, 1.5, 2.0}) {
      fidelity_gap = std::max(fidelity_gap,
                              std::abs(freespace::fidelity(y, r, ideal) -
                                       protocol::fidelity_closed_form(y, r, 0.0)));
    }
  }
  const bool ok = worst <= 1e-12 && fidelity_gap <= 1e-12;
  std::printf("[ 5] %s unit-efficiency reduction: params off by %.3e, fidelity off by %.3e\n",
              ok ? "PASS" : "FAIL", worst, fidelity_gap);
  return ok;
}

// --------------------------------------------------------------------------
// 6: entrywise reconstruction of the lossy blocks from the equivalence
// --------------------------------------------------------------------------

bool criterion_6() {
  CounterRng rng(606, 0);
  double worst_all = 0.0;
  double worst_matched = 0.0;
  int accepted = 0;
  while (accepted < 1000) {
    const double r = 1.5 * rng.uniform();
    const freespace::BathParams bath{rng.uniform(), 2.0 * rng.uniform()};
    if (freespace::equivalence_margin(r, bath) <= 1e-6) continue;
    ++accepted;
    const auto lossy = freespace::lossy_resource_blocks(r, bath);
    const auto rebuilt = freespace::equivalence_blocks(freespace::equivalent_tmst(r, bath));
    worst_all = std::max({worst_all, (rebuilt.a - lossy.a).cwiseAbs().maxCoeff(),
                          (rebuilt.b - lossy.b).cwiseAbs().maxCoeff(),
                          (rebuilt.c - lossy.c).cwiseAbs().maxCoeff()});
    worst_matched = std::max({worst_matched, std::abs(rebuilt.a(0, 0) - lossy.a(0, 0)),
                              std::abs(rebuilt.b(1, 1) - lossy.b(1, 1)),
                              std::abs(rebuilt.c(1, 1) - lossy.c(1, 1))});
  }
  const bool ok = worst_all <= 1e-10;
  std::printf("[ 6] %s entrywise block reconstruction: max gap %.3e over 1000 points "
              "(tol 1e-10)\n",
              ok ? "PASS" : "FAIL", worst_all);
  if (!ok) {
    std::printf("      the squeezer-pair form always has det A = det B, but the lossy state\n"
                "      has det A = D^2 against det B = cosh^2(2r); below unit efficiency no\n"
                "      entrywise match exists.  The matched entries (a_xx, b_pp, c_pp) agree\n"
                "      to %.3e; the rest differ by powers of K = D/cosh(2r).\n",
                worst_matched);
  }
  return ok;
}

// --------------------------------------------------------------------------
// 7: bisection of the equivalence boundary
// --------------------------------------------------------------------------

bool criterion_7() {
  const freespace::BathParams bath{0.5, 0.0};
  double lo = 0.5, hi = 1.2;
  while (hi - lo >= 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (freespace::equivalence_margin(mid, bath) > 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const bool ok = (hi - lo) < 1e-6 && std::abs(root - 0.881373587019543) <= 1e-3;
  std::printf("[ 7] %s margin root at eta=0.5: %.9f vs ln(1+sqrt(2)) = 0.881373587 "
              "(width %.1e)\n",
              ok ? "PASS" : "FAIL", root, hi - lo);
  return ok;
}

// --------------------------------------------------------------------------
// 8: lossless chain at the coupler boundary is exact
// --------------------------------------------------------------------------

bool criterion_8() {
  microwave::RunSettings settings;
  settings.budget.epsilon = settings.budget.eta = 1.0;
  settings.budget.kappa = settings.budget.nu = 1.0;
  settings.budget.temps = {0.0, 0.0, 0.0, 0.0};
  const double lambda0 =
      microwave::lambda_coefficient(settings.adc, settings.budget, settings.gains);
  settings.adc.lo_amplitude *= std::sqrt((2.0 - 1e-9) / lambda0);
  CounterRng rng(808, 0);
  double worst = 0.0;
  bool feasible = true;
  double lambda_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    settings.input_mean = {6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0};
    settings.y = 2.0 * rng.uniform() - 1.0;
    const auto report = microwave::end_to_end_run(settings);
    feasible = feasible && report.coupler.feasible;
    lambda_gap = std::max(lambda_gap, std::abs(report.coupler.lambda - 2.0));
    const Eigen::Vector2d target(std::exp(-settings.y) * settings.input_mean(0),
                                 std::exp(settings.y) * settings.input_mean(1));
    worst = std::max({worst, std::abs(report.out_mean(0) - target(0)),
                      std::abs(report.out_mean(1) - target(1))});
  }
  const bool ok = feasible && worst <= 1e-12 && lambda_gap <= 1e-8;
  std::printf("[ 8] %s boundary-coupler recovery over 100 inputs: max error %.3e "
              "(tol 1e-12), lambda within %.1e of 2, %s\n",
              ok ? "PASS" : "FAIL", worst, lambda_gap,
              feasible ? "feasible" : "INFEASIBLE");
  return ok;
}

// --------------------------------------------------------------------------
// 9: random symplectic compositions stay symplectic and physical
// --------------------------------------------------------------------------

bool criterion_9() {
  CounterRng rng(909, 0);
  const Mat omega = symplectic_form(2);
  const GaussianState seed_state = tmst(0.8, 0.3);
  double worst = 0.0;
  bool all_physical = true;
  const double two_pi = 6.283185307179586;
  for (int trial = 0; trial < 1000; ++trial) {
    const int depth = 1 + static_cast<int>(5.0 * rng.uniform()) % 5;
    Mat total = Mat::Identity(4, 4);
    GaussianState state = seed_state;
    for (int step = 0; step < depth; ++step) {
      SymplecticTransform factor;
      const double pick = rng.uniform();
      if (pick < 1.0 / 3.0) {
        factor = direct_sum({rotation(two_pi * rng.uniform()),
                             rotation(two_pi * rng.uniform())});
      } else if (pick < 2.0 / 3.0) {
        factor = direct_sum({squeezer(rng.uniform() - 0.5),
                             squeezer(rng.uniform() - 0.5)});
      } else {
        factor = beamsplitter(rng.uniform());
      }
      total = factor.matrix * total;
      state = apply(state, factor);
    }
    worst = std::max(worst, (total * omega * total.transpose() - omega)
                                .cwiseAbs()
                                .maxCoeff());
    all_physical = all_physical && physicality(state.cov).physical;
  }
  const bool ok = worst <= 1e-12 && all_physical;
  std::printf("[ 9] %s 1000 random compositions: max |S O S^T - O| = %.3e, %s\n",
              ok ? "PASS" : "FAIL", worst,
              all_physical ? "all states physical" : "UNPHYSICAL STATE SEEN");
  return ok;
}

// --------------------------------------------------------------------------
// 10: sampled protocol statistics and reproducibility
// --------------------------------------------------------------------------

bool criterion_10() {
  const auto start = clock_type::now();
  const long shots = 100000;
  protocol::InputSpec input;
  input.y = 0.0;
  input.mean = {0.3, -0.7};
  const protocol::ResourceSpec resource{1.0, 0.0};
  const auto stats = protocol::simulate_shots(input, resource, shots, 2026);
  const auto again = protocol::simulate_shots(input, resource, shots, 2026);
  const double sigma = std::sqrt(1.2706705664732254 / static_cast<double>(shots));
  const double mean_err = std::max(std::abs(stats.mean(0) - input.mean(0)),
                                   std::abs(stats.mean(1) - input.mean(1)));
  const bool identical = stats.to_csv_row() == again.to_csv_row();
  const double elapsed = seconds_since(start);
  const bool ok = mean_err <= 5.0 * sigma && identical && elapsed < 30.0;
  std::printf("[10] %s 1e5-shot run: mean error %.4f (tol %.4f), rerun %s, %.1fs\n",
              ok ? "PASS" : "FAIL", mean_err, 5.0 * sigma,
              identical ? "byte-identical" : "DIVERGED", elapsed);
  return ok;
}

// --------------------------------------------------------------------------
// 11: qualitative shape of the fidelity curves
// --------------------------------------------------------------------------

bool criterion_11() {
  bool monotone_ideal = true;
  double prev = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double f = protocol::fidelity_closed_form(0.0, 0.05 * k, 0.0);
    if (k > 0 && f < prev) monotone_ideal = false;
    prev = f;
  }
  const freespace::BathParams bath{0.9, 0.5};
  bool monotone_lossy = true;
  prev = 0.0;
  for (int k = 0; k <= 24; ++k) {
    const double f = freespace::fidelity(0.0, 0.05 * k, bath);
    if (k > 0 && f < prev) monotone_lossy = false;
    prev = f;
  }
  const double threshold = 0.085956791737850031;
  bool classified = true;
  for (int k = 0; k <= 24; ++k) {
    const double r = 0.05 * k;
    const double f = freespace::fidelity(0.0, r, bath);
    if (r < threshold - 0.01 && f >= 0.5) classified = false;
    if (r > threshold + 0.01 && f <= 0.5) classified = false;
  }
  const bool ok = monotone_ideal && monotone_lossy && classified;
  std::printf("[11] %s fidelity shape: ideal %s, lossy %s, threshold split at r=%.4f %s\n",
              ok ? "PASS" : "FAIL", monotone_ideal ? "nondecreasing" : "NOT MONOTONE",
              monotone_lossy ? "nondecreasing" : "NOT MONOTONE", threshold,
              classified ? "clean" : "VIOLATED");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  bool (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                          criterion_5, criterion_6, criterion_7, criterion_8,
                          criterion_9, criterion_10, criterion_11};
  int first = 1, last = 11;
  if (argc > 1) {
    const int pick = std::atoi(argv[1]);
    if (pick < 1 || pick > 11) {
      std::fprintf(stderr, "usage: %s [criterion 1..11]\n", argv[0]);
      return 64;
    }
    first = last = pick;
  }
  int failures = 0;
  for (int k = first; k <= last; ++k) {
    if (!criteria[k - 1]()) ++failures;
  }
  if (first != last) {
    std::printf("%d of %d criteria failed\n", failures, last - first + 1);
  }
  return failures;
}
