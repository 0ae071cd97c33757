#include "cvteleport/harness.hpp"

#include <cmath>

namespace cvt::harness {

namespace {

// Published operating-point readings of the reference hardware budget, as
// printed: a cryogenic link (eta = 0.90) and a free-space link (eta = 0.10),
// both with epsilon = 0.95 and resource squeezing r = 1.32.
constexpr double kResourceR = 1.32;

constexpr double kFridgeTau = 0.427;
constexpr double kFridgeLambda = 1.74;
constexpr double kFridgeBeta = -2.40;
constexpr double kFridgeCoeffRecord = 0.758;
constexpr double kFridgeCoeffX2 = 2.444;
constexpr double kFridgeCoeffP2 = 0.174;
constexpr double kFridgeEpsilon = 0.95;
constexpr double kFridgeEta = 0.90;

constexpr double kFreeTau = 0.095;
constexpr double kFreeLambda = 1.10;
constexpr double kFreeBeta = -0.41;
constexpr double kFreeCoeffRecord = 0.954;
constexpr double kFreeCoeffX2 = 1.152;
constexpr double kFreeCoeffP2 = 0.082;
constexpr double kFreeEpsilon = 0.95;
constexpr double kFreeEta = 0.10;

void push_config_rows(std::vector<Table1Row>& rows, const char* name, double tau_ref,
                      double lambda_ref, double beta_ref, double coeff_record_ref,
                      double coeff_x2_ref, double coeff_p2_ref, double tau_from_inputs,
                      const char* tau_basis) {
  // Each row recomputes one reading from the reading directly upstream of
  // it, so a residual isolates a single published number.
  rows.push_back({name, "tau", tau_ref, tau_from_inputs, tau_basis, true});
  rows.push_back({name, "lambda", lambda_ref, 1.0 / (1.0 - tau_ref), "1/(1-tau_ref)", true});
  rows.push_back({name, "lambda_from_inputs", lambda_ref, 1.0 / (1.0 - tau_from_inputs),
                  "1/(1-tau_from_inputs)", true});
  rows.push_back({name, "beta_db", beta_ref, 10.0 * std::log10(1.0 / lambda_ref),
                  "10*log10(1/lambda_ref)", true});
  rows.push_back({name, "beta_db_from_computed", beta_ref, 10.0 * std::log10(1.0 - tau_ref),
                  "10*log10(1-tau_ref)", false});
  rows.push_back({name, "noise_coeff_i1", coeff_record_ref, 1.0 / std::sqrt(lambda_ref),
                  "1/sqrt(lambda_ref)", true});
  rows.push_back({name, "noise_coeff_x2", coeff_x2_ref,
                  std::sqrt(tau_ref) * std::exp(kResourceR), "sqrt(tau_ref)*exp(r)", true});
  rows.push_back({name, "noise_coeff_q2", coeff_record_ref, 1.0 / std::sqrt(lambda_ref),
                  "1/sqrt(lambda_ref)", true});
  rows.push_back({name, "noise_coeff_p2", coeff_p2_ref,
                  std::sqrt(tau_ref) * std::exp(-kResourceR), "sqrt(tau_ref)*exp(-r)", true});
}

}  // namespace

double Table1Row::residual() const { return std::abs(computed - reference); }

std::vector<Table1Row> build_table1() {
  std::vector<Table1Row> rows;
  // The printed cryogenic tau equals epsilon*eta/2; the printed free-space
  // tau equals epsilon*eta.  Both readings of the free-space basis are
  // listed so the disagreement is visible in the residual column.
  push_config_rows(rows, "fridge", kFridgeTau, kFridgeLambda, kFridgeBeta, kFridgeCoeffRecord,
                   kFridgeCoeffX2, kFridgeCoeffP2, kFridgeEpsilon * kFridgeEta / 2.0,
                   "epsilon*eta/2");
  push_config_rows(rows, "free_space", kFreeTau, kFreeLambda, kFreeBeta, kFreeCoeffRecord,
                   kFreeCoeffX2, kFreeCoeffP2, kFreeEpsilon * kFreeEta, "epsilon*eta");
  rows.push_back({"free_space", "tau_half_reading", kFreeTau,
                  kFreeEpsilon * kFreeEta / 2.0, "epsilon*eta/2 (disagrees with printed tau)",
                  false});
  return rows;
}

}  // namespace cvt::harness
