#pragma once

#include <iosfwd>
#include <vector>

#include "cvteleport/config.hpp"

namespace cvt::harness {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

// One comparison row of the reference-budget reproduction table.  The
// reference column holds the published operating-point reading; computed
// is this implementation's value on the stated basis.  consistency marks
// rows whose basis chains published readings to published readings and is
// therefore expected to close to better than 0.01.
struct Table1Row {
  const char* config;    // "fridge" | "free_space"
  const char* quantity;
  double reference;
  double computed;
  const char* basis;
  bool consistency;

  double residual() const;
};

std::vector<Table1Row> build_table1();

// Reference-budget reproduction table (CSV).  Always exits 0.
int cmd_table1(const Config& config, std::ostream& out);
// Free-space fidelity sweep (CSV).  Exits 2 when no grid point is both
// feasible and above the classical fidelity 1/2.
int cmd_sweep(const Config& config, std::ostream& out);
// Single end-to-end microwave run (CSV, one row).  Exits 2 when the
// derived coupler operating point is infeasible.
int cmd_run(const Config& config, std::ostream& out);
// Zero-input noise calibration (CSV, one row).  Exits 2 when the coupler
// operating point is infeasible.
int cmd_calibrate(const Config& config, std::ostream& out);

}  // namespace cvt::harness
