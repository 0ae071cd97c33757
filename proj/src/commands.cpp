#include "cvteleport/harness.hpp"

#include <cmath>
#include <ostream>

#include "cvteleport/report.hpp"

namespace cvt::harness {

int cmd_table1(const Config& config, std::ostream& out) {
  ReportTable table(
      {"config", "quantity", "reference", "computed", "residual", "consistency", "basis"});
  for (const auto& row : build_table1()) {
    table.add_row({row.config, row.quantity, csv_number(row.reference),
                   csv_number(row.computed), csv_number(row.residual()),
                   row.consistency ? "1" : "0", row.basis});
  }
  out << table.to_csv(config_hash(config), config.seed);
  return kExitOk;
}

int cmd_sweep(const Config& config, std::ostream& out) {
  const auto points = freespace::fidelity_sweep(config.y_values, config.eta_values,
                                                config.n_values, config.r_values(),
                                                config.orientation());
  ReportTable table({"y", "eta", "N", "r", "margin", "feasible", "fidelity"});
  bool any_useful = false;
  for (const auto& point : points) {
    table.add_row({csv_number(point.y), csv_number(point.eta), csv_number(point.mean_photons),
                   csv_number(point.r), csv_number(point.margin), point.feasible ? "1" : "0",
                   csv_number(point.fidelity)});
    // A sweep is useful once any point beats the no-resource fidelity 1/2.
    if (point.feasible && point.fidelity > 0.5) any_useful = true;
  }
  out << table.to_csv(config_hash(config), config.seed);
  return any_useful ? kExitOk : kExitInfeasible;
}

int cmd_run(const Config& config, std::ostream& out) {
  const auto report = microwave::end_to_end_run(config.to_run_settings());
  ReportTable table({"lambda",      "tau",        "beta_db",     "feasible",
                     "tau_residual", "adc_scale",  "shots",       "seed",
                     "deterministic", "target_x",  "target_p",    "out_x",
                     "out_p",        "var_x",      "var_p",       "residual_x",
                     "residual_p",   "coeff_record", "coeff_x2",  "coeff_p2"});
  table.add_row({csv_number(report.coupler.lambda), csv_number(report.coupler.tau),
                 csv_number(report.coupler.beta_db), report.coupler.feasible ? "1" : "0",
                 csv_number(report.coupler.tau_residual), csv_number(report.adc_scale),
                 csv_number(static_cast<double>(report.shots)),
                 csv_number(static_cast<double>(report.seed)),
                 report.deterministic ? "1" : "0", csv_number(report.target(0)),
                 csv_number(report.target(1)), csv_number(report.out_mean(0)),
                 csv_number(report.out_mean(1)), csv_number(report.out_var(0)),
                 csv_number(report.out_var(1)), csv_number(report.residual_mean(0)),
                 csv_number(report.residual_mean(1)), csv_number(report.coeff_record),
                 csv_number(report.coeff_x2), csv_number(report.coeff_p2)});
  out << table.to_csv(config_hash(config), config.seed);
  return report.coupler.feasible ? kExitOk : kExitInfeasible;
}

int cmd_calibrate(const Config& config, std::ostream& out) {
  const auto report = microwave::calibrate_noise(config.to_run_settings());
  ReportTable table({"lambda", "tau", "beta_db", "feasible", "shots", "seed",
                     "residual_mean_x", "residual_mean_p", "residual_var_x",
                     "residual_var_p", "predicted_var", "fitted_record_gain_x",
                     "fitted_record_gain_p", "fitted_resource_gain_x",
                     "fitted_resource_gain_p", "coeff_record", "coeff_x2", "coeff_p2"});
  table.add_row({csv_number(report.coupler.lambda), csv_number(report.coupler.tau),
                 csv_number(report.coupler.beta_db), report.coupler.feasible ? "1" : "0",
                 csv_number(static_cast<double>(report.shots)),
                 csv_number(static_cast<double>(report.seed)),
                 csv_number(report.residual_mean(0)), csv_number(report.residual_mean(1)),
                 csv_number(report.residual_var(0)), csv_number(report.residual_var(1)),
                 csv_number(report.predicted_var), csv_number(report.fitted_record_gain_x),
                 csv_number(report.fitted_record_gain_p),
                 csv_number(report.fitted_resource_gain_x),
                 csv_number(report.fitted_resource_gain_p), csv_number(report.coeff_record),
                 csv_number(report.coeff_x2), csv_number(report.coeff_p2)});
  out << table.to_csv(config_hash(config), config.seed);
  return report.coupler.feasible ? kExitOk : kExitInfeasible;
}

}  // namespace cvt::harness
