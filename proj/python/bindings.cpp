#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvteleport/freespace.hpp"
#include "cvteleport/gaussian.hpp"
#include "cvteleport/harness.hpp"
#include "cvteleport/microwave.hpp"
#include "cvteleport/protocol.hpp"
#include "cvteleport/version.hpp"

#include <sstream>

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian-state teleportation simulator";
  m.attr("__version__") = cvt::kVersion;

  // --- gaussian core -----------------------------------------------------
  py::class_<cvt::GaussianState>(m, "GaussianState")
      .def(py::init<>())
      .def_readwrite("mean", &cvt::GaussianState::mean)
      .def_readwrite("cov", &cvt::GaussianState::cov)
      .def("modes", &cvt::GaussianState::modes)
      .def("to_csv_row", [](const cvt::GaussianState& s) { return cvt::to_csv_row(s); });

  py::class_<cvt::SymplecticTransform>(m, "SymplecticTransform")
      .def(py::init<>())
      .def_readwrite("matrix", &cvt::SymplecticTransform::matrix)
      .def_readwrite("displacement", &cvt::SymplecticTransform::displacement)
      .def("modes", &cvt::SymplecticTransform::modes);

  py::class_<cvt::PhysicalityReport>(m, "PhysicalityReport")
      .def_readonly("physical", &cvt::PhysicalityReport::physical)
      .def_readonly("spectrum", &cvt::PhysicalityReport::spectrum);

  m.def("symplectic_form", &cvt::symplectic_form, py::arg("modes"));
  m.def("vacuum", &cvt::vacuum, py::arg("modes"));
  m.def("coherent", &cvt::coherent, py::arg("mean"));
  m.def("thermal", &cvt::thermal, py::arg("n"));
  m.def("squeezed", &cvt::squeezed, py::arg("r"),
        py::arg("mean") = Eigen::Vector2d::Zero().eval());
  m.def("general_single_mode", &cvt::general_single_mode, py::arg("n"), py::arg("r"),
        py::arg("theta"), py::arg("mean") = Eigen::Vector2d::Zero().eval());
  m.def("tmsv", &cvt::tmsv, py::arg("r"));
  m.def("tmst", &cvt::tmst, py::arg("r"), py::arg("n"));
  m.def("identity_transform", &cvt::identity_transform, py::arg("modes"));
  m.def("rotation", &cvt::rotation, py::arg("theta"));
  m.def("squeezer", &cvt::squeezer, py::arg("r"));
  m.def("beamsplitter", &cvt::beamsplitter, py::arg("tau"));
  m.def("two_mode_squeezer", &cvt::two_mode_squeezer, py::arg("r"));
  m.def("direct_sum", &cvt::direct_sum, py::arg("parts"));
  m.def("apply", &cvt::apply, py::arg("state"), py::arg("transform"),
        py::arg("tol") = cvt::kDefaultTol);
  m.def("displace", &cvt::displace, py::arg("state"), py::arg("delta"), py::arg("mode"));
  m.def("is_symplectic", &cvt::is_symplectic, py::arg("matrix"),
        py::arg("tol") = cvt::kDefaultTol);
  m.def("physicality", &cvt::physicality, py::arg("cov"), py::arg("tol") = cvt::kDefaultTol);
  m.def("wigner", &cvt::wigner, py::arg("state"), py::arg("point"),
        py::arg("det_tol") = 1e-12);

  // --- ideal protocol ----------------------------------------------------
  py::class_<cvt::protocol::HomodyneConfig>(m, "HomodyneConfig")
      .def(py::init<>())
      .def_readwrite("lo_amplitude", &cvt::protocol::HomodyneConfig::lo_amplitude)
      .def_readwrite("theta_x", &cvt::protocol::HomodyneConfig::theta_x)
      .def_readwrite("theta_p", &cvt::protocol::HomodyneConfig::theta_p);

  py::class_<cvt::protocol::MeasurementRecord>(m, "MeasurementRecord")
      .def_readonly("current_x", &cvt::protocol::MeasurementRecord::current_x)
      .def_readonly("current_p", &cvt::protocol::MeasurementRecord::current_p)
      .def_readonly("xu", &cvt::protocol::MeasurementRecord::xu)
      .def_readonly("pv", &cvt::protocol::MeasurementRecord::pv)
      .def_readonly("delta", &cvt::protocol::MeasurementRecord::delta);

  py::class_<cvt::protocol::ShotStats>(m, "ShotStats")
      .def_readonly("shots", &cvt::protocol::ShotStats::shots)
      .def_readonly("seed", &cvt::protocol::ShotStats::seed)
      .def_readonly("deterministic", &cvt::protocol::ShotStats::deterministic)
      .def_readonly("mean", &cvt::protocol::ShotStats::mean)
      .def_readonly("cov", &cvt::protocol::ShotStats::cov)
      .def_readonly("input_mean", &cvt::protocol::ShotStats::input_mean)
      .def("to_csv_row", &cvt::protocol::ShotStats::to_csv_row);

  m.def("alice_measure", &cvt::protocol::alice_measure, py::arg("input"),
        py::arg("resource_mode1"), py::arg("r"),
        py::arg("cfg") = cvt::protocol::HomodyneConfig{});
  m.def("bob_reconstruct", &cvt::protocol::bob_reconstruct, py::arg("resource_mode2"),
        py::arg("r"), py::arg("record"));
  m.def("fidelity_gamma", &cvt::protocol::fidelity_gamma, py::arg("v_in"),
        py::arg("resource"));
  m.def("fidelity_closed_form", &cvt::protocol::fidelity_closed_form, py::arg("y"),
        py::arg("r"), py::arg("n"));
  m.def("average_fidelity", &cvt::protocol::average_fidelity, py::arg("r"), py::arg("n"),
        py::arg("y_low") = 0.0, py::arg("y_high") = 1.0, py::arg("abs_tol") = 1e-9);
  m.def("simulate_shots",
        [](double y, const Eigen::Vector2d& mean, double r, double n, long shots,
           std::uint64_t seed, bool deterministic) {
          return cvt::protocol::simulate_shots({y, mean}, {r, n}, shots, seed, deterministic);
        },
        py::arg("y"), py::arg("input_mean"), py::arg("r"), py::arg("n"), py::arg("shots"),
        py::arg("seed"), py::arg("deterministic") = false);

  // --- microwave chain ---------------------------------------------------
  py::enum_<cvt::microwave::AmplifierChain>(m, "AmplifierChain")
      .value("HEMT", cvt::microwave::AmplifierChain::kHemt)
      .value("JPA_CHAIN", cvt::microwave::AmplifierChain::kJpaChain);

  py::class_<cvt::microwave::CircuitBudget>(m, "CircuitBudget")
      .def(py::init<>())
      .def_readwrite("epsilon", &cvt::microwave::CircuitBudget::epsilon)
      .def_readwrite("eta", &cvt::microwave::CircuitBudget::eta)
      .def_readwrite("kappa", &cvt::microwave::CircuitBudget::kappa)
      .def_readwrite("nu", &cvt::microwave::CircuitBudget::nu)
      .def_readwrite("temps", &cvt::microwave::CircuitBudget::temps);

  py::class_<cvt::microwave::GainConfig>(m, "GainConfig")
      .def(py::init<>())
      .def_readwrite("g_j", &cvt::microwave::GainConfig::g_j)
      .def_readwrite("g_h", &cvt::microwave::GainConfig::g_h)
      .def_readwrite("chain", &cvt::microwave::GainConfig::chain)
      .def_readwrite("added_photons", &cvt::microwave::GainConfig::added_photons);

  py::class_<cvt::microwave::AdcConfig>(m, "AdcConfig")
      .def(py::init<>())
      .def_readwrite("omega", &cvt::microwave::AdcConfig::omega)
      .def_readwrite("bandwidth", &cvt::microwave::AdcConfig::bandwidth)
      .def_readwrite("resistance", &cvt::microwave::AdcConfig::resistance)
      .def_readwrite("lo_amplitude", &cvt::microwave::AdcConfig::lo_amplitude);

  py::class_<cvt::microwave::CouplerSettings>(m, "CouplerSettings")
      .def_readonly("lambda_", &cvt::microwave::CouplerSettings::lambda)
      .def_readonly("tau", &cvt::microwave::CouplerSettings::tau)
      .def_readonly("beta_db", &cvt::microwave::CouplerSettings::beta_db)
      .def_readonly("feasible", &cvt::microwave::CouplerSettings::feasible)
      .def_readonly("tau_residual", &cvt::microwave::CouplerSettings::tau_residual);

  py::class_<cvt::microwave::RunSettings>(m, "RunSettings")
      .def(py::init<>())
      .def_readwrite("budget", &cvt::microwave::RunSettings::budget)
      .def_readwrite("gains", &cvt::microwave::RunSettings::gains)
      .def_readwrite("adc", &cvt::microwave::RunSettings::adc)
      .def_readwrite("r", &cvt::microwave::RunSettings::r)
      .def_readwrite("resource_n", &cvt::microwave::RunSettings::resource_n)
      .def_readwrite("y", &cvt::microwave::RunSettings::y)
      .def_readwrite("input_mean", &cvt::microwave::RunSettings::input_mean)
      .def_readwrite("shots", &cvt::microwave::RunSettings::shots)
      .def_readwrite("seed", &cvt::microwave::RunSettings::seed)
      .def_readwrite("deterministic", &cvt::microwave::RunSettings::deterministic)
      .def_readwrite("lambda_override", &cvt::microwave::RunSettings::lambda_override);

  py::class_<cvt::microwave::RunReport>(m, "RunReport")
      .def_readonly("coupler", &cvt::microwave::RunReport::coupler)
      .def_readonly("adc_scale", &cvt::microwave::RunReport::adc_scale)
      .def_readonly("shots", &cvt::microwave::RunReport::shots)
      .def_readonly("seed", &cvt::microwave::RunReport::seed)
      .def_readonly("deterministic", &cvt::microwave::RunReport::deterministic)
      .def_readonly("target", &cvt::microwave::RunReport::target)
      .def_readonly("out_mean", &cvt::microwave::RunReport::out_mean)
      .def_readonly("out_var", &cvt::microwave::RunReport::out_var)
      .def_readonly("residual_mean", &cvt::microwave::RunReport::residual_mean)
      .def_readonly("coeff_record", &cvt::microwave::RunReport::coeff_record)
      .def_readonly("coeff_x2", &cvt::microwave::RunReport::coeff_x2)
      .def_readonly("coeff_p2", &cvt::microwave::RunReport::coeff_p2);

  py::class_<cvt::microwave::CalibrationReport>(m, "CalibrationReport")
      .def_readonly("coupler", &cvt::microwave::CalibrationReport::coupler)
      .def_readonly("shots", &cvt::microwave::CalibrationReport::shots)
      .def_readonly("seed", &cvt::microwave::CalibrationReport::seed)
      .def_readonly("residual_mean", &cvt::microwave::CalibrationReport::residual_mean)
      .def_readonly("residual_var", &cvt::microwave::CalibrationReport::residual_var)
      .def_readonly("predicted_var", &cvt::microwave::CalibrationReport::predicted_var)
      .def_readonly("fitted_record_gain_x",
                    &cvt::microwave::CalibrationReport::fitted_record_gain_x)
      .def_readonly("fitted_record_gain_p",
                    &cvt::microwave::CalibrationReport::fitted_record_gain_p)
      .def_readonly("fitted_resource_gain_x",
                    &cvt::microwave::CalibrationReport::fitted_resource_gain_x)
      .def_readonly("fitted_resource_gain_p",
                    &cvt::microwave::CalibrationReport::fitted_resource_gain_p)
      .def_readonly("coeff_record", &cvt::microwave::CalibrationReport::coeff_record)
      .def_readonly("coeff_x2", &cvt::microwave::CalibrationReport::coeff_x2)
      .def_readonly("coeff_p2", &cvt::microwave::CalibrationReport::coeff_p2);

  m.def("thermal_occupation", &cvt::microwave::thermal_occupation, py::arg("temperature"),
        py::arg("omega"));
  m.def("lambda_coefficient", &cvt::microwave::lambda_coefficient, py::arg("adc"),
        py::arg("budget"), py::arg("gains"));
  m.def("coupler_settings", &cvt::microwave::coupler_settings, py::arg("lambda_"),
        py::arg("budget"));
  m.def("end_to_end_run", &cvt::microwave::end_to_end_run, py::arg("settings"));
  m.def("calibrate_noise", &cvt::microwave::calibrate_noise, py::arg("settings"));

  // --- free-space channel ------------------------------------------------
  py::register_exception<cvt::freespace::EquivalenceError>(m, "EquivalenceError",
                                                           PyExc_ValueError);

  py::enum_<cvt::freespace::InputOrientation>(m, "InputOrientation")
      .value("X_ANTISQUEEZED", cvt::freespace::InputOrientation::kAntisqueezedX)
      .value("X_SQUEEZED", cvt::freespace::InputOrientation::kSqueezedX);

  py::class_<cvt::freespace::BathParams>(m, "BathParams")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("eta"), py::arg("mean_photons"))
      .def_readwrite("eta", &cvt::freespace::BathParams::eta)
      .def_readwrite("mean_photons", &cvt::freespace::BathParams::mean_photons);

  py::class_<cvt::freespace::TmstEquivalence>(m, "TmstEquivalence")
      .def_readonly("s", &cvt::freespace::TmstEquivalence::s)
      .def_readonly("x1", &cvt::freespace::TmstEquivalence::x1)
      .def_readonly("x2", &cvt::freespace::TmstEquivalence::x2)
      .def_readonly("n", &cvt::freespace::TmstEquivalence::n);

  py::class_<cvt::freespace::SweepPoint>(m, "SweepPoint")
      .def_readonly("y", &cvt::freespace::SweepPoint::y)
      .def_readonly("eta", &cvt::freespace::SweepPoint::eta)
      .def_readonly("mean_photons", &cvt::freespace::SweepPoint::mean_photons)
      .def_readonly("r", &cvt::freespace::SweepPoint::r)
      .def_readonly("margin", &cvt::freespace::SweepPoint::margin)
      .def_readonly("feasible", &cvt::freespace::SweepPoint::feasible)
      .def_readonly("fidelity", &cvt::freespace::SweepPoint::fidelity);

  m.def("equivalence_margin", &cvt::freespace::equivalence_margin, py::arg("r"),
        py::arg("bath"));
  m.def("equivalent_tmst", &cvt::freespace::equivalent_tmst, py::arg("r"), py::arg("bath"),
        py::arg("margin_tol") = 1e-12);
  m.def("freespace_fidelity", &cvt::freespace::fidelity, py::arg("y"), py::arg("r"),
        py::arg("bath"),
        py::arg("orientation") = cvt::freespace::InputOrientation::kAntisqueezedX);
  m.def("fidelity_sweep", &cvt::freespace::fidelity_sweep, py::arg("y_values"),
        py::arg("eta_values"), py::arg("n_values"), py::arg("r_values"),
        py::arg("orientation") = cvt::freespace::InputOrientation::kAntisqueezedX);

  // --- reports -----------------------------------------------------------
  m.def("table1_csv", []() {
    std::ostringstream out;
    cvt::harness::Config config;
    cvt::harness::cmd_table1(config, out);
    return out.str();
  });
  m.def("sweep_csv", [](const std::vector<std::string>& overrides) {
    const cvt::harness::Config config = cvt::harness::load_config("", overrides);
    std::ostringstream out;
    const int code = cvt::harness::cmd_sweep(config, out);
    return py::make_tuple(code, out.str());
  }, py::arg("overrides") = std::vector<std::string>{});
}
