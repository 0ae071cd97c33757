#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cvteleport/harness.hpp"
#include "cvteleport/report.hpp"

using namespace cvt;
using namespace cvt::harness;

namespace {

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) out.push_back(cell);
  return out;
}

const Table1Row& find_row(const std::vector<Table1Row>& rows, const std::string& config,
                          const std::string& quantity) {
  for (const auto& row : rows) {
    if (config == row.config && quantity == row.quantity) return row;
  }
  throw std::out_of_range("no table row " + config + "/" + quantity);
}

// runs the installed CLI binary; returns its exit code
int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CVTELEPORT_CLI_PATH + "\" " + args +
                          " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  REQUIRE(static_cast<bool>(file));
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// csv primitives
// ---------------------------------------------------------------------------

TEST_CASE("csv numbers are locale-free and 12 significant digits at most") {
  CHECK(csv_number(0.0) == "0");
  CHECK(csv_number(1.5) == "1.5");
  CHECK(csv_number(-2.0) == "-2");
  CHECK(csv_number(3.14159265358979) == "3.14159265359");
  CHECK(csv_number(1e-7) == "1e-07");
  CHECK(csv_number(std::nan("")) == "nan");
  CHECK(csv_number(INFINITY) == "inf");
  CHECK(csv_number(-INFINITY) == "-inf");
}

TEST_CASE("hashing is the reference FNV-1a") {
  CHECK(fnv1a_64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a_64("a") != fnv1a_64("b"));
  CHECK(to_hex(0) == "0000000000000000");
  CHECK(to_hex(0xabcull) == "0000000000000abc");
  CHECK(to_hex(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("report tables are rectangular and carry a footer") {
  ReportTable table({"a", "b"});
  table.add_row({"1", "2"});
  CHECK_THROWS_AS(table.add_row({"1"}), std::invalid_argument);
  const std::string csv = table.to_csv(0xabcull, 7);
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "a,b");
  CHECK(lines[1] == "1,2");
  CHECK(lines[2] == "# config_hash=0000000000000abc seed=7 version=cvteleport-0.1.0");
  CHECK_THROWS_AS(ReportTable({}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

TEST_CASE("assignments update the matching key and nothing else") {
  Config config;
  apply_config_line(config, "epsilon = 0.5");
  CHECK(config.epsilon == 0.5);
  CHECK(config.eta == 0.9);
  apply_config_line(config, "chain=JPA_CHAIN");
  CHECK(config.chain == "JPA_CHAIN");
  apply_config_line(config, "shots=123");
  CHECK(config.shots == 123);
  apply_config_line(config, "deterministic=false");
  CHECK_FALSE(config.deterministic);
  apply_config_line(config, "eta_values=0.1,0.5,0.9");
  REQUIRE(config.eta_values.size() == 3);
  CHECK(config.eta_values[1] == 0.5);

  CHECK_THROWS_AS(apply_config_line(config, "bogus=1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_line(config, "epsilon=abc"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_line(config, "no_equals_here"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_line(config, "=0.5"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_line(config, "y_values="), std::invalid_argument);
}

TEST_CASE("file text parses with comments, then overrides win") {
  const std::string text =
      "# stage temperatures\n"
      "T1 = 0.02\n"
      "\n"
      "gJ = 50  # trailing comment\n";
  const Config config = load_config(text, {"gJ=80", "seed=9"});
  CHECK(config.t1 == 0.02);
  CHECK(config.g_j == 80.0);
  CHECK(config.seed == 9);
}

TEST_CASE("carrier frequency converts to angular unless marked angular") {
  Config config;
  CHECK(close(config.omega_rad(), 2.0 * 3.141592653589793 * 5e9, 1e-3));
  config.omega_is_angular = true;
  config.omega_hz = 123.0;
  CHECK(config.omega_rad() == 123.0);
}

TEST_CASE("the sweep squeezing grid is linear and inclusive") {
  Config config;
  const auto values = config.r_values();
  REQUIRE(values.size() == 41);
  CHECK(values.front() == 0.0);
  CHECK(close(values[1], 0.05, 1e-15));
  CHECK(close(values.back(), 2.0, 1e-15));
  config.r_count = 1;
  config.r_min = 0.7;
  CHECK(config.r_values() == std::vector<double>{0.7});
  config.r_count = 0;
  CHECK_THROWS_AS(config.r_values(), std::invalid_argument);
  config.r_count = 2;
  config.r_max = 0.1;
  CHECK_THROWS_AS(config.r_values(), std::invalid_argument);
}

TEST_CASE("run settings inherit the budget and reject contradictions") {
  Config config;
  const auto settings = config.to_run_settings();
  CHECK(settings.budget.epsilon == 0.95);
  CHECK(settings.budget.temps[1] == 4.0);
  CHECK(settings.gains.g_j == 100.0);
  CHECK(settings.adc.lo_amplitude == 1e6);
  CHECK(settings.r == 1.32);
  CHECK(settings.input_mean(0) == 1.0);
  CHECK(settings.lambda_override == 0.0);

  config.r_j = 2.30;  // ln(100)/2 = 2.3026, well inside the 2% band
  CHECK(config.to_run_settings().gains.g_j == 100.0);
  config.r_j = 3.0;
  CHECK_THROWS_AS(config.to_run_settings(), std::invalid_argument);
  config.r_j = 0.0;
  config.chain = "MASER";
  CHECK_THROWS_AS(config.to_run_settings(), std::invalid_argument);
  config.chain = "HEMT";
  config.g_j = 0.0;
  CHECK_THROWS_AS(config.to_run_settings(), std::invalid_argument);
  Config plain;
  plain.input_orientation = "sideways";
  CHECK_THROWS_AS(plain.orientation(), std::invalid_argument);
}

TEST_CASE("the config hash keys on every effective value") {
  Config a;
  Config b;
  CHECK(canonical_text(a) == canonical_text(b));
  CHECK(config_hash(a) == config_hash(b));
  b.epsilon = 0.951;
  CHECK(config_hash(a) != config_hash(b));
  Config c;
  c.y_values = {0.0, 0.25};
  CHECK(config_hash(a) != config_hash(c));
  const std::string text = canonical_text(a);
  CHECK(text.find("epsilon=0.95\n") != std::string::npos);
  CHECK(text.find("chain=HEMT\n") != std::string::npos);
  CHECK(text.find("N_values=0.5\n") != std::string::npos);
}

// ---------------------------------------------------------------------------
// budget reproduction table
// ---------------------------------------------------------------------------

TEST_CASE("the table closes every consistency chain to better than 0.01") {
  const auto rows = build_table1();
  REQUIRE(rows.size() == 19);
  for (const auto& row : rows) {
    if (row.consistency) CHECK(row.residual() <= 0.01);
  }
}

TEST_CASE("frozen values of the derived table entries") {
  const auto rows = build_table1();
  CHECK(close(find_row(rows, "fridge", "tau").computed, 0.4275, 1e-15));
  CHECK(close(find_row(rows, "fridge", "lambda").computed, 1.7452006980802792, 1e-12));
  CHECK(close(find_row(rows, "fridge", "beta_db").computed, -2.4054924828259011, 1e-9));
  CHECK(close(find_row(rows, "fridge", "beta_db_from_computed").computed,
              -2.4184537803261283, 1e-9));
  CHECK(close(find_row(rows, "fridge", "noise_coeff_i1").computed, 0.75809804357930418,
              1e-12));
  CHECK(close(find_row(rows, "fridge", "noise_coeff_x2").computed, 2.4461475712791394,
              1e-11));
  CHECK(close(find_row(rows, "fridge", "noise_coeff_x2").residual(), 0.0021475712791394,
              1e-11));
  CHECK(close(find_row(rows, "fridge", "noise_coeff_p2").computed, 0.17456019620907968,
              1e-12));
  CHECK(close(find_row(rows, "free_space", "tau").computed, 0.095, 1e-15));
  CHECK(close(find_row(rows, "free_space", "lambda").computed, 1.1049723756906078, 1e-12));
  CHECK(close(find_row(rows, "free_space", "beta_db").computed, -0.41392685158225599, 1e-9));
  CHECK(close(find_row(rows, "free_space", "noise_coeff_i1").computed, 0.95346258924559232,
              1e-12));
  CHECK(close(find_row(rows, "free_space", "noise_coeff_x2").computed, 1.1537999578529413,
              1e-11));
  const Table1Row& half = find_row(rows, "free_space", "tau_half_reading");
  CHECK_FALSE(half.consistency);
  CHECK(close(half.residual(), 0.0475, 1e-15));
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

TEST_CASE("the table command always succeeds and is rectangular") {
  Config config;
  std::ostringstream out;
  CHECK(cmd_table1(config, out) == kExitOk);
  const auto lines = split_lines(out.str());
  REQUIRE(lines.size() == 21);  // header + 19 rows + footer
  CHECK(lines[0] == "config,quantity,reference,computed,residual,consistency,basis");
  CHECK(split_cells(lines[1]).size() == 7);
  CHECK(lines[20].rfind("# config_hash=", 0) == 0);
  CHECK(lines[20].find("seed=42") != std::string::npos);
  CHECK(lines[20].find("version=cvteleport-0.1.0") != std::string::npos);
  CHECK(lines[20].find(to_hex(config_hash(config))) != std::string::npos);
}

TEST_CASE("the default sweep finds a quantum-advantage region") {
  Config config;
  std::ostringstream out;
  CHECK(cmd_sweep(config, out) == kExitOk);
  const auto lines = split_lines(out.str());
  REQUIRE(lines.size() == 43);  // header + 41 grid rows + footer
  CHECK(lines[0] == "y,eta,N,r,margin,feasible,fidelity");
  // rerun is byte-identical
  std::ostringstream again;
  cmd_sweep(config, again);
  CHECK(out.str() == again.str());
}

TEST_CASE("a sweep outside the margin reports infeasible rows and exits 2") {
  Config config;
  config.r_min = 1.5;
  config.r_max = 1.9;
  config.r_count = 3;
  std::ostringstream out;
  CHECK(cmd_sweep(config, out) == kExitInfeasible);
  const auto lines = split_lines(out.str());
  REQUIRE(lines.size() == 5);
  for (int k = 1; k <= 3; ++k) {
    const auto cells = split_cells(lines[static_cast<std::size_t>(k)]);
    CHECK(cells[5] == "0");
    CHECK(cells[6] == "nan");
  }
}

TEST_CASE("the run command flags the physically derived coupler as infeasible") {
  Config config;
  std::ostringstream out;
  CHECK(cmd_run(config, out) == kExitInfeasible);
  const auto lines = split_lines(out.str());
  REQUIRE(lines.size() == 3);
  const auto header = split_cells(lines[0]);
  REQUIRE(header.size() == 20);
  CHECK(header[0] == "lambda");
  CHECK(header[3] == "feasible");
  const auto cells = split_cells(lines[1]);
  CHECK(cells[0] == csv_number(33.917196559530783));
  CHECK(cells[3] == "0");
  CHECK(cells[13] == "0");  // deterministic run: zero variance
}

TEST_CASE("pinning the coupler at the published point makes the run feasible") {
  Config config;
  config.lambda = 1.7452006980802792;
  std::ostringstream out;
  CHECK(cmd_run(config, out) == kExitOk);
  std::ostringstream again;
  cmd_run(config, again);
  CHECK(out.str() == again.str());
}

TEST_CASE("calibration exits like the run it mirrors") {
  Config config;
  config.shots = 200;
  std::ostringstream out;
  CHECK(cmd_calibrate(config, out) == kExitInfeasible);
  config.lambda = 1.7452006980802792;
  std::ostringstream ok;
  CHECK(cmd_calibrate(config, ok) == kExitOk);
  const auto lines = split_lines(ok.str());
  REQUIRE(lines.size() == 3);
  CHECK(split_cells(lines[0]).size() == 18);
  CHECK(split_cells(lines[1])[3] == "1");
}

// ---------------------------------------------------------------------------
// command-line binary
// ---------------------------------------------------------------------------

TEST_CASE("the binary writes reports where asked and honors overrides") {
  const std::string table_path = "/tmp/cvt_test_table.csv";
  CHECK(run_cli("table1 --out " + table_path) == 0);
  const auto table_lines = split_lines(read_file(table_path));
  REQUIRE(table_lines.size() == 21);
  CHECK(table_lines[0] == "config,quantity,reference,computed,residual,consistency,basis");

  // a pinned coupler turns the default run feasible
  CHECK(run_cli("run") == 2);
  const std::string run_path = "/tmp/cvt_test_run.csv";
  CHECK(run_cli("run --set lambda=1.7452 shots=5 --out " + run_path) == 0);
  const auto run_lines = split_lines(read_file(run_path));
  REQUIRE(run_lines.size() == 3);
  CHECK(split_cells(run_lines[1])[3] == "1");

  // identical invocations produce identical bytes
  const std::string twin_path = "/tmp/cvt_test_run_twin.csv";
  CHECK(run_cli("run --set lambda=1.7452 shots=5 --out " + twin_path) == 0);
  CHECK(read_file(run_path) == read_file(twin_path));
}

TEST_CASE("the binary rejects unknown keys and missing subcommands") {
  CHECK(run_cli("table1 --set bogus=1") == 1);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("sweep --set eta_values=") == 1);
  CHECK(run_cli("run --config /no/such/file.cfg") == 1);
}

TEST_CASE("the binary reads config files and seed overrides reach the footer") {
  const std::string cfg_path = "/tmp/cvt_test_sweep.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "# three-point squeezing grid\n"
        << "r_min = 0.2\n"
        << "r_max = 0.6\n"
        << "r_count = 3\n";
  }
  const std::string sweep_path = "/tmp/cvt_test_sweep.csv";
  CHECK(run_cli("sweep --config " + cfg_path + " --seed 9 --out " + sweep_path) == 0);
  const auto lines = split_lines(read_file(sweep_path));
  REQUIRE(lines.size() == 5);
  CHECK(lines.back().find("seed=9") != std::string::npos);
}
