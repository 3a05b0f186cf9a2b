#include "heatdn/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace heatdn;

TEST_CASE("sweep value generation") {
  const auto lin = sweep_values(1.0, 3.0, 5, "linear");
  CHECK(lin.size() == 5);
  CHECK(lin[2] == doctest::Approx(2.0));
  const auto lg = sweep_values(1e-2, 1e2, 5, "log");
  CHECK(lg[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(sweep_values(1.0, 2.0, 0, "linear"), std::invalid_argument);
  CHECK_THROWS_AS(sweep_values(-1.0, 2.0, 3, "linear"), std::invalid_argument);
  CHECK_THROWS_AS(sweep_values(1.0, 2.0, 3, "cubic"), std::invalid_argument);
}

TEST_CASE("spec validation") {
  SweepSpec s;
  s.values = {};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.values = {1.0, 0.5};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.values = {0.5, 1.0};
  s.modes.clear();
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("single-point formula sweep has one row and one payload column") {
  SweepSpec s;
  s.variable = SweepVariable::dt;
  s.values = {1.0};
  s.dx1 = 0.05;
  s.r = 1.0;
  s.modes = {SweepMode::formula};
  const auto res = run_sweep(s);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.header == std::vector<std::string>{"dt", "formula"});
  CHECK(res.rows[0].entries.size() == 1);
  CHECK_FALSE(res.any_error);
}

TEST_CASE("csv output is deterministic and 17-digit") {
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  SweepSpec s;
  s.values = sweep_values(0.1, 10.0, 4, "log");
  s.dx1 = 0.05;
  s.modes = {SweepMode::formula, SweepMode::beta, SweepMode::delta_r};
  const auto res1 = run_sweep(s);
  const auto res2 = run_sweep(s);
  std::ostringstream a, b;
  write_csv(res1, a, {"provenance line"});
  write_csv(res2, b, {"provenance line"});
  CHECK(a.str() == b.str());
  CHECK(a.str().starts_with("# provenance line\ndt,formula,beta,delta_r\n"));
}

TEST_CASE("formula and observed columns agree along a dx1 sweep") {
  // water against steel, dx1 swept at fixed dt, small aspect ratio
  SweepSpec s;
  s.variable = SweepVariable::dx1;
  s.values = {1.0 / 24.0, 1.0 / 16.0, 1.0 / 8.0};
  s.dt = 10.0;
  s.r = 0.25;
  s.mat1 = "water";
  s.mat2 = "steel";
  s.modes = {SweepMode::formula, SweepMode::observed_1d};
  const auto res = run_sweep(s);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.header ==
        std::vector<std::string>{"dx1", "formula", "observed_1d", "observed_1d_converged"});
  for (const auto& row : res.rows) {
    REQUIRE_FALSE(row.error);
    const double formula = row.entries[0], observed = row.entries[1];
    CHECK(std::abs(observed - formula) / formula < 1e-6);
    CHECK(row.entries[2] == 1.0);
  }
}

TEST_CASE("air-steel dt sweep: monotone curves, high aspect ratio on top") {
  auto run_for_r = [&](double r) {
    SweepSpec s;
    s.variable = SweepVariable::dt;
    s.values = sweep_values(40.0 / 39.0, 40.0, 6, "log");
    s.dx1 = 1.0 / 1100.0;
    s.r = r;
    s.modes = {SweepMode::formula};
    return run_sweep(s);
  };
  const auto r1 = run_for_r(1.0);
  const auto r100 = run_for_r(100.0);
  for (std::size_t i = 0; i < r1.rows.size(); ++i) {
    if (i > 0) {
      CHECK(r1.rows[i].entries[0] > r1.rows[i - 1].entries[0]);
      CHECK(r100.rows[i].entries[0] > r100.rows[i - 1].entries[0]);
    }
    CHECK(r100.rows[i].entries[0] > r1.rows[i].entries[0]);
  }
  // the aspect-ratio gain grows with dt toward the proportional regime
  const double first = r100.rows.front().entries[0] / r1.rows.front().entries[0];
  const double last = r100.rows.back().entries[0] / r1.rows.back().entries[0];
  CHECK(last > first);
  CHECK(last < 110.0);
}

TEST_CASE("divergent sweep points carry a non-convergence marker") {
  SweepSpec s;
  s.variable = SweepVariable::dt;
  s.values = {10.0};
  s.dx1 = 1e-3;
  s.r = 250.0;
  s.mat1 = "water";
  s.mat2 = "steel";
  s.modes = {SweepMode::formula, SweepMode::observed_1d};
  const auto res = run_sweep(s);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].entries[0] > 1.0);  // |Sigma| > 1
  CHECK(res.rows[0].entries[2] == 0.0); // not converged
}

TEST_CASE("asymptotics table reproduces the published rows") {
  const auto res = asymptotics_table(
      {{"air", "steel"}, {"water", "steel"}, {"air", "water"}, {"steel", "steel"}});
  REQUIRE(res.rows.size() == 4);
  for (const auto& row : res.rows) CHECK(row.entries[0] == 0.0);
  CHECK(res.rows[0].entries[1] == doctest::Approx(4.9693e-4).epsilon(5e-3));
  CHECK(res.rows[1].entries[1] == doctest::Approx(0.0119).epsilon(5e-3));
  CHECK(res.rows[2].entries[1] == doctest::Approx(0.0419).epsilon(5e-3));
  CHECK(res.rows[3].entries[1] == 1.0);
  CHECK_THROWS_AS(asymptotics_table({{"air", "vibranium"}}), std::out_of_range);
}

TEST_CASE("fsi estimates: aspect ratios echo the quoted widths") {
  const auto plate = fsi_parameters(FsiCase::flat_plate);
  CHECK(std::abs(plate.r - 1.7780e4) / 1.7780e4 < 1e-4);
  const auto shaft = fsi_parameters(FsiCase::flanged_shaft);
  CHECK(std::abs(shaft.r - 6.8713e3) / 6.8713e3 < 1e-4);
  CHECK_THROWS_AS(fsi_case_from_string("cooling_tower"), std::invalid_argument);
}

TEST_CASE("fsi estimates stay convergent and grow with dt") {
  for (FsiCase c : {FsiCase::flat_plate, FsiCase::flanged_shaft}) {
    const auto res = fsi_estimate(c, sweep_values(1e-3, 10.0, 9, "log"));
    double prev = 0.0;
    for (const auto& row : res.rows) {
      const double sigma = row.entries[0];
      const double delta_r = row.entries[2];
      CHECK(sigma < 1.0);
      CHECK(sigma < delta_r);
      CHECK(sigma > prev);
      prev = sigma;
    }
  }
}

TEST_CASE("plot scripts round-trip every sweep CSV") {
  SweepSpec s;
  s.values = sweep_values(0.5, 8.0, 4, "log");
  s.dx1 = 0.1;
  s.modes = {SweepMode::formula, SweepMode::beta};
  const auto res = run_sweep(s);
  std::ostringstream csv;
  write_csv(res, csv, {"spec: test"});

  std::istringstream in(csv.str());
  std::ostringstream script;
  emit_plots(in, "sweep.csv", script);
  const std::string text = script.str();
  CHECK(text.find("using 1:2") != std::string::npos);
  CHECK(text.find("using 1:3") != std::string::npos);
  CHECK(text.find("title 'beta'") != std::string::npos);
}

TEST_CASE("plot script for an empty table carries a warning") {
  std::istringstream in("dt,formula\n");
  std::ostringstream script;
  emit_plots(in, "empty.csv", script);
  CHECK(script.str().find("warning: no data rows") != std::string::npos);
}

TEST_CASE("plot generation rejects malformed csv") {
  std::istringstream no_header("");
  std::ostringstream script;
  CHECK_THROWS_AS(emit_plots(no_header, "x.csv", script), std::runtime_error);
  std::istringstream bad_cell("dt,formula\n1.0,abc\n");
  CHECK_THROWS_AS(emit_plots(bad_cell, "x.csv", script), std::runtime_error);
  std::istringstream bad_width("dt,formula\n1.0\n");
  CHECK_THROWS_AS(emit_plots(bad_width, "x.csv", script), std::runtime_error);
}

TEST_CASE("spec files parse key = value with comments") {
  std::istringstream in(
      "# sweep spec\n"
      "variable = dt\n"
      "start= 1e-2\n"
      "stop =10 # inline comment\n"
      "modes = formula,beta\n");
  const auto kv = parse_spec_file(in);
  CHECK(kv.at("variable") == "dt");
  CHECK(kv.at("start") == "1e-2");
  CHECK(kv.at("stop") == "10");
  CHECK(kv.at("modes") == "formula,beta");
  std::istringstream bad("justakey\n");
  CHECK_THROWS_AS(parse_spec_file(bad), std::runtime_error);
}

TEST_CASE("material table: file entries shadow presets") {
  MaterialTable table;
  CHECK(table.get("air").lambda == 0.0243);
  const auto path =
      std::filesystem::temp_directory_path() / "heatdn_materials_override.txt";
  {
    std::ofstream out(path);
    out << "air 1.0 1.0 1.0\nhelium 0.142 0.1786 5193\n";
  }
  table.load_file(path.string());
  std::filesystem::remove(path);
  CHECK(table.get("air").lambda == 1.0);
  CHECK(table.get("helium").cp == 5193.0);
  CHECK_THROWS_AS(table.get("argon"), std::out_of_range);
}
