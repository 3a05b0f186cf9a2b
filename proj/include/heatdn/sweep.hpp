#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heatdn/material.hpp"
#include "heatdn/rate_theory.hpp"

namespace heatdn {

enum class SweepMode { formula, schur_oracle, observed_1d, observed_2d, beta, delta_r };

const char* to_string(SweepMode m);
SweepMode sweep_mode_from_string(const std::string& s);  // throws std::invalid_argument

enum class SweepVariable { dt, dx1 };

struct SweepSpec {
  SweepVariable variable = SweepVariable::dt;
  std::vector<double> values;  // nonempty, strictly increasing, positive

  // Fixed complement of the swept variable.
  double dt = 1.0;    // used when sweeping dx1
  double dx1 = 0.01;  // used when sweeping dt
  double r = 1.0;
  int ny = 0;  // observed_2d tangential interior nodes; 0 = unit square

  std::string mat1 = "air";
  std::string mat2 = "steel";

  std::vector<SweepMode> modes = {SweepMode::formula};

  void validate() const;  // throws std::invalid_argument
  std::vector<std::string> columns() const;
};

/// Generate start/stop/count values, spacing "linear" or "log".
std::vector<double> sweep_values(double start, double stop, int count,
                                 const std::string& spacing);

struct SweepRow {
  double value = 0.0;
  std::vector<double> entries;  // one per column past the first
  bool error = false;           // row-level failure marker
};

struct SweepResult {
  std::vector<std::string> header;  // swept variable name + mode columns (+ flags)
  std::vector<SweepRow> rows;
  bool any_error = false;
};

/// Material registry used by name lookups; presets plus optional file
/// entries (file entries may shadow presets).
class MaterialTable {
 public:
  MaterialTable();
  void load_file(const std::string& path);
  Material get(const std::string& name) const;  // throws std::out_of_range
  std::vector<std::string> names() const;

 private:
  std::vector<std::pair<std::string, Material>> entries_;
};

SweepResult run_sweep(const SweepSpec& spec, const MaterialTable& table = MaterialTable());

/// Deterministic CSV: '#' provenance lines, header row, 17 significant
/// digits, '.' decimal separator, comma-separated, no quoting.
void write_csv(const SweepResult& result, std::ostream& out,
               const std::vector<std::string>& provenance_lines);

std::string format_double(double v);  // %.17g with C locale

/// Table 2 reproduction: one row per material pair, temporal limit and the
/// spatial coefficient lambda1/lambda2 (to be multiplied by r).
SweepResult asymptotics_table(const std::vector<std::pair<std::string, std::string>>& pairs,
                              const MaterialTable& table = MaterialTable());

enum class FsiCase { flat_plate, flanged_shaft };

struct FsiParameters {
  std::string name;
  Material mat1;        // fluid side (air)
  Material mat2;        // structure side (steel at the case temperature)
  double dx1, dx2, r;   // r as derived from the quoted mesh widths
  int n1, n2;
  std::string note;     // reported discrepancies, if any
};
FsiParameters fsi_parameters(FsiCase c);

/// Evaluates sigma_exact, beta and delta_r at the quoted application
/// parameters over the requested time steps.
SweepResult fsi_estimate(FsiCase c, const std::vector<double>& dts);
FsiCase fsi_case_from_string(const std::string& s);

/// Writes a gnuplot script with one log-log series per mode column of the
/// CSV written by write_csv. Throws std::runtime_error on malformed input.
void emit_plots(std::istream& csv, const std::string& csv_path, std::ostream& script);

/// `key = value` spec files; '#' comments. Later keys override earlier ones.
std::map<std::string, std::string> parse_spec_file(std::istream& in);

}  // namespace heatdn
