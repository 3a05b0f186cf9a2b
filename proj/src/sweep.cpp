#include "heatdn/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "heatdn/blocks1d.hpp"
#include "heatdn/dn1d.hpp"
#include "heatdn/model2d.hpp"

namespace heatdn {

const char* to_string(SweepMode m) {
  switch (m) {
    case SweepMode::formula: return "formula";
    case SweepMode::schur_oracle: return "schur_oracle";
    case SweepMode::observed_1d: return "observed_1d";
    case SweepMode::observed_2d: return "observed_2d";
    case SweepMode::beta: return "beta";
    case SweepMode::delta_r: return "delta_r";
  }
  return "?";
}

SweepMode sweep_mode_from_string(const std::string& s) {
  for (SweepMode m : {SweepMode::formula, SweepMode::schur_oracle, SweepMode::observed_1d,
                      SweepMode::observed_2d, SweepMode::beta, SweepMode::delta_r})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown sweep mode: " + s);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> sweep_values(double start, double stop, int count,
                                 const std::string& spacing) {
  if (count < 1) throw std::invalid_argument("sweep values: count must be >= 1");
  if (!(start > 0.0) || !(stop >= start))
    throw std::invalid_argument("sweep values: need 0 < start <= stop");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = start;
    return v;
  }
  if (spacing == "linear") {
    for (int i = 0; i < count; ++i) v[i] = start + (stop - start) * i / (count - 1);
  } else if (spacing == "log") {
    const double la = std::log(start), lb = std::log(stop);
    for (int i = 0; i < count; ++i) v[i] = std::exp(la + (lb - la) * i / (count - 1));
  } else {
    throw std::invalid_argument("sweep values: spacing must be linear or log");
  }
  return v;
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
  for (double v : values)
    if (!(v > 0.0)) throw std::invalid_argument("sweep: values must be positive");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw std::invalid_argument("sweep: values must be strictly increasing");
  if (modes.empty()) throw std::invalid_argument("sweep: at least one mode required");
  if (!(r > 0.0)) throw std::invalid_argument("sweep: aspect ratio must be positive");
  if (variable == SweepVariable::dt && !(dx1 > 0.0))
    throw std::invalid_argument("sweep: dx1 must be positive");
  if (variable == SweepVariable::dx1 && !(dt > 0.0))
    throw std::invalid_argument("sweep: dt must be positive");
  if (ny < 0) throw std::invalid_argument("sweep: ny must be >= 0");
}

std::vector<std::string> SweepSpec::columns() const {
  std::vector<std::string> cols;
  cols.push_back(variable == SweepVariable::dt ? "dt" : "dx1");
  for (SweepMode m : modes) {
    cols.emplace_back(to_string(m));
    if (m == SweepMode::observed_1d || m == SweepMode::observed_2d)
      cols.push_back(std::string(to_string(m)) + "_converged");
  }
  return cols;
}

MaterialTable::MaterialTable() {
  for (const auto& name : preset_names()) entries_.emplace_back(name, preset(name));
}

void MaterialTable::load_file(const std::string& path) {
  for (auto& e : load_material_file(path)) entries_.push_back(std::move(e));
}

Material MaterialTable::get(const std::string& name) const {
  // later entries shadow earlier ones
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->first == name) return it->second;
  throw std::out_of_range("unknown material: " + name);
}

std::vector<std::string> MaterialTable::names() const {
  std::vector<std::string> n;
  for (const auto& e : entries_) n.push_back(e.first);
  return n;
}

namespace {

// Guard for the 2D observed mode; a sweep point beyond this is reported as a
// row-level error rather than silently taking minutes.
constexpr long kMax2DUnknowns = 600000;

struct PointInputs {
  RateInputs rate;
  GridSpec1D grid;
};

PointInputs point_inputs(const SweepSpec& spec, double value, const Material& m1,
                         const Material& m2) {
  const double dx1 = spec.variable == SweepVariable::dx1 ? value : spec.dx1;
  const double dt = spec.variable == SweepVariable::dt ? value : spec.dt;
  PointInputs p{RateInputs{}, GridSpec1D::from_dx1_aspect(dx1, spec.r)};
  p.rate = RateInputs::from_grid(p.grid, m1, m2, dt);
  return p;
}

double observed_1d_at(const PointInputs& p) {
  const SubdomainBlocks b1 = build_fvm_blocks(p.grid, p.rate.mat1);
  const SubdomainBlocks b2 = build_fem_blocks(p.grid, p.rate.mat2);
  return measure_rate(b1, b2, p.rate.dt);
}

double observed_2d_at(const PointInputs& p, int ny) {
  GridSpec2D g = ny > 0 ? GridSpec2D::make(p.grid.n1, p.grid.n2, ny)
                        : GridSpec2D::unit_square(p.grid.dx1, p.grid.r);
  const long total = static_cast<long>(g.n1_unknowns()) + g.n2_unknowns();
  if (total > kMax2DUnknowns)
    throw std::runtime_error("observed_2d: problem size beyond sweep guard");
  const Blocks2D b1 = build_fvm_2d(g, p.rate.mat1);
  const Blocks2D b2 = build_fem_2d(g, p.rate.mat2);
  return measure_rate_2d(b1, b2, p.rate.dt);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const MaterialTable& table) {
  spec.validate();
  const Material m1 = table.get(spec.mat1);
  const Material m2 = table.get(spec.mat2);

  SweepResult res;
  res.header = spec.columns();
  for (double value : spec.values) {
    SweepRow row;
    row.value = value;
    try {
      const PointInputs p = point_inputs(spec, value, m1, m2);
      const double sigma = sigma_exact(p.rate);
      for (SweepMode m : spec.modes) {
        switch (m) {
          case SweepMode::formula:
            row.entries.push_back(sigma);
            break;
          case SweepMode::schur_oracle:
            row.entries.push_back(sigma_schur_direct(p.rate));
            break;
          case SweepMode::observed_1d: {
            const double rate = observed_1d_at(p);
            row.entries.push_back(rate);
            row.entries.push_back(sigma < 1.0 && rate < 1.0 ? 1.0 : 0.0);
            break;
          }
          case SweepMode::observed_2d: {
            const double rate = observed_2d_at(p, spec.ny);
            row.entries.push_back(rate);
            row.entries.push_back(sigma < 1.0 && rate < 1.0 ? 1.0 : 0.0);
            break;
          }
          case SweepMode::beta:
            row.entries.push_back(semidiscrete_beta(p.rate.dt, m1, m2));
            break;
          case SweepMode::delta_r:
            row.entries.push_back(spatial_limit(p.rate.r(), m1.lambda, m2.lambda));
            break;
        }
      }
    } catch (const std::exception&) {
      row.error = true;
      row.entries.assign(res.header.size() - 1,
                         std::numeric_limits<double>::quiet_NaN());
      res.any_error = true;
    }
    res.rows.push_back(std::move(row));
  }
  return res;
}

void write_csv(const SweepResult& result, std::ostream& out,
               const std::vector<std::string>& provenance_lines) {
  for (const auto& line : provenance_lines) out << "# " << line << "\n";
  for (std::size_t i = 0; i < result.header.size(); ++i)
    out << (i ? "," : "") << result.header[i];
  out << "\n";
  for (const auto& row : result.rows) {
    out << format_double(row.value);
    for (double v : row.entries) out << "," << format_double(v);
    out << "\n";
  }
}

SweepResult asymptotics_table(const std::vector<std::pair<std::string, std::string>>& pairs,
                              const MaterialTable& table) {
  SweepResult res;
  res.header = {"pair_index", "temporal_limit", "spatial_coefficient"};
  int idx = 0;
  for (const auto& [a, b] : pairs) {
    const Material m1 = table.get(a);
    const Material m2 = table.get(b);
    SweepRow row;
    row.value = idx++;
    row.entries = {temporal_limit(), spatial_limit(1.0, m1.lambda, m2.lambda)};
    res.rows.push_back(std::move(row));
  }
  return res;
}

FsiCase fsi_case_from_string(const std::string& s) {
  if (s == "flat_plate") return FsiCase::flat_plate;
  if (s == "flanged_shaft") return FsiCase::flanged_shaft;
  throw std::invalid_argument("unknown FSI case: " + s);
}

FsiParameters fsi_parameters(FsiCase c) {
  FsiParameters p;
  p.mat1 = preset("air");
  if (c == FsiCase::flat_plate) {
    p.name = "flat_plate";
    // steel at 900K, coefficients as quoted with the application
    p.mat2 = material_from(39.82, 7836.0, 1.3684e3);
    p.dx1 = 9.3736e-5;
    p.dx2 = 1.6667;
    p.note =
        "mesh aspect ratio quoted elsewhere as 1.7780e5; the value reported "
        "here derives from the quoted cell widths";
  } else {
    p.name = "flanged_shaft";
    // steel at 1145K
    p.mat2 = material_from(39.8, 7836.0, 572.75);
    p.dx1 = 1.6538e-4;
    p.dx2 = 1.1364;
    p.note = "dx bounds from the unstructured grid; r is an upper bound";
  }
  p.r = p.dx2 / p.dx1;
  p.n1 = std::max(2, static_cast<int>(std::lround(1.0 / p.dx1)) - 1);
  p.n2 = std::max(0, static_cast<int>(std::lround(1.0 / p.dx2)) - 1);
  return p;
}

SweepResult fsi_estimate(FsiCase c, const std::vector<double>& dts) {
  const FsiParameters p = fsi_parameters(c);
  SweepResult res;
  res.header = {"dt", "formula", "beta", "delta_r", "r"};
  for (double dt : dts) {
    RateInputs in;
    in.dt = dt;
    in.n1 = p.n1;
    in.dx1 = p.dx1;
    in.n2 = p.n2;
    in.dx2 = p.dx2;
    in.mat1 = p.mat1;
    in.mat2 = p.mat2;
    SweepRow row;
    row.value = dt;
    row.entries = {sigma_exact(in), semidiscrete_beta(dt, p.mat1, p.mat2),
                   spatial_limit(p.r, p.mat1.lambda, p.mat2.lambda), p.r};
    res.rows.push_back(std::move(row));
  }
  return res;
}

void emit_plots(std::istream& csv, const std::string& csv_path, std::ostream& script) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream hs(line);
    std::string col;
    while (std::getline(hs, col, ',')) header.push_back(col);
    break;
  }
  if (header.size() < 2)
    throw std::runtime_error("emit_plots: CSV header with at least two columns required");
  int data_rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#') continue;
    // every payload cell must parse as a number (the format never quotes)
    std::istringstream ls(line);
    std::string cell;
    std::size_t cells = 0;
    while (std::getline(ls, cell, ',')) {
      ++cells;
      try {
        std::size_t pos = 0;
        (void)std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("emit_plots: non-numeric cell `" + cell + "`");
      }
    }
    if (cells != header.size())
      throw std::runtime_error("emit_plots: row width does not match header");
    ++data_rows;
  }

  script << "# gnuplot script generated from " << csv_path << "\n";
  script << "set datafile separator ','\n";
  script << "set logscale xy\n";
  script << "set xlabel '" << header[0] << "'\n";
  script << "set ylabel 'convergence rate'\n";
  script << "set key outside\n";
  if (data_rows == 0) {
    script << "# warning: no data rows in " << csv_path << "\n";
    script << "plot [][0:1] 1/0 notitle\n";
    return;
  }
  script << "plot ";
  bool first = true;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i].ends_with("_converged")) continue;
    if (!first) script << ", \\\n     ";
    script << "'" << csv_path << "' using 1:" << (i + 1) << " with linespoints title '"
           << header[i] << "'";
    first = false;
  }
  script << "\n";
}

std::map<std::string, std::string> parse_spec_file(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("spec file line " + std::to_string(lineno) +
                               ": expected `key = value`");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("spec file line " + std::to_string(lineno) +
                               ": empty key or value");
    kv[key] = value;
  }
  return kv;
}

}  // namespace heatdn
