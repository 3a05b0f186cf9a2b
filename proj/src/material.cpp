#include "heatdn/material.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heatdn {

Material material_from(double lambda, double rho, double cp) {
  if (!(lambda > 0.0) || !(rho > 0.0) || !(cp > 0.0))
    throw std::invalid_argument("material_from: lambda, rho, cp must be positive");
  Material m;
  m.lambda = lambda;
  m.rho = rho;
  m.cp = cp;
  m.alpha = rho * cp;
  m.d = lambda / m.alpha;
  return m;
}

Material material_from_diffusivity(double lambda, double d) {
  if (!(lambda > 0.0) || !(d > 0.0))
    throw std::invalid_argument("material_from_diffusivity: inputs must be positive");
  return material_from(lambda, 1.0, lambda / d);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"air", "water", "steel"};
  return names;
}

Material preset(std::string_view name) {
  if (name == "air") return material_from(0.0243, 1.293, 1005.0);
  if (name == "water") return material_from(0.58, 999.7, 4192.1);
  if (name == "steel") return material_from(48.9, 7836.0, 443.0);
  throw std::out_of_range("unknown material preset: " + std::string(name));
}

std::vector<std::pair<std::string, Material>> parse_material_file(std::istream& in) {
  std::vector<std::pair<std::string, Material>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;  // blank or comment-only
    double lambda, rho, cp;
    if (!(ls >> lambda >> rho >> cp))
      throw std::runtime_error("material file line " + std::to_string(lineno) +
                               ": expected `name lambda rho cp`");
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error("material file line " + std::to_string(lineno) +
                               ": trailing token `" + extra + "`");
    try {
      out.emplace_back(name, material_from(lambda, rho, cp));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("material file line " + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
  return out;
}

std::vector<std::pair<std::string, Material>> load_material_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open material file: " + path);
  return parse_material_file(in);
}

double steel_lambda(double theta) {
  return 40.1 + 0.05 * theta - 0.0001 * theta * theta + 4.9e-8 * theta * theta * theta;
}

double steel_cp1(double theta) { return 34.2 * std::exp(0.0026 * theta) + 421.15; }

double steel_cp2(double theta) {
  return 956.5 * std::exp(-0.012 * (theta - 900.0)) + 0.45 * theta;
}

double softmin10(double a, double b) {
  // -10 ln((e^{-a/10} + e^{-b/10})/2); e^{-c/10} underflows for c beyond
  // ~7000, so pull out the smaller branch first.
  const double m = std::min(a, b);
  const double gap = std::abs(a - b);
  return m - 10.0 * std::log1p(std::exp(-gap / 10.0)) + 10.0 * std::log(2.0);
}

double steel_cp(double theta) { return softmin10(steel_cp1(theta), steel_cp2(theta)); }

}  // namespace heatdn
