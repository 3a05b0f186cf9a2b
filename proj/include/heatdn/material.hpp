#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heatdn {

/// Thermal coefficients of one subdomain's material.
/// alpha = rho*cp (volumetric heat capacity), d = lambda/alpha (diffusivity).
struct Material {
  double lambda;  // thermal conductivity, W/(m K)
  double rho;     // density, kg/m^3
  double cp;      // specific heat capacity, J/(kg K)
  double alpha;   // rho * cp, J/(K m^3)
  double d;       // lambda / alpha, m^2/s
};

/// Builds a Material from (lambda, rho, cp); throws std::invalid_argument on
/// non-positive input.
Material material_from(double lambda, double rho, double cp);

/// Construct from conductivity and diffusivity directly (rho set to 1).
Material material_from_diffusivity(double lambda, double d);

/// Presets: "air", "water", "steel". Throws std::out_of_range on unknown name.
Material preset(std::string_view name);

const std::vector<std::string>& preset_names();

/// Plain-text material table: one `name lambda rho cp` per line, '#' starts
/// a comment. Throws std::runtime_error with the line number on bad input.
std::vector<std::pair<std::string, Material>> parse_material_file(std::istream& in);
std::vector<std::pair<std::string, Material>> load_material_file(const std::string& path);

// Empirical coefficient functions for the steel 51CrV4. The two branch
// functions are exposed so either temperature convention can be inspected.
double steel_lambda(double theta);
double steel_cp(double theta);
double steel_cp1(double theta);
double steel_cp2(double theta);

/// -10*ln((e^{-a/10} + e^{-b/10})/2), evaluated with the smaller exponent
/// factored out so large arguments cannot underflow to -inf.
double softmin10(double a, double b);

}  // namespace heatdn
