#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "heatdn/blocks1d.hpp"

namespace heatdn {

struct DNConfig {
  double tol = 1e-10;
  int max_iters = 100;
  double dt = 1.0;
  /// Interface initialization; defaults to the previous-step value u_G^n.
  std::optional<double> initial_interface;
};

struct StateVector {
  std::vector<double> u1;
  std::vector<double> u2;
  double u_gamma = 0.0;
};

struct IterationTrace {
  std::vector<double> interface_values;  // u_G^0, u_G^1, ...
  std::vector<double> update_norms;      // |u_G^{k+1} - u_G^k|
  bool converged = false;
  int iters = 0;
};

/// One implicit-Euler step solved by the Dirichlet-Neumann iteration:
/// alternating Omega_1 Dirichlet solves and Omega_2 Neumann solves until
/// |u_G^{k+1} - u_G^k| <= tol or max_iters. Non-convergence is reported in
/// the trace, not thrown.
std::pair<StateVector, IterationTrace> dn_time_step(const SubdomainBlocks& blocks1,
                                                    const SubdomainBlocks& blocks2,
                                                    const DNConfig& cfg,
                                                    const StateVector& state_prev);

/// Direct solve of A u^{n+1} = M~ u^n; the oracle fixed point for the DN
/// iteration. Throws std::runtime_error on a singular matrix.
StateVector monolithic_step(const CoupledSystem& system, const StateVector& state_prev);

/// Default measurement floor for observed_rate, relative to the first update
/// norm. Ratios whose numerator or denominator sits below the floor are
/// roundoff-contaminated: with double precision, a norm at 1e-9 of the
/// initial one still carries ~2e-7 relative noise, which is what the rate
/// accuracy budget allows.
inline constexpr double kRateFloorRel = 1e-9;

/// Geometric mean of the trailing update-norm ratios, excluding ratios whose
/// endpoints fall below max(100*eps, floor_rel) times the first update norm.
/// Requires at least 3 recorded updates; throws std::runtime_error otherwise.
double observed_rate(const IterationTrace& trace, double floor_rel = kRateFloorRel);

/// Rate estimate against a known fixed point (reference estimator of the
/// interface error e_k = |u_G^k - u_G^ref|). Same filtering rules.
double observed_rate_vs_reference(const IterationTrace& trace, double u_gamma_ref,
                                  double floor_rel = kRateFloorRel);

/// Runs a rate-measurement step: smooth nonzero previous state (linear in x,
/// 1 at the interface), interface initialized off the previous value so the
/// first update is O(1), tight tolerance, fixed iteration budget.
double measure_rate(const SubdomainBlocks& blocks1, const SubdomainBlocks& blocks2,
                    double dt, int iters = 14);

/// Previous-step state used by rate measurements and sweeps.
StateVector rate_probe_state(int n1, int n2);

}  // namespace heatdn
