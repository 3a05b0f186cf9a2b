#include "heatdn/dn1d.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatdn {

namespace {

constexpr double kDivergenceGuard = 1e120;

std::vector<double> dirichlet_solve(const SubdomainBlocks& b1, double dt,
                                    const StateVector& prev, double u_gamma_k) {
  // (M1 + dt A1) u1^{k+1} = -(M_IG + dt A_IG) u_G^k + M1 u1^n + M_IG u_G^n
  std::vector<double> rhs = b1.m_ii.multiply(prev.u1);
  b1.m_igamma.add_scaled_to(rhs, prev.u_gamma);
  b1.system_a_igamma().add_scaled_to(rhs, -dt * u_gamma_k);
  b1.m_igamma.add_scaled_to(rhs, -u_gamma_k);
  return solve_tridiagonal(b1.step_matrix(dt), rhs);
}

struct NeumannSystem {
  TridiagonalMatrix matrix;  // ordering: [interface | interior Omega2]
  int n2;
};

NeumannSystem neumann_matrix(const SubdomainBlocks& b2, double dt) {
  const int n2 = b2.n();
  if (b2.a_igamma.count != 1 || b2.a_igamma.index[0] != 0)
    throw std::invalid_argument("dn_time_step: FEM coupling must attach to node 1");
  NeumannSystem sys;
  sys.n2 = n2;
  TridiagonalMatrix interior = b2.step_matrix(dt);
  TridiagonalMatrix& m = sys.matrix;
  m.diag.assign(n2 + 1, 0.0);
  m.sub.assign(n2, 0.0);
  m.super.assign(n2, 0.0);
  m.diag[0] = b2.m_gammagamma + dt * b2.system_a_gammagamma();
  m.super[0] = b2.m_gammai.value[0] + dt * b2.system_a_gammai().value[0];
  m.sub[0] = b2.m_igamma.value[0] + dt * b2.system_a_igamma().value[0];
  for (int i = 0; i < n2; ++i) {
    m.diag[i + 1] = interior.diag[i];
    if (i + 1 < n2) {
      m.sub[i + 1] = interior.sub[i];
      m.super[i + 1] = interior.super[i];
    }
  }
  return sys;
}

}  // namespace

StateVector rate_probe_state(int n1, int n2) {
  StateVector s;
  s.u1.resize(n1);
  s.u2.resize(n2);
  for (int i = 0; i < n1; ++i) s.u1[i] = static_cast<double>(i + 1) / (n1 + 1);
  for (int j = 0; j < n2; ++j) s.u2[j] = 1.0 - static_cast<double>(j + 1) / (n2 + 1);
  s.u_gamma = 1.0;
  return s;
}

std::pair<StateVector, IterationTrace> dn_time_step(const SubdomainBlocks& blocks1,
                                                    const SubdomainBlocks& blocks2,
                                                    const DNConfig& cfg,
                                                    const StateVector& state_prev) {
  if (!(cfg.tol >= 0.0)) throw std::invalid_argument("dn_time_step: tol must be >= 0");
  if (cfg.max_iters < 1) throw std::invalid_argument("dn_time_step: max_iters must be >= 1");
  if (static_cast<int>(state_prev.u1.size()) != blocks1.n() ||
      static_cast<int>(state_prev.u2.size()) != blocks2.n())
    throw std::invalid_argument("dn_time_step: state size mismatch");

  const double dt = cfg.dt;
  const NeumannSystem neumann = neumann_matrix(blocks2, dt);
  const InterfaceCoupling fvm_gammai = blocks1.system_a_gammai();
  const double fvm_gammagamma = blocks1.system_a_gammagamma();

  // Fixed right-hand-side parts (M^ u^n in the Neumann system).
  std::vector<double> rhs_interior = blocks2.m_ii.multiply(state_prev.u2);
  blocks2.m_igamma.add_scaled_to(rhs_interior, state_prev.u_gamma);
  const double rhs_gamma_fixed =
      blocks2.m_gammai.dot(state_prev.u2) +
      (blocks1.m_gammagamma + blocks2.m_gammagamma) * state_prev.u_gamma +
      blocks1.m_gammai.dot(state_prev.u1);

  double u_gamma = cfg.initial_interface.value_or(state_prev.u_gamma);
  IterationTrace trace;
  trace.interface_values.push_back(u_gamma);

  StateVector state = state_prev;
  std::vector<double> rhs_hat(neumann.n2 + 1);
  for (int k = 0; k < cfg.max_iters; ++k) {
    state.u1 = dirichlet_solve(blocks1, dt, state_prev, u_gamma);

    const double b_gamma =
        dt * (fvm_gammai.dot(state.u1) + fvm_gammagamma * u_gamma);
    rhs_hat[0] = rhs_gamma_fixed - b_gamma;
    for (int i = 0; i < neumann.n2; ++i) rhs_hat[i + 1] = rhs_interior[i];

    const std::vector<double> hat = solve_tridiagonal(neumann.matrix, rhs_hat);
    const double u_gamma_next = hat[0];
    state.u2.assign(hat.begin() + 1, hat.end());

    const double update = std::abs(u_gamma_next - u_gamma);
    trace.update_norms.push_back(update);
    trace.interface_values.push_back(u_gamma_next);
    trace.iters = k + 1;
    u_gamma = u_gamma_next;
    if (!std::isfinite(update) || update > kDivergenceGuard) break;
    if (update <= cfg.tol) {
      trace.converged = true;
      break;
    }
  }
  state.u_gamma = u_gamma;
  return {state, trace};
}

StateVector monolithic_step(const CoupledSystem& system, const StateVector& state_prev) {
  const int dim = system.dim();
  if (static_cast<int>(state_prev.u1.size()) != system.n1 ||
      static_cast<int>(state_prev.u2.size()) != system.n2)
    throw std::invalid_argument("monolithic_step: state size mismatch");

  Eigen::VectorXd u(dim);
  for (int i = 0; i < system.n1; ++i) u(i) = state_prev.u1[i];
  for (int j = 0; j < system.n2; ++j) u(system.n1 + j) = state_prev.u2[j];
  u(dim - 1) = state_prev.u_gamma;

  const Eigen::VectorXd rhs = system.m_tilde * u;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.a_step);
  const Eigen::VectorXd x = lu.solve(rhs);

  const double scale = rhs.lpNorm<Eigen::Infinity>() +
                       system.a_step.lpNorm<Eigen::Infinity>() * x.lpNorm<Eigen::Infinity>();
  const double resid = (system.a_step * x - rhs).lpNorm<Eigen::Infinity>();
  if (!x.allFinite() || resid > 1e-8 * (1.0 + scale))
    throw std::runtime_error("monolithic_step: singular or ill-conditioned step matrix");

  StateVector out;
  out.u1.assign(x.data(), x.data() + system.n1);
  out.u2.assign(x.data() + system.n1, x.data() + system.n1 + system.n2);
  out.u_gamma = x(dim - 1);
  return out;
}

namespace {

double trailing_geometric_mean(const std::vector<double>& norms, double floor_rel) {
  if (norms.size() < 3)
    throw std::runtime_error("observed_rate: need at least 3 iterations");
  const double floor =
      std::max(100.0 * std::numeric_limits<double>::epsilon(), floor_rel) * norms.front();
  std::vector<double> valid;
  for (std::size_t k = 0; k + 1 < norms.size(); ++k)
    if (norms[k] >= floor && norms[k + 1] >= floor)
      valid.push_back(norms[k + 1] / norms[k]);
  if (valid.empty())
    throw std::runtime_error("observed_rate: all ratios below the measurement floor");
  const std::size_t window = std::min<std::size_t>(valid.size(), 5);
  double log_sum = 0.0;
  for (std::size_t k = valid.size() - window; k < valid.size(); ++k)
    log_sum += std::log(valid[k]);
  return std::exp(log_sum / static_cast<double>(window));
}

}  // namespace

double observed_rate(const IterationTrace& trace, double floor_rel) {
  return trailing_geometric_mean(trace.update_norms, floor_rel);
}

double observed_rate_vs_reference(const IterationTrace& trace, double u_gamma_ref,
                                  double floor_rel) {
  std::vector<double> errs;
  errs.reserve(trace.interface_values.size());
  for (double v : trace.interface_values) errs.push_back(std::abs(v - u_gamma_ref));
  return trailing_geometric_mean(errs, floor_rel);
}

double measure_rate(const SubdomainBlocks& blocks1, const SubdomainBlocks& blocks2,
                    double dt, int iters) {
  const StateVector prev = rate_probe_state(blocks1.n(), blocks2.n());
  DNConfig cfg;
  cfg.dt = dt;
  cfg.tol = 0.0;
  cfg.max_iters = iters;
  cfg.initial_interface = prev.u_gamma + 1.0;
  auto [state, trace] = dn_time_step(blocks1, blocks2, cfg, prev);
  return observed_rate(trace);
}

}  // namespace heatdn
