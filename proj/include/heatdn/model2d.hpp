#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <utility>

#include "heatdn/dn1d.hpp"
#include "heatdn/material.hpp"

namespace heatdn {

/// Tangential boundary treatment at y = 0 and y = L_y. The model problem
/// uses homogeneous Dirichlet everywhere; the insulated variant exists
/// because constant-in-y data then reduces the 2D iteration exactly to 1D,
/// which is the dimensional-reduction oracle used in tests.
enum class TangentialBC { dirichlet, neumann };

/// Omega_1 = [-1,0] x [0,Ly] with dx1 x dx2 FVM cells, Omega_2 = [0,1] x [0,Ly]
/// with dx2 x dx2 bilinear elements; interface nodes shared at x = 0,
/// y = j*dx2. Ly = (ny+1)*dx2 (the unit square when ny = 1/dx2 - 1).
struct GridSpec2D {
  int nx1;  // Omega_1 cells normal to the interface, >= 2
  int n2x;  // Omega_2 interior node columns, >= 1
  int ny;   // tangential interior node count, >= 1
  double dx1;
  double dx2;
  double r;
  TangentialBC tbc = TangentialBC::dirichlet;

  static GridSpec2D make(int nx1, int n2x, int ny, TangentialBC tbc = TangentialBC::dirichlet);
  /// Unit square pair: dx1 = 1/(nx1+1), dx2 = r*dx1 snapped, ny = 1/dx2 - 1.
  static GridSpec2D unit_square(double dx1, double r, TangentialBC tbc = TangentialBC::dirichlet);

  /// Interface unknown count: ny (Dirichlet) or ny + 2 (insulated ends).
  int nt() const { return tbc == TangentialBC::dirichlet ? ny : ny + 2; }
  int n1_unknowns() const { return nx1 * nt(); }
  int n2_unknowns() const { return n2x * nt(); }
};

/// 2D subdomain blocks, already in the system convention M u' + A u = 0.
struct Blocks2D {
  SubdomainKind kind;
  GridSpec2D grid;
  Eigen::SparseMatrix<double> m_ii, a_ii;          // interior x interior
  Eigen::SparseMatrix<double> m_igamma, a_igamma;  // interior x nt
  Eigen::SparseMatrix<double> m_gammai, a_gammai;  // nt x interior
  Eigen::SparseMatrix<double> m_gammagamma, a_gammagamma;  // nt x nt

  int n() const { return static_cast<int>(a_ii.rows()); }
  int nt() const { return grid.nt(); }
};

Blocks2D build_fvm_2d(const GridSpec2D& grid, const Material& mat1);
Blocks2D build_fem_2d(const GridSpec2D& grid, const Material& mat2);

struct State2D {
  Eigen::VectorXd u1;
  Eigen::VectorXd u2;
  Eigen::VectorXd u_gamma;
};

struct DNConfig2D {
  double tol = 1e-10;
  int max_iters = 100;
  double dt = 1.0;
  std::optional<Eigen::VectorXd> initial_interface;
};

/// 2D Dirichlet-Neumann step; identical contract to the 1D dn_time_step with
/// vector interface unknowns (Euclidean norm in the termination test).
std::pair<State2D, IterationTrace> dn_time_step_2d(const Blocks2D& blocks1,
                                                   const Blocks2D& blocks2,
                                                   const DNConfig2D& cfg,
                                                   const State2D& state_prev);

/// Monolithic implicit-Euler step of the coupled 2D system (sparse LU).
State2D monolithic_step_2d(const Blocks2D& blocks1, const Blocks2D& blocks2, double dt,
                           const State2D& state_prev);

/// M~-weighted norm of a full state, for the energy-decay checks.
double mass_norm_2d(const Blocks2D& blocks1, const Blocks2D& blocks2, const State2D& s);

/// Observed DN rate at measurement settings (offset interface start, tight
/// tolerance). Tangentially constant previous state.
double measure_rate_2d(const Blocks2D& blocks1, const Blocks2D& blocks2, double dt,
                       int iters = 40);

State2D rate_probe_state_2d(const GridSpec2D& grid);

}  // namespace heatdn
