#pragma once

#include <Eigen/Dense>
#include <span>

#include "heatdn/grid.hpp"
#include "heatdn/material.hpp"
#include "heatdn/tridiagonal.hpp"

namespace heatdn {

/// Interface coupling row/column with at most two nonzero entries.
struct InterfaceCoupling {
  int index[2] = {0, 0};
  double value[2] = {0.0, 0.0};
  int count = 0;

  static InterfaceCoupling zero() { return {}; }
  static InterfaceCoupling single(int i, double v) { return {{i, 0}, {v, 0.0}, 1}; }
  static InterfaceCoupling pair(int i0, double v0, int i1, double v1) {
    return {{i0, i1}, {v0, v1}, 2};
  }

  double dot(std::span<const double> u) const {
    double s = 0.0;
    for (int k = 0; k < count; ++k) s += value[k] * u[index[k]];
    return s;
  }
  void add_scaled_to(std::span<double> v, double s) const {
    for (int k = 0; k < count; ++k) v[index[k]] += s * value[k];
  }
  InterfaceCoupling scaled(double s) const {
    InterfaceCoupling c = *this;
    for (int k = 0; k < count; ++k) c.value[k] *= s;
    return c;
  }
};

enum class SubdomainKind { fvm, fem };

/// Block matrices of one subdomain's discretization, stored exactly as
/// printed: the FVM stiffness blocks keep their printed signs (A1 is
/// negative definite on the page). The system_* accessors return the blocks
/// in the M u' + A u = 0 convention used by assembly and the solvers; the
/// sign handling lives there and nowhere else.
struct SubdomainBlocks {
  SubdomainKind kind;
  double dx;

  TridiagonalMatrix m_ii;
  TridiagonalMatrix a_ii;
  InterfaceCoupling a_igamma, m_igamma;  // interior-to-interface columns
  InterfaceCoupling a_gammai, m_gammai;  // interface-to-interior rows
  double a_gammagamma = 0.0;
  double m_gammagamma = 0.0;

  int n() const { return a_ii.dim(); }

  // System convention: interior stiffness, coupling column and coupling row
  // flip sign on the FVM side; a_gammagamma keeps its printed sign on both.
  double stiffness_sign() const { return kind == SubdomainKind::fvm ? -1.0 : 1.0; }
  TridiagonalMatrix system_a_ii() const;
  InterfaceCoupling system_a_igamma() const { return a_igamma.scaled(stiffness_sign()); }
  InterfaceCoupling system_a_gammai() const { return a_gammai.scaled(stiffness_sign()); }
  double system_a_gammagamma() const { return a_gammagamma; }

  /// M + dt * A(system) for the interior block.
  TridiagonalMatrix step_matrix(double dt) const;
};

/// FVM blocks on Omega_1 = [-1,0]. Throws std::invalid_argument for n1 < 2.
SubdomainBlocks build_fvm_blocks(const GridSpec1D& grid, const Material& mat1);

/// Linear FEM blocks on Omega_2 = [0,1]. Throws for n2 < 1.
SubdomainBlocks build_fem_blocks(const GridSpec1D& grid, const Material& mat2);

/// Discrete interface heat flux -lambda1 du/dn of the FVM side: the
/// second-order one-sided difference (lambda1/(2 dx1))(4 u_N - u_{N-1} - 3 u_G).
double fvm_interface_flux(const SubdomainBlocks& fvm, std::span<const double> u_interior,
                          double u_gamma);

/// Monolithic matrices of one implicit-Euler step, layout
/// [interior Omega1 | interior Omega2 | interface].
struct CoupledSystem {
  Eigen::MatrixXd a_step;   // M~ + dt A~
  Eigen::MatrixXd m_tilde;  // M~
  int n1 = 0, n2 = 0;

  int dim() const { return n1 + n2 + 1; }
};

/// Assembles the coupled step matrices. dt >= 0; dt == 0 yields
/// a_step == m_tilde. Throws std::invalid_argument on mismatched blocks.
CoupledSystem assemble(const SubdomainBlocks& blocks1, const SubdomainBlocks& blocks2,
                       double dt);

}  // namespace heatdn
