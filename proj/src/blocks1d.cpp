#include "heatdn/blocks1d.hpp"

#include <cmath>
#include <stdexcept>

namespace heatdn {

GridSpec1D GridSpec1D::from_counts(int n1, int n2) {
  if (n1 < 2) throw std::invalid_argument("GridSpec1D: n1 must be >= 2");
  if (n2 < 1) throw std::invalid_argument("GridSpec1D: n2 must be >= 1");
  GridSpec1D g;
  g.n1 = n1;
  g.n2 = n2;
  g.dx1 = 1.0 / (n1 + 1);
  g.dx2 = 1.0 / (n2 + 1);
  g.r = g.dx2 / g.dx1;
  return g;
}

GridSpec1D GridSpec1D::from_dx1_aspect(double dx1, double r) {
  if (!(dx1 > 0.0) || !(r > 0.0))
    throw std::invalid_argument("GridSpec1D: dx1 and r must be positive");
  const int n1 = std::max(2, static_cast<int>(std::lround(1.0 / dx1)) - 1);
  const int n2 = std::max(1, static_cast<int>(std::lround(1.0 / (r * dx1))) - 1);
  return from_counts(n1, n2);
}

TridiagonalMatrix SubdomainBlocks::system_a_ii() const {
  TridiagonalMatrix a = a_ii;
  if (stiffness_sign() < 0) {
    for (auto& v : a.diag) v = -v;
    for (auto& v : a.sub) v = -v;
    for (auto& v : a.super) v = -v;
  }
  return a;
}

TridiagonalMatrix SubdomainBlocks::step_matrix(double dt) const {
  TridiagonalMatrix s = m_ii;
  s.add_scaled(system_a_ii(), dt);
  return s;
}

SubdomainBlocks build_fvm_blocks(const GridSpec1D& grid, const Material& mat1) {
  if (grid.n1 < 2) throw std::invalid_argument("build_fvm_blocks: n1 must be >= 2");
  const int n = grid.n1;
  const double dx = grid.dx1;
  const double l = mat1.lambda;
  const double c = l / (dx * dx);

  SubdomainBlocks b;
  b.kind = SubdomainKind::fvm;
  b.dx = dx;
  // Printed convention: A1 = (lambda1/dx1^2) tridiag(1,-2,1).
  b.a_ii = TridiagonalMatrix::toeplitz(n, c, -2.0 * c, c);
  b.m_ii = TridiagonalMatrix::toeplitz(n, 0.0, mat1.alpha, 0.0);
  b.a_igamma = InterfaceCoupling::single(n - 1, c);
  b.a_gammai = InterfaceCoupling::pair(n - 1, 2.0 * c, n - 2, -0.5 * c);
  b.a_gammagamma = 1.5 * c;
  b.m_igamma = InterfaceCoupling::zero();
  b.m_gammai = InterfaceCoupling::zero();
  b.m_gammagamma = 0.0;
  return b;
}

SubdomainBlocks build_fem_blocks(const GridSpec1D& grid, const Material& mat2) {
  if (grid.n2 < 1) throw std::invalid_argument("build_fem_blocks: n2 must be >= 1");
  const int n = grid.n2;
  const double dx = grid.dx2;
  const double c = mat2.lambda / (dx * dx);
  const double a6 = mat2.alpha / 6.0;

  SubdomainBlocks b;
  b.kind = SubdomainKind::fem;
  b.dx = dx;
  b.a_ii = TridiagonalMatrix::toeplitz(n, -c, 2.0 * c, -c);
  b.m_ii = TridiagonalMatrix::toeplitz(n, a6, 4.0 * a6, a6);
  b.a_igamma = InterfaceCoupling::single(0, -c);
  b.a_gammai = InterfaceCoupling::single(0, -c);
  b.m_igamma = InterfaceCoupling::single(0, a6);
  b.m_gammai = InterfaceCoupling::single(0, a6);
  b.a_gammagamma = c;
  b.m_gammagamma = 2.0 * a6;
  return b;
}

double fvm_interface_flux(const SubdomainBlocks& fvm, std::span<const double> u_interior,
                          double u_gamma) {
  if (fvm.kind != SubdomainKind::fvm)
    throw std::invalid_argument("fvm_interface_flux: FVM blocks expected");
  // dx*(a_gammai . u - a_gammagamma u_G) = (l/(2dx))(4 u_N - u_{N-1} - 3 u_G)
  return fvm.dx * (fvm.a_gammai.dot(u_interior) - fvm.a_gammagamma * u_gamma);
}

CoupledSystem assemble(const SubdomainBlocks& blocks1, const SubdomainBlocks& blocks2,
                       double dt) {
  if (blocks1.kind != SubdomainKind::fvm || blocks2.kind != SubdomainKind::fem)
    throw std::invalid_argument("assemble: expected (FVM, FEM) block pair");
  if (!(dt >= 0.0)) throw std::invalid_argument("assemble: dt must be >= 0");
  const int n1 = blocks1.n();
  const int n2 = blocks2.n();
  for (const auto* c : {&blocks1.a_igamma, &blocks1.a_gammai})
    for (int k = 0; k < c->count; ++k)
      if (c->index[k] < 0 || c->index[k] >= n1)
        throw std::invalid_argument("assemble: coupling index out of range");
  for (const auto* c : {&blocks2.a_igamma, &blocks2.m_igamma})
    for (int k = 0; k < c->count; ++k)
      if (c->index[k] < 0 || c->index[k] >= n2)
        throw std::invalid_argument("assemble: coupling index out of range");

  const int dim = n1 + n2 + 1;
  const int g = dim - 1;
  CoupledSystem sys;
  sys.n1 = n1;
  sys.n2 = n2;
  sys.m_tilde = Eigen::MatrixXd::Zero(dim, dim);
  sys.a_step = Eigen::MatrixXd::Zero(dim, dim);

  auto& M = sys.m_tilde;
  auto& A = sys.a_step;  // filled with M~ + dt*A~ below

  auto scatter_tridiag = [](Eigen::MatrixXd& target, const TridiagonalMatrix& t, int off,
                            double scale) {
    const int n = t.dim();
    for (int i = 0; i < n; ++i) {
      target(off + i, off + i) += scale * t.diag[i];
      if (i + 1 < n) {
        target(off + i + 1, off + i) += scale * t.sub[i];
        target(off + i, off + i + 1) += scale * t.super[i];
      }
    }
  };
  auto scatter_col = [g](Eigen::MatrixXd& target, const InterfaceCoupling& c, int off,
                         double scale) {
    for (int k = 0; k < c.count; ++k) target(off + c.index[k], g) += scale * c.value[k];
  };
  auto scatter_row = [g](Eigen::MatrixXd& target, const InterfaceCoupling& c, int off,
                         double scale) {
    for (int k = 0; k < c.count; ++k) target(g, off + c.index[k]) += scale * c.value[k];
  };

  // M~
  scatter_tridiag(M, blocks1.m_ii, 0, 1.0);
  scatter_tridiag(M, blocks2.m_ii, n1, 1.0);
  scatter_col(M, blocks1.m_igamma, 0, 1.0);
  scatter_col(M, blocks2.m_igamma, n1, 1.0);
  scatter_row(M, blocks1.m_gammai, 0, 1.0);
  scatter_row(M, blocks2.m_gammai, n1, 1.0);
  M(g, g) = blocks1.m_gammagamma + blocks2.m_gammagamma;

  // A = M~ + dt*A~ with the system-convention stiffness blocks.
  A = M;
  scatter_tridiag(A, blocks1.system_a_ii(), 0, dt);
  scatter_tridiag(A, blocks2.system_a_ii(), n1, dt);
  scatter_col(A, blocks1.system_a_igamma(), 0, dt);
  scatter_col(A, blocks2.system_a_igamma(), n1, dt);
  scatter_row(A, blocks1.system_a_gammai(), 0, dt);
  scatter_row(A, blocks2.system_a_gammai(), n1, dt);
  A(g, g) += dt * (blocks1.system_a_gammagamma() + blocks2.system_a_gammagamma());

  return sys;
}

}  // namespace heatdn
