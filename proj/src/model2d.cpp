#include "heatdn/model2d.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace heatdn {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Eigen::SparseMatrix<double> from_triplets(int rows, int cols, const Triplets& t) {
  Eigen::SparseMatrix<double> m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Tangential 1D linear-FEM mass matrix over the free tangential nodes.
Eigen::MatrixXd tangential_mass(const GridSpec2D& g) {
  const int nt = g.nt();
  Eigen::MatrixXd my = Eigen::MatrixXd::Zero(nt, nt);
  const double h = g.dx2;
  auto dof = [&](int q_node) -> int {
    if (g.tbc == TangentialBC::dirichlet) {
      if (q_node < 1 || q_node > g.ny) return -1;
      return q_node - 1;
    }
    return q_node;  // all ny+2 nodes free
  };
  for (int e = 0; e <= g.ny; ++e) {
    const int nodes[2] = {e, e + 1};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int qa = dof(nodes[a]), qb = dof(nodes[b]);
        if (qa >= 0 && qb >= 0) my(qa, qb) += h / 6.0 * (a == b ? 2.0 : 1.0);
      }
  }
  return my;
}

}  // namespace

GridSpec2D GridSpec2D::make(int nx1, int n2x, int ny, TangentialBC tbc) {
  if (nx1 < 2) throw std::invalid_argument("GridSpec2D: nx1 must be >= 2");
  if (n2x < 1) throw std::invalid_argument("GridSpec2D: n2x must be >= 1");
  if (ny < 1) throw std::invalid_argument("GridSpec2D: ny must be >= 1");
  GridSpec2D g;
  g.nx1 = nx1;
  g.n2x = n2x;
  g.ny = ny;
  g.dx1 = 1.0 / (nx1 + 1);
  g.dx2 = 1.0 / (n2x + 1);
  g.r = g.dx2 / g.dx1;
  g.tbc = tbc;
  return g;
}

GridSpec2D GridSpec2D::unit_square(double dx1, double r, TangentialBC tbc) {
  if (!(dx1 > 0.0) || !(r > 0.0))
    throw std::invalid_argument("GridSpec2D: dx1 and r must be positive");
  const int nx1 = std::max(2, static_cast<int>(std::lround(1.0 / dx1)) - 1);
  const int n2x = std::max(1, static_cast<int>(std::lround(1.0 / (r * dx1))) - 1);
  return make(nx1, n2x, n2x, tbc);
}

Blocks2D build_fvm_2d(const GridSpec2D& grid, const Material& mat1) {
  const int nt = grid.nt();
  const int n1 = grid.n1_unknowns();
  const double c1 = mat1.lambda / (grid.dx1 * grid.dx1);  // normal
  const double c2 = mat1.lambda / (grid.dx2 * grid.dx2);  // tangential
  auto id = [&](int i, int j) { return i * nt + j; };

  Triplets a, aig;
  Triplets m;
  for (int i = 0; i < grid.nx1; ++i) {
    for (int j = 0; j < nt; ++j) {
      const int k = id(i, j);
      m.emplace_back(k, k, mat1.alpha);
      // normal direction; outer boundary (i-1 < 0) is a zero ghost cell
      a.emplace_back(k, k, 2.0 * c1);
      if (i > 0) a.emplace_back(k, id(i - 1, j), -c1);
      if (i + 1 < grid.nx1)
        a.emplace_back(k, id(i + 1, j), -c1);
      else
        aig.emplace_back(k, j, -c1);  // neighbor is the interface unknown
      // tangential direction
      if (grid.tbc == TangentialBC::dirichlet) {
        a.emplace_back(k, k, 2.0 * c2);
        if (j > 0) a.emplace_back(k, id(i, j - 1), -c2);
        if (j + 1 < nt) a.emplace_back(k, id(i, j + 1), -c2);
      } else {
        if (j > 0) {
          a.emplace_back(k, k, c2);
          a.emplace_back(k, id(i, j - 1), -c2);
        }
        if (j + 1 < nt) {
          a.emplace_back(k, k, c2);
          a.emplace_back(k, id(i, j + 1), -c2);
        }
      }
    }
  }

  // Interface flux rows: second-order one-sided normal difference per node,
  // weighted tangentially by the consistent FEM mass and by the aspect-ratio
  // convention of the 1D analysis (the FVM side enters with weight r).
  const Eigen::MatrixXd my = tangential_mass(grid);
  const double f4 = grid.r * mat1.lambda / (2.0 * grid.dx1);
  Triplets agi, agg;
  for (int j = 0; j < nt; ++j) {
    for (int p = 0; p < nt; ++p) {
      const double w = my(j, p);
      if (w == 0.0) continue;
      agi.emplace_back(j, id(grid.nx1 - 1, p), -4.0 * f4 * w);
      agi.emplace_back(j, id(grid.nx1 - 2, p), f4 * w);
      agg.emplace_back(j, p, 3.0 * f4 * w);
    }
  }

  Blocks2D b;
  b.kind = SubdomainKind::fvm;
  b.grid = grid;
  b.m_ii = from_triplets(n1, n1, m);
  b.a_ii = from_triplets(n1, n1, a);
  b.a_igamma = from_triplets(n1, nt, aig);
  b.m_igamma = Eigen::SparseMatrix<double>(n1, nt);
  b.a_gammai = from_triplets(nt, n1, agi);
  b.m_gammai = Eigen::SparseMatrix<double>(nt, n1);
  b.a_gammagamma = from_triplets(nt, nt, agg);
  b.m_gammagamma = Eigen::SparseMatrix<double>(nt, nt);
  return b;
}

Blocks2D build_fem_2d(const GridSpec2D& grid, const Material& mat2) {
  const int nt = grid.nt();
  const int n2 = grid.n2_unknowns();
  const double h = grid.dx2;

  // Q1 element matrices on an h x h square, nodes counterclockwise.
  const double ke[4][4] = {{4, -1, -2, -1}, {-1, 4, -1, -2}, {-2, -1, 4, -1}, {-1, -2, -1, 4}};
  const double me[4][4] = {{4, 2, 1, 2}, {2, 4, 2, 1}, {1, 2, 4, 2}, {2, 1, 2, 4}};
  const double ks = mat2.lambda / 6.0;
  const double ms = mat2.alpha * h * h / 36.0;

  // dof(x_node, y_node): >=0 interior, -1 constrained, -2-q interface dof q
  auto dof = [&](int px, int qy) -> int {
    if (px == grid.n2x + 1) return -1;
    int qt;
    if (grid.tbc == TangentialBC::dirichlet) {
      if (qy < 1 || qy > grid.ny) return -1;
      qt = qy - 1;
    } else {
      qt = qy;
    }
    if (px == 0) return -2 - qt;
    return (px - 1) * nt + qt;
  };

  Triplets a_ii, a_ig, a_gi, a_gg, m_ii, m_ig, m_gi, m_gg;
  auto scatter = [&](int da, int db, double kv, double mv) {
    const bool ga = da <= -2, gb = db <= -2;
    const int ia = ga ? -2 - da : da;
    const int ib = gb ? -2 - db : db;
    if (!ga && !gb) {
      a_ii.emplace_back(ia, ib, kv);
      m_ii.emplace_back(ia, ib, mv);
    } else if (!ga && gb) {
      a_ig.emplace_back(ia, ib, kv);
      m_ig.emplace_back(ia, ib, mv);
    } else if (ga && !gb) {
      a_gi.emplace_back(ia, ib, kv);
      m_gi.emplace_back(ia, ib, mv);
    } else {
      a_gg.emplace_back(ia, ib, kv);
      m_gg.emplace_back(ia, ib, mv);
    }
  };

  for (int ex = 0; ex <= grid.n2x; ++ex) {
    for (int ey = 0; ey <= grid.ny; ++ey) {
      const int nx[4] = {ex, ex + 1, ex + 1, ex};
      const int ny_[4] = {ey, ey, ey + 1, ey + 1};
      int d[4];
      for (int k = 0; k < 4; ++k) d[k] = dof(nx[k], ny_[k]);
      for (int ai = 0; ai < 4; ++ai) {
        if (d[ai] == -1) continue;
        for (int bi = 0; bi < 4; ++bi) {
          if (d[bi] == -1) continue;
          scatter(d[ai], d[bi], ks * ke[ai][bi], ms * me[ai][bi]);
        }
      }
    }
  }

  Blocks2D b;
  b.kind = SubdomainKind::fem;
  b.grid = grid;
  b.a_ii = from_triplets(n2, n2, a_ii);
  b.m_ii = from_triplets(n2, n2, m_ii);
  b.a_igamma = from_triplets(n2, nt, a_ig);
  b.m_igamma = from_triplets(n2, nt, m_ig);
  b.a_gammai = from_triplets(nt, n2, a_gi);
  b.m_gammai = from_triplets(nt, n2, m_gi);
  b.a_gammagamma = from_triplets(nt, nt, a_gg);
  b.m_gammagamma = from_triplets(nt, nt, m_gg);
  return b;
}

namespace {

void check_pair(const Blocks2D& b1, const Blocks2D& b2) {
  if (b1.kind != SubdomainKind::fvm || b2.kind != SubdomainKind::fem)
    throw std::invalid_argument("2d solver: expected (FVM, FEM) block pair");
  if (b1.nt() != b2.nt()) throw std::invalid_argument("2d solver: interface size mismatch");
}

Eigen::SparseMatrix<double> neumann_matrix_2d(const Blocks2D& b2, double dt) {
  const int n2 = b2.n();
  const int nt = b2.nt();
  Triplets t;
  auto add_block = [&](const Eigen::SparseMatrix<double>& m,
                       const Eigen::SparseMatrix<double>& a, int ro, int co) {
    Eigen::SparseMatrix<double> s = m + dt * a;
    for (int k = 0; k < s.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(s, k); it; ++it)
        t.emplace_back(ro + it.row(), co + it.col(), it.value());
  };
  add_block(b2.m_ii, b2.a_ii, 0, 0);
  add_block(b2.m_igamma, b2.a_igamma, 0, n2);
  add_block(b2.m_gammai, b2.a_gammai, n2, 0);
  add_block(b2.m_gammagamma, b2.a_gammagamma, n2, n2);
  return from_triplets(n2 + nt, n2 + nt, t);
}

}  // namespace

std::pair<State2D, IterationTrace> dn_time_step_2d(const Blocks2D& blocks1,
                                                   const Blocks2D& blocks2,
                                                   const DNConfig2D& cfg,
                                                   const State2D& state_prev) {
  check_pair(blocks1, blocks2);
  if (cfg.max_iters < 1) throw std::invalid_argument("dn_time_step_2d: max_iters >= 1");
  const int nt = blocks1.nt();
  const double dt = cfg.dt;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> dirichlet;
  {
    Eigen::SparseMatrix<double> ad = blocks1.m_ii + dt * blocks1.a_ii;
    dirichlet.compute(ad);
    if (dirichlet.info() != Eigen::Success)
      throw std::runtime_error("dn_time_step_2d: Dirichlet factorization failed");
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> neumann;
  {
    Eigen::SparseMatrix<double> an = neumann_matrix_2d(blocks2, dt);
    neumann.compute(an);
    if (neumann.info() != Eigen::Success)
      throw std::runtime_error("dn_time_step_2d: Neumann factorization failed");
  }

  const Eigen::VectorXd rhs1_fixed = blocks1.m_ii * state_prev.u1;  // M_IG^(1) = 0
  Eigen::VectorXd rhs_hat_fixed(blocks2.n() + nt);
  rhs_hat_fixed.head(blocks2.n()) =
      blocks2.m_ii * state_prev.u2 + blocks2.m_igamma * state_prev.u_gamma;
  rhs_hat_fixed.tail(nt) =
      blocks2.m_gammai * state_prev.u2 + blocks2.m_gammagamma * state_prev.u_gamma;

  Eigen::VectorXd u_gamma = cfg.initial_interface.value_or(state_prev.u_gamma);
  if (u_gamma.size() != nt) throw std::invalid_argument("dn_time_step_2d: interface size");

  IterationTrace trace;
  State2D state = state_prev;
  for (int k = 0; k < cfg.max_iters; ++k) {
    state.u1 = dirichlet.solve(rhs1_fixed - dt * (blocks1.a_igamma * u_gamma));

    const Eigen::VectorXd b_gamma =
        dt * (blocks1.a_gammai * state.u1 + blocks1.a_gammagamma * u_gamma);
    Eigen::VectorXd rhs_hat = rhs_hat_fixed;
    rhs_hat.tail(nt) -= b_gamma;
    const Eigen::VectorXd hat = neumann.solve(rhs_hat);
    state.u2 = hat.head(blocks2.n());
    const Eigen::VectorXd u_gamma_next = hat.tail(nt);

    const double update = (u_gamma_next - u_gamma).norm();
    trace.update_norms.push_back(update);
    trace.iters = k + 1;
    u_gamma = u_gamma_next;
    if (!std::isfinite(update) || update > 1e120) break;
    if (update <= cfg.tol) {
      trace.converged = true;
      break;
    }
  }
  state.u_gamma = u_gamma;
  return {state, trace};
}

State2D monolithic_step_2d(const Blocks2D& blocks1, const Blocks2D& blocks2, double dt,
                           const State2D& state_prev) {
  check_pair(blocks1, blocks2);
  const int n1 = blocks1.n(), n2 = blocks2.n(), nt = blocks1.nt();
  const int dim = n1 + n2 + nt;

  Triplets ta, tm;
  auto add = [&](Triplets& t, const Eigen::SparseMatrix<double>& s, int ro, int co,
                 double scale) {
    for (int k = 0; k < s.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(s, k); it; ++it)
        t.emplace_back(ro + it.row(), co + it.col(), scale * it.value());
  };
  auto add_pair = [&](const Eigen::SparseMatrix<double>& m,
                      const Eigen::SparseMatrix<double>& a, int ro, int co) {
    add(tm, m, ro, co, 1.0);
    add(ta, m, ro, co, 1.0);
    add(ta, a, ro, co, dt);
  };
  add_pair(blocks1.m_ii, blocks1.a_ii, 0, 0);
  add_pair(blocks1.m_igamma, blocks1.a_igamma, 0, n1 + n2);
  add_pair(blocks2.m_ii, blocks2.a_ii, n1, n1);
  add_pair(blocks2.m_igamma, blocks2.a_igamma, n1, n1 + n2);
  add_pair(blocks1.m_gammai, blocks1.a_gammai, n1 + n2, 0);
  add_pair(blocks2.m_gammai, blocks2.a_gammai, n1 + n2, n1);
  add_pair(blocks1.m_gammagamma, blocks1.a_gammagamma, n1 + n2, n1 + n2);
  add_pair(blocks2.m_gammagamma, blocks2.a_gammagamma, n1 + n2, n1 + n2);

  const Eigen::SparseMatrix<double> a_step = from_triplets(dim, dim, ta);
  const Eigen::SparseMatrix<double> m_tilde = from_triplets(dim, dim, tm);

  Eigen::VectorXd u(dim);
  u.head(n1) = state_prev.u1;
  u.segment(n1, n2) = state_prev.u2;
  u.tail(nt) = state_prev.u_gamma;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a_step);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("monolithic_step_2d: factorization failed");
  const Eigen::VectorXd x = lu.solve(m_tilde * u);
  if (!x.allFinite()) throw std::runtime_error("monolithic_step_2d: solve failed");

  State2D out;
  out.u1 = x.head(n1);
  out.u2 = x.segment(n1, n2);
  out.u_gamma = x.tail(nt);
  return out;
}

double mass_norm_2d(const Blocks2D& blocks1, const Blocks2D& blocks2, const State2D& s) {
  double q = s.u1.dot(blocks1.m_ii * s.u1);
  q += s.u2.dot(blocks2.m_ii * s.u2);
  q += s.u_gamma.dot(blocks2.m_gammagamma * s.u_gamma);
  q += 2.0 * s.u_gamma.dot(blocks2.m_gammai * s.u2);
  return std::sqrt(std::abs(q));
}

State2D rate_probe_state_2d(const GridSpec2D& grid) {
  const int nt = grid.nt();
  State2D s;
  s.u1.resize(grid.n1_unknowns());
  s.u2.resize(grid.n2_unknowns());
  s.u_gamma = Eigen::VectorXd::Ones(nt);
  for (int i = 0; i < grid.nx1; ++i)
    for (int j = 0; j < nt; ++j)
      s.u1(i * nt + j) = static_cast<double>(i + 1) / (grid.nx1 + 1);
  for (int p = 0; p < grid.n2x; ++p)
    for (int q = 0; q < nt; ++q)
      s.u2(p * nt + q) = 1.0 - static_cast<double>(p + 1) / (grid.n2x + 1);
  return s;
}

double measure_rate_2d(const Blocks2D& blocks1, const Blocks2D& blocks2, double dt,
                       int iters) {
  check_pair(blocks1, blocks2);
  const State2D prev = rate_probe_state_2d(blocks1.grid);
  DNConfig2D cfg;
  cfg.dt = dt;
  cfg.tol = 0.0;
  cfg.max_iters = iters;
  cfg.initial_interface = prev.u_gamma.array() + 1.0;
  auto [state, trace] = dn_time_step_2d(blocks1, blocks2, cfg, prev);
  return observed_rate(trace);
}

}  // namespace heatdn
