#include "heatdn/rate_theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heatdn/summation.hpp"
#include "heatdn/tridiagonal.hpp"

namespace heatdn {

namespace {
constexpr double kPi = std::numbers::pi;
}

RateInputs RateInputs::from_grid(const GridSpec1D& g, const Material& m1, const Material& m2,
                                 double dt) {
  RateInputs in;
  in.dt = dt;
  in.n1 = g.n1;
  in.dx1 = g.dx1;
  in.n2 = g.n2;
  in.dx2 = g.dx2;
  in.mat1 = m1;
  in.mat2 = m2;
  in.validate();
  return in;
}

void RateInputs::validate() const {
  if (!(dt >= 0.0)) throw std::invalid_argument("RateInputs: dt must be >= 0");
  if (n1 < 2) throw std::invalid_argument("RateInputs: n1 must be >= 2");
  if (n2 < 0) throw std::invalid_argument("RateInputs: n2 must be >= 0");
  if (!(dx1 > 0.0) || !(dx2 > 0.0))
    throw std::invalid_argument("RateInputs: mesh widths must be positive");
  // lambda == 0 is admitted: several closed-form statements are linear in
  // lambda and degenerate cleanly (S1 -> 0 with lambda1).
  if (!(mat1.lambda >= 0.0) || !(mat2.lambda >= 0.0) || !(mat1.alpha > 0.0) ||
      !(mat2.alpha > 0.0))
    throw std::invalid_argument("RateInputs: materials must be physical");
}

ToeplitzEigen toeplitz_eigenpairs(int n, double off, double diag) {
  if (n < 1) throw std::invalid_argument("toeplitz_eigenpairs: n must be >= 1");
  ToeplitzEigen e;
  e.eigenvalues.resize(n);
  e.vectors.resize(n, n);
  const double h = kPi / (n + 1);
  double norm2 = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double s = std::sin(k * h);
    norm2 += s * s;
  }
  const double inv_norm = 1.0 / std::sqrt(norm2);
  for (int j = 1; j <= n; ++j) {
    e.eigenvalues[j - 1] = diag + 2.0 * off * std::cos(j * h);
    for (int i = 1; i <= n; ++i)
      e.vectors(i - 1, j - 1) = inv_norm * std::sin(static_cast<double>(i) * j * h);
  }
  return e;
}

SpectralSums sums_s(const RateInputs& in) {
  in.validate();
  const double l1 = in.mat1.lambda, a1 = in.mat1.alpha;
  const double l2 = in.mat2.lambda, a2 = in.mat2.alpha;
  const double dx1 = in.dx1, dx2 = in.dx2, dt = in.dt;

  SpectralSums s;
  s.s0 = kahan_sum(in.n1, [&](std::size_t i) {
    const double t = i * kPi * dx1;
    return std::sin(t) * std::sin(2.0 * t) / (a1 * dx1 * dx1 + 2.0 * l1 * dt * (1.0 - std::cos(t)));
  });
  s.s1 = kahan_sum(in.n1, [&](std::size_t i) {
    const double t = i * kPi * dx1;
    const double si = std::sin(t);
    return si * si / (a1 * dx1 * dx1 + 2.0 * l1 * dt * (1.0 - std::cos(t)));
  });
  s.s2 = kahan_sum(in.n2, [&](std::size_t i) {
    const double t = i * kPi * dx2;
    const double si = std::sin(t);
    return si * si /
           (2.0 * a2 * dx2 * dx2 + 6.0 * l2 * dt + (a2 * dx2 * dx2 - 6.0 * l2 * dt) * std::cos(t));
  });
  return s;
}

InverseEntries inverse_entries(const RateInputs& in) {
  in.validate();
  if (in.n2 < 1) throw std::invalid_argument("inverse_entries: n2 must be >= 1");
  const SpectralSums s = sums_s(in);
  const double sin2_1 = kahan_sum(in.n1, [&](std::size_t i) {
    const double v = std::sin(i * kPi * in.dx1);
    return v * v;
  });
  const double sin2_2 = kahan_sum(in.n2, [&](std::size_t i) {
    const double v = std::sin(i * kPi * in.dx2);
    return v * v;
  });
  InverseEntries e;
  e.alpha1_nm1n = in.dx1 * in.dx1 * s.s0 / sin2_1;
  e.alpha1_nn = in.dx1 * in.dx1 * s.s1 / sin2_1;
  e.alpha2_11 = 3.0 * in.dx2 * in.dx2 * s.s2 / sin2_2;
  return e;
}

ClosedSumReport closed_sum_checks(int n, double dx) {
  if (n < 1) throw std::invalid_argument("closed_sum_checks: n must be >= 1");
  if (std::abs(dx * (n + 1) - 1.0) > 1e-9)
    throw std::invalid_argument("closed_sum_checks: dx must equal 1/(n+1)");
  ClosedSumReport r;
  r.sin2_sum = kahan_sum(n, [&](std::size_t j) {
    const double v = std::sin(j * kPi * dx);
    return v * v;
  });
  r.cos2_sum = kahan_sum(n, [&](std::size_t j) {
    const double v = std::cos(j * kPi * dx);
    return v * v;
  });
  r.cos_sum = kahan_sum(n, [&](std::size_t j) { return std::cos(j * kPi * dx); });
  r.sin2_closed = 1.0 / (2.0 * dx);
  r.cos2_closed = (1.0 - 2.0 * dx) / (2.0 * dx);
  r.cos_closed = 0.0;
  return r;
}

double schur_s1(const RateInputs& in) {
  const InverseEntries e = inverse_entries(in);
  const double l1 = in.mat1.lambda, dx1 = in.dx1, dt = in.dt;
  return dt * 1.5 * l1 / (dx1 * dx1) -
         dt * dt * l1 * l1 / (2.0 * dx1 * dx1 * dx1 * dx1) *
             (4.0 * e.alpha1_nn - e.alpha1_nm1n);
}

double schur_s2(const RateInputs& in) {
  const InverseEntries e = inverse_entries(in);
  const double l2 = in.mat2.lambda, a2 = in.mat2.alpha, dx2 = in.dx2, dt = in.dt;
  const double w = a2 / 6.0 - dt * l2 / (dx2 * dx2);
  return (a2 / 3.0 + dt * l2 / (dx2 * dx2)) - w * w * e.alpha2_11;
}

double schur_s1_direct(const RateInputs& in) {
  in.validate();
  const double l1 = in.mat1.lambda, a1 = in.mat1.alpha, dx1 = in.dx1, dt = in.dt;
  const double c = l1 / (dx1 * dx1);
  // (alpha1 I - dt A1) with the printed (negative definite) A1.
  const TridiagonalMatrix t =
      TridiagonalMatrix::toeplitz(in.n1, -dt * c, a1 + 2.0 * dt * c, -dt * c);
  std::vector<double> rhs(in.n1, 0.0);
  rhs[in.n1 - 1] = 1.0;
  const std::vector<double> col = solve_tridiagonal(t, rhs);  // (..)^-1 e_N
  const double quad = 4.0 * col[in.n1 - 1] - col[in.n1 - 2];
  return dt * 1.5 * c - dt * dt * l1 * l1 / (2.0 * dx1 * dx1 * dx1 * dx1) * quad;
}

double schur_s2_direct(const RateInputs& in) {
  in.validate();
  const double l2 = in.mat2.lambda, a2 = in.mat2.alpha, dx2 = in.dx2, dt = in.dt;
  const double c = l2 / (dx2 * dx2);
  const double gamma_term = a2 / 3.0 + dt * c;
  if (in.n2 == 0) return gamma_term;
  const double w = a2 / 6.0 - dt * c;
  const TridiagonalMatrix t = TridiagonalMatrix::toeplitz(
      in.n2, a2 / 6.0 + dt * (-c), 4.0 * a2 / 6.0 + dt * 2.0 * c, a2 / 6.0 + dt * (-c));
  std::vector<double> rhs(in.n2, 0.0);
  rhs[0] = 1.0;
  const std::vector<double> col = solve_tridiagonal(t, rhs);  // (M2 + dt A2)^-1 e_1
  return gamma_term - w * w * col[0];
}

double sigma_schur_direct(const RateInputs& in) {
  const double s2 = schur_s2_direct(in);
  if (s2 == 0.0) throw std::domain_error("sigma_schur_direct: S(2) vanished");
  return std::abs(schur_s1_direct(in) / s2);
}

double sigma_exact(const RateInputs& in) {
  in.validate();
  const SpectralSums s = sums_s(in);
  const double l1 = in.mat1.lambda, l2 = in.mat2.lambda, a2 = in.mat2.alpha;
  const double dx1 = in.dx1, dx2 = in.dx2, dt = in.dt;

  const double num =
      3.0 * dx2 * dx2 * (3.0 * l1 * dt - 2.0 * l1 * l1 * dx1 * dt * dt * (4.0 * s.s1 - s.s0));
  const double w = a2 * dx2 * dx2 - 6.0 * l2 * dt;
  const double den =
      dx1 * dx1 * (2.0 * (a2 * dx2 * dx2 + 3.0 * l2 * dt) - dx2 * w * w * s.s2);
  if (den == 0.0 || !std::isfinite(den))
    throw std::domain_error("sigma_exact: degenerate denominator");
  return std::abs(num / den);
}

double semidiscrete_beta(double dt, const Material& mat1, const Material& mat2) {
  if (!(dt > 0.0)) throw std::invalid_argument("semidiscrete_beta: dt must be positive");
  const double d1 = mat1.d, d2 = mat2.d;
  return std::abs(-(mat1.lambda / mat2.lambda) * std::sqrt(d2 / d1) *
                  std::tanh(-1.0 / std::sqrt(d2 * dt)) / std::tanh(1.0 / std::sqrt(d1 * dt)));
}

double spatial_limit(double r, double lambda1, double lambda2) {
  if (!(r > 0.0) || !(lambda1 > 0.0) || !(lambda2 > 0.0))
    throw std::invalid_argument("spatial_limit: inputs must be positive");
  return r * lambda1 / lambda2;
}

double spatial_plateau(double r, double dt, const Material& mat1, const Material& mat2) {
  return r * semidiscrete_beta(dt, mat1, mat2);
}

std::pair<double, double> fem_fem_limits(const Material& mat1, const Material& mat2) {
  return {mat1.alpha / mat2.alpha, mat1.lambda / mat2.lambda};
}

RateReport rate_report(const RateInputs& in) {
  RateReport rep;
  rep.sigma_exact = sigma_exact(in);
  rep.sigma_schur = sigma_schur_direct(in);
  rep.beta = semidiscrete_beta(in.dt, in.mat1, in.mat2);
  rep.delta_r = spatial_limit(in.r(), in.mat1.lambda, in.mat2.lambda);
  rep.temporal_limit = temporal_limit();
  return rep;
}

}  // namespace heatdn
