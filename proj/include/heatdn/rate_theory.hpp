#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "heatdn/grid.hpp"
#include "heatdn/material.hpp"

namespace heatdn {

/// Every symbol the closed-form rate depends on. dx is not required to equal
/// 1/(n+1) here: the estimator is also evaluated at physical mesh widths
/// taken from applications, where that relation cannot hold.
struct RateInputs {
  double dt;
  int n1;      // >= 2
  double dx1;  // > 0
  int n2;      // >= 0 (n2 == 0: no interior FEM unknowns, s2 is empty)
  double dx2;  // > 0
  Material mat1;
  Material mat2;

  static RateInputs from_grid(const GridSpec1D& g, const Material& m1, const Material& m2,
                              double dt);
  double r() const { return dx2 / dx1; }
  void validate() const;
};

struct RateReport {
  double sigma_exact;    // closed-form |Sigma|
  double sigma_schur;    // |S2^-1 S1| via direct tridiagonal solves
  double beta;           // semidiscrete estimator
  double delta_r;        // spatial limit r*lambda1/lambda2
  double temporal_limit; // 0
};

/// Eigenpairs of a symmetric tridiagonal Toeplitz matrix
/// tridiag(off, diag, off): mu_j = diag + 2 off cos(j pi/(n+1)), normalized
/// sine eigenvectors as columns.
struct ToeplitzEigen {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd vectors;
};
ToeplitzEigen toeplitz_eigenpairs(int n, double off, double diag);

struct InverseEntries {
  double alpha1_nn;    // (N1,N1)    of (alpha1 I - dt A1)^-1
  double alpha1_nm1n;  // (N1-1,N1)
  double alpha2_11;    // (1,1)      of (M2 + dt A2)^-1
};
/// Via the printed spectral sums. Requires n2 >= 1.
InverseEntries inverse_entries(const RateInputs& in);

struct SpectralSums {
  double s0, s1, s2;
};
SpectralSums sums_s(const RateInputs& in);

/// The three finite-sum identities used to reduce |Sigma|, both numerically
/// summed and in closed form. Requires dx == 1/(n+1).
struct ClosedSumReport {
  double sin2_sum, sin2_closed;  // sum sin^2(j pi dx)  = 1/(2 dx)
  double cos2_sum, cos2_closed;  // sum cos^2(j pi dx)  = (1-2dx)/(2dx)
  double cos_sum, cos_closed;    // sum cos(j pi dx)    = 0
};
ClosedSumReport closed_sum_checks(int n, double dx);

/// Scalar interface Schur complements. The *_direct variants compute the
/// eliminated term with a tridiagonal solve instead of the spectral sums and
/// serve as the independent oracle.
double schur_s1(const RateInputs& in);
double schur_s2(const RateInputs& in);
double schur_s1_direct(const RateInputs& in);
double schur_s2_direct(const RateInputs& in);
double sigma_schur_direct(const RateInputs& in);

/// The closed-form spectral radius |Sigma|. Throws std::domain_error if the
/// denominator degenerates (not reachable for physical inputs).
double sigma_exact(const RateInputs& in);

/// Semidiscrete convergence-rate estimator (tanh quotient).
double semidiscrete_beta(double dt, const Material& mat1, const Material& mat2);

/// Spatial limit of |Sigma| for dx1 -> 0 followed by dt -> infinity.
double spatial_limit(double r, double lambda1, double lambda2);

/// Temporal limit dt -> 0.
constexpr double temporal_limit() { return 0.0; }

/// Spatial limit of |Sigma| for dx1 -> 0 at fixed dt: r * beta(dt). Equals
/// delta_r only in the subsequent dt -> infinity limit.
double spatial_plateau(double r, double dt, const Material& mat1, const Material& mat2);

/// Published FEM-FEM limits: (dt -> 0, dx -> 0) = (alpha1/alpha2, lambda1/lambda2).
std::pair<double, double> fem_fem_limits(const Material& mat1, const Material& mat2);

RateReport rate_report(const RateInputs& in);

}  // namespace heatdn
