#include "heatdn/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>

namespace heatdn {

TridiagonalMatrix TridiagonalMatrix::toeplitz(int n, double lo, double di, double up) {
  if (n < 1) throw std::invalid_argument("tridiagonal: dimension must be >= 1");
  TridiagonalMatrix m;
  m.sub.assign(n - 1, lo);
  m.diag.assign(n, di);
  m.super.assign(n - 1, up);
  return m;
}

TridiagonalMatrix TridiagonalMatrix::identity(int n) { return toeplitz(n, 0.0, 1.0, 0.0); }

bool TridiagonalMatrix::is_symmetric_toeplitz() const {
  const int n = dim();
  for (int i = 0; i + 1 < n; ++i) {
    if (sub[i] != super[i]) return false;
    if (sub[i] != sub[0] || diag[i] != diag[0]) return false;
  }
  return n < 2 || diag[n - 1] == diag[0];
}

std::vector<double> TridiagonalMatrix::multiply(std::span<const double> x) const {
  const int n = dim();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("tridiagonal multiply: size mismatch");
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += sub[i - 1] * x[i - 1];
    if (i + 1 < n) s += super[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

void TridiagonalMatrix::add_scaled(const TridiagonalMatrix& other, double s) {
  if (other.dim() != dim()) throw std::invalid_argument("tridiagonal add: size mismatch");
  for (int i = 0; i < dim(); ++i) diag[i] += s * other.diag[i];
  for (int i = 0; i + 1 < dim(); ++i) {
    sub[i] += s * other.sub[i];
    super[i] += s * other.super[i];
  }
}

std::vector<double> solve_tridiagonal(const TridiagonalMatrix& m, std::span<const double> rhs) {
  const int n = m.dim();
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("solve_tridiagonal: size mismatch");

  std::vector<double> c(n - 1 > 0 ? n - 1 : 0), d(n);
  double piv = m.diag[0];
  if (piv == 0.0 || !std::isfinite(piv))
    throw std::runtime_error("solve_tridiagonal: zero pivot at row 0");
  if (n > 1) c[0] = m.super[0] / piv;
  d[0] = rhs[0] / piv;
  for (int i = 1; i < n; ++i) {
    piv = m.diag[i] - m.sub[i - 1] * c[i - 1];
    if (piv == 0.0 || !std::isfinite(piv))
      throw std::runtime_error("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    if (i + 1 < n) c[i] = m.super[i] / piv;
    d[i] = (rhs[i] - m.sub[i - 1] * d[i - 1]) / piv;
  }
  for (int i = n - 2; i >= 0; --i) d[i] -= c[i] * d[i + 1];
  return d;
}

}  // namespace heatdn
