#pragma once

#include <span>
#include <vector>

namespace heatdn {

/// Compact three-band storage. sub/super have length dim()-1.
struct TridiagonalMatrix {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;

  int dim() const { return static_cast<int>(diag.size()); }

  static TridiagonalMatrix toeplitz(int n, double lo, double di, double up);
  static TridiagonalMatrix identity(int n);

  /// True when sub == super and all bands are constant.
  bool is_symmetric_toeplitz() const;

  std::vector<double> multiply(std::span<const double> x) const;

  /// this += s * other (same dimension required)
  void add_scaled(const TridiagonalMatrix& other, double s);
};

/// Thomas algorithm. All systems solved here are (block) diagonally dominant
/// or SPD, so no pivoting is performed; a vanishing pivot throws.
std::vector<double> solve_tridiagonal(const TridiagonalMatrix& m,
                                      std::span<const double> rhs);

}  // namespace heatdn
