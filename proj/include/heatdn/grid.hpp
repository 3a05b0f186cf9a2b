#pragma once

namespace heatdn {

/// 1D grid pair: n1 interior cells on [-1,0] (FVM), n2 interior nodes on
/// [0,1] (FEM), one shared interface unknown at x = 0.
struct GridSpec1D {
  int n1;      // >= 2, the one-sided interface difference needs cells N1, N1-1
  int n2;      // >= 1
  double dx1;  // 1/(n1+1)
  double dx2;  // 1/(n2+1)
  double r;    // dx2/dx1

  static GridSpec1D from_counts(int n1, int n2);

  /// Snaps dx1 and r to the nearest admissible counts (dx = 1/(n+1)).
  static GridSpec1D from_dx1_aspect(double dx1, double r);
};

}  // namespace heatdn
