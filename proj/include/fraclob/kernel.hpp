#pragma once

#include <vector>

namespace fraclob {

// Truncated Sibuya memory weights. K[j-1] holds K_j for j = 1..window().
// K_1 = alpha always; for alpha = 1 the table is exactly {1} (all later
// weights vanish identically). For alpha < 1 the weights from j = 2 on are
// negative with |K_j| non-increasing.
struct KernelTable {
  double alpha = 1.0;
  double eps = 0.01;   // truncation tolerance
  int n_c = 1;         // first j with |K_j| < eps
  int m0 = 0;          // requested minimum window, 0 = tolerance only
  std::vector<double> K;

  int window() const { return static_cast<int>(K.size()); }
};

// Running-product evaluation of the kernel recursion, truncated at the
// first |K_j| < eps and extended to m0_override steps when that is longer.
KernelTable build_kernel(double alpha, double eps = 0.01, int m0_override = 0);

// Minimum m0 (in simulation steps) so the window spans at least
// trades * gamma1 steps; 1 for the delta kernel (alpha = 1).
int memory_window_for_trades(double alpha, double eps, int trades,
                             double gamma1);

}  // namespace fraclob
