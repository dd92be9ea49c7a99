#include "fraclob/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclob {

KernelTable build_kernel(double alpha, double eps, int m0_override) {
  if (!(alpha > 0 && alpha <= 1))
    throw std::domain_error("kernel: alpha must be in (0,1]");
  if (!(eps > 0 && eps < 1))
    throw std::domain_error("kernel: eps must be in (0,1)");
  if (m0_override < 0) throw std::domain_error("kernel: m0 must be >= 0");

  KernelTable t;
  t.alpha = alpha;
  t.eps = eps;
  t.m0 = m0_override;

  if (alpha == 1.0) {
    // Memoryless limit: the weight sequence is the Kronecker delta.
    t.n_c = 1;
    t.K = {1.0};
    return t;
  }

  // K_j = prod_{k=1..j} (1 - (2 - alpha)/k), plus 1 at j = 1. The product
  // is updated incrementally; each factor after k = 2 lies in (0,1) so the
  // magnitudes are non-increasing and single-signed from j = 2 on.
  double prod = 1.0 - (2.0 - alpha);  // k = 1 factor, = alpha - 1
  t.K.push_back(prod + 1.0);          // K_1 = alpha
  int n_c = 0;
  for (int j = 2;; ++j) {
    prod *= 1.0 - (2.0 - alpha) / j;
    if (n_c == 0 && std::fabs(prod) < eps) n_c = j;
    const bool past_cutoff = n_c != 0;
    const bool filled_m0 = static_cast<int>(t.K.size()) >= m0_override;
    if (past_cutoff && filled_m0 && j > n_c) break;
    t.K.push_back(prod);
    if (past_cutoff && filled_m0) break;
    if (t.K.size() > 50000000u)
      throw std::runtime_error("kernel: window exceeds 5e7 entries");
  }
  t.n_c = n_c;
  return t;
}

int memory_window_for_trades(double alpha, double eps, int trades,
                             double gamma1) {
  if (trades < 1) throw std::domain_error("memory window: trades must be >= 1");
  if (!(gamma1 >= 1))
    throw std::domain_error("memory window: gamma1 must be >= 1");
  if (alpha == 1.0) return 1;
  (void)eps;
  return static_cast<int>(std::ceil(trades * gamma1));
}

}  // namespace fraclob
