#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fraclob {

// dx = sqrt(2 D / r) * dt^(alpha/2); throws std::domain_error on bad input.
double derive_dx(double dt, double D_alpha, double alpha, double r);
// dt = (dx^2 r / (2 D))^(1/alpha); inverse of derive_dx to 1e-12 relative.
double derive_dt(double dx, double D_alpha, double alpha, double r);

// Price-grid geometry plus the physical constants coupling dx to dt.
struct LatticeSpec {
  double L = 200.0;       // price span, x in [x_min, x_min + L]
  int M = 400;            // number of grid cells (M+1 stored points)
  double x_min = 1200.0;
  double alpha = 1.0;     // fractional order, in (0, 1]
  double D = 0.5;         // diffusion constant D_alpha
  double r = 0.5;         // jump probability (self-jump prob is 1 - r)
  double p0 = 1300.0;     // initial book intercept

  double dx() const { return L / M; }
  double x_max() const { return x_min + L; }
  double x(int i) const { return x_min + dx() * i; }
  double nominal_dt() const { return derive_dt(dx(), D, alpha, r); }
  void validate() const;  // throws std::domain_error when invariants fail
};

enum class TimeGridMode { Uniform, Exponential };

// Ordered step sequence with compensated cumulative times, t_0 = 0.
struct TimeGrid {
  TimeGridMode mode = TimeGridMode::Uniform;
  double lambda = 8.0;        // 1/mean step
  std::uint64_t seed = 0;
  std::vector<double> steps;  // dt_m, m = 1..n
  std::vector<double> times;  // t_0..t_n, strictly increasing
};

// Uniform mode: every step exactly 1/lambda. Exponential mode: untruncated
// inverse-CDF draws, deterministic per seed. n_steps >= 1 required.
TimeGrid build_time_grid(TimeGridMode mode, double lambda, std::size_t n_steps,
                         std::uint64_t seed);

struct SamplingRatios {
  double gamma1 = 1.0;   // order-book event time / simulation step
  double gamma2 = 1.0;   // trade event time / simulation step
  double gamma21 = 1.0;  // trade / order-book ratio
};

SamplingRatios sampling_ratios(double delta_tau, double delta_t, double dt_sim);

// JSON round-trip of {mode, lambda, seed, n_steps, dx, alpha, D_alpha, r};
// enough to rebuild the grid bit-identically.
struct SerializedGrid {
  TimeGrid grid;
  double dx = 0, alpha = 1, D_alpha = 0, r = 0;
};
std::string grid_to_json(const TimeGrid& grid, double dx, double alpha,
                         double D_alpha, double r);
SerializedGrid grid_from_json(const std::string& text);

}  // namespace fraclob
