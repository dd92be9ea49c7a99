#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fraclob/book.hpp"
#include "fraclob/dynamics.hpp"

namespace fraclob {

enum class Scheme { Uniform, NonUniform };

// Full-session configuration. The uniform scheme samples trade events at
// the first step reaching each integer multiple of delta_tau; the
// non-uniform scheme treats every step as an event (gamma1 = 1) and draws
// dt_m ~ Exp(1/nominal dt).
struct SessionConfig {
  LatticeSpec spec;
  double nu = 0.5;
  SourceSpec source;
  double rho = 0.9;
  double sigma = 1.0;
  double beta = 1.0;
  double eps = 0.01;
  int m0 = 0;
  Scheme scheme = Scheme::Uniform;
  InterpMethod interp = InterpMethod::Linear;
  double delta_tau = 1.0;     // trade-event spacing in model time
  long trade_events = 1000;   // session length
  std::uint64_t seed = 0;
  bool noise = true;          // false: V_t = 0 throughout
  int frame_stride = 0;       // dump phi every this many steps (0 = off)
  bool source_follows_mid = true;
  double relax_tol = 1e-10;
  // Translate the lattice by whole cells whenever the mid drifts more than
  // this many cells from the frame center, so long sessions keep the book
  // (which vanishes at the walls) inside the grid while the price wanders
  // freely. 0 disables recentering.
  int recenter_margin_cells = 10;
};

struct SessionFrame {
  long n = 0;          // step index of the snapshot
  double x_min = 0;    // left wall at snapshot time (frame may translate)
  std::vector<double> phi;
};

struct SessionResult {
  std::vector<long> event_step;
  std::vector<double> event_time;
  std::vector<double> event_price;
  std::vector<double> event_rate;   // Ohm's-law rate at each event
  std::vector<double> potentials;   // V_t per simulation step
  std::vector<SessionFrame> frames;
  long n_steps = 0;
  double dt_nominal = 0;
  SamplingRatios ratios;
};

SessionResult run_session(const SessionConfig& cfg);

}  // namespace fraclob
