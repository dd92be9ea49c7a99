#pragma once

#include <vector>

#include "fraclob/forcing.hpp"
#include "fraclob/kernel.hpp"
#include "fraclob/lattice.hpp"

namespace fraclob {

// Antisymmetric lit-market order arrival density.
struct SourceSpec {
  double kappa = 1.0;  // arrival intensity
  double mu = 0.1;     // price scale
};

// s = -kappa * u * exp(-u^2) with u = mu * (x - p).
double source_density(double x, double p, double kappa, double mu);

// Order-density field on the background lattice plus the bounded history
// ring the memory kernel convolves. Rows are pushed once per completed
// step; lag-j access returns phi_{n-j}. History before the seed row is
// zero-padded (absent rows simply do not contribute).
struct BookState {
  LatticeSpec spec;
  double nu = 0.5;
  long n = 0;          // completed steps
  double t = 0.0;      // current time, compensated accumulation
  double prev_mid = 1300.0;
  double source_center = 1300.0;  // mid the source is centered on
  std::vector<double> phi;        // current field, M+1 points

  int window = 1;  // retained history depth (>= kernel window)

  // ghost bookkeeping: c = dt V / D for the current step; the walls use
  // phi_{-1} = (1+c) phi_0 and phi_{M+1} = (1-c) phi_M.
  double ghost_c = 0.0;
  double ghost_left = 0.0;
  double ghost_right = 0.0;

  // Active support band. Stepping widens it by one cell; experiments with
  // compactly supported fields (spike runs) enable tracking to skip the
  // identically-zero remainder. Exact: outside the band everything is 0.
  bool track_support = false;
  int lo = 0, hi = 0;

  // ring storage
  int hist_count = 0;
  int hist_head = 0;
  std::vector<double> hist;     // window slabs of M+1 values
  std::vector<double> hist_t;   // absolute time per slab
  std::vector<double> hist_dx;  // jump distance of the step that made the row

  double t_comp = 0.0;

  // scratch (lazily sized) so stepping does not allocate
  std::vector<double> scratch_h, scratch_out, scratch_hl, scratch_hr;

  // cached uniform kernel weights K_j exp(-(j-1) nu dt)
  std::vector<double> uweights;
  double uw_dt = -1.0;
  int uw_len = -1;

  const double* row(int lag) const {  // lag in [1, min(hist_count, window)]
    int slot = hist_head - lag;
    if (slot < 0) slot += window;
    return hist.data() + static_cast<std::size_t>(slot) * (spec.M + 1);
  }
  double row_time(int lag) const {
    int slot = hist_head - lag;
    if (slot < 0) slot += window;
    return hist_t[slot];
  }
  double row_dx(int lag) const {
    int slot = hist_head - lag;
    if (slot < 0) slot += window;
    return hist_dx[slot];
  }
};

// Fresh state with phi = 0 everywhere and an empty ring.
BookState make_book_state(const LatticeSpec& spec, double nu, int window);

// Copy of `base` with the given history depth, phi re-seeded as row 0.
BookState with_window(const BookState& base, int window);

// Push the current phi as the newest history row (time state.t).
void push_history(BookState& state, double dx_of_row);

// One uniform-lattice update step at the nominal dt.
void step_uniform(BookState& state, const KernelTable& kernel,
                  const JumpProbabilities& probs, const SourceSpec& source);

// One non-uniform step of duration dt_m. Donor values are interpolated
// off-grid at x_i -+ dx_m per history row, with each row's own jump
// distance; survival factors use actual elapsed time.
void step_nonuniform(BookState& state, const KernelTable& kernel,
                     const JumpProbabilities& probs, const SourceSpec& source,
                     double dt_m);

// Three-point mid-point interpolation of a grid row at x_target; one-sided
// slope next to the walls, clamped to the boundary value outside.
double interpolate_offgrid(const std::vector<double>& phi_row, double x_target,
                           double dx, double x_min);

// App-style simple-diffusion comparator (alpha = 1, F = 0): out_i =
// (r/2)(phi_{i-1} + phi_{i+1}) - (r - theta) phi_i + s dt. Independent
// grouping from the kernel path; also the relaxation engine.
std::vector<double> simple_diffusion_step(const std::vector<double>& phi,
                                          const LatticeSpec& spec, double nu,
                                          const SourceSpec& source,
                                          double center);

// Iterate simple diffusion from phi = 0 until sup |phi' - phi| < tol.
// Throws std::runtime_error carrying the residual on non-convergence.
BookState relax_to_equilibrium(const LatticeSpec& spec,
                               const SourceSpec& source, double nu,
                               double tol = 1e-10, long max_steps = 2000000);

// Populate ghost values from the wall relation phi_{i+-1} = phi_i -+ c phi_i
// with c = dt V / D; the stencil reads them on the next step.
void apply_ghost_boundary(BookState& state, double V, double D_alpha,
                          double dt);

// Trapezoid integral of phi dx over the whole grid (compensated sum).
double trapezoid_mass(const BookState& state);

// Shift the frame `cells` whole cells to the right (x_min grows), moving
// phi and every retained history row with it; vacated cells are zeroed.
// The dynamics are translation-covariant, so a session can follow a
// wandering price without the book reaching a wall.
void translate_frame(BookState& state, int cells);

}  // namespace fraclob
