#include "fraclob/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fraclob {
namespace {

void advance_time(BookState& s, double dt) {
  const double y = dt - s.t_comp;
  const double t = s.t + y;
  s.t_comp = (t - s.t) - y;
  s.t = t;
}

void ensure_scratch(BookState& s, bool nonuniform) {
  const std::size_t n = static_cast<std::size_t>(s.spec.M) + 1;
  s.scratch_h.assign(n, 0.0);
  if (s.scratch_out.size() != n) s.scratch_out.assign(n, 0.0);
  if (nonuniform) {
    s.scratch_hl.assign(n, 0.0);
    s.scratch_hr.assign(n, 0.0);
  }
}

int active_window(const BookState& s, const KernelTable& kernel) {
  if (kernel.window() > s.window)
    throw std::logic_error("step: history window shorter than kernel window");
  if (static_cast<int>(s.phi.size()) != s.spec.M + 1)
    throw std::logic_error("step: field size does not match the grid");
  if (s.track_support && s.hi < s.lo)
    throw std::logic_error("step: empty support band");
  return std::min(s.hist_count, kernel.window());
}

// Row value interpolated at cell position pos = i -+ shift via the
// three-point mid-point rule; one-sided two-point slope at k = 0; clamped
// to the wall value outside the grid.
inline double donor_value(const double* row, int M, int k, double frac) {
  if (k < 0) return row[0];
  if (k >= M) return row[M];
  if (frac == 0.0) return row[k];
  if (k == 0) return row[0] + frac * (row[1] - row[0]);
  return row[k] + 0.5 * frac * (row[k + 1] - row[k - 1]);
}

}  // namespace

double source_density(double x, double p, double kappa, double mu) {
  const double u = mu * (x - p);
  return -kappa * u * std::exp(-u * u);
}

BookState make_book_state(const LatticeSpec& spec, double nu, int window) {
  spec.validate();
  if (window < 1) throw std::domain_error("book state: window must be >= 1");
  if (!(nu >= 0)) throw std::domain_error("book state: nu must be >= 0");
  BookState s;
  s.spec = spec;
  s.nu = nu;
  s.prev_mid = spec.p0;
  s.source_center = spec.p0;
  s.window = window;
  s.phi.assign(spec.M + 1, 0.0);
  s.hist.assign(static_cast<std::size_t>(window) * (spec.M + 1), 0.0);
  s.hist_t.assign(window, 0.0);
  s.hist_dx.assign(window, 0.0);
  s.lo = 0;
  s.hi = spec.M;
  return s;
}

BookState with_window(const BookState& base, int window) {
  BookState s = make_book_state(base.spec, base.nu, window);
  s.phi = base.phi;
  s.prev_mid = base.prev_mid;
  s.source_center = base.source_center;
  s.track_support = base.track_support;
  s.lo = base.lo;
  s.hi = base.hi;
  return s;
}

void push_history(BookState& state, double dx_of_row) {
  const std::size_t stride = static_cast<std::size_t>(state.spec.M) + 1;
  double* dst = state.hist.data() + static_cast<std::size_t>(state.hist_head) * stride;
  std::copy(state.phi.begin(), state.phi.end(), dst);
  state.hist_t[state.hist_head] = state.t;
  state.hist_dx[state.hist_head] = dx_of_row;
  state.hist_head = (state.hist_head + 1) % state.window;
  if (state.hist_count < state.window) ++state.hist_count;
}

void step_uniform(BookState& state, const KernelTable& kernel,
                  const JumpProbabilities& probs, const SourceSpec& source) {
  const int M = state.spec.M;
  const double dt = state.spec.nominal_dt();
  const double dx = state.spec.dx();
  if (state.track_support && source.kappa != 0.0)
    throw std::logic_error("step: support tracking requires a zero source");

  push_history(state, dx);
  const int Wn = active_window(state, kernel);
  ensure_scratch(state, false);

  // Cache w_j = K_j exp(-(j-1) nu dt); dt never changes within a run.
  if (state.uw_dt != dt || state.uw_len != kernel.window()) {
    state.uweights.resize(kernel.window());
    for (int j = 1; j <= kernel.window(); ++j)
      state.uweights[j - 1] =
          kernel.K[j - 1] * std::exp(-(j - 1) * state.nu * dt);
    state.uw_dt = dt;
    state.uw_len = kernel.window();
  }

  const int lo = state.track_support ? state.lo : 0;
  const int hi = state.track_support ? state.hi : M;
  double* __restrict h = state.scratch_h.data();
  for (int j = 1; j <= Wn; ++j) {
    const double w = state.uweights[j - 1];
    const double* __restrict rp = state.row(j);
    for (int i = lo; i <= hi; ++i) h[i] += w * rp[i];
  }

  const double theta = std::exp(-state.nu * dt);
  const double r = probs.r();
  const double c = state.ghost_c;
  const int a = std::max(0, lo - 1);
  const int b = std::min(M, hi + 1);
  double* out = state.scratch_out.data();
  for (int i = a; i <= b; ++i) {
    const double hl = (i == 0) ? (1.0 + c) * h[0] : h[i - 1];
    const double hr = (i == M) ? (1.0 - c) * h[M] : h[i + 1];
    double v = probs.p_right * hl + probs.p_left * hr - r * h[i] +
               theta * state.phi[i];
    if (source.kappa != 0.0)
      v += source_density(state.spec.x(i), state.source_center, source.kappa,
                          source.mu) *
           dt;
    out[i] = v;
  }
  std::copy(out + a, out + b + 1, state.phi.begin() + a);
  state.lo = a;
  state.hi = b;
  advance_time(state, dt);
  ++state.n;
}

void step_nonuniform(BookState& state, const KernelTable& kernel,
                     const JumpProbabilities& probs, const SourceSpec& source,
                     double dt_m) {
  if (!(dt_m > 0)) throw std::domain_error("step: dt_m must be positive");
  const int M = state.spec.M;
  const double dx = state.spec.dx();
  if (state.track_support && source.kappa != 0.0)
    throw std::logic_error("step: support tracking requires a zero source");

  const double t_entry = state.t;
  const double dx_row =
      derive_dx(dt_m, state.spec.D, state.spec.alpha, state.spec.r);
  push_history(state, dx_row);
  const int Wn = active_window(state, kernel);
  ensure_scratch(state, true);

  const int lo = state.track_support ? state.lo : 0;
  const int hi = state.track_support ? state.hi : M;
  const int a = std::max(0, lo - 1);
  const int b = std::min(M, hi + 1);
  double* __restrict hc = state.scratch_h.data();
  double* __restrict hl = state.scratch_hl.data();
  double* __restrict hr = state.scratch_hr.data();

  for (int j = 1; j <= Wn; ++j) {
    const double w =
        kernel.K[j - 1] * std::exp(-state.nu * (t_entry - state.row_time(j)));
    const double* __restrict row = state.row(j);

    // Constant per-row donor offset in cells; decompose into integer shift
    // and fraction once, snapping near-grid targets onto the grid.
    const double shift = state.row_dx(j) / dx;
    long ks = static_cast<long>(std::floor(shift));
    double fr = shift - static_cast<double>(ks);
    if (fr < 1e-12) {
      fr = 0.0;
    } else if (fr > 1.0 - 1e-12) {
      fr = 0.0;
      ++ks;
    }
    const int koffL = static_cast<int>(ks) + (fr > 0.0 ? 1 : 0);
    const double frL = (fr > 0.0) ? 1.0 - fr : 0.0;
    const int koffR = static_cast<int>(ks);
    const double frR = fr;

    for (int i = a; i <= b; ++i) {
      const double vl = donor_value(row, M, i - koffL, frL);
      const double vr = donor_value(row, M, i + koffR, frR);
      hl[i] += w * vl;
      hr[i] += w * vr;
      hc[i] += w * row[i];
    }
  }

  const double theta = std::exp(-state.nu * dt_m);
  const double r = probs.r();
  double* out = state.scratch_out.data();
  for (int i = a; i <= b; ++i) {
    double v = probs.p_left * hl[i] + probs.p_right * hr[i] - r * hc[i] +
               theta * state.phi[i];
    if (source.kappa != 0.0)
      v += source_density(state.spec.x(i), state.source_center, source.kappa,
                          source.mu) *
           dt_m;
    out[i] = v;
  }
  std::copy(out + a, out + b + 1, state.phi.begin() + a);
  state.lo = a;
  state.hi = b;
  advance_time(state, dt_m);
  ++state.n;
}

double interpolate_offgrid(const std::vector<double>& phi_row, double x_target,
                           double dx, double x_min) {
  const int M = static_cast<int>(phi_row.size()) - 1;
  if (M < 1) throw std::domain_error("interpolate: need at least two points");
  const double pos = (x_target - x_min) / dx;
  if (pos <= 0.0) return phi_row[0];
  if (pos >= static_cast<double>(M)) return phi_row[M];
  int k = static_cast<int>(std::floor(pos));
  double frac = pos - k;
  if (frac < 1e-12) {
    frac = 0.0;
  } else if (frac > 1.0 - 1e-12) {
    frac = 0.0;
    if (++k >= M) return phi_row[M];
  }
  return donor_value(phi_row.data(), M, k, frac);
}

std::vector<double> simple_diffusion_step(const std::vector<double>& phi,
                                          const LatticeSpec& spec, double nu,
                                          const SourceSpec& source,
                                          double center) {
  const int M = spec.M;
  if (static_cast<int>(phi.size()) != M + 1)
    throw std::logic_error("simple diffusion: field size mismatch");
  // Classical-walk step at the alpha = 1 coupling regardless of spec.alpha;
  // this is both the relaxation engine and the degeneration comparator.
  const double dt = derive_dt(spec.dx(), spec.D, 1.0, spec.r);
  const double theta = std::exp(-nu * dt);
  const double half_r = 0.5 * spec.r;
  const double decay = spec.r - theta;
  std::vector<double> out(M + 1);
  for (int i = 0; i <= M; ++i) {
    const double l = (i == 0) ? phi[0] : phi[i - 1];
    const double rr = (i == M) ? phi[M] : phi[i + 1];
    double v = half_r * (l + rr) - decay * phi[i];
    if (source.kappa != 0.0)
      v += source_density(spec.x(i), center, source.kappa, source.mu) * dt;
    out[i] = v;
  }
  return out;
}

BookState relax_to_equilibrium(const LatticeSpec& spec,
                               const SourceSpec& source, double nu, double tol,
                               long max_steps) {
  spec.validate();
  if (!(tol > 0)) throw std::domain_error("relax: tol must be positive");
  BookState s = make_book_state(spec, nu, 1);
  double res = 0.0;
  for (long k = 0; k < max_steps; ++k) {
    std::vector<double> next =
        simple_diffusion_step(s.phi, spec, nu, source, spec.p0);
    res = 0.0;
    for (int i = 0; i <= spec.M; ++i)
      res = std::max(res, std::fabs(next[i] - s.phi[i]));
    s.phi.swap(next);
    if (res < tol) return s;
  }
  throw std::runtime_error("relax: no convergence after " +
                           std::to_string(max_steps) +
                           " steps; residual = " + std::to_string(res));
}

void apply_ghost_boundary(BookState& state, double V, double D_alpha,
                          double dt) {
  if (!(D_alpha > 0)) throw std::domain_error("ghost: D must be positive");
  const double c = dt * V / D_alpha;
  state.ghost_c = c;
  state.ghost_left = (1.0 + c) * state.phi.front();
  state.ghost_right = (1.0 - c) * state.phi.back();
}

double trapezoid_mass(const BookState& state) {
  const int M = state.spec.M;
  double sum = 0.0, comp = 0.0;
  auto add = [&](double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  add(0.5 * state.phi[0]);
  for (int i = 1; i < M; ++i) add(state.phi[i]);
  add(0.5 * state.phi[M]);
  return sum * state.spec.dx();
}

namespace {

// In-place shift of one M+1-point row: row'[i] = row[i + cells], zeros in.
void shift_row(double* row, int n_points, int cells) {
  if (cells > 0) {
    for (int i = 0; i + cells < n_points; ++i) row[i] = row[i + cells];
    for (int i = std::max(0, n_points - cells); i < n_points; ++i) row[i] = 0.0;
  } else {
    for (int i = n_points - 1; i - (-cells) >= 0; --i) row[i] = row[i + cells];
    for (int i = std::min(n_points, -cells) - 1; i >= 0; --i) row[i] = 0.0;
  }
}

}  // namespace

void translate_frame(BookState& state, int cells) {
  if (cells == 0) return;
  const int n_points = state.spec.M + 1;
  state.spec.x_min += static_cast<double>(cells) * state.spec.dx();
  shift_row(state.phi.data(), n_points, cells);
  const int rows = std::min(state.hist_count, state.window);
  for (int lag = 1; lag <= rows; ++lag) {
    int slot = state.hist_head - lag;
    if (slot < 0) slot += state.window;
    shift_row(state.hist.data() + static_cast<std::size_t>(slot) * n_points,
              n_points, cells);
  }
  if (state.track_support) {
    state.lo = std::clamp(state.lo - cells, 0, state.spec.M);
    state.hi = std::clamp(state.hi - cells, 0, state.spec.M);
  }
}

}  // namespace fraclob
