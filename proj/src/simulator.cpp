#include "fraclob/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fraclob {

SessionResult run_session(const SessionConfig& cfg) {
  cfg.spec.validate();
  if (cfg.trade_events < 1)
    throw std::invalid_argument("session: trade_events must be >= 1");

  const double dt = cfg.spec.nominal_dt();
  SessionResult res;
  res.dt_nominal = dt;
  res.ratios = (cfg.scheme == Scheme::Uniform)
                   ? sampling_ratios(cfg.delta_tau, dt, dt)
                   : sampling_ratios(dt, dt, dt);

  const KernelTable kernel = build_kernel(cfg.spec.alpha, cfg.eps, cfg.m0);
  BookState base =
      relax_to_equilibrium(cfg.spec, cfg.source, cfg.nu, cfg.relax_tol);
  BookState state = with_window(base, kernel.window());

  Rng noise_rng(cfg.seed, 0);  // AR(1) potential draws
  Rng time_rng(cfg.seed, 1);   // non-uniform waiting-time draws
  double V = 0.0;

  const double horizon = static_cast<double>(cfg.trade_events) *
                         std::max(cfg.delta_tau, dt);
  const long max_steps =
      2 * (static_cast<long>(std::ceil(horizon / dt)) + 16);

  if (cfg.frame_stride > 0)
    res.frames.push_back({0, state.spec.x_min, state.phi});

  // The relaxed arrival state is the first recorded event, so a session of
  // N trade events emits exactly N price rows beginning at p0.
  res.event_step.push_back(0);
  res.event_time.push_back(0.0);
  res.event_price.push_back(midprice(state, cfg.interp).value);
  res.event_rate.push_back(trade_rate(state, cfg.spec.D));

  long next_event = 1;
  const double event_tol = 1e-9 * dt;
  while (next_event <= cfg.trade_events - 1) {
    if (state.n >= max_steps)
      throw std::runtime_error("session: step budget exhausted after " +
                               std::to_string(state.n) + " steps");
    if (cfg.noise) V = step_potential(V, cfg.rho, cfg.sigma, noise_rng);
    const double F =
        force_from_potential(V, cfg.beta, cfg.spec.D, cfg.spec.r);
    const JumpProbabilities probs = jump_probabilities(cfg.spec.r, F);
    const double dt_m = (cfg.scheme == Scheme::NonUniform)
                            ? time_rng.exponential(1.0 / dt)
                            : dt;
    apply_ghost_boundary(state, V, cfg.spec.D, dt_m);
    if (cfg.scheme == Scheme::Uniform)
      step_uniform(state, kernel, probs, cfg.source);
    else
      step_nonuniform(state, kernel, probs, cfg.source, dt_m);

    const MidPrice mid = midprice(state, cfg.interp);
    if (cfg.source_follows_mid) state.source_center = mid.value;
    if (cfg.recenter_margin_cells > 0) {
      const double dx = state.spec.dx();
      const double center =
          state.spec.x_min + 0.5 * dx * static_cast<double>(state.spec.M);
      const double off = (mid.value - center) / dx;
      if (std::fabs(off) > static_cast<double>(cfg.recenter_margin_cells))
        translate_frame(state, static_cast<int>(std::lround(off)));
    }
    res.potentials.push_back(V);

    const bool is_event =
        (cfg.scheme == Scheme::NonUniform) ||
        state.t >= static_cast<double>(next_event) * cfg.delta_tau - event_tol;
    if (is_event) {
      res.event_step.push_back(state.n);
      res.event_time.push_back(state.t);
      res.event_price.push_back(mid.value);
      res.event_rate.push_back(trade_rate(state, cfg.spec.D));
      ++next_event;
    }
    if (cfg.frame_stride > 0 && state.n % cfg.frame_stride == 0)
      res.frames.push_back({state.n, state.spec.x_min, state.phi});
  }
  res.n_steps = state.n;
  return res;
}

}  // namespace fraclob
