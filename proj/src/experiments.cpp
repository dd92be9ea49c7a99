#include "fraclob/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fraclob/book.hpp"
#include "fraclob/pool.hpp"

namespace fraclob {

VarianceSeries spike_variance(double alpha, double dx, int m0, double horizon,
                              double D_alpha, double r, double eps,
                              double delta_tau) {
  if (!(horizon >= 3))
    throw std::invalid_argument("spike variance: horizon must be >= 3");
  if (!(dx > 0))
    throw std::invalid_argument("spike variance: dx must be positive");
  if (!(delta_tau > 0))
    throw std::invalid_argument("spike variance: delta_tau must be positive");

  // Grid wide enough that the spike support stays numerically interior:
  // sixteen standard deviations at the final sample time.
  const double v_max =
      2.0 * D_alpha / std::tgamma(1.0 + alpha) * std::pow(horizon, alpha);
  const double half = std::max(16.0 * std::sqrt(v_max), 20.0 * dx);
  const int half_cells = static_cast<int>(std::ceil(half / dx));
  const int M = 2 * half_cells;

  LatticeSpec spec;
  spec.M = M;
  spec.L = M * dx;
  spec.x_min = -half_cells * dx;
  spec.alpha = alpha;
  spec.D = D_alpha;
  spec.r = r;
  spec.p0 = 0.0;

  const KernelTable kernel = build_kernel(alpha, eps, m0);
  // The perturbation field carries no annihilation term: linearity moves
  // the shocked-minus-unshocked difference into a bare spike evolving
  // source-free, and its variance growth is undamped.
  BookState state = make_book_state(spec, 0.0, kernel.window());
  state.track_support = true;
  const int center = M / 2;
  state.phi[center] = 1.0;
  state.lo = center;
  state.hi = center;

  const JumpProbabilities probs = jump_probabilities(r, 0.0);
  const SourceSpec no_source{0.0, 0.1};
  const double dt = spec.nominal_dt();
  const long samples = static_cast<long>(std::floor(horizon / delta_tau + 1e-9));
  const double tol = 1e-9 * dt;

  VarianceSeries out;
  out.alpha = alpha;
  out.dx = dx;
  out.m0 = kernel.window();
  out.dt = dt;
  out.t.reserve(samples);
  out.var.reserve(samples);

  long next = 1;
  const long max_steps =
      2 * (static_cast<long>(std::ceil(horizon / dt)) + 16);
  while (next <= samples) {
    if (state.n >= max_steps)
      throw std::runtime_error("spike variance: step budget exhausted");
    step_uniform(state, kernel, probs, no_source);
    if (state.t >= static_cast<double>(next) * delta_tau - tol) {
      double m = 0, m1 = 0, m2 = 0;
      for (int i = state.lo; i <= state.hi; ++i) {
        const double x = spec.x(i);
        m += state.phi[i];
        m1 += state.phi[i] * x;
        m2 += state.phi[i] * x * x;
      }
      const double mu1 = m1 / m;
      out.t.push_back(state.t);
      out.var.push_back(m2 / m - mu1 * mu1);
      ++next;
    }
  }
  out.fit = fit_power(out.t, out.var);
  return out;
}

namespace {

// Largest grid index strictly left of price p (the bid-side front cell).
int front_index(const LatticeSpec& spec, double p) {
  const double pos = (p - spec.x_min) / spec.dx();
  int k = static_cast<int>(std::ceil(pos - 1e-9)) - 1;
  return std::clamp(k, 0, spec.M);
}

}  // namespace

std::vector<ImpactCurve> impact_experiment(const ImpactConfig& cfg) {
  if (cfg.q_grid.empty())
    throw std::invalid_argument("impact: q_grid must not be empty");
  for (std::size_t i = 0; i < cfg.q_grid.size(); ++i) {
    if (!(cfg.q_grid[i] > 0) ||
        (i > 0 && !(cfg.q_grid[i] > cfg.q_grid[i - 1])))
      throw std::invalid_argument(
          "impact: q_grid must be positive and strictly increasing");
  }
  if (cfg.delays.empty())
    throw std::invalid_argument("impact: delays must not be empty");
  for (int dn : cfg.delays)
    if (dn < 1) throw std::invalid_argument("impact: delays must be >= 1");
  if (cfg.replications < 1)
    throw std::invalid_argument("impact: replications must be >= 1");

  // Mid-cell grid: when the intercept sits on a grid point, shift the
  // walls by half a cell so it sits between points instead.
  LatticeSpec spec = cfg.spec;
  const double dx = spec.dx();
  const double pos0 = (spec.p0 - spec.x_min) / dx;
  if (std::fabs(pos0 - std::round(pos0)) < 1e-9) spec.x_min += 0.5 * dx;
  spec.validate();

  const double dt = spec.nominal_dt();
  const KernelTable kernel = build_kernel(spec.alpha, cfg.eps, cfg.m0);
  const BookState relaxed =
      relax_to_equilibrium(spec, cfg.source, cfg.nu, cfg.relax_tol);

  int dn_max = 0;
  for (int dn : cfg.delays) dn_max = std::max(dn_max, dn);
  // Market impact counts the execution itself as the first book event;
  // flash injection is instantaneous, so its first event is a full step.
  const int cont_steps =
      (cfg.kind == OrderKind::Market) ? dn_max - 1 : dn_max;
  const long settle = cfg.noise ? cfg.settle_steps : 0;

  const std::size_t nq = cfg.q_grid.size();
  const std::size_t nd = cfg.delays.size();

  auto run_rep = [&](int rep) {
    // Antithetic pairing: replication 2k+1 replays 2k's path negated.
    const std::uint64_t rep_seed =
        cfg.antithetic ? cfg.seed + static_cast<std::uint64_t>(rep / 2)
                       : cfg.seed + static_cast<std::uint64_t>(rep);
    const double vsign = (cfg.antithetic && rep % 2 == 1) ? -1.0 : 1.0;
    Rng vrng(rep_seed, 0);
    Rng trng(rep_seed, 1);
    BookState base = with_window(relaxed, kernel.window());

    double V = 0.0;
    for (long s = 0; s < settle; ++s) {
      V = vsign * step_potential(vsign * V, cfg.rho, cfg.sigma, vrng);
      const double F = force_from_potential(V, cfg.beta, spec.D, spec.r);
      const JumpProbabilities probs = jump_probabilities(spec.r, F);
      const double dt_m = (cfg.scheme == Scheme::NonUniform)
                              ? trng.exponential(1.0 / dt)
                              : dt;
      apply_ghost_boundary(base, V, spec.D, dt_m);
      if (cfg.scheme == Scheme::Uniform)
        step_uniform(base, kernel, probs, cfg.source);
      else
        step_nonuniform(base, kernel, probs, cfg.source, dt_m);
      const double m = midprice(base, cfg.interp).value;
      if (cfg.source_follows_mid) base.source_center = m;
    }
    const double p_arrival = midprice(base, cfg.interp).value;

    // Common-random continuation: one stored realization of the potential
    // and of the waiting times, shared by every order size.
    std::vector<double> cont_V(cont_steps, 0.0), cont_dt(cont_steps, dt);
    double Vc = V;
    for (int k = 0; k < cont_steps; ++k) {
      if (cfg.noise)
        Vc = vsign * step_potential(vsign * Vc, cfg.rho, cfg.sigma, vrng);
      cont_V[k] = cfg.noise ? Vc : 0.0;
      if (cfg.scheme == Scheme::NonUniform)
        cont_dt[k] = trng.exponential(1.0 / dt);
    }

    // Unshocked control: the same continuation path with no order. Measuring
    // displacements against the counterfactual mid removes the common noise
    // response; on a deterministic run the control mid never moves.
    std::vector<double> ctrl_mid(static_cast<std::size_t>(cont_steps) + 1,
                                 p_arrival);
    if (cfg.control_variate) {
      BookState ctrl = base;
      for (int k = 1; k <= cont_steps; ++k) {
        const double F =
            force_from_potential(cont_V[k - 1], cfg.beta, spec.D, spec.r);
        const JumpProbabilities probs = jump_probabilities(spec.r, F);
        apply_ghost_boundary(ctrl, cont_V[k - 1], spec.D, cont_dt[k - 1]);
        if (cfg.scheme == Scheme::Uniform)
          step_uniform(ctrl, kernel, probs, cfg.source);
        else
          step_nonuniform(ctrl, kernel, probs, cfg.source, cont_dt[k - 1]);
        const double m = midprice(ctrl, cfg.interp).value;
        if (cfg.source_follows_mid) ctrl.source_center = m;
        ctrl_mid[static_cast<std::size_t>(k)] = m;
      }
    }

    std::vector<std::vector<double>> dp(nd, std::vector<double>(nq, 0.0));
    for (std::size_t qi = 0; qi < nq; ++qi) {
      BookState state = base;
      if (cfg.kind == OrderKind::Market) {
        execute_market(state, cfg.q_grid[qi], Side::Buy);
      } else {
        // one cell behind the bid front, diffusing toward the mid
        const int spike = std::max(0, front_index(spec, p_arrival) - 1);
        state.phi[spike] += cfg.q_grid[qi] / dx;
      }
      double mid = midprice(state, cfg.interp).value;
      if (cfg.source_follows_mid) state.source_center = mid;
      for (std::size_t di = 0; di < nd; ++di) {
        const int rec =
            (cfg.kind == OrderKind::Market) ? cfg.delays[di] - 1 : cfg.delays[di];
        if (rec == 0) dp[di][qi] = mid - ctrl_mid[0];
      }
      for (int k = 1; k <= cont_steps; ++k) {
        const double F =
            force_from_potential(cont_V[k - 1], cfg.beta, spec.D, spec.r);
        const JumpProbabilities probs = jump_probabilities(spec.r, F);
        apply_ghost_boundary(state, cont_V[k - 1], spec.D, cont_dt[k - 1]);
        if (cfg.scheme == Scheme::Uniform)
          step_uniform(state, kernel, probs, cfg.source);
        else
          step_nonuniform(state, kernel, probs, cfg.source, cont_dt[k - 1]);
        mid = midprice(state, cfg.interp).value;
        if (cfg.source_follows_mid) state.source_center = mid;
        for (std::size_t di = 0; di < nd; ++di) {
          const int rec = (cfg.kind == OrderKind::Market) ? cfg.delays[di] - 1
                                                          : cfg.delays[di];
          if (rec == k) dp[di][qi] = mid - ctrl_mid[static_cast<std::size_t>(k)];
        }
      }
    }
    return dp;
  };

  std::vector<std::function<std::vector<std::vector<double>>()>> jobs;
  jobs.reserve(cfg.replications);
  for (int rep = 0; rep < cfg.replications; ++rep)
    jobs.emplace_back([&run_rep, rep] { return run_rep(rep); });
  const auto reps = run_parallel(cfg.threads, jobs);

  std::vector<ImpactCurve> curves(nd);
  for (std::size_t di = 0; di < nd; ++di) {
    ImpactCurve& curve = curves[di];
    curve.delta_n = cfg.delays[di];
    curve.points.resize(nq);
    curve.rep_dp.reserve(reps.size());
    for (const auto& rep : reps) curve.rep_dp.push_back(rep[di]);
    std::vector<double> qs(nq), means(nq);
    for (std::size_t qi = 0; qi < nq; ++qi) {
      double s = 0;
      for (const auto& rep : reps) s += rep[di][qi];
      const double m = s / static_cast<double>(reps.size());
      double se = 0;
      if (reps.size() > 1) {
        double v = 0;
        for (const auto& rep : reps)
          v += (rep[di][qi] - m) * (rep[di][qi] - m);
        v /= static_cast<double>(reps.size() - 1);
        se = std::sqrt(v / static_cast<double>(reps.size()));
      }
      curve.points[qi] = {cfg.q_grid[qi], m, se};
      qs[qi] = cfg.q_grid[qi];
      means[qi] = m;
    }
    curve.power_fit = fit_power(qs, means);
    curve.log_fit = fit_log(qs, means);
  }
  return curves;
}

double kink_oracle(double V, double dx, double r, const LocalProfile& prof) {
  if (!(V >= 0)) throw std::invalid_argument("kink oracle: V must be >= 0");
  if (!(dx > 0) || !(r > 0 && r < 1))
    throw std::invalid_argument("kink oracle: bad lattice constants");
  if (!(prof.h > 0))
    throw std::invalid_argument("kink oracle: front density must be positive");
  const double v = V / dx;
  if (prof.delta_n == 1) {
    const double w = 0.5 * r * v;
    return dx * w / (2.0 * (2.0 * prof.h + w));
  }
  if (prof.delta_n == 2) {
    const double c = prof.theta - r;  // impulse self-jump weight
    const double A = prof.h + v * r * c;          // front cell after 2 steps
    const double B = -prof.h + v * r * r / 4.0;   // first opposing cell
    if (B < 0.0) return dx * A / (A - B) - 0.5 * dx;
    if (B == 0.0) return 0.5 * dx;
    return 0.5 * dx + dx * B / (B + prof.h2);
  }
  throw std::invalid_argument("kink oracle: delta_n must be 1 or 2");
}

double critical_volume(double h, double dx, double r) {
  if (!(h > 0) || !(dx > 0) || !(r > 0 && r < 1))
    throw std::invalid_argument("critical volume: bad arguments");
  return 4.0 * h * dx / (r * r);
}

StylisedFacts stylised_facts(const std::vector<double>& midprice_path,
                             double zeta, int max_lag) {
  if (midprice_path.size() < 8)
    throw std::invalid_argument("stylised facts: price path too short");
  StylisedFacts f;
  f.zeta = zeta;
  f.returns.resize(midprice_path.size() - 1);
  for (std::size_t i = 1; i < midprice_path.size(); ++i) {
    if (!(midprice_path[i] > 0) || !(midprice_path[i - 1] > 0))
      throw std::invalid_argument(
          "stylised facts: log-returns need positive prices");
    f.returns[i - 1] = std::log(midprice_path[i] / midprice_path[i - 1]);
  }
  f.signs = tick_rule_signs(midprice_path);

  std::vector<double> signs_d(f.signs.begin(), f.signs.end());
  std::vector<double> abs_r(f.returns.size());
  for (std::size_t i = 0; i < f.returns.size(); ++i)
    abs_r[i] = std::fabs(f.returns[i]);

  f.acf_signs = acf(signs_d, max_lag);
  f.acf_returns = acf(f.returns, max_lag);
  f.acf_abs = acf(abs_r, max_lag);
  f.band = 1.96 / std::sqrt(static_cast<double>(f.returns.size()));

  const int bins = std::clamp(
      static_cast<int>(std::lround(std::sqrt(
          static_cast<double>(f.returns.size())))),
      10, 100);
  f.hist = histogram(f.returns, bins);
  f.qq = qq_normal(f.returns);

  f.mexcess = mean_excess(abs_r);
  f.threshold = choose_threshold(f.mexcess, zeta, abs_r);
  f.gpd = gpd_fit(abs_r, f.threshold);
  const double exceed_fraction =
      static_cast<double>(f.gpd.n_excess) / static_cast<double>(abs_r.size());
  f.return_levels = return_levels(f.gpd, exceed_fraction);
  return f;
}

VolumeVolatility volume_volatility(const std::vector<SessionSummary>& sessions,
                                   double impact_scale, double delta) {
  if (sessions.empty())
    throw std::invalid_argument("volume volatility: no sessions");
  const std::size_t events = sessions[0].event_price.size();
  for (const auto& s : sessions)
    if (s.event_price.size() != events)
      throw std::invalid_argument(
          "volume volatility: sessions must be equal length");
  if (events < 16)
    throw std::invalid_argument("volume volatility: sessions too short");

  constexpr int kBlocks = 8;  // hourly blocks per session
  const std::size_t block = events / kBlocks;

  VolumeVolatility out;
  out.delta = delta;
  double rate_sum = 0;
  std::vector<double> hourly;
  hourly.reserve(sessions.size() * kBlocks);
  for (const auto& s : sessions) {
    rate_sum += s.mean_rate;
    double prev = s.event_price.front();
    for (int b = 0; b < kBlocks; ++b) {
      const double close = s.event_price[(b + 1) * block - 1];
      hourly.push_back(close - prev);
      prev = close;
    }
  }
  if (hourly.size() < 32)
    throw std::runtime_error(
        "volume volatility: fewer than 32 hourly samples");

  out.hours = static_cast<int>(hourly.size());
  out.trade_rate = rate_sum / static_cast<double>(sessions.size());
  out.V_D = out.trade_rate * static_cast<double>(events);
  out.sigma_h = std::sqrt(variance(hourly));
  out.sigma_D = std::sqrt(static_cast<double>(kBlocks)) * out.sigma_h;
  out.Y = impact_scale * std::pow(out.V_D, delta) / out.sigma_D;
  return out;
}

double complexity_estimate(double T, double K, double X, double dx,
                           double alpha, bool full_memory) {
  if (!(T > 0) || !(K > 0) || !(X > 0) || !(dx > 0))
    throw std::invalid_argument("complexity: arguments must be positive");
  if (!(alpha > 0 && alpha <= 1))
    throw std::invalid_argument("complexity: alpha must be in (0, 1]");
  const double space = std::pow(dx, -(1.0 + 4.0 / alpha));
  return full_memory ? X * T * T * space : T * K * X * space;
}

}  // namespace fraclob
