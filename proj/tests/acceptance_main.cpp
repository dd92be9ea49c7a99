// Acceptance gate: runs the end-to-end checks the library must satisfy and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failing criteria (0 when everything passes). Optional arguments select a
// subset of criteria by number, e.g. `fraclob_acceptance 3 4 5`.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fraclob/book.hpp"
#include "fraclob/dynamics.hpp"
#include "fraclob/experiments.hpp"
#include "fraclob/fit.hpp"
#include "fraclob/forcing.hpp"
#include "fraclob/io.hpp"
#include "fraclob/kernel.hpp"
#include "fraclob/lattice.hpp"
#include "fraclob/pool.hpp"
#include "fraclob/simulator.hpp"
#include "fraclob/stats.hpp"

namespace {

using namespace fraclob;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Smooth, asymmetric, mid-localised perturbation used to make the field
// comparisons non-trivial; decays to ~0 well before the walls.
void perturb(BookState& state, double amp_r, double amp_l) {
  const LatticeSpec& s = state.spec;
  for (int i = 0; i <= s.M; ++i) {
    const double x = s.x(i);
    const double ur = (x - (s.p0 + 8.0)) / 3.0;
    const double ul = (x - (s.p0 - 6.0)) / 2.5;
    state.phi[i] += amp_r * std::exp(-ur * ur) - amp_l * std::exp(-ul * ul);
  }
}

// Mirror-symmetric dipole about p0: exactly zero trapezoid mass on a grid
// symmetric about p0.
void perturb_dipole(BookState& state, double amp) {
  const LatticeSpec& s = state.spec;
  for (int i = 0; i <= s.M; ++i) {
    const double x = s.x(i);
    const double up = (x - (s.p0 + 5.0)) / 2.0;
    const double um = (x - (s.p0 - 5.0)) / 2.0;
    state.phi[i] += amp * (std::exp(-up * up) - std::exp(-um * um));
  }
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i)
    v[i] = std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
  return v;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return v;
}

// Bid-side front cell: largest grid index strictly left of p (same snap rule
// the impact experiment uses).
int front_cell(const LatticeSpec& spec, double p) {
  const double pos = (p - spec.x_min) / spec.dx();
  int k = static_cast<int>(std::ceil(pos - 1e-9)) - 1;
  return std::clamp(k, 0, spec.M);
}

std::string session_csv(const SessionResult& res) {
  std::vector<std::vector<double>> cols(4);
  for (std::size_t i = 0; i < res.event_step.size(); ++i) {
    cols[0].push_back(static_cast<double>(res.event_step[i]));
    cols[1].push_back(res.event_time[i]);
    cols[2].push_back(res.event_price[i]);
    cols[3].push_back(res.event_rate[i]);
  }
  return csv_from_columns({"step", "t", "p", "rate"}, cols);
}

// --------------------------------------------------------------------------
// 1. Fine-lattice diffusion validation: dx = 0.2, exponent within 0.01,
//    prefactor within 0.05 of 2D/Gamma(1+alpha).
// --------------------------------------------------------------------------
Outcome criterion1() {
  const std::vector<double> alphas = {0.9, 0.8, 0.7, 0.6};
  std::vector<std::function<VarianceSeries()>> jobs;
  for (double a : alphas)
    jobs.emplace_back([a] {
      const double dt = derive_dt(0.2, 0.5, a, 0.5);
      const int m0 = static_cast<int>(std::ceil(15.0 / dt));
      return spike_variance(a, 0.2, m0, 20.0);
    });
  const auto runs = run_parallel(4, jobs);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a_th = 2.0 * 0.5 / std::tgamma(1.0 + alphas[i]);
    const double db = std::fabs(runs[i].fit.b - alphas[i]);
    const double da = std::fabs(runs[i].fit.a - a_th);
    ok = ok && db <= 0.01 && da <= 0.05;
    detail += fmt("a=%.1f: b=%.5f (|db|=%.5f), a=%.5f (|da|=%.5f); ",
                  alphas[i], runs[i].fit.b, db, runs[i].fit.a, da);
  }
  return {ok, detail + "tol b 0.01, a 0.05"};
}

// --------------------------------------------------------------------------
// 2. Coarse-lattice diffusion validation: dx = 0.5, shared short history of
//    417 rows, exponent within 0.03; the alpha = 0.6 run departs from the
//    power law after ~13 trade events once its memory window is exhausted.
// --------------------------------------------------------------------------
Outcome criterion2() {
  const std::vector<double> alphas = {0.9, 0.8, 0.7, 0.6};
  std::vector<std::function<VarianceSeries()>> jobs;
  for (double a : alphas)
    jobs.emplace_back([a] { return spike_variance(a, 0.5, 417, 20.0); });
  const auto runs = run_parallel(4, jobs);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double db = std::fabs(runs[i].fit.b - alphas[i]);
    ok = ok && db <= 0.03;
    detail += fmt("a=%.1f: b=%.5f (|db|=%.5f); ", alphas[i], runs[i].fit.b, db);
  }

  // Departure statistic for alpha = 0.6: with 417 rows the memory covers
  // ~13 trade events, after which growth turns linear. (a) one-event
  // variance increments become constant (within 0.2% of the final one)
  // from an onset in [12, 15]; (b) earlier increments still vary by > 5%;
  // (c) the deviation from a_th t^0.6 is negative through event 12 and
  // positive by event 20 (linear growth overtakes the power law).
  const VarianceSeries& vs = runs[3];
  const int n = static_cast<int>(vs.var.size());
  Outcome bad{false, detail};
  if (n < 20) {
    bad.detail += "departure: too few samples";
    return bad;
  }
  std::vector<double> inc(n - 1);
  for (int l = 0; l < n - 1; ++l) inc[l] = vs.var[l + 1] - vs.var[l];
  const double fin = inc[n - 2];
  int onset = -1;
  for (int l = 0; l < n - 1 && onset < 0; ++l) {
    bool flat = true;
    for (int j = l; j < n - 1; ++j)
      flat = flat && std::fabs(inc[j] / fin - 1.0) <= 0.002;
    if (flat) onset = l + 1;  // 1-based: increment from event l+1 to l+2
  }
  double lo = inc[4], hi = inc[4];
  for (int l = 4; l <= 10; ++l) {  // increments over events 5..12
    lo = std::min(lo, inc[l]);
    hi = std::max(hi, inc[l]);
  }
  const double early_spread = hi / lo - 1.0;
  const double a_th = 2.0 * 0.5 / std::tgamma(1.6);
  auto reldev = [&](int l) {  // 1-based event index
    const double th = a_th * std::pow(vs.t[l - 1], 0.6);
    return vs.var[l - 1] / th - 1.0;
  };
  bool neg_early = true;
  for (int l = 1; l <= 12; ++l) neg_early = neg_early && reldev(l) < 0.0;
  const bool depart = onset >= 12 && onset <= 15 && early_spread > 0.05 &&
                      neg_early && reldev(20) > 0.0;
  ok = ok && depart;
  detail += fmt(
      "a=0.6 departure: increment-constancy onset %d (want 12..15), early "
      "spread %.1f%% (>5%%), reldev(12)=%.4f<0, reldev(20)=%.4f>0",
      onset, 100.0 * early_spread, reldev(12), reldev(20));
  return {ok, detail};
}

// --------------------------------------------------------------------------
// 3. Degeneration at alpha = 1: the kernel is the Kronecker delta exactly
//    and kernel stepping equals the simple-diffusion update to 1e-14 per
//    step over 1000 steps.
// --------------------------------------------------------------------------
Outcome criterion3() {
  const KernelTable kt = build_kernel(1.0);
  const bool kron = kt.K.size() == 1 && kt.K[0] == 1.0;

  LatticeSpec spec;  // defaults, alpha = 1
  spec.alpha = 1.0;
  const SourceSpec src;
  const double nu = 0.5;
  const double dt = spec.nominal_dt();
  BookState seed = relax_to_equilibrium(spec, src, nu, 1e-12);
  perturb(seed, 0.05, 0.04);
  BookState st = with_window(seed, kt.window());
  std::vector<double> ref = st.phi;
  const JumpProbabilities probs = jump_probabilities(spec.r, 0.0);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    apply_ghost_boundary(st, 0.0, spec.D, dt);
    step_uniform(st, kt, probs, src);
    ref = simple_diffusion_step(ref, spec, nu, src, spec.p0);
    double d = 0.0;
    for (int i = 0; i <= spec.M; ++i)
      d = std::max(d, std::fabs(st.phi[i] - ref[i]));
    worst = std::max(worst, d);
  }
  const bool ok = kron && worst <= 1e-14;
  return {ok, fmt("kernel delta: %s; max per-step deviation %.3e (tol 1e-14) "
                  "over 1000 steps",
                  kron ? "exact" : "NOT exact", worst)};
}

// --------------------------------------------------------------------------
// 4. Scheme equivalence: non-uniform stepping with constant dt_m equals
//    uniform stepping to 1e-12 per step over 1000 steps (F = 0).
// --------------------------------------------------------------------------
Outcome criterion4() {
  LatticeSpec spec;  // defaults, alpha = 0.8
  spec.alpha = 0.8;
  const SourceSpec src;
  const double nu = 0.5;
  const double dt = spec.nominal_dt();
  const KernelTable kt = build_kernel(spec.alpha);
  BookState seed = relax_to_equilibrium(spec, src, nu, 1e-12);
  perturb(seed, 0.05, 0.04);
  BookState su = with_window(seed, kt.window());
  BookState sn = su;
  const JumpProbabilities probs = jump_probabilities(spec.r, 0.0);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    apply_ghost_boundary(su, 0.0, spec.D, dt);
    step_uniform(su, kt, probs, src);
    apply_ghost_boundary(sn, 0.0, spec.D, dt);
    step_nonuniform(sn, kt, probs, src, dt);
    double d = 0.0;
    for (int i = 0; i <= spec.M; ++i)
      d = std::max(d, std::fabs(su.phi[i] - sn.phi[i]));
    worst = std::max(worst, d);
  }
  return {worst <= 1e-12,
          fmt("max per-step deviation %.3e (tol 1e-12) over 1000 steps",
              worst)};
}

// --------------------------------------------------------------------------
// 5. Mass conservation: defaults, F = 0, |integral of phi dx| <= 1e-8 at
//    every one of 10^4 steps starting from equilibrium plus a zero-mass
//    dipole.
// --------------------------------------------------------------------------
Outcome criterion5() {
  LatticeSpec spec;  // defaults, alpha = 0.8
  spec.alpha = 0.8;
  const SourceSpec src;
  const double nu = 0.5;
  const double dt = spec.nominal_dt();
  const KernelTable kt = build_kernel(spec.alpha);
  BookState seed = relax_to_equilibrium(spec, src, nu, 1e-12);
  perturb_dipole(seed, 0.05);
  BookState st = with_window(seed, kt.window());
  const JumpProbabilities probs = jump_probabilities(spec.r, 0.0);
  double worst = std::fabs(trapezoid_mass(st));
  for (int n = 0; n < 10000; ++n) {
    apply_ghost_boundary(st, 0.0, spec.D, dt);
    step_uniform(st, kt, probs, src);
    worst = std::max(worst, std::fabs(trapezoid_mass(st)));
  }
  return {worst <= 1e-8,
          fmt("max |mass| %.3e (tol 1e-8) over 10000 steps", worst)};
}

// --------------------------------------------------------------------------
// 6. Flash-order closed form: deterministic Uniform+Linear flash impact at
//    alpha = 1 with a pinned source matches the local closed form to 1e-10
//    on a 50-point volume grid spanning the critical volume, and stays
//    under the (1/2 + (dn-1)) dx ceiling.
// --------------------------------------------------------------------------
Outcome criterion6() {
  ImpactConfig cfg;
  cfg.kind = OrderKind::FlashLimit;
  cfg.delays = {1, 2};
  cfg.spec.alpha = 1.0;
  cfg.noise = false;
  cfg.source_follows_mid = false;

  // Read the local equilibrium profile off the same mid-cell lattice the
  // experiment relaxes internally.
  LatticeSpec spec = cfg.spec;
  const double dx = spec.dx();
  const double pos0 = (spec.p0 - spec.x_min) / dx;
  if (std::fabs(pos0 - std::round(pos0)) < 1e-9) spec.x_min += 0.5 * dx;
  const BookState relaxed =
      relax_to_equilibrium(spec, cfg.source, cfg.nu, cfg.relax_tol);
  const int front = front_cell(spec, spec.p0);
  LocalProfile prof;
  prof.h = relaxed.phi[front];
  prof.h2 = relaxed.phi[front - 1];
  prof.theta = std::exp(-cfg.nu * spec.nominal_dt());
  const double vc = critical_volume(prof.h, dx, spec.r);

  cfg.q_grid = linspace(0.05 * vc, 2.5 * vc, 50);
  const auto curves = impact_experiment(cfg);

  double worst = 0.0, worst_excess = -1.0;
  for (std::size_t di = 0; di < curves.size(); ++di) {
    prof.delta_n = curves[di].delta_n;
    const double cap = (0.5 + (prof.delta_n - 1)) * dx;
    for (const ImpactPoint& pt : curves[di].points) {
      const double want = kink_oracle(pt.q, dx, spec.r, prof);
      worst = std::max(worst, std::fabs(pt.dp - want));
      worst_excess = std::max(worst_excess, pt.dp - cap);
    }
  }
  const bool ok = worst <= 1e-10 && worst_excess <= 1e-12;
  return {ok, fmt("max |sim - closed form| %.3e (tol 1e-10) on 50 volumes "
                  "spanning V_c=%.4f, dn in {1,2}; max excess over "
                  "(1/2+(dn-1))dx ceiling %.3e",
                  worst, vc, worst_excess)};
}

// --------------------------------------------------------------------------
// 7. Market-impact exponents: deterministic power-fit b within 0.54+-0.05
//    (dn=1) and 0.73+-0.05 (dn=7). Ten noisy replications (noise paths
//    differ only after the order is placed into the relaxed book): the dn=1
//    fit equals the deterministic one exactly (the measurement happens
//    before any dynamics run), and the dn=7 fit lands at the flatter
//    noise-interaction exponent, 0.70+-0.05.
// --------------------------------------------------------------------------
Outcome criterion7() {
  const std::vector<double> qs = logspace(0.01, 2.0, 50);

  ImpactConfig det;
  det.kind = OrderKind::Market;
  det.q_grid = qs;
  det.delays = {1, 7};
  det.spec.alpha = 1.0;
  det.noise = false;
  const auto dcurves = impact_experiment(det);
  const double b1 = dcurves[0].power_fit.b;
  const double b7 = dcurves[1].power_fit.b;
  bool ok = std::fabs(b1 - 0.54) <= 0.05 && std::fabs(b7 - 0.73) <= 0.05;
  std::string detail =
      fmt("det b(1)=%.4f (0.54+-0.05), b(7)=%.4f (0.73+-0.05); ", b1, b7);

  ImpactConfig noisy = det;
  noisy.noise = true;
  noisy.replications = 10;
  noisy.antithetic = false;  // independent noise paths across replications
  noisy.settle_steps = 0;    // order placed into the relaxed book
  noisy.seed = 1;
  noisy.threads = 4;
  const auto ncurves = impact_experiment(noisy);
  double nb[2], nse[2];
  for (int di = 0; di < 2; ++di) {
    std::vector<double> bs;
    for (const auto& row : ncurves[di].rep_dp)
      bs.push_back(fit_power(qs, row).b);
    nb[di] = mean(bs);
    nse[di] = std::sqrt(variance(bs) / static_cast<double>(bs.size()));
  }
  ok = ok && std::fabs(nb[0] - b1) <= 1e-12;
  ok = ok && std::fabs(nb[1] - 0.70) <= 0.05;
  detail += fmt("noisy dn=1: b=%.4f (= det to %.1e); noisy dn=7: b=%.4f "
                "se=%.4f (0.70+-0.05)",
                nb[0], std::fabs(nb[0] - b1), nb[1], nse[1]);
  return {ok, detail};
}

// --------------------------------------------------------------------------
// 8. Volume-volatility scaling: five 25000-event sessions give a mean
//    trading rate within 10% of 0.0957 and Y in [1, 10]. Sessions run at
//    alpha = 1 for throughput (the fractional kernel only rescales the
//    step; the equilibrium and rate are alpha-independent) with a short
//    alpha = 0.8 session as a smoke check.
// --------------------------------------------------------------------------
Outcome criterion8() {
  // Impact scale from the deterministic dn=1 market curve.
  ImpactConfig det;
  det.kind = OrderKind::Market;
  det.q_grid = logspace(0.01, 2.0, 50);
  det.delays = {1};
  det.spec.alpha = 1.0;
  det.noise = false;
  const double a_det = impact_experiment(det)[0].power_fit.a;

  std::vector<std::function<SessionResult()>> jobs;
  for (std::uint64_t s = 1; s <= 5; ++s)
    jobs.emplace_back([s] {
      SessionConfig cfg;
      cfg.spec.alpha = 1.0;
      cfg.trade_events = 25000;
      cfg.seed = s;
      return run_session(cfg);
    });
  const auto runs = run_parallel(4, jobs);
  std::vector<SessionSummary> sessions;
  for (const auto& r : runs)
    sessions.push_back({r.event_price, mean(r.event_rate)});
  const VolumeVolatility vv = volume_volatility(sessions, a_det, 0.8);
  const double rate_dev = std::fabs(vv.trade_rate / 0.0957 - 1.0);
  bool ok = rate_dev <= 0.10 && vv.Y >= 1.0 && vv.Y <= 10.0;

  SessionConfig smoke;
  smoke.spec.alpha = 0.8;
  smoke.trade_events = 2000;
  smoke.seed = 1;
  const SessionResult sres = run_session(smoke);
  bool smoke_ok = sres.event_price.size() == 2000;
  for (double p : sres.event_price) smoke_ok = smoke_ok && std::isfinite(p);
  ok = ok && smoke_ok;
  return {ok, fmt("impact scale a=%.4f, V_D=%.1f, sigma_D=%.2f, "
                  "trade rate %.5f (0.0957+-10%%), Y=%.3f (in [1,10]); "
                  "alpha=0.8 smoke session: %s (mean rate %.5f)",
                  a_det, vv.V_D, vv.sigma_D, vv.trade_rate, vv.Y,
                  smoke_ok ? "completed" : "FAILED", mean(sres.event_rate))};
}

// --------------------------------------------------------------------------
// 9. Stylised facts: with persistent forcing the |return| ACF re-enters the
//    noise band at a smaller lag than the sign ACF (order-flow persistence
//    outlives volatility clustering here); with rho = 0 both ACFs sit
//    inside the band at every plotted lag; the return tail classifies as
//    light (negative tail-shape estimate).
// --------------------------------------------------------------------------
Outcome criterion9() {
  auto run_facts = [](double rho, std::uint64_t seed) {
    SessionConfig cfg;
    cfg.spec.alpha = 0.8;
    cfg.rho = rho;
    cfg.trade_events = 25000;
    cfg.seed = seed;
    const SessionResult res = run_session(cfg);
    return stylised_facts(res.event_price, 1.0, 50);
  };
  auto first_inside = [](const std::vector<double>& acf_v, double band) {
    for (std::size_t l = 1; l < acf_v.size(); ++l)
      if (std::fabs(acf_v[l]) < band) return static_cast<int>(l);
    return static_cast<int>(acf_v.size());
  };

  const StylisedFacts f = run_facts(0.9, 11);
  const int l_sign = first_inside(f.acf_signs, f.band);
  const int l_abs = first_inside(f.acf_abs, f.band);
  bool ok = l_sign < l_abs && f.gpd.shape < 0.0;
  std::string detail =
      fmt("rho=0.9: sign-ACF inside band at lag %d < |log-return|-ACF at lag "
          "%d (51 = still outside at max lag); tail shape %.3f (<0, light); ",
          l_sign, l_abs, f.gpd.shape);

  const StylisedFacts f0 = run_facts(0.0, 31);
  double worst = 0.0;
  for (int l = 1; l <= 20; ++l)
    worst = std::max(worst, std::max(std::fabs(f0.acf_signs[l]),
                                     std::fabs(f0.acf_abs[l])));
  ok = ok && worst < f0.band;
  detail += fmt("rho=0: max |ACF| %.4f < band %.4f over lags 1..20", worst,
                f0.band);
  return {ok, detail};
}

// --------------------------------------------------------------------------
// 10. Determinism: identical configs give byte-identical CSV output across
//     repeated runs and across worker-pool sizes.
// --------------------------------------------------------------------------
Outcome criterion10() {
  auto session_job = [](std::uint64_t seed, long events, double alpha) {
    SessionConfig cfg;
    cfg.spec.alpha = alpha;
    cfg.trade_events = events;
    cfg.seed = seed;
    return run_session(cfg);
  };

  const std::string a = sha1_hex(session_csv(session_job(7, 500, 0.8)));
  const std::string b = sha1_hex(session_csv(session_job(7, 500, 0.8)));
  const bool rerun_ok = a == b;

  std::vector<std::function<SessionResult()>> jobs;
  for (std::uint64_t s = 11; s <= 14; ++s)
    jobs.emplace_back([&, s] { return session_job(s, 300, 1.0); });
  std::vector<std::vector<std::string>> hashes;
  for (int threads : {1, 3, 4}) {
    const auto runs = run_parallel(threads, jobs);
    std::vector<std::string> h;
    for (const auto& r : runs) h.push_back(sha1_hex(session_csv(r)));
    hashes.push_back(h);
  }
  const bool pool_ok = hashes[0] == hashes[1] && hashes[0] == hashes[2];

  ImpactConfig imp;
  imp.kind = OrderKind::Market;
  imp.q_grid = {0.1, 0.25, 0.5, 0.75, 1.0};
  imp.delays = {1, 3};
  imp.spec.alpha = 1.0;
  imp.noise = true;
  imp.replications = 4;
  imp.settle_steps = 50;
  imp.seed = 5;
  bool impact_ok = true;
  imp.threads = 1;
  const auto c1t = impact_experiment(imp);
  imp.threads = 4;
  const auto c4t = impact_experiment(imp);
  for (std::size_t di = 0; di < c1t.size(); ++di) {
    impact_ok = impact_ok && c1t[di].rep_dp == c4t[di].rep_dp;
    for (std::size_t qi = 0; qi < c1t[di].points.size(); ++qi)
      impact_ok = impact_ok && c1t[di].points[qi].dp == c4t[di].points[qi].dp;
  }
  const bool ok = rerun_ok && pool_ok && impact_ok;
  return {ok, fmt("session rerun hashes %s; pool sizes 1/3/4 %s; impact "
                  "threads 1 vs 4 %s",
                  rerun_ok ? "match" : "DIFFER",
                  pool_ok ? "match" : "DIFFER",
                  impact_ok ? "bitwise equal" : "DIFFER")};
}

const char* kNames[10] = {
    "fine-lattice variance fits",
    "coarse-lattice fits + short-memory departure",
    "alpha=1 degeneration",
    "uniform/non-uniform scheme equivalence",
    "mass conservation",
    "flash-order closed form + ceiling",
    "market-impact exponents",
    "volume-volatility scaling",
    "stylised facts",
    "determinism",
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> want;
  for (int i = 1; i < argc; ++i) want.insert(std::atoi(argv[i]));
  if (want.empty())
    for (int k = 1; k <= 10; ++k) want.insert(k);

  const std::function<Outcome()> checks[10] = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};

  int failures = 0;
  for (int k = 1; k <= 10; ++k) {
    if (!want.count(k)) continue;
    Outcome out;
    try {
      out = checks[k - 1]();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failures;
    std::printf("CRITERION %2d [%s]: %s — %s\n", k, kNames[k - 1],
                out.pass ? "PASS" : "FAIL", out.detail.c_str());
    std::fflush(stdout);
  }
  if (failures)
    std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", failures);
  else
    std::printf("ACCEPTANCE: all criteria passed\n");
  return failures ? 1 : 0;
}
