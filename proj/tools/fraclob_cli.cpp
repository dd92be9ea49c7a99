// Command-line front-end: every experiment as a subcommand, every output a
// CSV or JSON artifact under --out, described by a manifest that names the
// canonical config, its content hash, and the seeds.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "fraclob/experiments.hpp"
#include "fraclob/io.hpp"
#include "fraclob/pool.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fraclob;

namespace {

LatticeSpec spec_from(const RunConfig& c) {
  LatticeSpec s;
  s.L = c.L;
  s.M = static_cast<int>(c.M);
  s.x_min = c.x_min;
  s.alpha = c.alpha;
  s.D = c.D_alpha;
  s.r = c.r;
  s.p0 = c.p0;
  return s;
}

InterpMethod interp_from(const std::string& name) {
  return name == "linear" ? InterpMethod::Linear : InterpMethod::CubicSpline;
}

SessionConfig session_from(const RunConfig& c, std::uint64_t seed) {
  SessionConfig s;
  s.spec = spec_from(c);
  s.nu = c.nu;
  s.source = SourceSpec{c.kappa, c.mu};
  s.rho = c.rho;
  s.sigma = c.sigma;
  s.beta = c.beta;
  s.eps = c.eps;
  s.m0 = static_cast<int>(c.m0);
  s.scheme = c.scheme == "uniform" ? Scheme::Uniform : Scheme::NonUniform;
  s.interp = interp_from(c.interp);
  s.delta_tau = c.gamma1 > 0
                    ? static_cast<double>(c.gamma1) * s.spec.nominal_dt()
                    : c.delta_tau;
  s.trade_events = c.trade_events;
  s.seed = seed;
  s.frame_stride = static_cast<int>(c.frames);
  return s;
}

std::string seed_tag(std::uint64_t seed) {
  return "_s" + std::to_string(seed);
}

std::string num_tag(double v) {
  std::string s = format_g17(v);
  for (char& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

struct Emitter {
  fs::path dir;
  std::vector<std::string> written;

  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& cols) {
    write_text_file((dir / name).string(), csv_from_columns(header, cols));
    written.push_back(name);
  }
  void text(const std::string& name, const std::string& content) {
    write_text_file((dir / name).string(), content);
    written.push_back(name);
  }
  void manifest(const RunConfig& cfg) {
    json j = json::parse(manifest_json(cfg, written));
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&tt));
    j["generated_at"] = buf;  // the only non-reproducible field
    write_text_file((dir / "manifest.json").string(), j.dump(2) + "\n");
  }
};

json fit_to_json(const FitResult& f) {
  return json{{"a", f.a},
              {"b", f.b},
              {"se_a", f.se_a},
              {"se_b", f.se_b},
              {"rss", f.rss},
              {"iterations", f.iterations}};
}

void run_simulate(const RunConfig& cfg, Emitter& em) {
  std::vector<std::function<SessionResult()>> jobs;
  for (std::uint64_t seed : cfg.seeds)
    jobs.emplace_back([&cfg, seed] { return run_session(session_from(cfg, seed)); });
  const auto results = run_parallel(static_cast<int>(cfg.threads), jobs);

  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    const std::string tag = seed_tag(cfg.seeds[i]);
    std::vector<double> steps(res.event_step.begin(), res.event_step.end());
    em.csv("path" + tag + ".csv", {"step", "t", "p", "rate"},
           {steps, res.event_time, res.event_price, res.event_rate});
    if (cfg.frames > 0 && !res.frames.empty()) {
      const double dx = spec_from(cfg).dx();
      std::vector<double> fn, fx, fphi;
      for (const auto& fr : res.frames)
        for (std::size_t k = 0; k < fr.phi.size(); ++k) {
          fn.push_back(static_cast<double>(fr.n));
          fx.push_back(fr.x_min + dx * static_cast<double>(k));
          fphi.push_back(fr.phi[k]);
        }
      em.csv("frames" + tag + ".csv", {"n", "x", "phi"}, {fn, fx, fphi});
    }
  }
}

void run_variance(const RunConfig& cfg, double dx_flag, double horizon,
                  Emitter& em) {
  const double dt = derive_dt(dx_flag, cfg.D_alpha, cfg.alpha, cfg.r);
  int m0 = static_cast<int>(cfg.m0);
  if (m0 == 0) {
    // Default memory budget: fine grids keep 15 time units of history at
    // their own step; coarse grids share one budget sized by the slowest
    // diffusion it must serve (13 time units at alpha = 0.6).
    const double budget_dt =
        dx_flag < 0.35 ? dt : derive_dt(dx_flag, cfg.D_alpha, 0.6, cfg.r);
    const double units = dx_flag < 0.35 ? 15.0 : 13.0;
    m0 = static_cast<int>(std::ceil(units / budget_dt));
  }
  const VarianceSeries vs = spike_variance(cfg.alpha, dx_flag, m0, horizon,
                                           cfg.D_alpha, cfg.r, cfg.eps,
                                           cfg.delta_tau);
  const std::string tag = "_a" + num_tag(cfg.alpha) + "_dx" + num_tag(dx_flag);
  em.csv("variance" + tag + ".csv", {"t", "var"}, {vs.t, vs.var});
  json j;
  j["alpha"] = vs.alpha;
  j["dx"] = vs.dx;
  j["dt"] = vs.dt;
  j["m0"] = vs.m0;
  j["fit"] = fit_to_json(vs.fit);
  j["theory_a"] = 2.0 * cfg.D_alpha / std::tgamma(1.0 + cfg.alpha);
  j["theory_b"] = cfg.alpha;
  em.text("variance_fit" + tag + ".json", j.dump(2) + "\n");
}

void run_impact(const RunConfig& cfg, const std::string& kind,
                std::vector<int> delays, int reps, bool noise, double qmin,
                double qmax, int nq, bool pin_source, long settle,
                bool independent, bool raw_baseline, Emitter& em) {
  ImpactConfig ic;
  ic.kind = kind == "market" ? OrderKind::Market : OrderKind::FlashLimit;
  ic.spec = spec_from(cfg);
  ic.nu = cfg.nu;
  ic.source = SourceSpec{cfg.kappa, cfg.mu};
  ic.rho = cfg.rho;
  ic.sigma = cfg.sigma;
  ic.beta = cfg.beta;
  ic.eps = cfg.eps;
  ic.m0 = static_cast<int>(cfg.m0);
  ic.scheme = cfg.scheme == "uniform" ? Scheme::Uniform : Scheme::NonUniform;
  ic.interp = interp_from(cfg.interp);
  ic.seed = cfg.seeds.front();
  ic.replications = reps;
  ic.noise = noise;
  ic.threads = static_cast<int>(cfg.threads);
  ic.source_follows_mid = !pin_source;
  ic.settle_steps = settle;
  ic.antithetic = !independent;
  ic.control_variate = !raw_baseline;
  if (delays.empty()) delays = {1, 2, 7};
  ic.delays = delays;
  if (!(qmin > 0) || !(qmax > qmin) || nq < 3)
    throw std::invalid_argument("impact: require 0 < qmin < qmax and nq >= 3");
  ic.q_grid.resize(nq);
  for (int i = 0; i < nq; ++i)
    ic.q_grid[i] =
        qmin * std::pow(qmax / qmin, static_cast<double>(i) / (nq - 1));

  const auto curves = impact_experiment(ic);
  json fits = json::array();
  for (const auto& c : curves) {
    std::vector<double> q, dp, se;
    for (const auto& pt : c.points) {
      q.push_back(pt.q);
      dp.push_back(pt.dp);
      se.push_back(pt.se);
    }
    em.csv("impact_" + kind + "_dn" + std::to_string(c.delta_n) + ".csv",
           {"q", "dp", "se"}, {q, dp, se});
    json jf;
    jf["delta_n"] = c.delta_n;
    jf["power"] = fit_to_json(c.power_fit);
    jf["log"] = fit_to_json(c.log_fit);
    fits.push_back(jf);
  }
  em.text("impact_" + kind + "_fits.json", fits.dump(2) + "\n");
}

void run_facts(const RunConfig& cfg, Emitter& em) {
  std::vector<std::function<SessionResult()>> jobs;
  for (std::uint64_t seed : cfg.seeds)
    jobs.emplace_back([&cfg, seed] { return run_session(session_from(cfg, seed)); });
  const auto results = run_parallel(static_cast<int>(cfg.threads), jobs);

  for (std::size_t i = 0; i < results.size(); ++i) {
    const std::string tag = seed_tag(cfg.seeds[i]);
    const StylisedFacts f = stylised_facts(results[i].event_price, cfg.zeta);

    std::vector<double> lag(f.acf_returns.size());
    for (std::size_t k = 0; k < lag.size(); ++k) lag[k] = static_cast<double>(k);
    std::vector<double> sgn(f.acf_signs.begin(), f.acf_signs.end());
    em.csv("acf" + tag + ".csv", {"lag", "signs", "returns", "abs_returns"},
           {lag, sgn, f.acf_returns, f.acf_abs});

    std::vector<double> idx(f.returns.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<double>(k);
    em.csv("returns" + tag + ".csv", {"i", "r"}, {idx, f.returns});
    em.csv("hist" + tag + ".csv", {"center", "density"},
           {f.hist.centers, f.hist.density});

    std::vector<double> qn, qe;
    for (const auto& [a, b] : f.qq) {
      qn.push_back(a);
      qe.push_back(b);
    }
    em.csv("qq" + tag + ".csv", {"normal", "empirical"}, {qn, qe});
    em.csv("mexcess" + tag + ".csv", {"u", "e", "se"},
           {f.mexcess.u, f.mexcess.e, f.mexcess.se});

    std::vector<double> rm, rz;
    for (const auto& [m, z] : f.return_levels) {
      rm.push_back(m);
      rz.push_back(z);
    }
    em.csv("return_levels" + tag + ".csv", {"period", "level"}, {rm, rz});

    json j;
    j["band"] = f.band;
    j["zeta"] = f.zeta;
    j["threshold"] = f.threshold;
    j["gpd"] = {{"shape", f.gpd.shape},
                {"scale", f.gpd.scale},
                {"se_shape", f.gpd.se_shape},
                {"se_scale", f.gpd.se_scale},
                {"n_excess", f.gpd.n_excess}};
    em.text("tails" + tag + ".json", j.dump(2) + "\n");
  }
}

void run_kernel(const RunConfig& cfg, Emitter& em) {
  const KernelTable k =
      build_kernel(cfg.alpha, cfg.eps, static_cast<int>(cfg.m0));
  std::vector<double> j(k.K.size());
  for (std::size_t i = 0; i < j.size(); ++i) j[i] = static_cast<double>(i + 1);
  em.csv("kernel_a" + num_tag(cfg.alpha) + ".csv", {"j", "K"}, {j, k.K});
}

void run_complexity(const RunConfig& cfg, double T, double K, Emitter& em) {
  const std::vector<double> alphas = {0.6, 0.7, 0.8, 0.9, 1.0};
  const std::vector<double> dxs = {0.5, 0.2, 0.1};
  std::vector<double> ca, cdx, cw, cf;
  for (double a : alphas)
    for (double d : dxs) {
      ca.push_back(a);
      cdx.push_back(d);
      cw.push_back(complexity_estimate(T, K, cfg.L, d, a, false));
      cf.push_back(complexity_estimate(T, K, cfg.L, d, a, true));
    }
  em.csv("complexity.csv", {"alpha", "dx", "window_ops", "full_ops"},
         {ca, cdx, cw, cf});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional order-book diffusion toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::uint64_t> seeds;
  double alpha = 0, rho = 0, sigma = 0;
  std::string scheme, interp;
  long gamma1 = -1, m0 = -1, frames = -1, events = -1, threads = -1;
  double zeta_flag = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seeds, "RNG seed (repeatable)");
    sub->add_option("--alpha", alpha, "fractional order");
    sub->add_option("--rho", rho, "potential autocorrelation");
    sub->add_option("--sigma", sigma, "potential scale");
    sub->add_option("--scheme", scheme, "uniform | nonuniform")
        ->check(CLI::IsMember({"uniform", "nonuniform"}));
    sub->add_option("--interp", interp, "linear | cubic")
        ->check(CLI::IsMember({"linear", "cubic", "spline"}));
    sub->add_option("--gamma1", gamma1, "event stride in steps (overrides delta_tau)");
    sub->add_option("--m0", m0, "memory window override (rows)");
    sub->add_option("--frames", frames, "frame dump stride (steps)");
    sub->add_option("--events", events, "trade events per session");
    sub->add_option("--threads", threads, "worker pool size");
    sub->add_option("--zeta", zeta_flag, "tail threshold tolerance");
  };

  auto* sim = app.add_subcommand("simulate", "mid-price path per seed");
  auto* var = app.add_subcommand("variance", "spike-variance power-law check");
  auto* imp = app.add_subcommand("impact", "price-impact curves and fits");
  auto* fac = app.add_subcommand("facts", "stylised-facts bundle per seed");
  auto* ker = app.add_subcommand("kernel", "dump memory kernel weights");
  auto* cpx = app.add_subcommand("complexity", "operation-count table");
  for (auto* s : {sim, var, imp, fac, ker, cpx}) add_common(s);

  double dx_flag = 0.2, horizon = 20.0;
  var->add_option("--dx", dx_flag, "lattice spacing");
  var->add_option("--horizon", horizon, "trade-time horizon");

  std::string kind = "market";
  std::vector<int> delays;
  int reps = 1, nq = 50;
  bool noise = false, pin_source = false;
  double qmin = 0.01, qmax = 4.0;
  imp->add_option("--kind", kind, "market | flash")
      ->check(CLI::IsMember({"market", "flash"}));
  imp->add_option("--dn", delays, "measurement delay in events (repeatable)");
  imp->add_option("--reps", reps, "replications");
  imp->add_flag("--noise", noise, "stochastic potential on");
  imp->add_flag("--pin-source", pin_source, "keep the source centered at p0");
  imp->add_option("--qmin", qmin, "smallest order size");
  imp->add_option("--qmax", qmax, "largest order size");
  imp->add_option("--nq", nq, "order-size grid points");
  long settle = 0;
  imp->add_option("--settle", settle, "noisy pre-arrival steps");
  bool independent = false, raw_baseline = false;
  imp->add_flag("--independent", independent,
                "independent replications (no antithetic pairing)");
  imp->add_flag("--raw-baseline", raw_baseline,
                "measure displacement from the arrival mid (no control book)");

  double cT = 20.0, cK = 15.0;
  cpx->add_option("--T", cT, "physical horizon");
  cpx->add_option("--K", cK, "memory span (time units)");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config_text(read_text_file(config_path));
    auto* sub = app.get_subcommands().front();
    if (sub->count("--out")) cfg.out_dir = out_dir;
    if (sub->count("--seed")) cfg.seeds = seeds;
    if (sub->count("--alpha")) cfg.alpha = alpha;
    if (sub->count("--rho")) cfg.rho = rho;
    if (sub->count("--sigma")) cfg.sigma = sigma;
    if (sub->count("--scheme")) cfg.scheme = scheme;
    if (sub->count("--interp"))
      cfg.interp = interp == "cubic" ? "spline" : interp;
    if (sub->count("--gamma1")) cfg.gamma1 = gamma1;
    if (sub->count("--m0")) cfg.m0 = m0;
    if (sub->count("--frames")) cfg.frames = frames;
    if (sub->count("--events")) cfg.trade_events = events;
    if (sub->count("--threads")) cfg.threads = threads;
    if (sub->count("--zeta")) cfg.zeta = zeta_flag;
    validate_config(cfg);

    fs::create_directories(cfg.out_dir);
    Emitter em{fs::path(cfg.out_dir), {}};

    if (sub == sim) run_simulate(cfg, em);
    else if (sub == var) run_variance(cfg, dx_flag, horizon, em);
    else if (sub == imp)
      run_impact(cfg, kind, delays, reps, noise, qmin, qmax, nq, pin_source,
                 settle, independent, raw_baseline, em);
    else if (sub == fac) run_facts(cfg, em);
    else if (sub == ker) run_kernel(cfg, em);
    else run_complexity(cfg, cT, cK, em);

    em.manifest(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
