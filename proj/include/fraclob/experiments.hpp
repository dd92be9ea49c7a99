#pragma once

#include <cstdint>
#include <vector>

#include "fraclob/fit.hpp"
#include "fraclob/simulator.hpp"
#include "fraclob/stats.hpp"

namespace fraclob {

// ---------------------------------------------------------------------------
// Spike-variance diffusion check
// ---------------------------------------------------------------------------

struct VarianceSeries {
  double alpha = 1.0;
  double dx = 0.5;
  int m0 = 0;           // history rows actually retained
  double dt = 0;        // coupled step
  std::vector<double> t;     // trade-event times 1..horizon
  std::vector<double> var;   // spike variance at those times
  FitResult fit;             // var = a * t^b
};

// Evolves a unit point perturbation with F = 0 and no source, sampling its
// spatial variance at integer trade times, then fits a power law. m0 = 0
// keeps only the tolerance-determined kernel window; m0 > 0 retains that
// many history rows. Throws std::invalid_argument for horizon < 3 or
// non-positive dx.
VarianceSeries spike_variance(double alpha, double dx, int m0, double horizon,
                              double D_alpha = 0.5, double r = 0.5,
                              double eps = 0.01, double delta_tau = 1.0);

// ---------------------------------------------------------------------------
// Price impact
// ---------------------------------------------------------------------------

enum class OrderKind { Market, FlashLimit };

struct ImpactPoint {
  double q = 0;        // order size
  double dp = 0;       // mean displacement
  double se = 0;       // standard error over replications (0 when det.)
};

struct ImpactCurve {
  int delta_n = 1;     // trade events elapsed before measuring
  std::vector<ImpactPoint> points;
  FitResult power_fit;  // dp = a q^b
  FitResult log_fit;    // dp = c ln(1 + d q)
  // Raw displacement curves, one row per replication, for per-replication
  // fits and dispersion estimates.
  std::vector<std::vector<double>> rep_dp;
};

struct ImpactConfig {
  OrderKind kind = OrderKind::Market;
  std::vector<double> q_grid;
  std::vector<int> delays;     // delta_n values, each >= 1
  int replications = 1;
  bool noise = false;          // false: single deterministic pass
  Scheme scheme = Scheme::Uniform;
  LatticeSpec spec;            // defaults are overridden to a mid-cell grid
  double nu = 0.5;
  SourceSpec source;
  double rho = 0.9;
  double sigma = 1.0;
  double beta = 1.0;
  double eps = 0.01;
  int m0 = 0;
  InterpMethod interp = InterpMethod::Linear;
  std::uint64_t seed = 0;
  // Noisy runs: steps simulated before the order arrives. The reference
  // protocol places the order into the relaxed book and lets replications
  // differ only in the noise path after placement (0); settling first
  // instead probes a noise-stationary arrival book.
  long settle_steps = 0;
  int threads = 1;
  double relax_tol = 1e-12;
  // Recenter the deposition source on the running mid after every step, as
  // the session loop does. Disable to keep the background an exact fixed
  // point, which the closed-form flash oracle assumes.
  bool source_follows_mid = true;
  // Pair noisy replications antithetically: replication 2k+1 reuses the
  // potential path of replication 2k with the sign flipped. By the bid/ask
  // mirror symmetry of the book the leading (odd) noise contribution to the
  // mid cancels within each pair, so replication means estimate the
  // deterministic curve without a drift bias.
  bool antithetic = true;
  // Measure displacements against an unshocked control book evolved on the
  // same noise path, cancelling the common drift (a no-op when noise is
  // off). Disable to measure raw displacement from the arrival mid, whose
  // replication scatter reflects the full noise dispersion.
  bool control_variate = true;
};

// Places orders of every size in q_grid on a relaxed (optionally noise-
// settled) book and measures the mid displacement after each delay. Noisy
// replications share the potential path within a replication so impact
// differences across q are common-random.
std::vector<ImpactCurve> impact_experiment(const ImpactConfig& cfg);

// ---------------------------------------------------------------------------
// Flash-order kink oracle
// ---------------------------------------------------------------------------

// Local equilibrium profile around the mid: h is the density one half-cell
// from the mid on either side, h2 the next value out; theta is the per gap
// survival factor exp(-nu dt), so the impulse's self-jump weight is
// theta - r.
struct LocalProfile {
  double h = 0;
  double h2 = 0;
  double theta = 1.0;
  int delta_n = 1;
};

// Closed-form mid displacement caused by a flash limit order of volume V
// placed one cell behind the front, measured delta_n steps later, for a
// locally linear antisymmetric book. Exhibits a kink at critical_volume()
// for delta_n = 2.
double kink_oracle(double V, double dx, double r, const LocalProfile& prof);
double critical_volume(double h, double dx, double r);

// ---------------------------------------------------------------------------
// Stylised facts of a mid-price path
// ---------------------------------------------------------------------------

struct StylisedFacts {
  std::vector<double> returns;      // log-returns of the path
  std::vector<int> signs;           // tick-rule signs of the path
  std::vector<double> acf_signs;
  std::vector<double> acf_returns;
  std::vector<double> acf_abs;
  double band = 0;                  // +-1.96/sqrt(N) noise band
  Histogram hist;                   // normalised return histogram
  std::vector<std::pair<double, double>> qq;  // (normal, empirical)
  MeanExcess mexcess;               // on |returns|
  double zeta = 1.0;
  double threshold = 0;
  GpdFit gpd;                       // peaks over threshold, |returns|
  std::vector<std::pair<double, double>> return_levels;
};

StylisedFacts stylised_facts(const std::vector<double>& midprice_path,
                             double zeta, int max_lag = 50);

// ---------------------------------------------------------------------------
// Volume / volatility scaling
// ---------------------------------------------------------------------------

struct SessionSummary {
  std::vector<double> event_price;
  double mean_rate = 0;       // mean Ohm's-law rate over the session
};

struct VolumeVolatility {
  double V_D = 0;       // traded volume per session
  double sigma_h = 0;   // hourly price-change scale
  double sigma_D = 0;   // sqrt(hours) * sigma_h
  double Y = 0;
  double delta = 0.8;   // impact exponent used
  double trade_rate = 0;
  int hours = 0;        // hourly samples used
};

// Aggregates equal-length sessions: V_D from the mean rate times events per
// session, sigma_h from hourly price differences (8 blocks per session),
// Y = impact_scale * V_D^delta / sigma_D.
VolumeVolatility volume_volatility(const std::vector<SessionSummary>& sessions,
                                   double impact_scale, double delta);

// ---------------------------------------------------------------------------
// Cost model
// ---------------------------------------------------------------------------

// Relative operation count for a run of physical horizon T with kernel
// window K, domain width X and spacing dx. full_memory = true replaces the
// window factor with the full history length.
double complexity_estimate(double T, double K, double X, double dx,
                           double alpha, bool full_memory);

}  // namespace fraclob
