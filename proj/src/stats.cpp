#include "fraclob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fraclob/fit.hpp"
#include "fraclob/rng.hpp"

namespace fraclob {

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n < 2) throw std::invalid_argument("variance: needs >= 2 values");
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(n - 1);
}

std::vector<double> acf(const std::vector<double>& series, int max_lag) {
  const int n = static_cast<int>(series.size());
  if (n < 2) throw std::invalid_argument("acf: needs >= 2 values");
  if (max_lag < 0) throw std::invalid_argument("acf: max_lag must be >= 0");
  const double m = mean(series);
  double c0 = 0;
  for (double x : series) c0 += (x - m) * (x - m);
  if (!(c0 > 0)) throw std::invalid_argument("acf: zero-variance series");
  std::vector<double> out(max_lag + 1, 0.0);
  out[0] = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    double ck = 0;
    for (int t = 0; t + k < n; ++t)
      ck += (series[t] - m) * (series[t + k] - m);
    out[k] = ck / c0;
  }
  return out;
}

std::vector<int> tick_rule_signs(const std::vector<double>& prices) {
  if (prices.size() < 2)
    throw std::invalid_argument("tick_rule_signs: needs >= 2 prices");
  std::vector<int> signs(prices.size() - 1);
  int carry = +1;  // leading flat run defaults to +1
  for (std::size_t i = 1; i < prices.size(); ++i) {
    const double d = prices[i] - prices[i - 1];
    if (d > 0)
      carry = +1;
    else if (d < 0)
      carry = -1;
    signs[i - 1] = carry;
  }
  return signs;
}

Histogram histogram(const std::vector<double>& data, int bins) {
  if (data.empty()) throw std::invalid_argument("histogram: empty sample");
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  const double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo))
    throw std::invalid_argument("histogram: sample has zero range");
  const double w = (hi - lo) / bins;
  std::vector<double> count(bins, 0.0);
  for (double x : data) {
    int k = static_cast<int>((x - lo) / w);
    k = std::clamp(k, 0, bins - 1);
    count[k] += 1.0;
  }
  Histogram h;
  h.centers.resize(bins);
  h.density.resize(bins);
  const double norm = 1.0 / (static_cast<double>(data.size()) * w);
  for (int k = 0; k < bins; ++k) {
    h.centers[k] = lo + (k + 0.5) * w;
    h.density[k] = count[k] * norm;
  }
  return h;
}

std::vector<std::pair<double, double>> qq_normal(std::vector<double> data) {
  if (data.empty()) throw std::invalid_argument("qq_normal: empty sample");
  std::sort(data.begin(), data.end());
  const std::size_t n = data.size();
  std::vector<std::pair<double, double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out[i] = {normal_quantile(p), data[i]};
  }
  return out;
}

MeanExcess mean_excess(std::vector<double> data) {
  if (data.size() < 2)
    throw std::invalid_argument("mean_excess: needs >= 2 values");
  std::sort(data.begin(), data.end());
  const std::size_t n = data.size();
  MeanExcess me;
  me.u.reserve(n - 1);
  me.e.reserve(n - 1);
  me.se.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double u = data[i];
    // exceedances are the values strictly above u (ties collapse)
    std::size_t j = i + 1;
    while (j < n && data[j] <= u) ++j;
    if (j == n) continue;
    double s = 0;
    const std::size_t k = n - j;
    for (std::size_t q = j; q < n; ++q) s += data[q] - u;
    const double e = s / static_cast<double>(k);
    double se = 0;
    if (k >= 2) {
      double v = 0;
      for (std::size_t q = j; q < n; ++q)
        v += (data[q] - u - e) * (data[q] - u - e);
      v /= static_cast<double>(k - 1);
      se = std::sqrt(v / static_cast<double>(k));
    }
    me.u.push_back(u);
    me.e.push_back(e);
    me.se.push_back(se);
  }
  return me;
}

double choose_threshold(const MeanExcess& me, double zeta,
                        const std::vector<double>& data) {
  if (data.size() < 4)
    throw std::invalid_argument("choose_threshold: needs >= 4 values");
  if (zeta <= 0.0) {
    if (zeta < -1.0)
      throw std::invalid_argument("choose_threshold: zeta must be >= -1");
    // top -zeta fraction of the sample
    std::vector<double> sorted(data);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::size_t k = static_cast<std::size_t>(
        std::llround(-zeta * static_cast<double>(n)));
    k = std::clamp<std::size_t>(k, 1, n - 1);
    return sorted[n - 1 - k];
  }
  const int m = static_cast<int>(me.u.size());
  constexpr int kMinExcess = 30;  // keep enough excesses for the tail fit
  int last_feasible = -1;
  for (int i = 0; i < m; ++i) {
    if (m - i < kMinExcess) break;
    std::vector<double> ux, ex, es;
    for (int j = i; j < m; ++j) {
      if (me.se[j] > 0) {
        ux.push_back(me.u[j]);
        ex.push_back(me.e[j]);
        es.push_back(me.se[j]);
      }
    }
    if (ux.size() < 3) break;
    last_feasible = i;
    const FitResult line = fit_line(ux, ex);
    bool inside = true;
    for (std::size_t j = 0; j < ux.size(); ++j) {
      if (std::fabs(line.a + line.b * ux[j] - ex[j]) > zeta * es[j]) {
        inside = false;
        break;
      }
    }
    if (inside) return me.u[i];
  }
  if (last_feasible < 0)
    throw std::runtime_error("choose_threshold: mean-excess curve too short");
  return me.u[last_feasible];
}

namespace {

// mean of log(1 + tau y): the profiled shape parameter at tau
double profiled_shape(const std::vector<double>& y, double tau) {
  double s = 0;
  for (double v : y) s += std::log1p(tau * v);
  return s / static_cast<double>(y.size());
}

double gpd_loglik(const std::vector<double>& y, double xi, double sigma) {
  const double n = static_cast<double>(y.size());
  if (!(sigma > 0)) return -std::numeric_limits<double>::infinity();
  if (std::fabs(xi) < 1e-12) {
    double s = 0;
    for (double v : y) s += v;
    return -n * std::log(sigma) - s / sigma;
  }
  double s = 0;
  for (double v : y) {
    const double z = 1.0 + xi * v / sigma;
    if (!(z > 0)) return -std::numeric_limits<double>::infinity();
    s += std::log(z);
  }
  return -n * std::log(sigma) - (1.0 + 1.0 / xi) * s;
}

}  // namespace

GpdFit gpd_fit(const std::vector<double>& data, double threshold) {
  std::vector<double> y;
  for (double x : data)
    if (x > threshold) y.push_back(x - threshold);
  if (y.size() < 5)
    throw std::runtime_error("gpd_fit: fewer than 5 threshold excesses");
  const double y_max = *std::max_element(y.begin(), y.end());
  const double y_mean = mean(y);

  // Profile likelihood over tau = xi / sigma: for fixed tau the shape is
  // xi(tau) = mean log(1 + tau y), giving per-excess negative likelihood
  // f(tau) = log(xi/tau) + xi (the tau -> 0 limit is log(mean y)).
  auto f = [&](double tau) {
    if (std::fabs(tau) < 1e-14) return std::log(y_mean);
    if (tau * y_max <= -1.0) return std::numeric_limits<double>::max();
    const double xi = profiled_shape(y, tau);
    if (!(xi / tau > 0)) return std::numeric_limits<double>::max();
    return std::log(xi / tau) + xi;
  };
  const double t_lo = -(1.0 - 1e-8) / y_max;
  const double t_hi = 20.0 / y_mean;
  const int n_scan = 800;
  double best_t = 0.0, best_f = f(0.0);
  for (int i = 0; i <= n_scan; ++i) {
    const double tau = t_lo + (t_hi - t_lo) * i / n_scan;
    const double v = f(tau);
    if (v < best_f) {
      best_f = v;
      best_t = tau;
    }
  }
  const double span = (t_hi - t_lo) / n_scan;
  const double tau =
      minimize_scalar(std::max(t_lo, best_t - span),
                      std::min(t_hi, best_t + span), 1e-13, f);

  GpdFit fit;
  fit.threshold = threshold;
  fit.n_excess = static_cast<int>(y.size());
  if (std::fabs(tau) < 1e-12) {
    fit.shape = 0.0;
    fit.scale = y_mean;
  } else {
    fit.shape = profiled_shape(y, tau);
    fit.scale = fit.shape / tau;
  }

  // standard errors from the numerical Hessian of the log-likelihood
  const double hx = 1e-5 * (1.0 + std::fabs(fit.shape));
  const double hs = 1e-5 * fit.scale;
  auto ll = [&](double xi, double sg) { return gpd_loglik(y, xi, sg); };
  const double l0 = ll(fit.shape, fit.scale);
  const double dxx =
      (ll(fit.shape + hx, fit.scale) - 2 * l0 + ll(fit.shape - hx, fit.scale)) /
      (hx * hx);
  const double dss =
      (ll(fit.shape, fit.scale + hs) - 2 * l0 + ll(fit.shape, fit.scale - hs)) /
      (hs * hs);
  const double dxs = (ll(fit.shape + hx, fit.scale + hs) -
                      ll(fit.shape + hx, fit.scale - hs) -
                      ll(fit.shape - hx, fit.scale + hs) +
                      ll(fit.shape - hx, fit.scale - hs)) /
                     (4 * hx * hs);
  const double det = dxx * dss - dxs * dxs;
  if (std::isfinite(det) && det > 0 && dxx < 0) {
    fit.se_shape = std::sqrt(std::max(0.0, -dss / det));
    fit.se_scale = std::sqrt(std::max(0.0, -dxx / det));
  }
  return fit;
}

std::vector<std::pair<double, double>> return_levels(const GpdFit& fit,
                                                     double exceed_fraction,
                                                     int points) {
  if (!(exceed_fraction > 0 && exceed_fraction <= 1))
    throw std::invalid_argument(
        "return_levels: exceed_fraction must be in (0, 1]");
  if (points < 2)
    throw std::invalid_argument("return_levels: needs >= 2 points");
  // return periods from 1/zeta_u (level = threshold) up to 1000x rarer
  const double m_lo = 1.0 / exceed_fraction;
  const double m_hi = 1000.0 / exceed_fraction;
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double lg = std::log(m_lo) +
                      (std::log(m_hi) - std::log(m_lo)) * i / (points - 1);
    const double m = std::exp(lg);
    const double arg = m * exceed_fraction;
    double z;
    if (std::fabs(fit.shape) < 1e-12)
      z = fit.threshold + fit.scale * std::log(arg);
    else
      z = fit.threshold +
          (fit.scale / fit.shape) * (std::pow(arg, fit.shape) - 1.0);
    out.emplace_back(m, z);
  }
  return out;
}

}  // namespace fraclob
