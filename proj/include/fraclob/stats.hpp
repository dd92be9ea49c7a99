#pragma once

#include <vector>

namespace fraclob {

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased (n-1)

// Normalized autocorrelation, lags 0..max_lag (acf[0] = 1).
std::vector<double> acf(const std::vector<double>& series, int max_lag);

// Tick-rule trade signs from a price path: sign of the latest nonzero
// change, carried forward across flat ticks; the leading run defaults +1.
std::vector<int> tick_rule_signs(const std::vector<double>& prices);

// Equal-width histogram normalized to unit integral.
struct Histogram {
  std::vector<double> centers, density;
};
Histogram histogram(const std::vector<double>& data, int bins);

// Sample-vs-normal quantile pairs (theoretical, empirical), one per point.
std::vector<std::pair<double, double>> qq_normal(std::vector<double> data);

// Mean-excess curve: for each candidate threshold u (the sorted sample
// values except the top), the mean and standard error of excesses above u.
struct MeanExcess {
  std::vector<double> u, e, se;
};
MeanExcess mean_excess(std::vector<double> data);

// Threshold selection: smallest u above which a straight line fits inside
// the zeta-scaled error bars of the mean-excess curve; zeta in [-1, 0]
// instead selects the top -zeta fraction of the data.
double choose_threshold(const MeanExcess& me, double zeta,
                        const std::vector<double>& data);

// Generalized Pareto fit on threshold excesses via profile maximum
// likelihood (1-D search over xi/sigma); SEs from the numerical Hessian.
struct GpdFit {
  double shape = 0, scale = 1;  // xi, sigma
  double se_shape = 0, se_scale = 0;
  double threshold = 0;
  int n_excess = 0;
};
GpdFit gpd_fit(const std::vector<double>& data, double threshold);

// Return-level points (return period m, level z_m) from a GPD fit.
std::vector<std::pair<double, double>> return_levels(const GpdFit& fit,
                                                     double exceed_fraction,
                                                     int points = 40);

}  // namespace fraclob
