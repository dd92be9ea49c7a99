#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fraclob {

struct FitResult {
  double a = 0, b = 0;       // parameters (scale, exponent) or (c, d)
  double se_a = 0, se_b = 0; // asymptotic standard errors
  double rss = 0;            // residual sum of squares
  int iterations = 0;
};

// Nonlinear least squares
//   fit_power: y = a x^b       fit_log: y = c ln(1 + d x)
// Profile over the nonlinear parameter (golden section) and polish with
// Gauss-Newton; SEs from s^2 (J^T J)^-1. Requires >= 3 points with x > 0;
// throws std::runtime_error with residual diagnostics on failure.
FitResult fit_power(const std::vector<double>& x, const std::vector<double>& y);
FitResult fit_log(const std::vector<double>& x, const std::vector<double>& y);

// Ordinary least squares y = a + b x; returns {a, b, se_a, se_b, rss}.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Natural cubic spline on a uniform grid x_i = x0 + i dx.
class CubicSpline {
 public:
  CubicSpline(double x0, double dx, std::vector<double> y);
  double operator()(double x) const;
  // Root inside grid cell k (between x_k and x_k+1); bisection on the
  // spline segment, assumes a sign change of the segment endpoints.
  double root_in_cell(int k) const;

 private:
  double x0_, dx_;
  std::vector<double> y_, m_;  // values and second derivatives
};

// Brent-style scalar minimization on [lo, hi] (golden section + parabolic
// steps); deterministic, tol on the argument.
double minimize_scalar(double lo, double hi, double tol,
                       const std::function<double(double)>& f);

}  // namespace fraclob
