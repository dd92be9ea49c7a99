#include "fraclob/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fraclob {
namespace {

struct Design {
  // model value and Jacobian row for parameters (p, q)
  std::function<double(double, double, double)> value;   // f(x, p, q)
  std::function<double(double, double, double)> d_p;     // df/dp
  std::function<double(double, double, double)> d_q;     // df/dq
  std::function<bool(double, double)> admissible;        // (q, x_max)
};

double rss_at(const std::vector<double>& x, const std::vector<double>& y,
              const Design& d, double p, double q) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - d.value(x[i], p, q);
    s += r * r;
  }
  return s;
}

// Linear profile: for fixed q the model is p * g(x, q), so the optimal
// p is <y, g> / <g, g>.
double profile_p(const std::vector<double>& x, const std::vector<double>& y,
                 const Design& d, double q) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = d.value(x[i], 1.0, q);
    num += y[i] * g;
    den += g * g;
  }
  return den > 0 ? num / den : 0.0;
}

FitResult solve_two_param(const std::vector<double>& x,
                          const std::vector<double>& y, const Design& d,
                          double q_lo, double q_hi, bool log_scale_q,
                          const char* what) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::runtime_error(std::string(what) +
                             ": needs at least 3 (x, y) points");
  double x_max = 0;
  for (double v : x) {
    if (!(v > 0))
      throw std::runtime_error(std::string(what) + ": requires x > 0");
    x_max = std::max(x_max, v);
  }

  auto q_of = [&](double u) { return log_scale_q ? std::pow(10.0, u) : u; };
  auto objective = [&](double u) {
    const double q = q_of(u);
    if (!d.admissible(q, x_max)) return std::numeric_limits<double>::max();
    return rss_at(x, y, d, profile_p(x, y, d, q), q);
  };

  // coarse scan, then Brent refinement of the profiled objective
  const double step = (q_hi - q_lo) / 200.0;
  double best_u = q_lo, best_f = objective(q_lo);
  for (int i = 1; i <= 200; ++i) {
    const double u = q_lo + step * i;
    const double f = objective(u);
    if (f < best_f) {
      best_f = f;
      best_u = u;
    }
  }
  const double u_star =
      minimize_scalar(std::max(q_lo, best_u - step),
                      std::min(q_hi, best_u + step), 1e-12, objective);

  double q = q_of(u_star);
  double p = profile_p(x, y, d, q);
  double rss = rss_at(x, y, d, p, q);

  // Gauss-Newton polish with step damping
  const int n = static_cast<int>(x.size());
  int iterations = 0;
  for (int it = 0; it < 80; ++it) {
    double app = 0, apq = 0, aqq = 0, bp = 0, bq = 0;
    for (int i = 0; i < n; ++i) {
      const double jp = d.d_p(x[i], p, q);
      const double jq = d.d_q(x[i], p, q);
      const double r = y[i] - d.value(x[i], p, q);
      app += jp * jp;
      apq += jp * jq;
      aqq += jq * jq;
      bp += jp * r;
      bq += jq * r;
    }
    const double det = app * aqq - apq * apq;
    if (!(std::fabs(det) > 0)) break;
    double dp = (aqq * bp - apq * bq) / det;
    double dq = (app * bq - apq * bp) / det;
    double scale = 1.0;
    bool moved = false;
    for (int half = 0; half < 30; ++half, scale *= 0.5) {
      const double pn = p + scale * dp;
      const double qn = q + scale * dq;
      if (!d.admissible(qn, x_max)) continue;
      const double rn = rss_at(x, y, d, pn, qn);
      if (rn <= rss) {
        p = pn;
        q = qn;
        rss = rn;
        moved = true;
        break;
      }
    }
    ++iterations;
    if (!moved || (std::fabs(scale * dp) <= 1e-13 * (1 + std::fabs(p)) &&
                   std::fabs(scale * dq) <= 1e-13 * (1 + std::fabs(q))))
      break;
  }

  FitResult out;
  out.a = p;
  out.b = q;
  out.rss = rss;
  out.iterations = iterations;
  double app = 0, apq = 0, aqq = 0;
  for (int i = 0; i < n; ++i) {
    const double jp = d.d_p(x[i], p, q);
    const double jq = d.d_q(x[i], p, q);
    app += jp * jp;
    apq += jp * jq;
    aqq += jq * jq;
  }
  const double s2 = n > 2 ? rss / (n - 2) : 0.0;
  const double det = app * aqq - apq * apq;
  if (det > 0) {
    out.se_a = std::sqrt(std::max(0.0, s2 * aqq / det));
    out.se_b = std::sqrt(std::max(0.0, s2 * app / det));
  }
  return out;
}

}  // namespace

FitResult fit_power(const std::vector<double>& x,
                    const std::vector<double>& y) {
  Design d;
  d.value = [](double xi, double a, double b) { return a * std::pow(xi, b); };
  d.d_p = [](double xi, double, double b) { return std::pow(xi, b); };
  d.d_q = [](double xi, double a, double b) {
    return a * std::pow(xi, b) * std::log(xi);
  };
  d.admissible = [](double, double) { return true; };
  return solve_two_param(x, y, d, -4.0, 4.0, false, "fit_power");
}

FitResult fit_log(const std::vector<double>& x, const std::vector<double>& y) {
  Design d;
  d.value = [](double xi, double c, double dd) {
    return c * std::log1p(dd * xi);
  };
  d.d_p = [](double xi, double, double dd) { return std::log1p(dd * xi); };
  d.d_q = [](double xi, double c, double dd) {
    return c * xi / (1.0 + dd * xi);
  };
  d.admissible = [](double dd, double x_max) {
    return 1.0 + dd * x_max > 1e-12;
  };
  return solve_two_param(x, y, d, -6.0, 6.0, true, "fit_log");
}

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  if (x.size() != y.size() || n < 2)
    throw std::runtime_error("fit_line: needs at least 2 (x, y) points");
  double xm = 0, ym = 0;
  for (int i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (!(sxx > 0)) throw std::runtime_error("fit_line: degenerate x values");
  FitResult out;
  out.b = sxy / sxx;
  out.a = ym - out.b * xm;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - (out.a + out.b * x[i]);
    out.rss += r * r;
  }
  const double s2 = n > 2 ? out.rss / (n - 2) : 0.0;
  out.se_b = std::sqrt(s2 / sxx);
  out.se_a = std::sqrt(s2 * (1.0 / n + xm * xm / sxx));
  out.iterations = 1;
  return out;
}

CubicSpline::CubicSpline(double x0, double dx, std::vector<double> y)
    : x0_(x0), dx_(dx), y_(std::move(y)), m_(y_.size(), 0.0) {
  const int n = static_cast<int>(y_.size());
  if (n < 2) throw std::invalid_argument("CubicSpline: needs >= 2 points");
  if (!(dx_ > 0)) throw std::invalid_argument("CubicSpline: dx must be > 0");
  if (n == 2) return;  // natural end conditions leave a straight line
  // tridiagonal system for interior second derivatives (Thomas algorithm)
  const int k = n - 2;
  std::vector<double> diag(k, 4.0), rhs(k);
  for (int i = 0; i < k; ++i)
    rhs[i] = 6.0 * (y_[i] - 2.0 * y_[i + 1] + y_[i + 2]) / (dx_ * dx_);
  for (int i = 1; i < k; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  m_[k] = rhs[k - 1] / diag[k - 1];
  for (int i = k - 2; i >= 0; --i) m_[i + 1] = (rhs[i] - m_[i + 2]) / diag[i];
}

double CubicSpline::operator()(double x) const {
  const int n = static_cast<int>(y_.size());
  const double t = (x - x0_) / dx_;
  int k = static_cast<int>(std::floor(t));
  k = std::clamp(k, 0, n - 2);
  const double u = t - k;
  const double v = 1.0 - u;
  return v * y_[k] + u * y_[k + 1] +
         (dx_ * dx_ / 6.0) *
             ((v * v * v - v) * m_[k] + (u * u * u - u) * m_[k + 1]);
}

double CubicSpline::root_in_cell(int k) const {
  const int n = static_cast<int>(y_.size());
  if (k < 0 || k >= n - 1)
    throw std::out_of_range("CubicSpline::root_in_cell: cell out of range");
  double a = x0_ + k * dx_;
  double b = a + dx_;
  double fa = y_[k];
  double fb = y_[k + 1];
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::logic_error(
        "CubicSpline::root_in_cell: endpoints do not bracket a root");
  for (int it = 0; it < 200 && (b - a) > 1e-15 * dx_; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = (*this)(m);
    if (fm == 0.0) return m;
    if (fa * fm < 0.0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

double minimize_scalar(double lo, double hi, double tol,
                       const std::function<double(double)>& f) {
  if (!(hi >= lo)) throw std::invalid_argument("minimize_scalar: hi < lo");
  const double gold = 0.3819660112501051;  // 2 - golden ratio
  double a = lo, b = hi;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0, e = 0;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = tol + 1e-15 * std::fabs(x);
    if (std::fabs(x - m) <= 2.0 * tol1 - 0.5 * (b - a)) break;
    bool parabolic = false;
    if (std::fabs(e) > tol1) {
      // trial parabolic step through (v, w, x)
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0) p = -p;
      q = std::fabs(q);
      const double e_old = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * e_old) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < 2 * tol1 || b - u < 2 * tol1)
          d = (m > x) ? tol1 : -tol1;
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = (x < m) ? b - x : a - x;
      d = gold * e;
    }
    const double u = (std::fabs(d) >= tol1) ? x + d
                                            : x + ((d > 0) ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x)
        b = x;
      else
        a = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return x;
}

}  // namespace fraclob
