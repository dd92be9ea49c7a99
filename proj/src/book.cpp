#include "fraclob/book.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "fraclob/fit.hpp"

namespace fraclob {
namespace {

// All zero crossings of the row under the run/root conventions:
//  - a run of exact zeros flanked by opposite signs resolves to the run's
//    midpoint (a single exact grid zero resolves to that grid point);
//  - a strict sign flip resolves to the segment root (linear) or the
//    natural-spline root inside the cell.
std::vector<double> crossings(const std::vector<double>& phi,
                              const LatticeSpec& spec, InterpMethod method) {
  const int M = spec.M;
  const double dx = spec.dx();
  std::vector<double> out;
  std::optional<CubicSpline> spline;
  if (method == InterpMethod::CubicSpline)
    spline.emplace(spec.x_min, dx, phi);
  int i = 0;
  while (i <= M) {
    if (phi[i] == 0.0) {
      const int k = i;
      while (i <= M && phi[i] == 0.0) ++i;
      const int m = i - 1;
      if (k > 0 && m < M && phi[k - 1] * phi[m + 1] < 0.0)
        out.push_back(0.5 * (spec.x(k) + spec.x(m)));
      continue;
    }
    if (i < M && phi[i + 1] != 0.0 && phi[i] * phi[i + 1] < 0.0) {
      if (method == InterpMethod::Linear)
        out.push_back(spec.x(i) + dx * phi[i] / (phi[i] - phi[i + 1]));
      else
        out.push_back(spline->root_in_cell(i));
    }
    ++i;
  }
  return out;
}

}  // namespace

MidPrice midprice(const std::vector<double>& phi_row, const LatticeSpec& spec,
                  InterpMethod method, double prev_mid) {
  if (static_cast<int>(phi_row.size()) != spec.M + 1)
    throw std::logic_error("midprice: field size does not match the grid");
  const std::vector<double> cand = crossings(phi_row, spec, method);
  if (cand.empty())
    throw std::runtime_error("midprice: no sign change (book is one-sided)");
  double best = cand[0];
  for (double c : cand)
    if (std::fabs(c - prev_mid) < std::fabs(best - prev_mid)) best = c;
  return MidPrice{best, method};
}

MidPrice midprice(BookState& state, InterpMethod method) {
  MidPrice m = midprice(state.phi, state.spec, method, state.prev_mid);
  state.prev_mid = m.value;
  return m;
}

void inject_flash_limit(BookState& state, double V, InterpMethod method) {
  if (V < 0) throw std::domain_error("flash limit: V must be >= 0");
  if (V == 0) return;
  const double p = midprice(state.phi, state.spec, method, state.prev_mid).value;
  const double dx = state.spec.dx();
  const double pos = (p - state.spec.x_min) / dx;
  // first grid index >= pos, snapping near-integers onto the grid point
  int k = static_cast<int>(std::ceil(pos - 1e-9));
  k = std::clamp(k, 0, state.spec.M);
  state.phi[k] += V / dx;
  if (state.track_support) {
    state.lo = std::min(state.lo, k);
    state.hi = std::max(state.hi, k);
  }
}

void execute_market(BookState& state, double Q, Side side) {
  if (Q < 0) throw std::domain_error("market order: Q must be >= 0");
  if (Q == 0) return;
  const LatticeSpec& spec = state.spec;
  const int M = spec.M;
  const double dx = spec.dx();
  const double p =
      midprice(state.phi, spec, InterpMethod::Linear, state.prev_mid).value;

  // Bar quadrature: on the ask side bar j owns (x_{j-1}, x_j], truncated at
  // p for the first bar; the bid side mirrors this.
  const int dir = (side == Side::Buy) ? +1 : -1;
  int j0;
  if (side == Side::Buy) {
    j0 = static_cast<int>(std::floor((p - spec.x_min) / dx)) + 1;
    j0 = std::max(j0, 0);
  } else {
    j0 = static_cast<int>(std::ceil((p - spec.x_min) / dx)) - 1;
    j0 = std::min(j0, M);
  }

  auto bar_width = [&](int j) {
    if (side == Side::Buy) {
      const double left = std::max(p, spec.x(j) - dx);
      return spec.x(j) - left;
    }
    const double right = std::min(p, spec.x(j) + dx);
    return right - spec.x(j);
  };

  double depth = 0.0;
  for (int j = j0; j >= 0 && j <= M; j += dir)
    depth += std::fabs(state.phi[j]) * bar_width(j);
  if (Q > depth)
    throw std::runtime_error("market order: size " + std::to_string(Q) +
                             " exceeds available depth " +
                             std::to_string(depth));

  double need = Q;
  for (int j = j0; j >= 0 && j <= M; j += dir) {
    const double w = bar_width(j);
    const double den = std::fabs(state.phi[j]);
    const double vol = den * w;
    if (vol < need) {
      need -= vol;
      state.phi[j] = 0.0;
      continue;
    }
    if (need > 0.0) {
      // final bar: depth reached inside it; scale so removal is exactly Q
      double scale;
      if (side == Side::Buy) {
        const double left = spec.x(j) - w;
        const double p_prime = left + need / den;
        scale = (spec.x(j) - p_prime) / w;
      } else {
        const double right = spec.x(j) + w;
        const double p_prime = right - need / den;
        scale = (p_prime - spec.x(j)) / w;
      }
      state.phi[j] *= scale;
    }
    break;
  }
}

double trade_rate(const BookState& state, double D_alpha) {
  const LatticeSpec& spec = state.spec;
  const int M = spec.M;
  const double dx = spec.dx();
  const double p =
      midprice(state.phi, spec, InterpMethod::Linear, state.prev_mid).value;
  auto g = [&](int i) {
    return (state.phi[i + 1] - state.phi[i - 1]) / (2.0 * dx);
  };
  int k = static_cast<int>(std::floor((p - spec.x_min) / dx));
  k = std::clamp(k, 1, M - 2);
  const double frac = (p - spec.x(k)) / dx;
  const double grad = g(k) + frac * (g(k + 1) - g(k));
  return D_alpha * std::fabs(grad);
}

double bid_area(const BookState& state) {
  const LatticeSpec& spec = state.spec;
  const int M = spec.M;
  const double dx = spec.dx();
  const double p =
      midprice(state.phi, spec, InterpMethod::Linear, state.prev_mid).value;
  auto clip = [](double v) { return v > 0.0 ? v : 0.0; };
  double area = 0.0;
  int k = static_cast<int>(std::floor((p - spec.x_min) / dx));
  k = std::clamp(k, 0, M);
  for (int i = 1; i <= k; ++i)
    area += 0.5 * (clip(state.phi[i - 1]) + clip(state.phi[i])) * dx;
  // partial cell up to p, where the density vanishes by construction
  if (k < M && p > spec.x(k))
    area += 0.5 * clip(state.phi[k]) * (p - spec.x(k));
  return area;
}

}  // namespace fraclob
