#pragma once

#include <vector>

#include "fraclob/dynamics.hpp"

namespace fraclob {

enum class InterpMethod { Linear, CubicSpline };
enum class Side { Buy, Sell };

struct MidPrice {
  double value = 0.0;
  InterpMethod method = InterpMethod::Linear;
};

// Zero crossing of the density imbalance. Linear: root of the bracketing
// segment. CubicSpline: root of a natural cubic spline through all grid
// values, inside the bracketing cell. Runs of exact zeros flanked by
// opposite signs resolve to the run's midpoint (a single exact grid zero
// therefore lands on that grid point). Multiple crossings resolve to the
// one nearest prev_mid. Throws std::runtime_error when the row carries no
// sign change.
MidPrice midprice(const std::vector<double>& phi_row, const LatticeSpec& spec,
                  InterpMethod method, double prev_mid);

// Convenience overload reading state.phi / state.prev_mid; updates
// state.prev_mid with the result.
MidPrice midprice(BookState& state, InterpMethod method);

// Point-mass limit order of V shares at the first grid point strictly
// right of the current mid (or on it when the mid sits exactly on-grid).
void inject_flash_limit(BookState& state, double V,
                        InterpMethod method = InterpMethod::Linear);

// Walk the book from the linear intercept consuming |phi| bars until Q is
// filled: interior points are zeroed and the final point is scaled so the
// removed volume equals Q exactly. Buy consumes the ask side (x > p),
// Sell the bid side. Throws std::runtime_error naming the available depth
// when Q exceeds it.
void execute_market(BookState& state, double Q, Side side);

// Ohm's-law trading rate: D times the central-difference slope at the
// bracketing grid points, interpolated to the crossing.
double trade_rate(const BookState& state, double D_alpha);

// Trapezoid integral of max(phi, 0) over [x_min, p].
double bid_area(const BookState& state);

}  // namespace fraclob
