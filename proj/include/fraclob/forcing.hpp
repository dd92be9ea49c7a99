#pragma once

#include <cstdint>
#include <vector>

#include "fraclob/rng.hpp"

namespace fraclob {

// Per-step jump probabilities. p_right = (r - F)/2 multiplies the left
// donor in the uniform update (mass jumping right); p_left = (r + F)/2 the
// right donor; p_self = 1 - r always. The non-uniform update swaps the
// donor pairing (p_left with the left donor); each scheme implements its
// own equation literally and the signed-drift test pins the convention.
struct JumpProbabilities {
  double p_right = 0.25;
  double p_self = 0.5;
  double p_left = 0.25;

  double r() const { return 1.0 - p_self; }
  double F() const { return p_left - p_right; }  // (r+F)/2 - (r-F)/2
};

// AR(1) information-arrival potential, deterministic per seed.
struct ForcingPath {
  double rho = 0.9;
  double sigma = 1.0;
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // V used at step n is values[n-1]
};

// V' = rho * prev + Normal(0, sigma) draw.
double step_potential(double prev, double rho, double sigma, Rng& rng);

// F = V / (2 beta D), clamped into [-(r - margin), r - margin] so the
// probability triple stays valid under extreme draws.
double force_from_potential(double V, double beta, double D_alpha, double r,
                            double margin = 1e-9);

// The probability triple; requires |F| <= r (clamp upstream).
JumpProbabilities jump_probabilities(double r, double F);

ForcingPath make_forcing_path(std::size_t n_steps, double rho, double sigma,
                              double beta, std::uint64_t seed);

}  // namespace fraclob
