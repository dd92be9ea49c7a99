#include "fraclob/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fraclob {

double step_potential(double prev, double rho, double sigma, Rng& rng) {
  return rho * prev + rng.normal(sigma);
}

double force_from_potential(double V, double beta, double D_alpha, double r,
                            double margin) {
  if (!(beta > 0) || !(D_alpha > 0))
    throw std::domain_error("force: beta and D must be positive");
  const double cap = r - margin;
  const double F = V / (2.0 * beta * D_alpha);
  return std::clamp(F, -cap, cap);
}

JumpProbabilities jump_probabilities(double r, double F) {
  if (!(r > 0 && r < 1))
    throw std::domain_error("jump probabilities: r must be in (0,1)");
  if (std::fabs(F) > r)
    throw std::domain_error("jump probabilities: |F| must not exceed r");
  JumpProbabilities p;
  p.p_right = 0.5 * (r - F);
  p.p_left = 0.5 * (r + F);
  p.p_self = 1.0 - r;
  return p;
}

ForcingPath make_forcing_path(std::size_t n_steps, double rho, double sigma,
                              double beta, std::uint64_t seed) {
  if (!(rho >= 0 && rho < 1))
    throw std::domain_error("forcing path: rho must be in [0,1)");
  if (!(sigma >= 0))
    throw std::domain_error("forcing path: sigma must be >= 0");
  ForcingPath path;
  path.rho = rho;
  path.sigma = sigma;
  path.beta = beta;
  path.seed = seed;
  path.values.resize(n_steps);
  Rng rng(seed, 0);
  double v = 0.0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    v = step_potential(v, rho, sigma, rng);
    path.values[n] = v;
  }
  return path;
}

}  // namespace fraclob
