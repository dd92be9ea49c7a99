#include "fraclob/lattice.hpp"

#include <cmath>
#include <stdexcept>

#include "fraclob/rng.hpp"
#include "json.hpp"

namespace fraclob {

double derive_dx(double dt, double D_alpha, double alpha, double r) {
  if (!(dt > 0)) throw std::domain_error("derive_dx: dt must be positive");
  if (!(D_alpha > 0)) throw std::domain_error("derive_dx: D must be positive");
  if (!(alpha > 0 && alpha <= 1))
    throw std::domain_error("derive_dx: alpha must be in (0,1]");
  if (!(r > 0 && r < 1)) throw std::domain_error("derive_dx: r must be in (0,1)");
  return std::sqrt(2.0 * D_alpha / r) * std::pow(dt, alpha / 2.0);
}

double derive_dt(double dx, double D_alpha, double alpha, double r) {
  if (!(dx > 0)) throw std::domain_error("derive_dt: dx must be positive");
  if (!(D_alpha > 0)) throw std::domain_error("derive_dt: D must be positive");
  if (!(alpha > 0 && alpha <= 1))
    throw std::domain_error("derive_dt: alpha must be in (0,1]");
  if (!(r > 0 && r < 1)) throw std::domain_error("derive_dt: r must be in (0,1)");
  return std::pow(dx * dx * r / (2.0 * D_alpha), 1.0 / alpha);
}

void LatticeSpec::validate() const {
  if (!(L > 0)) throw std::domain_error("lattice: L must be positive");
  if (M < 2) throw std::domain_error("lattice: M must be at least 2");
  if (!(alpha > 0 && alpha <= 1))
    throw std::domain_error("lattice: alpha must be in (0,1]");
  if (!(D > 0)) throw std::domain_error("lattice: D must be positive");
  if (!(r > 0 && r < 1)) throw std::domain_error("lattice: r must be in (0,1)");
  if (!(p0 > x_min && p0 < x_max()))
    throw std::domain_error("lattice: p0 must lie inside the grid");
}

TimeGrid build_time_grid(TimeGridMode mode, double lambda, std::size_t n_steps,
                         std::uint64_t seed) {
  if (!(lambda > 0))
    throw std::domain_error("time grid: lambda must be positive");
  if (n_steps < 1) throw std::domain_error("time grid: need at least one step");
  TimeGrid g;
  g.mode = mode;
  g.lambda = lambda;
  g.seed = seed;
  g.steps.resize(n_steps);
  g.times.resize(n_steps + 1);
  g.times[0] = 0.0;
  Rng rng(seed, 0);
  double sum = 0.0, comp = 0.0;
  for (std::size_t m = 0; m < n_steps; ++m) {
    const double dt = (mode == TimeGridMode::Uniform) ? 1.0 / lambda
                                                      : rng.exponential(lambda);
    g.steps[m] = dt;
    const double y = dt - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    g.times[m + 1] = sum;
  }
  return g;
}

SamplingRatios sampling_ratios(double delta_tau, double delta_t, double dt_sim) {
  if (!(dt_sim > 0))
    throw std::domain_error("sampling ratios: dt must be positive");
  if (!(delta_t >= dt_sim) || !(delta_tau >= delta_t))
    throw std::domain_error(
        "sampling ratios: need delta_tau >= delta_t >= dt");
  SamplingRatios s;
  s.gamma1 = delta_t / dt_sim;
  s.gamma2 = delta_tau / dt_sim;
  s.gamma21 = delta_tau / delta_t;
  return s;
}

std::string grid_to_json(const TimeGrid& grid, double dx, double alpha,
                         double D_alpha, double r) {
  nlohmann::json j;
  j["mode"] = grid.mode == TimeGridMode::Uniform ? "uniform" : "exponential";
  j["lambda"] = grid.lambda;
  j["seed"] = grid.seed;
  j["n_steps"] = grid.steps.size();
  j["dx"] = dx;
  j["alpha"] = alpha;
  j["D_alpha"] = D_alpha;
  j["r"] = r;
  return j.dump(2);
}

SerializedGrid grid_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SerializedGrid out;
  const std::string mode = j.at("mode").get<std::string>();
  TimeGridMode m;
  if (mode == "uniform")
    m = TimeGridMode::Uniform;
  else if (mode == "exponential")
    m = TimeGridMode::Exponential;
  else
    throw std::runtime_error("grid_from_json: unknown mode " + mode);
  out.grid = build_time_grid(m, j.at("lambda").get<double>(),
                             j.at("n_steps").get<std::size_t>(),
                             j.at("seed").get<std::uint64_t>());
  out.dx = j.at("dx").get<double>();
  out.alpha = j.at("alpha").get<double>();
  out.D_alpha = j.at("D_alpha").get<double>();
  out.r = j.at("r").get<double>();
  return out;
}

}  // namespace fraclob
