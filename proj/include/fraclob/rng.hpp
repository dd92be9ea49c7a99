#pragma once

#include <cstdint>
#include <cmath>

namespace fraclob {

// Bijective 64-bit finalizer (SplitMix64).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Inverse standard-normal CDF, |error| < 2e-16 after refinement.
double normal_quantile(double p);

// Counter-based generator: draw k of stream (seed, stream) is a pure
// function of (seed, stream, k). Distinct streams are independent, so
// ensembles are reproducible and order-independent across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix64(seed + 0x9e3779b97f4a7c15ull * (2 * stream + 1))) {}

  // Uniform on the open interval (0,1); 53-bit resolution.
  double uniform01() {
    const std::uint64_t bits = mix64(base_ + 0x9e3779b97f4a7c15ull * ++counter_);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal(double sigma) { return sigma * normal_quantile(uniform01()); }

  // Inverse-CDF exponential with rate lambda (mean 1/lambda).
  double exponential(double lambda) { return -std::log(uniform01()) / lambda; }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace fraclob
