#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace rpurn {

/// Seedable uniform source. mt19937_64 output is fully specified by the
/// standard; the [0,1) mapping is done here (top 53 bits) rather than through
/// std::uniform_real_distribution so streams agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF draw: smallest i with u < psi_0 + ... + psi_i. Colors with zero
/// probability are never returned, even when rounding leaves u above the
/// final cumulative sum.
std::size_t inverse_cdf(std::span<const double> probabilities, double u);

}  // namespace rpurn
