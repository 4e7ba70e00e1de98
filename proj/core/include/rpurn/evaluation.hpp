#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpurn/series.hpp"

namespace rpurn {

/// Observed series plus predictions; psi_hat[n] predicts series[n] (= xi_{n+1}).
/// Only indices [L, S*L) are read.
struct PredictionRun {
  std::span<const Bit> series;
  std::span<const double> psi_hat;
  SlotScheme scheme;

  /// Throws DataError unless psi_hat covers [L, S*L) with finite values.
  void validate() const;
};

/// Most frequent bit among xi_1..xi_{s*L}; ties go to 1. Requires 1 <= s <= S-1.
Bit majority_value(std::span<const Bit> series, const SlotScheme& scheme, std::size_t s);

/// Relative squared error of the past-majority baseline against the model,
/// in percent. +infinity when the model error is zero.
double ss_rel(const PredictionRun& run);

/// ss_rel with every prediction replaced by the a-posteriori mean of
/// xi_{L+1}..xi_N.
double theoretical_value(std::span<const Bit> series, const SlotScheme& scheme);

struct SmoothedCurve {
  int knot_count = 0;
  std::vector<double> values;
};

/// Least-squares natural cubic regression spline with knot_count equally
/// spaced interior knots over the index range, evaluated at every index.
/// Requires knot_count >= 3 and values.size() >= knot_count + 4.
SmoothedCurve smooth(std::span<const double> values, int knot_count);

/// Mean squared error between observations xi_{n+1} and predictions psi_n over
/// n in [L, S*L). With a knot count both sequences are smoothed first.
double mse_smoothed(const PredictionRun& run, std::optional<int> knot_count);

}  // namespace rpurn
