#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpurn/sentiment_model.hpp"
#include "rpurn/series.hpp"
#include "rpurn/simplex.hpp"

namespace rpurn {

/// Predictions are clamped to [kProbabilityFloor, 1 - kProbabilityFloor]
/// before taking logs.
inline constexpr double kProbabilityFloor = 1e-9;

// Parameter boxes searched by fit().
inline constexpr double kMaxBeta = 1.0 - 1e-6;
inline constexpr double kPolyaMinScale = 1e-3;   // a
inline constexpr double kPolyaMaxScale = 1e6;    // a
inline constexpr double kPolyaMargin = 1e-6;     // a1 in [margin, a - margin]

struct FitOptions {
  int grid_points = 21;        // per free dimension, bounds included
  double b_tilde_init = 0.5;   // Bt_0 for the fashion variants
  /// Grids larger than this many predictor steps are scored on a binned
  /// sufficient statistic, then the best candidates are rescored exactly.
  double exact_grid_budget = 2e7;
  int histogram_bins = 1024;
  int rescored_candidates = 8;
  SimplexOptions simplex{};
};

struct FitResult {
  ModelParams theta_hat;
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Training data were all zeros or all ones; theta_hat sits on the box edge.
  bool degenerate = false;
};

struct SlotFit {
  std::size_t slot = 0;
  std::size_t training_end = 0;
  std::optional<FitResult> fit;
  std::string error;  // set when fit is empty
};

struct ParamTrajectory {
  ModelKind model = ModelKind::Complete;
  std::vector<SlotFit> per_slot;  // slots 1..S-1, ascending
};

/// Bernoulli one-step-ahead log-likelihood
///   sum_{n in [begin, end)} xi_{n+1} ln psi_n + (1 - xi_{n+1}) ln(1 - psi_n)
/// with psi_n the prediction after xi_1..xi_n (values[n] is xi_{n+1}).
/// Requires end <= series.size(); an empty range gives 0.
double log_likelihood(const ModelParams& params, std::span<const Bit> series, std::size_t begin,
                      std::size_t end);

/// Same quantity for the Polya predictor through its Beta-function product
/// form (no clamping). Used by the fitter; agrees with log_likelihood away
/// from the clamp.
double polya_log_likelihood_closed_form(const PolyaPredictorParams& params, std::size_t ones,
                                        std::size_t length);

/// Maximum-likelihood fit on xi_1..xi_{training_end}: every prediction
/// psi_0..psi_{training_end-1} is scored. Coarse grid, then a box-projected
/// simplex refinement from the best grid point.
FitResult fit(ModelKind model, std::span<const Bit> series, std::size_t training_end,
              const FitOptions& options = {});

/// fit() for every slot s = 1..S-1 with training_end = s * floor(N/S).
/// A failing slot is recorded and the trajectory continues.
ParamTrajectory fit_trajectory(ModelKind model, std::span<const Bit> series,
                               const SlotScheme& scheme, const FitOptions& options = {});

/// Out-of-sample prediction sequence: psi_n for n in slot s (s >= 1) uses the
/// parameters fitted on slots 0..s-1 and the full history xi_1..xi_n.
/// Entries outside [L, S*L) and slots whose fit failed are NaN.
std::vector<double> out_of_sample_predictions(std::span<const Bit> series,
                                              const SlotScheme& scheme,
                                              const ParamTrajectory& trajectory);

}  // namespace rpurn
