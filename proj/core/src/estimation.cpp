#include "rpurn/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rpurn/errors.hpp"

namespace rpurn {

namespace {

double clamp_probability(double psi) {
  return std::clamp(psi, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

// Sum of logs of clamped probabilities, taking one log per block of
// factors. Every factor is >= kProbabilityFloor, so a block of 24 stays far
// above the double underflow limit.
class LogProduct {
 public:
  void add(double p) {
    product_ *= p;
    if (++count_ == kBlock) flush();
  }
  double value() {
    flush();
    return sum_;
  }

 private:
  static constexpr int kBlock = 24;
  void flush() {
    sum_ += std::log(product_);
    product_ = 1.0;
    count_ = 0;
  }
  double sum_ = 0.0;
  double product_ = 1.0;
  int count_ = 0;
};

// Log-likelihood of the fashion dynamics psi_n = level + weight * Bt_n over
// predictions [begin, end).
double approx_log_likelihood(double level, double weight, double beta, double b_tilde,
                             std::span<const Bit> series, std::size_t begin, std::size_t end) {
  const double one_minus_beta = 1.0 - beta;
  for (std::size_t n = 0; n < begin; ++n) b_tilde = beta * b_tilde + one_minus_beta * series[n];
  LogProduct ll;
  for (std::size_t n = begin; n < end; ++n) {
    const double psi = clamp_probability(level + weight * b_tilde);
    const Bit x = series[n];
    ll.add(x ? psi : 1.0 - psi);
    b_tilde = beta * b_tilde + one_minus_beta * x;
  }
  return ll.value();
}

double polya_log_likelihood(double a1, double a, std::span<const Bit> series, std::size_t begin,
                            std::size_t end) {
  std::size_t ones = 0;
  for (std::size_t n = 0; n < begin; ++n) ones += series[n];
  LogProduct ll;
  for (std::size_t n = begin; n < end; ++n) {
    const double psi = clamp_probability((a1 + static_cast<double>(ones)) /
                                         (a + static_cast<double>(n)));
    const Bit x = series[n];
    ll.add(x ? psi : 1.0 - psi);
    ones += x;
  }
  return ll.value();
}

double bernoulli_log_likelihood(double p, std::size_t ones, std::size_t zeros) {
  const double psi = clamp_probability(p);
  return static_cast<double>(ones) * std::log(psi) +
         static_cast<double>(zeros) * std::log(1.0 - psi);
}

std::vector<double> grid_axis(double lo, double hi, int points) {
  std::vector<double> axis(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    axis[static_cast<std::size_t>(i)] =
        i == points - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  return axis;
}

struct Candidate {
  std::vector<double> x;
  double score;
};

// Highest score wins; ties keep the earliest candidate (lowest grid index).
std::size_t best_index(const std::vector<Candidate>& candidates) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].score > candidates[best].score) best = i;
  }
  return best;
}

// Polya box is searched in (ln a, v) with a1 = margin + v (a - 2 margin).
PolyaPredictorParams polya_from_search(std::span<const double> x) {
  const double a = std::clamp(std::exp(x[0]), kPolyaMinScale, kPolyaMaxScale);
  const double v = std::clamp(x[1], 0.0, 1.0);
  return PolyaPredictorParams{kPolyaMargin + v * (a - 2.0 * kPolyaMargin), a};
}

ApproxParams complete_from_search(std::span<const double> x, double b_tilde_init) {
  return ApproxParams{std::clamp(x[0], 0.0, 1.0), std::clamp(x[1], 0.0, 1.0),
                      std::clamp(x[2], 0.0, kMaxBeta), b_tilde_init, Variant::Complete};
}

// Binned scoring of the (p0, gamma*, beta) grid. For every beta the
// prediction-time fashion values are grouped by bin and outcome; each group
// is represented by its mean Bt, so a grid point costs O(bins) logs instead
// of O(T).
std::vector<Candidate> score_complete_grid_binned(std::span<const Bit> series, std::size_t end,
                                                  const std::vector<double>& p0_axis,
                                                  const std::vector<double>& gamma_axis,
                                                  const std::vector<double>& beta_axis,
                                                  const FitOptions& options) {
  const auto bins = static_cast<std::size_t>(std::max(options.histogram_bins, 1));
  std::vector<Candidate> grid;
  grid.reserve(p0_axis.size() * gamma_axis.size() * beta_axis.size());
  std::vector<double> sum1(bins), sum0(bins), count1(bins), count0(bins);
  for (double beta : beta_axis) {
    std::fill(sum1.begin(), sum1.end(), 0.0);
    std::fill(sum0.begin(), sum0.end(), 0.0);
    std::fill(count1.begin(), count1.end(), 0.0);
    std::fill(count0.begin(), count0.end(), 0.0);
    double b = options.b_tilde_init;
    for (std::size_t n = 0; n < end; ++n) {
      const auto bin = std::min(bins - 1, static_cast<std::size_t>(b * static_cast<double>(bins)));
      if (series[n]) {
        sum1[bin] += b;
        count1[bin] += 1.0;
      } else {
        sum0[bin] += b;
        count0[bin] += 1.0;
      }
      b = beta * b + (1.0 - beta) * series[n];
    }
    for (std::size_t i = 0; i < bins; ++i) {
      if (count1[i] > 0.0) sum1[i] /= count1[i];
      if (count0[i] > 0.0) sum0[i] /= count0[i];
    }
    for (double p0 : p0_axis) {
      for (double gamma : gamma_axis) {
        const double level = (1.0 - gamma) * p0;
        double score = 0.0;
        for (std::size_t i = 0; i < bins; ++i) {
          if (count1[i] > 0.0) score += count1[i] * std::log(clamp_probability(level + gamma * sum1[i]));
          if (count0[i] > 0.0) {
            score += count0[i] * std::log(1.0 - clamp_probability(level + gamma * sum0[i]));
          }
        }
        grid.push_back({{p0, gamma, beta}, score});
      }
    }
  }
  return grid;
}

struct SearchOutcome {
  ModelParams theta;
  SimplexResult simplex;
};

SearchOutcome search_no_fashion(std::size_t ones, std::size_t length, const FitOptions& options) {
  const std::size_t zeros = length - ones;
  auto objective = [&](std::span<const double> x) { return bernoulli_log_likelihood(x[0], ones, zeros); };
  std::vector<Candidate> grid;
  for (double p : grid_axis(0.0, 1.0, options.grid_points)) {
    grid.push_back({{p}, objective(std::vector<double>{p})});
  }
  const std::vector<double> lower{0.0}, upper{1.0}, step{1.0 / (options.grid_points - 1)};
  auto simplex = maximize_in_box(objective, grid[best_index(grid)].x, lower, upper, step,
                                 options.simplex);
  return {ApproxParams::no_fashion(simplex.x[0]), simplex};
}

SearchOutcome search_only_fashion(std::span<const Bit> series, std::size_t end,
                                  const FitOptions& options) {
  auto objective = [&](std::span<const double> x) {
    return approx_log_likelihood(0.0, 1.0, x[0], options.b_tilde_init, series, 0, end);
  };
  std::vector<Candidate> grid;
  for (double beta : grid_axis(0.0, kMaxBeta, options.grid_points)) {
    grid.push_back({{beta}, objective(std::vector<double>{beta})});
  }
  const std::vector<double> lower{0.0}, upper{kMaxBeta}, step{kMaxBeta / (options.grid_points - 1)};
  auto simplex = maximize_in_box(objective, grid[best_index(grid)].x, lower, upper, step,
                                 options.simplex);
  return {ApproxParams::only_fashion(std::clamp(simplex.x[0], 0.0, kMaxBeta), options.b_tilde_init),
          simplex};
}

SearchOutcome search_complete(std::span<const Bit> series, std::size_t end, std::size_t ones,
                              const FitOptions& options) {
  auto objective = [&](std::span<const double> x) {
    const double p0 = std::clamp(x[0], 0.0, 1.0);
    const double gamma = std::clamp(x[1], 0.0, 1.0);
    const double beta = std::clamp(x[2], 0.0, kMaxBeta);
    return approx_log_likelihood((1.0 - gamma) * p0, gamma, beta, options.b_tilde_init, series,
                                 0, end);
  };
  const auto p0_axis = grid_axis(0.0, 1.0, options.grid_points);
  const auto gamma_axis = grid_axis(0.0, 1.0, options.grid_points);
  const auto beta_axis = grid_axis(0.0, kMaxBeta, options.grid_points);
  const double grid_size = static_cast<double>(p0_axis.size() * gamma_axis.size() * beta_axis.size());

  std::vector<Candidate> starts;
  if (grid_size * static_cast<double>(end) <= options.exact_grid_budget) {
    std::vector<Candidate> grid;
    for (double beta : beta_axis) {
      for (double p0 : p0_axis) {
        for (double gamma : gamma_axis) {
          std::vector<double> x{p0, gamma, beta};
          const double score = objective(x);
          grid.push_back({std::move(x), score});
        }
      }
    }
    starts.push_back(grid[best_index(grid)]);
  } else {
    auto grid = score_complete_grid_binned(series, end, p0_axis, gamma_axis, beta_axis, options);
    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), 0);
    const auto keep = std::min<std::size_t>(order.size(),
                                            static_cast<std::size_t>(std::max(1, options.rescored_candidates)));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return grid[a].score > grid[b].score || (grid[a].score == grid[b].score && a < b);
                      });
    for (std::size_t i = 0; i < keep; ++i) {
      std::vector<double> x = grid[order[i]].x;
      const double score = objective(x);
      starts.push_back({std::move(x), score});
    }
  }
  // Both restricted optima are points of this box (gamma* = 0 and gamma* = 1).
  {
    const auto only_fashion = search_only_fashion(series, end, options);
    std::vector<double> x{0.0, 1.0, std::get<ApproxParams>(only_fashion.theta).beta};
    const double score = objective(x);
    starts.push_back({std::move(x), score});
  }
  {
    std::vector<double> x{static_cast<double>(ones) / static_cast<double>(end), 0.0, 0.0};
    const double score = objective(x);
    starts.push_back({std::move(x), score});
  }

  const std::vector<double> lower{0.0, 0.0, 0.0}, upper{1.0, 1.0, kMaxBeta};
  const double spacing = 1.0 / (options.grid_points - 1);
  const std::vector<double> step{spacing, spacing, kMaxBeta * spacing};
  auto simplex = maximize_in_box(objective, starts[best_index(starts)].x, lower, upper, step,
                                 options.simplex);
  return {complete_from_search(simplex.x, options.b_tilde_init), simplex};
}

SearchOutcome search_polya(std::size_t ones, std::size_t length, const FitOptions& options) {
  auto objective = [&](std::span<const double> x) {
    return polya_log_likelihood_closed_form(polya_from_search(x), ones, length);
  };
  const double lo = std::log(kPolyaMinScale), hi = std::log(kPolyaMaxScale);
  std::vector<Candidate> grid;
  for (double u : grid_axis(lo, hi, options.grid_points)) {
    for (double v : grid_axis(0.0, 1.0, options.grid_points)) {
      std::vector<double> x{u, v};
      const double score = objective(x);
      grid.push_back({std::move(x), score});
    }
  }
  const std::vector<double> lower{lo, 0.0}, upper{hi, 1.0};
  const std::vector<double> step{(hi - lo) / (options.grid_points - 1),
                                 1.0 / (options.grid_points - 1)};
  auto simplex = maximize_in_box(objective, grid[best_index(grid)].x, lower, upper, step,
                                 options.simplex);
  return {polya_from_search(simplex.x), simplex};
}

}  // namespace

double log_likelihood(const ModelParams& params, std::span<const Bit> series, std::size_t begin,
                      std::size_t end) {
  if (end > series.size()) throw ConfigError("likelihood range exceeds the series");
  if (begin >= end) return 0.0;
  validate(params);
  if (const auto* polya = std::get_if<PolyaPredictorParams>(&params)) {
    return polya_log_likelihood(polya->a1, polya->a, series, begin, end);
  }
  const auto& approx = std::get<ApproxParams>(params);
  return approx_log_likelihood((1.0 - approx.gamma_star) * approx.p0, approx.gamma_star,
                               approx.beta, approx.b_tilde_init, series, begin, end);
}

double polya_log_likelihood_closed_form(const PolyaPredictorParams& params, std::size_t ones,
                                        std::size_t length) {
  const double k = static_cast<double>(ones);
  const double t = static_cast<double>(length);
  const double a0 = params.a - params.a1;
  return std::lgamma(params.a1 + k) - std::lgamma(params.a1) + std::lgamma(a0 + t - k) -
         std::lgamma(a0) - std::lgamma(params.a + t) + std::lgamma(params.a);
}

FitResult fit(ModelKind model, std::span<const Bit> series, std::size_t training_end,
              const FitOptions& options) {
  if (training_end < 2) throw ConfigError("fit needs at least two training observations");
  if (training_end > series.size()) throw ConfigError("training range exceeds the series");
  if (options.grid_points < 2) throw ConfigError("grid needs at least two points per dimension");

  const auto training = series.first(training_end);
  const std::size_t ones = static_cast<std::size_t>(std::count(training.begin(), training.end(), Bit{1}));

  SearchOutcome outcome = [&] {
    switch (model) {
      case ModelKind::NoFashion: return search_no_fashion(ones, training_end, options);
      case ModelKind::OnlyFashion: return search_only_fashion(training, training_end, options);
      case ModelKind::Complete: return search_complete(training, training_end, ones, options);
      case ModelKind::Polya: return search_polya(ones, training_end, options);
    }
    throw ConfigError("unknown model");
  }();

  FitResult result{outcome.theta, log_likelihood(outcome.theta, training, 0, training_end),
                   outcome.simplex.iterations, outcome.simplex.converged, false};
  if (ones == 0 || ones == training_end) {
    result.degenerate = true;
    result.converged = true;
  }
  return result;
}

ParamTrajectory fit_trajectory(ModelKind model, std::span<const Bit> series,
                               const SlotScheme& scheme, const FitOptions& options) {
  if (scheme.length() != series.size()) {
    throw ConfigError("slot scheme length does not match the series");
  }
  ParamTrajectory trajectory{model, {}};
  trajectory.per_slot.reserve(scheme.slots() - 1);
  for (std::size_t s = 1; s < scheme.slots(); ++s) {
    SlotFit entry{s, scheme.begin(s), std::nullopt, {}};
    try {
      entry.fit = fit(model, series, entry.training_end, options);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    trajectory.per_slot.push_back(std::move(entry));
  }
  return trajectory;
}

std::vector<double> out_of_sample_predictions(std::span<const Bit> series,
                                              const SlotScheme& scheme,
                                              const ParamTrajectory& trajectory) {
  std::vector<double> psi(series.size(), std::numeric_limits<double>::quiet_NaN());
  for (const SlotFit& entry : trajectory.per_slot) {
    if (!entry.fit || entry.slot == 0 || entry.slot >= scheme.slots()) continue;
    Predictor predictor(entry.fit->theta_hat);
    const std::size_t begin = scheme.begin(entry.slot);
    const std::size_t end = scheme.end(entry.slot);
    for (std::size_t n = 0; n < begin; ++n) predictor.advance(series[n]);
    for (std::size_t n = begin; n < end; ++n) {
      psi[n] = predictor.predict();
      predictor.advance(series[n]);
    }
  }
  return psi;
}

}  // namespace rpurn
