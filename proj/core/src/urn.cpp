#include "rpurn/urn.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "rpurn/errors.hpp"
#include "rpurn/random.hpp"

namespace rpurn {

std::size_t inverse_cdf(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

CountVector::CountVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2) throw ConfigError("an urn needs at least two colors");
  for (double e : entries_) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw ConfigError("ball masses must be finite and non-negative");
    }
  }
}

CountVector CountVector::zeros(std::size_t colors) {
  return CountVector(std::vector<double>(colors, 0.0));
}

double CountVector::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0.0);
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be positive");
  }
}

void check_color(std::size_t color, std::size_t colors) {
  if (color >= colors) {
    throw ConfigError("draw color " + std::to_string(color) + " out of range for " +
                      std::to_string(colors) + " colors");
  }
}

std::vector<double> normalized(std::span<const double> masses) {
  double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (!(total > 0.0)) throw NumericError("urn is empty: predictive means undefined");
  std::vector<double> psi(masses.begin(), masses.end());
  for (double& p : psi) p /= total;
  return psi;
}

}  // namespace

RPUrnState::RPUrnState(CountVector b0, CountVector reinforced, double alpha, double beta)
    : base_(std::move(b0)), reinforced_(std::move(reinforced)), alpha_(alpha), beta_(beta) {
  if (base_.size() != reinforced_.size()) {
    throw ConfigError("b0 and B0 must have the same number of colors");
  }
  if (!(base_.total() > 0.0)) throw ConfigError("|b0| must be positive");
  check_alpha(alpha_);
  if (!(beta_ >= 0.0 && beta_ <= 1.0)) throw ConfigError("beta must lie in [0, 1]");
}

CountVector RPUrnState::composition() const {
  std::vector<double> n(base_.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = base_[i] + reinforced_[i];
  return CountVector(std::move(n));
}

double RPUrnState::total() const { return base_.total() + reinforced_.total(); }

void RPUrnState::update(DrawOutcome outcome) {
  check_color(outcome.color, colors());
  for (double& b : reinforced_.entries_) b *= beta_;
  reinforced_.entries_[outcome.color] += alpha_;
  ++step_;
}

PolyaUrnState::PolyaUrnState(CountVector initial, double alpha)
    : balls_(std::move(initial)), alpha_(alpha) {
  check_alpha(alpha_);
  if (!(balls_.total() > 0.0)) throw ConfigError("initial urn must contain balls");
}

void PolyaUrnState::update(DrawOutcome outcome) {
  check_color(outcome.color, colors());
  balls_.entries_[outcome.color] += alpha_;
  ++step_;
}

std::vector<double> predictive_means(const RPUrnState& state) {
  return normalized(state.composition().entries());
}

std::vector<double> predictive_means(const PolyaUrnState& state) {
  return normalized(state.composition().entries());
}

RPUrnState rp_update(RPUrnState state, DrawOutcome outcome) {
  state.update(outcome);
  return state;
}

PolyaUrnState polya_update(PolyaUrnState state, DrawOutcome outcome) {
  state.update(outcome);
  return state;
}

double total_balls_limit(double base_total, double alpha, double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw ConfigError("closed form requires 0 <= beta < 1");
  return base_total + alpha / (1.0 - beta);
}

double total_balls_closed_form(double base_total, double reinforced_total, double alpha,
                               double beta, std::uint64_t n) {
  const double limit_reinforced = alpha / (1.0 - beta);
  const double limit = total_balls_limit(base_total, alpha, beta);
  if (n == 0) return base_total + reinforced_total;
  return limit + std::pow(beta, static_cast<double>(n)) * (reinforced_total - limit_reinforced);
}

namespace {

template <typename State>
std::vector<DrawOutcome> simulate_impl(State state, std::uint64_t steps, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DrawOutcome> draws;
  draws.reserve(steps);
  for (std::uint64_t i = 0; i < steps; ++i) {
    auto psi = predictive_means(state);
    DrawOutcome outcome{inverse_cdf(psi, rng.uniform())};
    state.update(outcome);
    draws.push_back(outcome);
  }
  return draws;
}

}  // namespace

std::vector<DrawOutcome> simulate(RPUrnState initial, std::uint64_t steps, std::uint64_t seed) {
  return simulate_impl(std::move(initial), steps, seed);
}

std::vector<DrawOutcome> simulate(PolyaUrnState initial, std::uint64_t steps,
                                  std::uint64_t seed) {
  return simulate_impl(std::move(initial), steps, seed);
}

}  // namespace rpurn
