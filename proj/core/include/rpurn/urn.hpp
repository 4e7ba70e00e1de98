#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rpurn {

/// Non-negative ball masses, one per color (k >= 2). Masses are real-valued.
class CountVector {
 public:
  explicit CountVector(std::vector<double> entries);

  static CountVector zeros(std::size_t colors);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const { return entries_; }
  /// |x| = sum of entries.
  double total() const;

 private:
  friend class RPUrnState;
  friend class PolyaUrnState;
  std::vector<double> entries_;
};

struct DrawOutcome {
  std::size_t color = 0;
  friend bool operator==(DrawOutcome, DrawOutcome) = default;
};

/// Rescaled Polya urn: N_n = b0 + B_n, B_{n+1} = beta * B_n + alpha * e_color.
class RPUrnState {
 public:
  /// Requires |b0| > 0, alpha > 0, beta in [0, 1] and matching color counts.
  RPUrnState(CountVector b0, CountVector reinforced, double alpha, double beta);

  const CountVector& base() const { return base_; }
  const CountVector& reinforced() const { return reinforced_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::uint64_t step() const { return step_; }
  std::size_t colors() const { return base_.size(); }

  /// Ball masses N_n = b0 + B_n.
  CountVector composition() const;
  /// r*_n = |N_n|, recomputed from the components.
  double total() const;

  void update(DrawOutcome outcome);

 private:
  CountVector base_;
  CountVector reinforced_;
  double alpha_;
  double beta_;
  std::uint64_t step_ = 0;
};

/// Standard Polya urn: the drawn color gains alpha balls.
class PolyaUrnState {
 public:
  PolyaUrnState(CountVector initial, double alpha);

  const CountVector& composition() const { return balls_; }
  double alpha() const { return alpha_; }
  std::uint64_t step() const { return step_; }
  std::size_t colors() const { return balls_.size(); }
  double total() const { return balls_.total(); }

  void update(DrawOutcome outcome);

 private:
  CountVector balls_;
  double alpha_;
  std::uint64_t step_ = 0;
};

/// psi_{n,i} = N_{n,i} / |N_n|. Throws NumericError when |N_n| = 0.
std::vector<double> predictive_means(const RPUrnState& state);
std::vector<double> predictive_means(const PolyaUrnState& state);

RPUrnState rp_update(RPUrnState state, DrawOutcome outcome);
PolyaUrnState polya_update(PolyaUrnState state, DrawOutcome outcome);

/// r*_n = |b0| + alpha/(1-beta) + beta^n (|B0| - alpha/(1-beta)).
/// Throws ConfigError unless 0 <= beta < 1.
double total_balls_closed_form(double base_total, double reinforced_total, double alpha,
                               double beta, std::uint64_t n);

/// Limit r* = |b0| + alpha/(1-beta) of the total mass for beta < 1.
double total_balls_limit(double base_total, double alpha, double beta);

/// Forward simulation: each draw uses the current predictive means (inverse
/// CDF) and the state is advanced with the matching update.
std::vector<DrawOutcome> simulate(RPUrnState initial, std::uint64_t steps, std::uint64_t seed);
std::vector<DrawOutcome> simulate(PolyaUrnState initial, std::uint64_t steps, std::uint64_t seed);

}  // namespace rpurn
