#include "rpurn/evaluation.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "rpurn/errors.hpp"

namespace rpurn {

void PredictionRun::validate() const {
  if (scheme.length() != series.size()) {
    throw DataError("slot scheme length does not match the series");
  }
  if (psi_hat.size() < scheme.used_length()) {
    throw DataError("predictions do not cover the evaluated range");
  }
  for (std::size_t n = scheme.slot_len(); n < scheme.used_length(); ++n) {
    if (!std::isfinite(psi_hat[n])) {
      throw DataError("missing prediction at index " + std::to_string(n));
    }
  }
}

Bit majority_value(std::span<const Bit> series, const SlotScheme& scheme, std::size_t s) {
  if (s < 1 || s >= scheme.slots()) throw ConfigError("majority slot index out of range");
  std::size_t ones = 0;
  const std::size_t end = scheme.begin(s);
  for (std::size_t n = 0; n < end; ++n) ones += series[n];
  return 2 * ones >= end ? Bit{1} : Bit{0};
}

namespace {

template <typename Prediction>
double relative_skill(std::span<const Bit> series, const SlotScheme& scheme,
                      Prediction prediction) {
  const std::size_t len = scheme.slot_len();
  std::size_t ones = 0;
  for (std::size_t n = 0; n < len; ++n) ones += series[n];
  double baseline = 0.0;
  double model = 0.0;
  for (std::size_t s = 1; s < scheme.slots(); ++s) {
    const std::size_t begin = scheme.begin(s);
    // ones counts xi_1..xi_{s*L} here.
    const double majority = 2 * ones >= begin ? 1.0 : 0.0;
    for (std::size_t n = begin; n < scheme.end(s); ++n) {
      const double x = series[n];
      baseline += (x - majority) * (x - majority);
      const double e = x - prediction(n);
      model += e * e;
      ones += series[n];
    }
  }
  if (model == 0.0) return std::numeric_limits<double>::infinity();
  return 100.0 * baseline / model;
}

}  // namespace

double ss_rel(const PredictionRun& run) {
  run.validate();
  return relative_skill(run.series, run.scheme, [&](std::size_t n) { return run.psi_hat[n]; });
}

double theoretical_value(std::span<const Bit> series, const SlotScheme& scheme) {
  if (scheme.length() != series.size()) {
    throw DataError("slot scheme length does not match the series");
  }
  const std::size_t len = scheme.slot_len();
  std::size_t ones = 0;
  for (std::size_t n = len; n < series.size(); ++n) ones += series[n];
  const double mean = static_cast<double>(ones) / static_cast<double>(series.size() - len);
  return relative_skill(series, scheme, [mean](std::size_t) { return mean; });
}

namespace {

// Natural cubic spline on equally spaced knots t_j = j*h (j = 0..K+1) over
// [0, n-1], written in the uniform cubic B-spline basis with coefficients
// c_0..c_{K+3}. f''(t_0) = 0 and f''(t_{K+1}) = 0 pin c_0 = 2c_1 - c_2 and
// c_{K+3} = 2c_{K+2} - c_{K+1}; the free coefficients are d_m = c_{m+1}.
class NaturalSplineBasis {
 public:
  NaturalSplineBasis(std::size_t points, int interior_knots)
      : k_(static_cast<std::size_t>(interior_knots)),
        h_(static_cast<double>(points - 1) / static_cast<double>(interior_knots + 1)) {}

  std::size_t dimension() const { return k_ + 2; }

  /// Calls sink(d_index, weight) for each basis contribution at x = index.
  template <typename Sink>
  void row(std::size_t index, Sink&& sink) const {
    const double t = static_cast<double>(index) / h_;
    std::size_t seg = static_cast<std::size_t>(t);
    if (seg > k_) seg = k_;
    const double u = t - static_cast<double>(seg);
    const double u2 = u * u;
    const double u3 = u2 * u;
    const std::array<double, 4> w{(1.0 - u) * (1.0 - u) * (1.0 - u) / 6.0,
                                  (3.0 * u3 - 6.0 * u2 + 4.0) / 6.0,
                                  (-3.0 * u3 + 3.0 * u2 + 3.0 * u + 1.0) / 6.0, u3 / 6.0};
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t c = seg + i;
      if (c == 0) {
        sink(0, 2.0 * w[i]);
        sink(1, -w[i]);
      } else if (c == k_ + 3) {
        sink(k_ + 1, 2.0 * w[i]);
        sink(k_, -w[i]);
      } else {
        sink(c - 1, w[i]);
      }
    }
  }

 private:
  std::size_t k_;
  double h_;
};

}  // namespace

SmoothedCurve smooth(std::span<const double> values, int knot_count) {
  if (knot_count < 3) throw ConfigError("smoothing needs at least 3 knots");
  if (values.size() < static_cast<std::size_t>(knot_count) + 4) {
    throw DataError("series of length " + std::to_string(values.size()) +
                    " is too short for " + std::to_string(knot_count) + " knots (need " +
                    std::to_string(knot_count + 4) + ")");
  }
  const NaturalSplineBasis basis(values.size(), knot_count);
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);

  std::array<std::pair<std::size_t, double>, 6> entries{};
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t count = 0;
    basis.row(i, [&](std::size_t d, double w) { entries[count++] = {d, w}; });
    for (std::size_t a = 0; a < count; ++a) {
      const auto [da, wa] = entries[a];
      rhs(static_cast<Eigen::Index>(da)) += wa * values[i];
      for (std::size_t b = 0; b < count; ++b) {
        const auto [db, wb] = entries[b];
        gram(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db)) += wa * wb;
      }
    }
  }
  const Eigen::LDLT<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) throw NumericError("spline normal equations are singular");
  const Eigen::VectorXd coef = solver.solve(rhs);

  SmoothedCurve curve{knot_count, std::vector<double>(values.size())};
  for (std::size_t i = 0; i < values.size(); ++i) {
    double y = 0.0;
    basis.row(i, [&](std::size_t d, double w) { y += w * coef(static_cast<Eigen::Index>(d)); });
    curve.values[i] = y;
  }
  return curve;
}

double mse_smoothed(const PredictionRun& run, std::optional<int> knot_count) {
  run.validate();
  const std::size_t begin = run.scheme.slot_len();
  const std::size_t end = run.scheme.used_length();
  std::vector<double> observed(end - begin);
  std::vector<double> predicted(end - begin);
  for (std::size_t n = begin; n < end; ++n) {
    observed[n - begin] = run.series[n];
    predicted[n - begin] = run.psi_hat[n];
  }
  if (knot_count) {
    observed = smooth(observed, *knot_count).values;
    predicted = smooth(predicted, *knot_count).values;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = observed[i] - predicted[i];
    sum += e * e;
  }
  return sum / static_cast<double>(observed.size());
}

}  // namespace rpurn
