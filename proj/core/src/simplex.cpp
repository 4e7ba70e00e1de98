#include "rpurn/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rpurn/errors.hpp"

namespace rpurn {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;  // objective being maximized
};

}  // namespace

SimplexResult maximize_in_box(const std::function<double(std::span<const double>)>& objective,
                              std::vector<double> start, std::span<const double> lower,
                              std::span<const double> upper, std::span<const double> step,
                              const SimplexOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0 || lower.size() != dim || upper.size() != dim || step.size() != dim) {
    throw ConfigError("simplex: dimension mismatch");
  }

  SimplexResult result;
  auto project = [&](std::vector<double>& x) {
    for (std::size_t j = 0; j < dim; ++j) x[j] = std::clamp(x[j], lower[j], upper[j]);
  };
  auto evaluate = [&](std::vector<double> x) {
    project(x);
    double f = objective(x);
    if (std::isnan(f)) f = -std::numeric_limits<double>::infinity();
    ++result.evaluations;
    return Vertex{std::move(x), f};
  };

  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back(evaluate(start));
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> x = simplex.front().x;
    double moved = std::clamp(x[j] + step[j], lower[j], upper[j]);
    if (moved == x[j]) moved = std::clamp(x[j] - step[j], lower[j], upper[j]);
    x[j] = moved;
    simplex.push_back(evaluate(std::move(x)));
  }

  // Best first; stable so ties keep insertion order (start vertex wins).
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
  };
  auto converged = [&] {
    const Vertex& best = simplex.front();
    const Vertex& worst = simplex.back();
    if (!(best.f - worst.f <= options.f_tolerance)) return false;
    for (const Vertex& v : simplex) {
      for (std::size_t j = 0; j < dim; ++j) {
        const double width = upper[j] - lower[j];
        if (width <= 0.0) continue;
        if (std::abs(v.x[j] - best.x[j]) > options.x_tolerance * width) return false;
      }
    }
    return true;
  };

  order();
  while (result.evaluations < options.max_evaluations) {
    if (converged()) {
      result.converged = true;
      break;
    }
    ++result.iterations;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i].x[j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const Vertex& worst = simplex.back();
    auto along = [&](double t) {
      std::vector<double> x(dim);
      for (std::size_t j = 0; j < dim; ++j) x[j] = centroid[j] + t * (worst.x[j] - centroid[j]);
      return x;
    };

    Vertex reflected = evaluate(along(-1.0));
    if (reflected.f > simplex.front().f) {
      Vertex expanded = evaluate(along(-2.0));
      simplex.back() = expanded.f > reflected.f ? std::move(expanded) : std::move(reflected);
    } else if (reflected.f > simplex[dim - 1].f) {
      simplex.back() = std::move(reflected);
    } else {
      const bool outside = reflected.f > worst.f;
      Vertex contracted = evaluate(along(outside ? -0.5 : 0.5));
      const double bar = outside ? reflected.f : worst.f;
      if (contracted.f > bar) {
        simplex.back() = std::move(contracted);
      } else {
        const std::vector<double> best = simplex.front().x;
        for (std::size_t i = 1; i <= dim; ++i) {
          std::vector<double> x(dim);
          for (std::size_t j = 0; j < dim; ++j) x[j] = best[j] + 0.5 * (simplex[i].x[j] - best[j]);
          simplex[i] = evaluate(std::move(x));
        }
      }
    }
    order();
  }
  if (!result.converged) result.converged = converged();

  result.x = simplex.front().x;
  result.value = simplex.front().f;
  return result;
}

}  // namespace rpurn
