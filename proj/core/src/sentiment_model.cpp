#include "rpurn/sentiment_model.hpp"

#include <cmath>
#include <string>

#include "rpurn/errors.hpp"
#include "rpurn/random.hpp"
#include "rpurn/urn.hpp"

namespace rpurn {

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Complete: return "complete";
    case ModelKind::OnlyFashion: return "only_fashion";
    case ModelKind::NoFashion: return "no_fashion";
    case ModelKind::Polya: return "polya";
  }
  return "unknown";
}

std::string_view display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Complete: return "Complete RP";
    case ModelKind::OnlyFashion: return "Only Fashion RP";
    case ModelKind::NoFashion: return "No Fashion RP";
    case ModelKind::Polya: return "Standard Polya";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "complete") return ModelKind::Complete;
  if (name == "only_fashion") return ModelKind::OnlyFashion;
  if (name == "no_fashion") return ModelKind::NoFashion;
  if (name == "polya") return ModelKind::Polya;
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected complete, only_fashion, no_fashion or polya)");
}

ApproxParams ApproxParams::complete(double p0, double gamma_star, double beta,
                                    double b_tilde_init) {
  ApproxParams p{p0, gamma_star, beta, b_tilde_init, Variant::Complete};
  p.validate();
  return p;
}

ApproxParams ApproxParams::only_fashion(double beta, double b_tilde_init) {
  ApproxParams p{0.0, 1.0, beta, b_tilde_init, Variant::OnlyFashion};
  p.validate();
  return p;
}

ApproxParams ApproxParams::no_fashion(double p0) {
  ApproxParams p{p0, 0.0, 0.0, 0.5, Variant::NoFashion};
  p.validate();
  return p;
}

void ApproxParams::validate() const {
  if (!in_unit(p0)) throw ConfigError("p0 must lie in [0, 1]");
  if (!in_unit(gamma_star)) throw ConfigError("gamma* must lie in [0, 1]");
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw ConfigError("beta must lie in [0, 1) for the approximated dynamics");
  }
  if (!in_unit(b_tilde_init)) throw ConfigError("initial fashion value must lie in [0, 1]");
  if (variant == Variant::OnlyFashion && gamma_star != 1.0) {
    throw ConfigError("only-fashion variant requires gamma* = 1");
  }
  if (variant == Variant::NoFashion && gamma_star != 0.0) {
    throw ConfigError("no-fashion variant requires gamma* = 0");
  }
}

PolyaPredictorParams PolyaPredictorParams::make(double a1, double a) {
  PolyaPredictorParams p{a1, a};
  p.validate();
  return p;
}

void PolyaPredictorParams::validate() const {
  if (!(a1 > 0.0 && a1 < a) || !std::isfinite(a)) {
    throw ConfigError("Polya predictor requires 0 < a1 < a");
  }
}

ModelKind kind_of(const ModelParams& params) {
  if (std::holds_alternative<PolyaPredictorParams>(params)) return ModelKind::Polya;
  switch (std::get<ApproxParams>(params).variant) {
    case Variant::Complete: return ModelKind::Complete;
    case Variant::OnlyFashion: return ModelKind::OnlyFashion;
    case Variant::NoFashion: return ModelKind::NoFashion;
  }
  return ModelKind::Complete;
}

void validate(const ModelParams& params) {
  std::visit([](const auto& p) { p.validate(); }, params);
}

ApproxParams approximate(const RPUrnState& two_color) {
  if (two_color.colors() != 2) throw ConfigError("approximation is defined for two colors");
  const double base_total = two_color.base().total();
  const double limit = total_balls_limit(base_total, two_color.alpha(), two_color.beta());
  const double reinforced_total = two_color.reinforced().total();
  const double b_tilde =
      reinforced_total > 0.0 ? two_color.reinforced()[0] / reinforced_total : 0.5;
  return ApproxParams::complete(two_color.base()[0] / base_total, 1.0 - base_total / limit,
                                two_color.beta(), b_tilde);
}

Predictor::Predictor(ModelParams params) : params_(std::move(params)) {
  rpurn::validate(params_);
  if (const auto* polya = std::get_if<PolyaPredictorParams>(&params_)) {
    polya_ = true;
    a1_ = polya->a1;
    a_ = polya->a;
    b_tilde_ = 0.0;
    return;
  }
  const auto& approx = std::get<ApproxParams>(params_);
  level_ = (1.0 - approx.gamma_star) * approx.p0;
  weight_ = approx.gamma_star;
  beta_ = approx.beta;
  one_minus_beta_ = 1.0 - approx.beta;
  b_tilde_ = approx.b_tilde_init;
}

Predictor advance(Predictor state, Bit observation) {
  state.advance(observation);
  return state;
}

std::vector<double> run_series(const ModelParams& params, std::span<const Bit> series,
                               std::size_t start_index) {
  Predictor predictor(params);
  std::vector<double> out;
  if (start_index >= series.size()) return out;
  out.reserve(series.size() - start_index);
  for (std::size_t n = 0; n < series.size(); ++n) {
    if (n >= start_index) out.push_back(predictor.predict());
    predictor.advance(series[n]);
  }
  return out;
}

std::vector<Bit> simulate_series(const ModelParams& params, std::size_t length,
                                 std::uint64_t seed) {
  Predictor predictor(params);
  Rng rng(seed);
  std::vector<Bit> bits(length);
  for (auto& bit : bits) {
    bit = rng.bernoulli(predictor.predict()) ? 1 : 0;
    predictor.advance(bit);
  }
  return bits;
}

}  // namespace rpurn
