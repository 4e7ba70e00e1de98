#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "rpurn/series.hpp"

namespace rpurn {

class RPUrnState;

/// Constraint pattern on (p0, gamma*, beta) of the large-n two-color dynamics
///   psi_n = (1 - gamma*) p0 + gamma* Bt_n,   Bt_{n+1} = beta Bt_n + (1 - beta) xi_{n+1}.
enum class Variant { Complete, OnlyFashion, NoFashion };

/// Every predictor the toolkit can fit; the first three are Variant values.
enum class ModelKind { Complete, OnlyFashion, NoFashion, Polya };

std::string_view to_string(ModelKind kind);
/// Accepts complete, only_fashion, no_fashion, polya.
ModelKind parse_model_kind(std::string_view name);
/// Column label as printed in report tables ("Complete RP", ...).
std::string_view display_name(ModelKind kind);

struct ApproxParams {
  double p0 = 0.5;
  double gamma_star = 0.0;
  double beta = 0.0;
  double b_tilde_init = 0.5;
  Variant variant = Variant::Complete;

  static ApproxParams complete(double p0, double gamma_star, double beta,
                               double b_tilde_init = 0.5);
  /// gamma* = 1, p0 fixed at 0.
  static ApproxParams only_fashion(double beta, double b_tilde_init = 0.5);
  /// gamma* = 0, beta fixed at 0.
  static ApproxParams no_fashion(double p0);

  /// Throws ConfigError on any bound or variant-constraint violation.
  void validate() const;
};

/// Polya predictive mean reparameterized by a1 = N_{0,1}/alpha and a = |N_0|/alpha:
/// psi_n = (a1 + #ones) / (a + n).
struct PolyaPredictorParams {
  double a1 = 1.0;
  double a = 2.0;

  static PolyaPredictorParams make(double a1, double a);
  void validate() const;
};

using ModelParams = std::variant<ApproxParams, PolyaPredictorParams>;

ModelKind kind_of(const ModelParams& params);
void validate(const ModelParams& params);

/// Maps an exact two-color RP urn (beta < 1) onto the approximated dynamics:
/// p0 = b0_1/|b0|, gamma* = 1 - |b0|/r*, Bt_0 = B0_1/|B0| (1/2 when |B0| = 0).
ApproxParams approximate(const RPUrnState& two_color);

/// Streaming one-step-ahead predictor. Value type; copies are independent.
class Predictor {
 public:
  explicit Predictor(ModelParams params);

  /// psi for the next observation given everything advanced so far.
  double predict() const {
    if (polya_) return (a1_ + static_cast<double>(count_ones_)) / (a_ + static_cast<double>(n_));
    const double psi = level_ + weight_ * b_tilde_;
    return psi < 1.0 ? psi : 1.0;
  }

  void advance(Bit observation) {
    if (!polya_) b_tilde_ = beta_ * b_tilde_ + one_minus_beta_ * observation;
    count_ones_ += observation;
    ++n_;
  }

  const ModelParams& params() const { return params_; }
  double b_tilde() const { return b_tilde_; }
  std::uint64_t count_ones() const { return count_ones_; }
  std::uint64_t observations() const { return n_; }

 private:
  ModelParams params_;
  bool polya_ = false;
  double level_ = 0.0;   // (1 - gamma*) p0
  double weight_ = 0.0;  // gamma*
  double beta_ = 0.0;
  double one_minus_beta_ = 1.0;
  double a1_ = 0.0;
  double a_ = 0.0;
  double b_tilde_ = 0.5;
  std::uint64_t count_ones_ = 0;
  std::uint64_t n_ = 0;
};

Predictor advance(Predictor state, Bit observation);

/// psi_n for n = start_index .. N-1, psi_n computed after xi_1..xi_n.
/// start_index = 0 includes the prior prediction psi_0. Empty when
/// start_index >= N.
std::vector<double> run_series(const ModelParams& params, std::span<const Bit> series,
                               std::size_t start_index);

/// Draws xi_{n+1} ~ Bernoulli(psi_n) for n = 0..length-1.
std::vector<Bit> simulate_series(const ModelParams& params, std::size_t length,
                                 std::uint64_t seed);

}  // namespace rpurn
