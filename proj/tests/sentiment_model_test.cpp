#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rpurn/errors.hpp"
#include "rpurn/sentiment_model.hpp"
#include "rpurn/urn.hpp"

using namespace rpurn;

TEST(Predict, NoFashionIsConstant) {
  Predictor p(ApproxParams::no_fashion(0.62));
  for (int i = 0; i < 50; ++i) {
    EXPECT_DOUBLE_EQ(p.predict(), 0.62);
    p.advance(static_cast<Bit>(i % 3 == 0));
  }
}

TEST(Predict, OnlyFashionBetaZeroCopiesLastBit) {
  Predictor p(ApproxParams::only_fashion(0.0));
  p.advance(0);
  p.advance(1);
  EXPECT_DOUBLE_EQ(p.predict(), 1.0);
  p.advance(0);
  EXPECT_DOUBLE_EQ(p.predict(), 0.0);
}

TEST(Predict, CompleteHandEvaluated) {
  Predictor p(ApproxParams::complete(0.4, 0.5, 0.0, 0.8));
  EXPECT_NEAR(p.predict(), 0.6, 1e-15);
}

TEST(Advance, FashionStep) {
  Predictor p(ApproxParams::only_fashion(0.9, 0.5));
  auto q = advance(p, 1);
  EXPECT_NEAR(q.b_tilde(), 0.55, 1e-15);
  EXPECT_DOUBLE_EQ(p.b_tilde(), 0.5);
}

TEST(Params, DomainChecks) {
  EXPECT_THROW(ApproxParams::only_fashion(1.0), ConfigError);
  EXPECT_THROW(ApproxParams::complete(1.2, 0.5, 0.5), ConfigError);
  EXPECT_THROW(ApproxParams::complete(0.2, -0.1, 0.5), ConfigError);
  EXPECT_THROW(PolyaPredictorParams::make(2.0, 2.0), ConfigError);
  EXPECT_THROW(PolyaPredictorParams::make(0.0, 2.0), ConfigError);
  ApproxParams bad = ApproxParams::only_fashion(0.5);
  bad.gamma_star = 0.5;
  EXPECT_THROW(Predictor{bad}, ConfigError);
}

TEST(Names, RoundTrip) {
  for (auto kind : {ModelKind::Complete, ModelKind::OnlyFashion, ModelKind::NoFashion, ModelKind::Polya}) {
    EXPECT_EQ(parse_model_kind(to_string(kind)), kind);
  }
  EXPECT_EQ(display_name(ModelKind::Polya), "Standard Polya");
  EXPECT_THROW(parse_model_kind("bogus"), ConfigError);
}

TEST(RunSeries, ConstantModel) {
  auto bits = oracle::random_bits(200, 0.3, 1);
  for (double psi : run_series(ApproxParams::no_fashion(0.5), bits, 0)) EXPECT_DOUBLE_EQ(psi, 0.5);
}

TEST(RunSeries, OnlyFashionOnOnes) {
  std::vector<Bit> ones(40, 1);
  auto psi = run_series(ApproxParams::only_fashion(0.5, 0.5), ones, 0);
  ASSERT_EQ(psi.size(), 40u);
  for (std::size_t n = 0; n < psi.size(); ++n) {
    EXPECT_NEAR(psi[n], 1.0 - std::pow(0.5, static_cast<double>(n + 1)), 1e-15);
    if (n > 0) EXPECT_GE(psi[n], psi[n - 1]);
  }
}

TEST(RunSeries, PolyaHandEvaluated) {
  const std::vector<Bit> bits{1, 0, 1, 0};
  auto psi = run_series(PolyaPredictorParams::make(1.0, 2.0), bits, 3);
  ASSERT_EQ(psi.size(), 1u);
  EXPECT_DOUBLE_EQ(psi[0], 0.6);
}

TEST(RunSeries, StartIndexPastEndIsEmpty) {
  const std::vector<Bit> bits{1, 0, 1};
  EXPECT_TRUE(run_series(ApproxParams::no_fashion(0.5), bits, 3).empty());
  EXPECT_TRUE(run_series(ApproxParams::no_fashion(0.5), bits, 9).empty());
}

TEST(FashionProcess, RecursionMatchesDirectSum) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto bits = oracle::random_bits(1000, 0.5, seed);
    const double beta = 0.5 + 0.049 * static_cast<double>(seed);
    Predictor p(ApproxParams::only_fashion(beta, 0.3));
    for (std::size_t n = 0; n <= bits.size(); ++n) {
      if (n % 97 == 0 || n == bits.size()) {
        ASSERT_NEAR(p.b_tilde(), oracle::b_tilde_direct(bits, beta, 0.3, n), 1e-10);
      }
      if (n < bits.size()) p.advance(bits[n]);
    }
  }
}

TEST(FashionProcess, ExponentialForgetting) {
  const auto bits = oracle::random_bits(300, 0.5, 8);
  const double gamma = 0.7, beta = 0.9;
  Predictor a(ApproxParams::complete(0.3, gamma, beta, 0.1));
  Predictor b(ApproxParams::complete(0.3, gamma, beta, 0.9));
  for (std::size_t n = 0; n < bits.size(); ++n) {
    const double expected = gamma * std::pow(beta, static_cast<double>(n)) * 0.8;
    ASSERT_NEAR(b.predict() - a.predict(), expected, 1e-12);
    a.advance(bits[n]);
    b.advance(bits[n]);
  }
}

TEST(Predict, StaysInUnitInterval) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto bits = oracle::random_bits(2000, 0.1 * static_cast<double>(seed), seed);
    for (const ModelParams& params :
         {ModelParams{ApproxParams::complete(1.0, 0.0, 0.2, 1.0)},
          ModelParams{ApproxParams::complete(0.99, 0.999, 0.999, 1.0)},
          ModelParams{ApproxParams::only_fashion(0.3, 0.0)},
          ModelParams{PolyaPredictorParams::make(1e-6, 1e-3)}}) {
      for (double psi : run_series(params, bits, 0)) {
        ASSERT_GE(psi, 0.0);
        ASSERT_LE(psi, 1.0);
      }
    }
  }
}

TEST(Fluctuation, FashionFluctuatesPolyaSettles) {
  const auto bits = oracle::random_bits(100000, 0.5, 11);
  const auto fashion = run_series(ApproxParams::only_fashion(0.99), bits, 0);
  const auto polya = run_series(PolyaPredictorParams::make(1.0, 2.0), bits, 0);
  const std::size_t from = bits.size() * 9 / 10;
  EXPECT_GT(oracle::variance(fashion, from, bits.size()),
            10.0 * oracle::variance(polya, from, bits.size()));
}

TEST(Approximation, ParametersFromExactUrn) {
  RPUrnState urn(CountVector({1.0, 3.0}), CountVector({2.0, 6.0}), 1.0, 0.75);
  auto approx = approximate(urn);
  EXPECT_DOUBLE_EQ(approx.p0, 0.25);
  EXPECT_DOUBLE_EQ(approx.gamma_star, 0.5);  // r* = 4 + 4
  EXPECT_DOUBLE_EQ(approx.b_tilde_init, 0.25);
  EXPECT_DOUBLE_EQ(approx.beta, 0.75);
}

TEST(Approximation, TracksExactEngineForLargeN) {
  RPUrnState urn(CountVector({2.0, 1.0}), CountVector({0.0, 0.0}), 1.0, 0.95);
  Predictor approx(approximate(urn));
  const auto draws = simulate(urn, 10000, 17);
  double early = 0.0, late = 0.0;
  for (std::size_t n = 0; n < draws.size(); ++n) {
    const double gap = std::abs(predictive_means(urn)[0] - approx.predict());
    if (n >= 1 && n <= 100) early = std::max(early, gap);
    if (n >= 1000) late = std::max(late, gap);
    urn.update(draws[n]);
    approx.advance(draws[n].color == 0 ? 1 : 0);
  }
  EXPECT_LT(late, early);
}

TEST(SimulateSeries, DeterministicAndDegenerate) {
  const ModelParams params = ApproxParams::complete(0.4, 0.7, 0.99);
  EXPECT_EQ(simulate_series(params, 5000, 3), simulate_series(params, 5000, 3));
  for (Bit b : simulate_series(ApproxParams::no_fashion(1.0), 100, 1)) EXPECT_EQ(b, 1);
  for (Bit b : simulate_series(ApproxParams::no_fashion(0.0), 100, 1)) EXPECT_EQ(b, 0);
}
