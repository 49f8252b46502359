#include <gtest/gtest.h>

#include <cmath>

#include "probcf/parser.hpp"
#include "probcf/smc.hpp"
#include "test_util.hpp"

namespace probcf {
namespace {

StraightLineProgram coin_flow(std::size_t id) {
  Pcfg g = compile(builtin_source("coin(0.36)"));
  return test::flow_program(g, id);
}

SlpStep weight_step(ExprPtr f) { return SlpStep{SlpStep::Weight{std::move(f), WeightOrigin::Weight}}; }

TEST(Step, ObserveZeroesWeight) {
  auto s = coin_flow(0);
  Particle p{{1.0, 1.0, 1.0, 1.0}, 1.0, true, {}};
  Rng rng(1);
  const auto& last = s.steps.back();
  ASSERT_TRUE(last.as_weight());
  step(p, last, rng);
  EXPECT_EQ(p.weight, 0.0);
}

TEST(Step, ConstantWeight) {
  Particle p{{0.0}, 1.0, true, {}};
  Rng rng(1);
  step(p, weight_step(make_const(3.0 / 20.0)), rng);
  EXPECT_DOUBLE_EQ(p.weight, 0.15);
}

TEST(Step, Assignment) {
  Pcfg g = compile("double x, y := 0; x := x + y; return x;");
  auto s = test::flow_program(g, 0);
  Particle p{{0.0, 1.5}, 1.0, true, {}};
  Rng rng(1);
  step(p, s.steps[0], rng);
  EXPECT_EQ(p.state, (MemoryState{1.5, 1.5}));
}

TEST(Step, EvaluationErrorKillsParticle) {
  Particle p{{0.0}, 1.0, true, {}};
  Rng rng(1);
  step(p, weight_step(make_const(-1.0)), rng);
  EXPECT_FALSE(p.alive);
  EXPECT_EQ(p.weight, 0.0);
  EXPECT_FALSE(p.error.empty());
}

TEST(RunSmc, CoinLiveFlowLikelihood) {
  auto s = coin_flow(1);
  SmcConfig cfg;
  cfg.particles = 10000;
  Rng rng(2);
  auto r = run_smc(s, cfg, rng);
  double se = std::sqrt(0.2304 * (1 - 0.2304) / 10000.0);
  EXPECT_NEAR(r.likelihood, 0.2304, 3 * se);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (r.weights[i] > 0.0) {
      EXPECT_EQ(r.values[i], 1.0);
    }
  }
}

TEST(RunSmc, CoinDeadFlowLikelihood) {
  auto s = coin_flow(0);
  SmcConfig cfg;
  cfg.particles = 1000;
  Rng rng(3);
  EXPECT_EQ(run_smc(s, cfg, rng).likelihood, 0.0);
}

TEST(RunSmc, NoRandomness) {
  auto s = test::slp_from_source("return 7;");
  Rng rng(4);
  auto r = run_smc(s, SmcConfig{}, rng);
  EXPECT_EQ(r.likelihood, 1.0);
  ASSERT_EQ(r.weights.size(), 100u);
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(r.weights[i], 1.0);
    EXPECT_EQ(r.values[i], 7.0);
  }
}

TEST(RunSmc, Deterministic) {
  Pcfg g = compile(builtin_source("obsLoop(3,5)"));
  auto s = test::flow_program(g, 5);
  Rng a(9), b(9);
  auto ra = run_smc(s, SmcConfig{}, a);
  auto rb = run_smc(s, SmcConfig{}, b);
  EXPECT_EQ(ra.weights, rb.weights);
  EXPECT_EQ(ra.values, rb.values);
  EXPECT_EQ(ra.likelihood, rb.likelihood);
  EXPECT_EQ(ra.resamples, rb.resamples);
}

TEST(RunSmc, GeomItFlowsAreUnbiased) {
  Pcfg g = compile(builtin_source("geomIt(0.5,0)"));
  auto flows = enumerate_flows(g, 5);
  for (std::size_t n = 0; n < 5; ++n) {
    auto s = straight_line(g, flows[n]);
    double truth = std::pow(0.5, n) * 0.5;
    Rng rng(100 + n);
    double sum = 0.0, sq = 0.0;
    const int reps = 100;
    for (int k = 0; k < reps; ++k) {
      double p = run_smc(s, SmcConfig{}, rng).likelihood;
      sum += p;
      sq += p * p;
    }
    double mean = sum / reps;
    double se = std::sqrt(std::max(sq / reps - mean * mean, 0.0) / reps);
    EXPECT_NEAR(mean, truth, 3 * se + 1e-12) << n;
  }
}

TEST(RunSmc, ObserveNeverIncreasesWeight) {
  Pcfg g = compile(builtin_source("obsLoop(3,5)"));
  auto s = test::flow_program(g, 6);
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Particle p{s.sigma_init, 1.0, true, {}};
    for (const auto& st : s.steps) {
      double before = p.weight;
      step(p, st, rng);
      if (st.as_weight()) {
        ASSERT_LE(p.weight, before);
      }
    }
  }
}

TEST(RunSmc, ResamplingInvariance) {
  auto s = test::slp_from_source(
      "double x ~ normal(0, 1); double y ~ normal(x, 1); weight(ind(y > 0) * 0.5 + 0.5); return x;");
  SmcConfig on, off;
  on.particles = off.particles = 10000;
  off.resample = false;
  Rng a(6), b(7);
  auto ra = run_smc(s, on, a), rb = run_smc(s, off, b);
  auto hist = [](const SmcResult& r) {
    std::vector<double> h(8, 0.0);
    double W = 0.0;
    for (std::size_t i = 0; i < r.weights.size(); ++i) {
      int k = std::clamp(static_cast<int>(std::floor((r.values[i] + 2.0) * 2.0)), 0, 7);
      h[k] += r.weights[i];
      W += r.weights[i];
    }
    for (double& x : h) x /= W;
    return h;
  };
  auto ha = hist(ra), hb = hist(rb);
  for (std::size_t k = 0; k < 8; ++k) {
    double se = std::sqrt(ha[k] * (1 - ha[k]) / 10000.0 + hb[k] * (1 - hb[k]) / 10000.0);
    EXPECT_NEAR(ha[k], hb[k], 4 * se + 1e-9) << k;
  }
}

TEST(EstimatePosteriorMc, CoinFlowsGiveFairCoin) {
  Pcfg g = compile(builtin_source("coin(0.36)"));
  Rng rng(8);
  double w_true = 0.0, w_all = 0.0;
  for (const auto& f : enumerate_flows(g, 4)) {
    auto mc = estimate_posterior_mc(straight_line(g, f), 100000, rng);
    for (std::size_t i = 0; i < mc.weights.size(); ++i) {
      w_all += mc.weights[i];
      if (mc.values[i] == 1.0) w_true += mc.weights[i];
    }
  }
  double p = w_true / w_all;
  double se = std::sqrt(0.25 / 46080.0);
  EXPECT_NEAR(p, 0.5, 3 * se);
}

TEST(EstimatePosteriorMc, DeterministicProgram) {
  auto s = test::slp_from_source("int n := 2; n := n * 3; return n;");
  Rng rng(9);
  auto mc = estimate_posterior_mc(s, 1000, rng);
  EXPECT_EQ(mc.evidence, 1.0);
  EXPECT_EQ(mc.std_error, 0.0);
  for (double v : mc.values) EXPECT_EQ(v, 6.0);
}

}  // namespace
}  // namespace probcf
