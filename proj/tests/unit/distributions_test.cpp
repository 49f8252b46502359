#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

#include "probcf/distributions.hpp"
#include "probcf/errors.hpp"

namespace probcf {
namespace {

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

TEST(Distribution, Density) {
  EXPECT_DOUBLE_EQ(make_distribution("uniform", {0, 20})->density(5), 0.05);
  EXPECT_DOUBLE_EQ(make_distribution("bernoulli", {0.36})->density(1), 0.36);
  EXPECT_NEAR(make_distribution("normal", {1, 1})->density(1), 0.3989422804014327, 1e-15);
  EXPECT_DOUBLE_EQ(make_distribution("uniform", {0, 20})->density(25), 0.0);
}

TEST(Distribution, CdfAndQuantile) {
  EXPECT_DOUBLE_EQ(make_distribution("uniform", {1, 5})->cdf(3), 0.5);
  EXPECT_DOUBLE_EQ(make_distribution("uniform", {7, 10})->quantile(0.5), 8.5);
  EXPECT_DOUBLE_EQ(make_distribution("normal", {0, 1})->cdf(0), 0.5);
  EXPECT_NEAR(make_distribution("gamma", {3, 3})->cdf(1), 0.5768099188731566, 1e-12);
  EXPECT_NEAR(make_distribution("beta", {2, 3})->cdf(0.5), 0.6875, 1e-12);
  EXPECT_THROW(make_distribution("normal", {0, 1})->quantile(1.5), DistributionError);
}

TEST(Distribution, Support) {
  auto b = make_distribution("beta", {1, 1})->support();
  EXPECT_EQ(b.range.lo, 0.0);
  EXPECT_EQ(b.range.hi, 1.0);
  EXPECT_FALSE(b.range.lo_open);
  EXPECT_TRUE(b.range.hi_open);
  auto u = make_distribution("uniform", {0, 20})->support();
  EXPECT_EQ(u.range.lo, 0.0);
  EXPECT_EQ(u.range.hi, 20.0);
  EXPECT_FALSE(u.range.lo_open || u.range.hi_open);
  auto n = make_distribution("normal", {1, 1})->support();
  EXPECT_EQ(n.range.lo, -kInf);
  EXPECT_EQ(n.range.hi, kInf);
  EXPECT_TRUE(make_distribution("poisson", {6})->support().discrete);
}

TEST(Distribution, InvalidParameters) {
  EXPECT_THROW(make_distribution("normal", {0, -1}), DistributionError);
  EXPECT_THROW(make_distribution("uniform", {3, 1}), DistributionError);
  EXPECT_THROW(make_distribution("beta", {0, 1}), DistributionError);
  EXPECT_THROW(make_distribution("bernoulli", {1.2}), DistributionError);
  EXPECT_THROW(make_distribution("poisson", {-1}), DistributionError);
  EXPECT_THROW(make_distribution("cauchy", {0, 1}), DistributionError);
  EXPECT_THROW(make_distribution("normal", {0}), DistributionError);
}

TEST(Distribution, RegistryAliasesAndExtension) {
  auto& reg = FamilyRegistry::global();
  EXPECT_EQ(reg.find("Unif")->name, "uniform");
  EXPECT_EQ(reg.find("Beta")->name, "beta");
  EXPECT_EQ(reg.find("nope"), nullptr);
  reg.add({"dirac", 1, true, false,
           [](const std::vector<double>& p) { return make_distribution("uniform", {p[0], p[0]}); }});
  EXPECT_NE(reg.find("DIRAC"), nullptr);
}

TEST(Distribution, ContinuousNormalisation) {
  const std::vector<std::pair<std::string, std::vector<std::vector<double>>>> cases = {
      {"uniform", {{0, 1}, {-3, 7}, {7, 10}}},
      {"normal", {{0, 1}, {1, 1}, {10, 2}}},
      {"beta", {{1, 1}, {2, 3}, {0.5, 0.5}}},
      {"gamma", {{3, 3}, {1, 1}, {0.7, 2}}},
  };
  using boost::math::quadrature::gauss_kronrod;
  for (const auto& [family, params] : cases) {
    for (const auto& p : params) {
      auto d = make_distribution(family, p);
      auto s = d->support().range;
      auto f = [&](double x) { return d->density(x); };
      double total = 0.0;
      if (family == "beta") {
        boost::math::quadrature::tanh_sinh<double> ts;
        total = ts.integrate(f, 0.0, 1.0);
      } else {
        total = gauss_kronrod<double, 61>::integrate(f, s.lo, s.hi, 15, 1e-12);
      }
      EXPECT_NEAR(total, 1.0, 1e-6) << family << " " << p[0] << "," << p[1];
    }
  }
}

TEST(Distribution, DiscreteNormalisation) {
  for (double lambda : {0.5, 6.0, 20.0}) {
    auto d = make_distribution("poisson", {lambda});
    double total = 0.0;
    for (int k = 0; k < 400; ++k) total += d->density(k);
    EXPECT_NEAR(total, 1.0, 1e-9) << lambda;
  }
  for (double p : {0.0, 0.36, 1.0}) {
    auto d = make_distribution("bernoulli", {p});
    EXPECT_NEAR(d->density(0) + d->density(1), 1.0, 1e-12);
  }
}

TEST(Restrict, Masses) {
  auto u15 = make_distribution("uniform", {1, 5});
  EXPECT_DOUBLE_EQ(restrict(u15, IntervalSet(Interval{2, 4})).mass(), 0.5);
  auto u020 = make_distribution("uniform", {0, 20});
  EXPECT_NEAR(restrict(u020, IntervalSet(Interval{7, 10, true, true})).mass(), 0.15, 1e-15);
  auto n = make_distribution("normal", {0, 1});
  EXPECT_DOUBLE_EQ(restrict(n, IntervalSet::everything()).mass(), 1.0);
  EXPECT_NEAR(restrict(n, IntervalSet(Interval{1, 2})).mass(), 0.13590512198327787, 1e-12);
}

TEST(Restrict, DiscreteHonoursOpenness) {
  auto p = make_distribution("poisson", {6});
  double closed = restrict(p, IntervalSet(Interval{20, kInf})).mass();
  double open = restrict(p, IntervalSet(Interval{20, kInf, true, false})).mass();
  EXPECT_NEAR(closed, 5.180168937011945e-06, 1e-15);
  EXPECT_NEAR(closed - open, 3.7250619470429406e-06, 1e-15);
}

TEST(Restrict, MassAdditivity) {
  for (auto d : {make_distribution("normal", {0, 1}), make_distribution("gamma", {3, 3}),
                 make_distribution("beta", {2, 3}), make_distribution("poisson", {6})}) {
    Interval a{0.1, 0.4}, b{0.6, 0.9, true, false}, c{1.5, 8.0};
    IntervalSet all;
    all.add(a);
    all.add(b);
    all.add(c);
    double parts = d->interval_mass(a) + d->interval_mass(b) + d->interval_mass(c);
    EXPECT_NEAR(d->mass(all), parts, 1e-9) << d->describe();
  }
}

TEST(Restrict, SamplesStayInside) {
  Rng rng(11);
  auto r = restrict(make_distribution("uniform", {0, 20}), IntervalSet(Interval{7, 10, true, true}));
  for (int i = 0; i < 100000; ++i) {
    double x = r.sample(rng);
    ASSERT_GT(x, 7.0);
    ASSERT_LT(x, 10.0);
  }
}

TEST(Restrict, HalfNormalMean) {
  Rng rng(12);
  auto r = restrict(make_distribution("normal", {0, 1}), IntervalSet(Interval{0, kInf}));
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += r.sample(rng);
  double mean = sum / n;
  double se = std::sqrt(1.0 - 2.0 / M_PI) / std::sqrt(n);
  EXPECT_NEAR(mean, 0.7978845608028654, 3 * se);
}

TEST(Restrict, FullSupportMatchesPlainSampler) {
  Rng rng(13);
  auto d = make_distribution("gamma", {3, 3});
  auto r = restrict(d, IntervalSet::everything());
  const std::size_t n = 100000;
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = d->sample(rng);
    b[i] = r.sample(rng);
  }
  double crit = 1.628 * std::sqrt(2.0 / n);  // alpha = 0.01
  EXPECT_LT(ks_statistic(a, b), crit);
}

TEST(Restrict, ChiSquareGoodnessOfFit) {
  Rng rng(14);
  auto d = make_distribution("normal", {0, 1});
  IntervalSet xi;
  xi.add(Interval{-2.0, -0.5});
  xi.add(Interval{1.0, 3.0, true, false});
  auto r = restrict(d, xi);
  const int bins = 20, n = 100000;
  std::vector<Interval> edges;
  for (const auto& piece : xi.parts()) {
    for (int k = 0; k < bins / 2; ++k) {
      double w = (piece.hi - piece.lo) / (bins / 2);
      edges.push_back(Interval{piece.lo + k * w, piece.lo + (k + 1) * w});
    }
  }
  std::vector<int> counts(edges.size(), 0);
  for (int i = 0; i < n; ++i) {
    double x = r.sample(rng);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (x >= edges[k].lo && x < edges[k].hi) {
        ++counts[k];
        break;
      }
    }
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    double expected = n * d->interval_mass(edges[k]) / r.mass();
    chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
  }
  boost::math::chi_squared_distribution<> ref(static_cast<double>(edges.size() - 1));
  EXPECT_LT(chi2, boost::math::quantile(ref, 0.99));
}

TEST(Restrict, DiscreteSampling) {
  Rng rng(15);
  auto r = restrict(make_distribution("poisson", {6}), IntervalSet(Interval{20, kInf}));
  int at20 = 0;
  for (int i = 0; i < 20000; ++i) {
    double x = r.sample(rng);
    ASSERT_GE(x, 20.0);
    ASSERT_EQ(x, std::floor(x));
    at20 += x == 20.0;
  }
  EXPECT_NEAR(at20 / 20000.0, 3.7250619470429406e-06 / 5.180168937011945e-06, 0.02);
}

TEST(Restrict, InfeasibleThrows) {
  Rng rng(16);
  auto r = restrict(make_distribution("uniform", {0, 20}), IntervalSet(Interval{25, 30}));
  EXPECT_EQ(r.mass(), 0.0);
  EXPECT_THROW(r.sample(rng), InfeasibleRestriction);
}

TEST(Rng, SplitIsDeterministicAndIndependent) {
  Rng a(5), b(5);
  EXPECT_EQ(a(), b());
  Rng c = a.split(3), d = b.split(3), e = a.split(4);
  EXPECT_EQ(c(), d());
  EXPECT_NE(Rng(5).split(3)(), e());
  for (int i = 0; i < 1000; ++i) {
    double u = a.uniform01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace probcf
