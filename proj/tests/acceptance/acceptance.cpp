// One line per acceptance criterion; exit status is the number of failures.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "probcf/baselines.hpp"
#include "probcf/condprop.hpp"
#include "probcf/ground_truth.hpp"
#include "probcf/hier_sampler.hpp"
#include "probcf/metrics.hpp"
#include "probcf/programs.hpp"
#include "probcf/report.hpp"
#include "probcf/sample_io.hpp"
#include "soundness.hpp"

using namespace probcf;

namespace tol {
constexpr double kCoinKl = 0.005;
constexpr std::size_t kCoinSeedsRequired = 9;
constexpr double kCoinSeconds = 120;
constexpr double kLikelihoodSigmas = 3.0;
constexpr double kGeomSeconds = 300;
constexpr double kSoundnessSigmas = 4.0;
constexpr double kFalsePositivePerBin = 1.0 / 15000.0;
constexpr double kFig4Mass = 3.0 / 20.0;
constexpr double kFiniteDeviation = 0.03;
constexpr double kFiniteSeconds = 180;
constexpr double kLiveSweepFraction = 0.01;
constexpr std::size_t kMinPool = 5000;
constexpr double kUnifCdKl = 0.15;
constexpr double kRareSeconds = 600;
constexpr double kModeKlGap = 0.01;
constexpr double kObsLoopMean = 10.1;
constexpr double kObsLoopWidth = 0.6;
}  // namespace tol

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome coin_posterior() {
  auto t0 = std::chrono::steady_clock::now();
  Pcfg g = load_program("coin(0.36)");
  GroundTruth gt = ground_truth("coin(0.36)");
  std::size_t good = 0, min_pool = SIZE_MAX;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RunConfig cfg;
    cfg.budget = 500;
    cfg.seed = seed;
    RunResult r = run(g, cfg);
    double kl = kl_divergence(gt, r.samples);
    worst = std::max(worst, kl);
    good += kl < tol::kCoinKl;
    min_pool = std::min(min_pool, r.report.pool_size);
  }
  double secs = seconds_since(t0);
  bool pass = good >= tol::kCoinSeedsRequired && min_pool >= 50000 && secs < tol::kCoinSeconds;
  return {pass, fmt::format("{}/10 seeds KL < {} (worst {:.3g}), min pool {}, {:.1f} s", good, tol::kCoinKl, worst,
                            min_pool, secs)};
}

Outcome flow_likelihood() {
  auto t0 = std::chrono::steady_clock::now();
  Pcfg g = load_program("geomIt(0.5,0)");
  auto flows = enumerate_flows(g, 7);
  RunConfig cfg;
  Rng rng(kSeed);
  bool pass = true;
  double worst = 0.0;
  for (std::size_t n = 0; n <= 6; ++n) {
    FlowEntry e = analyse_flow(g, flows[n], n);
    double sum = 0.0, sq = 0.0;
    for (int k = 0; k < 100; ++k) {
      auto r = pull_arm(e, cfg, rng);
      double p = r ? r->likelihood : 0.0;
      sum += p;
      sq += p * p;
    }
    double mean = sum / 100.0;
    double se = std::sqrt(std::max(sq / 100.0 - mean * mean, 0.0) / 99.0);
    double truth = std::pow(0.5, static_cast<double>(n)) * 0.5;
    double z = se > 0.0 ? std::abs(mean - truth) / se : (std::abs(mean - truth) < 1e-12 ? 0.0 : kInf);
    worst = std::max(worst, z);
    pass &= z <= tol::kLikelihoodSigmas;
  }
  // rejection oracle cross-check of the closed form
  auto rej = baseline_rejection(g, 100000, rng);
  double oracle_worst = 0.0;
  for (std::size_t n = 0; n <= 6; ++n) {
    double c = 0.0;
    for (const auto& s : rej.samples) c += s.value == static_cast<double>(n);
    double f = c / 100000.0, truth = std::pow(0.5, static_cast<double>(n)) * 0.5;
    oracle_worst = std::max(oracle_worst, std::abs(f - truth) / std::sqrt(truth * (1 - truth) / 100000.0));
  }
  pass &= oracle_worst <= 4.0;
  double secs = seconds_since(t0);
  pass &= secs < tol::kGeomSeconds;
  return {pass, fmt::format("worst |p_hat - 0.5^n 0.5| = {:.2f} SE over n = 0..6, oracle worst {:.2f} SE, {:.1f} s",
                            worst, oracle_worst, secs)};
}

Outcome cdpg_soundness() {
  auto corpus = test::soundness_corpus();
  Rng rng(kSeed);
  std::size_t bins = 0, failed = 0, evidence_failed = 0;
  double worst = 0.0;
  std::string first_fail;
  for (const auto& e : corpus) {
    auto c = test::compare_mc(e.slp, cdpg(e.slp), 100000, rng, tol::kSoundnessSigmas);
    bins += c.bins_compared;
    failed += c.bins_failed;
    worst = std::max({worst, c.worst_z, c.evidence_z});
    if (!c.evidence_ok) ++evidence_failed;
    if ((c.bins_failed || !c.evidence_ok) && first_fail.empty()) first_fail = e.name;
  }
  double allowed = std::floor(static_cast<double>(bins) * tol::kFalsePositivePerBin);
  bool pass = corpus.size() >= 20 && evidence_failed == 0 && static_cast<double>(failed) <= allowed;
  return {pass, fmt::format("{} programs, {} bins, {} bin failures (allowed {}), {} evidence failures, worst z {:.2f}{}",
                            corpus.size(), bins, failed, allowed, evidence_failed, worst,
                            first_fail.empty() ? "" : ", first: " + first_fail)};
}

Outcome domain_restriction() {
  Pcfg g = load_program("condPropDemo");
  auto s = straight_line(g, enumerate_flows(g, 4).at(3));
  auto t = cdpg(s);
  const auto* head = t.steps.at(0).as_sample();
  if (!head || !head->restricted) return {false, "head draw is not restricted"};
  double mass = head->restricted->mass();
  const auto* w = t.steps.at(1).as_weight();
  double w_val = w ? eval_expr(*w->factor, t.sigma_init) : -1.0;
  Rng rng(kSeed);
  std::size_t outside = 0;
  for (int i = 0; i < 100000; ++i) {
    double x = head->restricted->sample(rng);
    outside += !(x > 7.0 && x < 10.0);
  }
  bool pass = mass == tol::kFig4Mass && w_val == tol::kFig4Mass && outside == 0;
  return {pass, fmt::format("mass {:.17g}, head weight {:.17g}, {} of 100000 draws outside (7, 10)", mass, w_val,
                            outside)};
}

Outcome blacklisting() {
  Rng rng(kSeed);
  bool pass = true;
  std::vector<std::string> parts;
  for (int t0 : {10, 15, 20}) {
    Pcfg g = load_program(fmt::format("unifCd({})", t0));
    auto flows = enumerate_flows(g, static_cast<std::size_t>(t0) + 1);
    std::size_t first_live = SIZE_MAX, oracle_nonzero = 0;
    for (std::size_t n = 0; n < flows.size(); ++n) {
      auto s = straight_line(g, flows[n]);
      bool bl = is_blacklisted(cdpg(s));
      if (!bl && first_live == SIZE_MAX) first_live = n;
      if (bl) {
        auto mc = estimate_posterior_mc(s, 10000, rng);
        for (double w : mc.weights) oracle_nonzero += w != 0.0;
      }
    }
    pass &= first_live == static_cast<std::size_t>(t0) && oracle_nonzero == 0;
    parts.push_back(fmt::format("unifCd({}) first live flow {} iterations, oracle nonzero {}", t0,
                                first_live == SIZE_MAX ? -1 : static_cast<long>(first_live), oracle_nonzero));
  }
  Pcfg coin = load_program("coin(0.36)");
  auto cf = enumerate_flows(coin, 4);
  std::string pattern;
  for (const auto& f : cf) pattern += is_blacklisted(cdpg(straight_line(coin, f))) ? 'B' : 'L';
  pass &= pattern == "BLLB";
  parts.push_back("coin TT,TF,FT,FF = " + pattern);
  return {pass, fmt::format("{}", fmt::join(parts, "; "))};
}

Outcome finite_convergence() {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> p = {0.4, 0.25, 0.2, 0.1, 0.05};
  double total = 0.0;
  for (double x : p) total += x;
  std::vector<ArmOracle> arms;
  for (double pk : p) arms.push_back([pk](Rng& r) { return r.bernoulli(pk) ? 1.0 : 0.0; });
  std::vector<double> avg;
  for (std::size_t T : {1000u, 10000u, 100000u}) {
    double acc = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Rng rng(seed);
      auto seq = run_finite(arms, T, rng);
      std::vector<double> count(p.size(), 0.0);
      for (std::size_t k : seq) count[k] += 1.0;
      double dev = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k)
        dev = std::max(dev, std::abs(count[k] / static_cast<double>(T) - p[k] / total));
      acc += dev;
    }
    avg.push_back(acc / 20.0);
  }
  double secs = seconds_since(t0);
  bool pass = avg[1] <= avg[0] && avg[2] <= avg[1] && avg[2] < tol::kFiniteDeviation && secs < tol::kFiniteSeconds;
  return {pass, fmt::format("mean max deviation {:.4f} / {:.4f} / {:.4f} at T = 1e3 / 1e4 / 1e5, {:.1f} s", avg[0],
                            avg[1], avg[2], secs)};
}

Outcome rare_observation() {
  auto t0 = std::chrono::steady_clock::now();
  Pcfg g = load_program("unifCd(20)");
  Rng rng(kSeed);
  auto rej = baseline_rejection(g, 1000000, rng);
  auto sweeps = whole_smc_sweeps(g, 100, 100, rng);
  RunConfig cfg;
  cfg.budget = 200;
  cfg.seed = kSeed;
  RunResult r = run(g, cfg);
  double kl = r.samples.empty() ? kInf : kl_divergence(ground_truth("unifCd(20)"), r.samples);
  double secs = seconds_since(t0);
  bool pass = rej.accepted == 0 && sweeps.live_fraction < tol::kLiveSweepFraction &&
              r.report.pool_size >= tol::kMinPool && kl < tol::kUnifCdKl && secs < tol::kRareSeconds;
  return {pass, fmt::format("rejection accepted {} of 10^6; whole-program SMC live sweeps {:.2f}%; sampler pool {} "
                            "KL {:.4f}; {:.1f} s",
                            rej.accepted, 100.0 * sweeps.live_fraction, r.report.pool_size, kl, secs)};
}

Outcome weight_modes() {
  bool pass = true;
  std::vector<std::string> parts;
  for (const char* spec : {"coin(0.36)", "geomIt(0.5,5)"}) {
    Pcfg g = load_program(spec);
    GroundTruth gt = ground_truth(spec);
    double kl[2];
    std::size_t pool = 0;
    for (int m = 0; m < 2; ++m) {
      RunConfig cfg;
      cfg.budget = 500;
      cfg.seed = kSeed;
      cfg.mode = m == 0 ? WeightMode::PerArm : WeightMode::Importance;
      RunResult r = run(g, cfg);
      pool = r.report.pool_size;
      kl[m] = r.samples.empty() ? kInf : kl_divergence(gt, r.samples);
    }
    double gap = std::abs(kl[0] - kl[1]);
    pass &= gap < tol::kModeKlGap;
    parts.push_back(fmt::format("{} per-arm {:.4g} importance {:.4g} gap {:.4g} (pool {})", spec, kl[0], kl[1], gap,
                                pool));
  }
  return {pass, fmt::format("{}", fmt::join(parts, "; "))};
}

Outcome determinism() {
  Pcfg g = load_program("obsLoop(3,10)");
  auto once = [&] {
    RunConfig cfg;
    cfg.budget = 300;
    cfg.seed = kSeed;
    RunResult r = run(g, cfg);
    std::ostringstream csv;
    write_samples_csv(csv, r.samples);
    return std::make_pair(csv.str(), report_to_json(r.report));
  };
  auto a = once(), b = once();
  bool pass = a.first == b.first && a.second == b.second;
  return {pass, fmt::format("samples.csv {} bytes {}, report.json {} bytes {}", a.first.size(),
                            a.first == b.first ? "identical" : "differ", a.second.size(),
                            a.second == b.second ? "identical" : "differ")};
}

Outcome obs_loop() {
  RunConfig cfg;
  cfg.budget = 1000;
  cfg.seed = kSeed;
  RunResult r = run(load_program("obsLoop(3,10)"), cfg);
  if (r.samples.empty()) return {false, "no samples"};
  Summary s = summarize(r.samples);
  bool pass = std::abs(s.mean - tol::kObsLoopMean) <= tol::kObsLoopWidth;
  return {pass, fmt::format("mean {:.3f} std {:.3f} from pool {}", s.mean, s.std, r.report.pool_size)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"coin posterior", coin_posterior},
      {"flow likelihood estimation", flow_likelihood},
      {"condition propagation soundness", cdpg_soundness},
      {"domain restriction exactness", domain_restriction},
      {"logical blacklisting", blacklisting},
      {"finite-armed convergence", finite_convergence},
      {"rare-observation advantage", rare_observation},
      {"weight-adjustment mode equivalence", weight_modes},
      {"determinism", determinism},
      {"obsLoop feasibility", obs_loop},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    fmt::print("{} {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  return failures;
}
