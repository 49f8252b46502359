#include "probcf/smc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "probcf/errors.hpp"

namespace probcf {

namespace {

/// Per-step data computed once per run.
struct Prepared {
  DistPtr fixed;  // draw with constant parameters
};

std::vector<Prepared> prepare(const StraightLineProgram& s) {
  std::vector<Prepared> out(s.steps.size());
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const auto* smp = s.steps[i].as_sample();
    if (!smp || smp->restricted) continue;
    std::vector<double> params;
    bool all = true;
    for (const auto& a : smp->args) {
      auto v = try_fold(a);
      if (!v) {
        all = false;
        break;
      }
      params.push_back(*v);
    }
    if (!all) continue;
    try {
      out[i].fixed = make_distribution(smp->family, params);
    } catch (const DistributionError&) {
      // reported per particle at run time
    }
  }
  return out;
}

void kill(Particle& p, const std::string& why) {
  p.alive = false;
  p.weight = 0.0;
  p.error = why;
}

void apply(Particle& p, const SlpStep& s, const Prepared& prep, Rng& rng) {
  if (!p.alive) return;
  try {
    if (auto* a = s.as_assign()) {
      p.state[a->var] = eval_expr(*a->value, p.state);
    } else if (auto* smp = s.as_sample()) {
      if (smp->restricted) {
        p.state[smp->var] = smp->restricted->sample(rng);
      } else if (prep.fixed) {
        p.state[smp->var] = prep.fixed->sample(rng);
      } else {
        std::vector<double> params;
        params.reserve(smp->args.size());
        for (const auto& e : smp->args) params.push_back(eval_expr(*e, p.state));
        p.state[smp->var] = make_distribution(smp->family, params)->sample(rng);
      }
    } else {
      double f = eval_expr(*s.as_weight()->factor, p.state);
      if (!(f >= 0.0)) throw EvalError("weight evaluated to a negative or NaN value");
      p.weight *= f;
    }
  } catch (const std::exception& e) {
    kill(p, e.what());
  }
}

double ess(const std::vector<Particle>& ps) {
  double sum = 0.0, sq = 0.0;
  for (const auto& p : ps) {
    sum += p.weight;
    sq += p.weight * p.weight;
  }
  return sq > 0.0 ? sum * sum / sq : 0.0;
}

void systematic_resample(std::vector<Particle>& ps, Rng& rng) {
  const std::size_t J = ps.size();
  double total = 0.0;
  for (const auto& p : ps) total += p.weight;
  const double mean = total / static_cast<double>(J);
  std::vector<Particle> next;
  next.reserve(J);
  const double stride = total / static_cast<double>(J);
  double u = rng.uniform01() * stride;
  double cum = 0.0;
  std::size_t i = 0;
  for (std::size_t j = 0; j < J; ++j) {
    double target = u + static_cast<double>(j) * stride;
    while (i + 1 < J && cum + ps[i].weight <= target) {
      cum += ps[i].weight;
      ++i;
    }
    while (ps[i].weight == 0.0 && i + 1 < J) ++i;
    next.push_back(ps[i]);
    next.back().weight = mean;
  }
  ps = std::move(next);
}

double return_value(const StraightLineProgram& s, const Particle& p) {
  try {
    return eval_expr(*s.ret, p.state);
  } catch (const std::exception&) {
    return 0.0;
  }
}

SmcResult run_once(const StraightLineProgram& s, const std::vector<Prepared>& prep, const SmcConfig& cfg, Rng& rng) {
  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + cfg.timeout;
  const std::size_t J = std::max<std::size_t>(cfg.particles, 1);
  std::vector<Particle> ps(J, Particle{s.sigma_init, 1.0, true, {}});
  SmcResult res;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    if (cfg.timeout.count() > 0 && clock::now() > deadline) {
      res.timed_out = true;
      break;
    }
    for (auto& p : ps) apply(p, s.steps[i], prep[i], rng);
    if (!s.steps[i].as_weight()) continue;
    double e = ess(ps);
    res.ess.push_back(e);
    if (cfg.resample && e > 0.0 && e < cfg.ess_fraction * static_cast<double>(J)) {
      systematic_resample(ps, rng);
      ++res.resamples;
    }
  }
  double total = 0.0;
  for (const auto& p : ps) {
    res.weights.push_back(p.weight);
    res.values.push_back(return_value(s, p));
    total += p.weight;
    if (!p.alive) {
      ++res.dead;
      if (std::find(res.errors.begin(), res.errors.end(), p.error) == res.errors.end())
        res.errors.push_back(p.error);
    }
  }
  res.likelihood = total / static_cast<double>(J);
  return res;
}

}  // namespace

void step(Particle& p, const SlpStep& s, Rng& rng) { apply(p, s, Prepared{}, rng); }

SmcResult run_smc(const StraightLineProgram& s, const SmcConfig& cfg, Rng& rng) {
  std::vector<Prepared> prep = prepare(s);
  SmcResult res = run_once(s, prep, cfg, rng);
  for (std::size_t r = 0; r < cfg.zero_retries && res.likelihood == 0.0 && !res.timed_out; ++r)
    res = run_once(s, prep, cfg, rng);
  return res;
}

McEstimate estimate_posterior_mc(const StraightLineProgram& s, std::size_t n, Rng& rng) {
  std::vector<Prepared> prep = prepare(s);
  McEstimate out;
  out.weights.reserve(n);
  out.values.reserve(n);
  double sum = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    Particle p{s.sigma_init, 1.0, true, {}};
    for (std::size_t i = 0; i < s.steps.size() && p.alive; ++i) apply(p, s.steps[i], prep[i], rng);
    out.weights.push_back(p.weight);
    out.values.push_back(return_value(s, p));
    sum += p.weight;
    sq += p.weight * p.weight;
  }
  double N = static_cast<double>(std::max<std::size_t>(n, 1));
  out.evidence = sum / N;
  double var = n > 1 ? std::max(0.0, (sq - sum * sum / N) / (N - 1.0)) : 0.0;
  out.std_error = std::sqrt(var / N);
  return out;
}

}  // namespace probcf
