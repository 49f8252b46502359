#include "probcf/baselines.hpp"

#include <algorithm>
#include <memory>

#include "probcf/distributions.hpp"
#include "probcf/errors.hpp"

namespace probcf {

namespace {

enum class Status { Running, Done, Capped, Failed };

struct Walker {
  MemoryState state;
  LocId loc = 0;
  double weight = 1.0;
  std::size_t steps = 0;
  Status status = Status::Running;
  double value = 0.0;
};

class Executor {
 public:
  explicit Executor(const Pcfg& g, std::size_t cap) : g_(g), cap_(cap), fixed_(g.size()) {
    for (LocId i = 0; i < g.size(); ++i) {
      const auto& l = g[i];
      if (l.kind != LocKind::ProbAssign) continue;
      std::vector<double> params;
      for (const auto& a : l.args) {
        auto v = try_fold(a);
        if (!v) {
          params.clear();
          break;
        }
        params.push_back(*v);
      }
      if (params.size() != l.args.size()) continue;
      try {
        fixed_[i] = make_distribution(l.family, params);
      } catch (const DistributionError&) {
      }
    }
  }

  Walker start() const { return Walker{g_.sigma_init, g_.init, 1.0, 0, Status::Running, 0.0}; }

  // Executes one location; true when it was a weight transition.
  bool advance(Walker& w, Rng& rng) const {
    const Location& l = g_[w.loc];
    if (l.kind == LocKind::Final) {
      finish(w);
      return false;
    }
    if (w.steps++ >= cap_) {
      w.status = Status::Capped;
      w.weight = 0.0;
      return false;
    }
    try {
      switch (l.kind) {
        case LocKind::Deterministic:
          w.loc = eval_bool(*l.expr, w.state) ? l.succ[0] : l.succ[1];
          return false;
        case LocKind::ProbAssign: {
          if (fixed_[w.loc]) {
            w.state[l.var] = fixed_[w.loc]->sample(rng);
          } else {
            std::vector<double> params;
            params.reserve(l.args.size());
            for (const auto& a : l.args) params.push_back(eval_expr(*a, w.state));
            w.state[l.var] = make_distribution(l.family, params)->sample(rng);
          }
          break;
        }
        case LocKind::DetAssign:
          w.state[l.var] = eval_expr(*l.expr, w.state);
          break;
        case LocKind::Weight: {
          double f = eval_expr(*l.expr, w.state);
          if (!(f >= 0.0)) throw EvalError("negative or undefined weight");
          w.weight *= f;
          w.loc = l.succ[0];
          if (w.weight == 0.0) w.status = Status::Done;
          return true;
        }
        case LocKind::Final:
          break;
      }
    } catch (const std::exception&) {
      w.status = Status::Failed;
      w.weight = 0.0;
      return false;
    }
    w.loc = l.succ[0];
    if (g_[w.loc].kind == LocKind::Final) finish(w);
    return false;
  }

  void finish(Walker& w) const {
    w.status = Status::Done;
    if (w.weight == 0.0) return;
    try {
      w.value = eval_expr(*g_.ret, w.state);
    } catch (const std::exception&) {
      w.status = Status::Failed;
      w.weight = 0.0;
    }
  }

  void run_to_end(Walker& w, Rng& rng) const {
    if (g_[w.loc].kind == LocKind::Final) finish(w);
    while (w.status == Status::Running) advance(w, rng);
  }

 private:
  const Pcfg& g_;
  std::size_t cap_;
  std::vector<DistPtr> fixed_;
};

void tally(RejectionResult& r, const Walker& w) {
  ++r.attempts;
  if (w.status == Status::Capped) ++r.capped;
  if (w.status == Status::Failed) ++r.errors;
  if (w.weight > 0.0) ++r.accepted;
}

}  // namespace

RejectionResult baseline_rejection(const Pcfg& g, std::size_t n, Rng& rng, std::size_t step_cap) {
  Executor ex(g, step_cap);
  RejectionResult r;
  r.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Walker w = ex.start();
    ex.run_to_end(w, rng);
    tally(r, w);
    r.samples.push_back({w.weight, w.weight > 0.0 ? w.value : 0.0, 0});
  }
  return r;
}

RejectionResult rejection_reference(const Pcfg& g, std::size_t accepted, std::size_t max_attempts, Rng& rng,
                                    std::size_t step_cap) {
  Executor ex(g, step_cap);
  RejectionResult r;
  while (r.accepted < accepted && r.attempts < max_attempts) {
    Walker w = ex.start();
    ex.run_to_end(w, rng);
    tally(r, w);
    if (w.weight > 0.0) r.samples.push_back({w.weight, w.value, 0});
  }
  return r;
}

WholeSmcResult baseline_whole_smc(const Pcfg& g, std::size_t J, Rng& rng, std::size_t step_cap) {
  J = std::max<std::size_t>(J, 1);
  Executor ex(g, step_cap);
  std::vector<Walker> ps(J, ex.start());
  for (auto& w : ps) {
    if (g[w.loc].kind == LocKind::Final) ex.finish(w);
  }
  WholeSmcResult res;
  auto running = [&] {
    return std::any_of(ps.begin(), ps.end(), [](const Walker& w) { return w.status == Status::Running; });
  };
  while (running()) {
    bool weighted = false;
    for (auto& w : ps) {
      while (w.status == Status::Running) {
        if (ex.advance(w, rng)) {
          weighted = true;
          break;
        }
      }
    }
    if (!weighted) continue;
    double sum = 0.0, sq = 0.0;
    for (const auto& w : ps) {
      sum += w.weight;
      sq += w.weight * w.weight;
    }
    double ess = sq > 0.0 ? sum * sum / sq : 0.0;
    if (!(ess > 0.0) || ess >= 0.5 * static_cast<double>(J)) continue;
    const double mean = sum / static_cast<double>(J);
    const double stride = sum / static_cast<double>(J);
    double u = rng.uniform01() * stride, cum = 0.0;
    std::size_t i = 0;
    std::vector<Walker> next;
    next.reserve(J);
    for (std::size_t j = 0; j < J; ++j) {
      double target = u + static_cast<double>(j) * stride;
      while (i + 1 < J && cum + ps[i].weight <= target) cum += ps[i++].weight;
      while (ps[i].weight == 0.0 && i + 1 < J) ++i;
      next.push_back(ps[i]);
      next.back().weight = mean;
    }
    ps = std::move(next);
    ++res.resamples;
  }
  double total = 0.0;
  for (const auto& w : ps) {
    if (w.status == Status::Capped) ++res.capped;
    if (w.status == Status::Failed) ++res.errors;
    if (w.weight > 0.0) ++res.live;
    total += w.weight;
    res.samples.push_back({w.weight, w.weight > 0.0 ? w.value : 0.0, 0});
  }
  res.evidence = total / static_cast<double>(J);
  return res;
}

SweepSummary whole_smc_sweeps(const Pcfg& g, std::size_t J, std::size_t sweeps, Rng& rng, std::size_t step_cap) {
  SweepSummary out;
  out.sweeps = sweeps;
  for (std::size_t s = 0; s < sweeps; ++s) {
    Rng sub = rng.split(s + 1);
    WholeSmcResult r = baseline_whole_smc(g, J, sub, step_cap);
    if (r.live == 0) continue;
    ++out.live_sweeps;
    for (const auto& x : r.samples) {
      if (x.weight > 0.0) out.samples.push_back(x);
    }
  }
  out.live_fraction = sweeps ? static_cast<double>(out.live_sweeps) / static_cast<double>(sweeps) : 0.0;
  return out;
}

}  // namespace probcf
