#include "probcf/hier_sampler.hpp"

#include <stdexcept>
#include <unordered_map>

#include "probcf/condprop.hpp"

namespace probcf {

std::string_view weight_mode_name(WeightMode m) { return m == WeightMode::PerArm ? "per-arm" : "importance"; }

WeightMode parse_weight_mode(std::string_view s) {
  if (s == "per-arm" || s == "per_arm" || s == "perarm") return WeightMode::PerArm;
  if (s == "importance") return WeightMode::Importance;
  throw std::invalid_argument("unknown weight mode '" + std::string(s) + "'");
}

void SamplePool::append(std::size_t flow, double weight, double value) {
  entries_.push_back(PoolEntry{flow, weight, value});
  sums_[flow] += weight;
  if (weight == 0.0) ++zero_;
}

double SamplePool::weight_sum(std::size_t flow) const {
  auto it = sums_.find(flow);
  return it == sums_.end() ? 0.0 : it->second;
}

FlowEntry analyse_flow(const Pcfg& g, const ControlFlow& f, std::size_t id) {
  FlowEntry e;
  e.id = id;
  e.flow = f;
  e.slp = straight_line(g, f);
  PropagationResult r = cdpg_full(e.slp);
  e.optimized = std::move(r.program);
  e.diagnostics = std::move(r.diagnostics);
  e.blacklisted = is_blacklisted(e.optimized);
  return e;
}

std::optional<SmcResult> pull_arm(const FlowEntry& k, const RunConfig& cfg, Rng& rng) {
  if (k.blacklisted) return std::nullopt;
  SmcConfig smc;
  smc.particles = cfg.particles;
  smc.timeout = cfg.timeout;
  return run_smc(k.optimized, smc, rng);
}

std::vector<WeightedSample> adjust_weights(const SamplePool& pool, const std::map<std::size_t, double>& p_hat,
                                           WeightMode mode, std::size_t* dropped) {
  std::vector<WeightedSample> out;
  out.reserve(pool.size());
  std::size_t lost = 0;
  for (const PoolEntry& e : pool.entries()) {
    auto it = p_hat.find(e.flow);
    double p = it == p_hat.end() ? 0.0 : it->second;
    double w;
    if (mode == WeightMode::PerArm) {
      if (!(p > 0.0)) {
        ++lost;
        continue;
      }
      w = e.weight / p;
    } else {
      double total = pool.weight_sum(e.flow);
      if (!(total > 0.0)) {
        ++lost;
        continue;
      }
      w = p * e.weight / total;
    }
    out.push_back(WeightedSample{w, e.value, e.flow});
  }
  if (dropped) *dropped = lost;
  return out;
}

namespace {

class Sampler {
 public:
  Sampler(const Pcfg& g, const RunConfig& cfg, Rng& rng)
      : g_(g), cfg_(cfg), rng_(rng), enumerator_(g, cfg.max_flow_length) {}

  RunResult run() {
    auto started = std::chrono::steady_clock::now();
    RunResult res;
    for (std::size_t round = 0; round < cfg_.budget; ++round) one_round(round, res);
    res.report.config = cfg_;
    res.report.rounds = cfg_.budget;
    res.report.flows_examined = enumerator_.flows_examined();
    res.report.enumeration_exhausted = enumerator_.exhausted();
    res.report.pool_size = res.pool.size();
    res.report.zero_weight_entries = res.pool.zero_weight_count();
    res.report.zero_weight_fraction =
        res.pool.size() ? static_cast<double>(res.pool.zero_weight_count()) / static_cast<double>(res.pool.size())
                        : 0.0;
    std::map<std::size_t, double> p_hat;
    for (const ArmState& a : reg_.arms()) {
      p_hat[a.id] = a.p_hat;
      ArmReport ar = stats_[a.id];
      ar.flow_id = a.id;
      ar.length = entries_.at(a.id).flow.size();
      ar.p_hat = a.p_hat;
      ar.pulls = a.pulls;
      ar.weight_sum = res.pool.weight_sum(a.id);
      res.report.arms.push_back(ar);
    }
    res.samples = adjust_weights(res.pool, p_hat, cfg_.mode, &res.report.dropped_in_adjustment);
    if (res.pool.size() == 0) res.report.status = "empty";
    res.registry = reg_;
    res.report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return res;
  }

 private:
  void one_round(std::size_t round, RunResult& res) {
    Decision d = reg_.decide(rng_);
    if (d.kind == DecisionKind::Expand) {
      auto found = expand(res);
      if (found) {
        ++res.report.expand_rounds;
        pull(*found, round, res);
        return;
      }
      d = reg_.exploit(rng_);
    }
    switch (d.kind) {
      case DecisionKind::Random:
        ++res.report.random_rounds;
        break;
      case DecisionKind::Proportional:
        ++res.report.proportional_rounds;
        break;
      default:
        ++res.report.idle_rounds;
        return;
    }
    pull(d.arm, round, res);
  }

  std::optional<std::size_t> expand(RunResult& res) {
    auto oracle = [&](const ControlFlow& f, std::size_t id) {
      FlowEntry e = analyse_flow(g_, f, id);
      if (e.blacklisted) {
        ++res.report.blacklisted;
        return true;
      }
      for (const auto& msg : e.diagnostics) {
        if (res.report.diagnostics.size() < 64) res.report.diagnostics.push_back("flow " + std::to_string(id) + ": " + msg);
      }
      entries_.emplace(id, std::move(e));
      return false;
    };
    auto r = enumerator_.next(oracle, cfg_.expand_attempts);
    if (r.status == FlowEnumerator::Status::Exhausted) reg_.set_fresh_available(false);
    if (r.status != FlowEnumerator::Status::Found) return std::nullopt;
    return reg_.add_arm(r.flow_id);
  }

  void pull(std::size_t index, std::size_t round, RunResult& res) {
    std::size_t id = reg_.arms()[index].id;
    const FlowEntry& entry = entries_.at(id);
    Rng stream = rng_.split(round + 1);
    auto smc = pull_arm(entry, cfg_, stream);
    ArmReport& st = stats_[id];
    ++res.report.smc_runs;
    if (smc->timed_out) {
      ++res.report.smc_timeouts;
      ++st.timeouts;
    }
    if (smc->likelihood == 0.0) ++st.zero_pulls;
    st.resamples += smc->resamples;
    st.dead_particles += smc->dead;
    for (std::size_t j = 0; j < smc->weights.size(); ++j) res.pool.append(id, smc->weights[j], smc->values[j]);
    reg_.update(index, smc->likelihood);
  }

  const Pcfg& g_;
  RunConfig cfg_;
  Rng& rng_;
  FlowEnumerator enumerator_;
  ArmRegistry reg_;
  std::unordered_map<std::size_t, FlowEntry> entries_;
  std::map<std::size_t, ArmReport> stats_;
};

}  // namespace

RunResult run(const Pcfg& g, const RunConfig& cfg, Rng& rng) {
  if (cfg.budget == 0 || cfg.particles == 0) throw std::invalid_argument("run: budget and particles must be >= 1");
  return Sampler(g, cfg, rng).run();
}

RunResult run(const Pcfg& g, const RunConfig& cfg) {
  Rng rng(cfg.seed);
  return run(g, cfg, rng);
}

}  // namespace probcf
