#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probcf/flows.hpp"
#include "probcf/ias.hpp"
#include "probcf/pcfg.hpp"
#include "probcf/sample_io.hpp"
#include "probcf/smc.hpp"
#include "probcf/straight_line.hpp"

namespace probcf {

enum class WeightMode { PerArm, Importance };

std::string_view weight_mode_name(WeightMode m);
/// Accepts "per-arm" and "importance"; throws std::invalid_argument.
WeightMode parse_weight_mode(std::string_view s);

struct RunConfig {
  std::size_t budget = 1000;  // rounds T
  std::size_t particles = 100;
  std::chrono::milliseconds timeout{2000};
  WeightMode mode = WeightMode::Importance;
  std::uint64_t seed = 0;
  std::size_t max_flow_length = 4096;
  std::size_t expand_attempts = 64;  // enumerated flows per Expand round
};

struct PoolEntry {
  std::size_t flow = 0;
  double weight = 0.0;
  double value = 0.0;
};

/// Raw pooled samples with exact per-flow weight sums.
class SamplePool {
 public:
  void append(std::size_t flow, double weight, double value);
  const std::vector<PoolEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double weight_sum(std::size_t flow) const;
  std::size_t zero_weight_count() const { return zero_; }

 private:
  std::vector<PoolEntry> entries_;
  std::map<std::size_t, double> sums_;
  std::size_t zero_ = 0;
};

/// A complete flow with its straight-line program before and after
/// condition propagation.
struct FlowEntry {
  std::size_t id = 0;
  ControlFlow flow;
  StraightLineProgram slp;
  StraightLineProgram optimized;
  bool blacklisted = false;
  std::vector<std::string> diagnostics;
};

FlowEntry analyse_flow(const Pcfg& g, const ControlFlow& f, std::size_t id);

/// Runs SMC on the optimised program; nullopt for a blacklisted flow.
std::optional<SmcResult> pull_arm(const FlowEntry& k, const RunConfig& cfg, Rng& rng);

struct ArmReport {
  std::size_t flow_id = 0;
  std::size_t length = 0;
  double p_hat = 0.0;
  std::size_t pulls = 0;
  double weight_sum = 0.0;
  std::size_t zero_pulls = 0;
  std::size_t resamples = 0;
  std::size_t dead_particles = 0;
  std::size_t timeouts = 0;
};

struct RunReport {
  RunConfig config;
  std::string status = "ok";  // "ok" or "empty"
  std::size_t rounds = 0;
  std::size_t expand_rounds = 0;
  std::size_t random_rounds = 0;
  std::size_t proportional_rounds = 0;
  std::size_t idle_rounds = 0;
  std::size_t flows_examined = 0;
  std::size_t blacklisted = 0;
  bool enumeration_exhausted = false;
  std::size_t pool_size = 0;
  std::size_t zero_weight_entries = 0;
  double zero_weight_fraction = 0.0;
  std::size_t dropped_in_adjustment = 0;
  std::size_t smc_runs = 0;
  std::size_t smc_timeouts = 0;
  double wall_seconds = 0.0;
  std::vector<ArmReport> arms;
  std::vector<std::string> diagnostics;
};

struct RunResult {
  std::vector<WeightedSample> samples;  // adjusted
  SamplePool pool;
  ArmRegistry registry;
  RunReport report;
};

/// Final reweighting: w / p_hat_k (per-arm) or p_hat_k * w / w_k
/// (importance, w_k the flow's pooled weight sum). Entries whose divisor is
/// zero are dropped and counted in `dropped`.
std::vector<WeightedSample> adjust_weights(const SamplePool& pool, const std::map<std::size_t, double>& p_hat,
                                           WeightMode mode, std::size_t* dropped = nullptr);

/// The hierarchical sampler: epsilon-greedy arm selection over complete
/// control flows, SMC on condition-propagated straight-line programs.
RunResult run(const Pcfg& g, const RunConfig& cfg);
RunResult run(const Pcfg& g, const RunConfig& cfg, Rng& rng);

}  // namespace probcf
