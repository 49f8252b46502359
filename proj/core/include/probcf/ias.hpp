#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "probcf/rng.hpp"

namespace probcf {

/// min(1, (k_known * ln t / t)^(1/3)); zero at t = 1.
double epsilon(std::size_t t, std::size_t k_known);

struct ArmState {
  std::size_t id = 0;      // caller's arm identifier (flow ID for the sampler)
  double p_hat = 0.0;      // mean of observed likelihoods
  std::size_t pulls = 0;
  double sum = 0.0;        // sum of observed likelihoods
};

enum class DecisionKind { Expand, Random, Proportional, Idle };

struct Decision {
  DecisionKind kind = DecisionKind::Idle;
  std::size_t arm = 0;  // index into ArmRegistry::arms() for Random/Proportional
};

/// Epsilon-greedy infinite-armed sampling state.
class ArmRegistry {
 public:
  explicit ArmRegistry(bool expansion = true) : expansion_(expansion) {}

  std::size_t t() const { return t_; }
  const std::vector<ArmState>& arms() const { return arms_; }
  std::size_t size() const { return arms_.size(); }

  std::size_t add_arm(std::size_t id);
  void set_fresh_available(bool v) { fresh_available_ = v; }
  bool fresh_available() const { return expansion_ && fresh_available_; }
  /// Replaces epsilon_t by a fixed value; nullopt restores the schedule.
  void set_epsilon_override(std::optional<double> e) { epsilon_override_ = e; }
  double current_epsilon() const;

  /// Expand while |K_known| < t^(2/3) and a fresh arm exists; otherwise a
  /// uniform arm with probability epsilon, else an arm drawn proportionally
  /// to p_hat (uniformly when every p_hat is 0). Idle when no arm is known.
  Decision decide(Rng& rng) const;
  /// The non-expanding part of decide.
  Decision exploit(Rng& rng) const;

  /// Running-mean update of arm `index`; advances t.
  void update(std::size_t index, double p);

 private:
  bool expansion_;
  bool fresh_available_ = true;
  std::optional<double> epsilon_override_;
  std::size_t t_ = 1;
  std::vector<ArmState> arms_;
};

using ArmOracle = std::function<double(Rng&)>;

/// Finite epsilon-greedy multi-armed sampling over a fixed arm set. Returns
/// the index pulled in each of the T rounds.
std::vector<std::size_t> run_finite(const std::vector<ArmOracle>& arms, std::size_t T, Rng& rng);

}  // namespace probcf
