#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "probcf/rng.hpp"
#include "probcf/straight_line.hpp"

namespace probcf {

struct Particle {
  MemoryState state;
  double weight = 1.0;
  bool alive = true;
  std::string error;  // set when an evaluation error killed the particle
};

/// Applies one step of the weighted semantics in place. Evaluation errors
/// kill the particle instead of propagating.
void step(Particle& p, const SlpStep& s, Rng& rng);

struct SmcConfig {
  std::size_t particles = 100;
  std::chrono::milliseconds timeout{2000};
  bool resample = true;
  double ess_fraction = 0.5;   // resample when ESS < ess_fraction * J
  std::size_t zero_retries = 0;  // reruns when every final weight is 0
};

struct SmcResult {
  std::vector<double> weights;
  std::vector<double> values;
  double likelihood = 0.0;  // evidence estimate
  std::vector<double> ess;  // after each weight step
  std::size_t resamples = 0;
  std::size_t dead = 0;
  bool timed_out = false;
  std::vector<std::string> errors;  // distinct evaluation errors
};

/// SMC over a straight-line program: resampling is systematic and triggered
/// by low ESS after weight steps, with weights reset to the stage mean so the
/// evidence estimate is always the final mean weight.
SmcResult run_smc(const StraightLineProgram& s, const SmcConfig& cfg, Rng& rng);

struct McEstimate {
  std::vector<double> weights;
  std::vector<double> values;
  double evidence = 0.0;
  double std_error = 0.0;
};

/// n independent single-particle runs without resampling.
McEstimate estimate_posterior_mc(const StraightLineProgram& s, std::size_t n, Rng& rng);

}  // namespace probcf
