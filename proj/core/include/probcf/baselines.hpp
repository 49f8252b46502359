#pragma once

#include <cstddef>
#include <vector>

#include "probcf/pcfg.hpp"
#include "probcf/rng.hpp"
#include "probcf/sample_io.hpp"

namespace probcf {

struct RejectionResult {
  std::vector<WeightedSample> samples;  // one per attempt, zero weights kept
  std::size_t attempts = 0;
  std::size_t accepted = 0;  // runs with positive weight
  std::size_t capped = 0;    // runs cut off by the step cap
  std::size_t errors = 0;    // runs aborted by an evaluation error
};

/// Forward-executes the whole pCFG n times. A run's weight is the product of
/// its weight-transition values; capped or failing runs get weight 0.
RejectionResult baseline_rejection(const Pcfg& g, std::size_t n, Rng& rng, std::size_t step_cap = 100000);

/// Runs until `accepted` positive-weight samples are collected or
/// `max_attempts` runs were made; only positive-weight samples are returned.
RejectionResult rejection_reference(const Pcfg& g, std::size_t accepted, std::size_t max_attempts, Rng& rng,
                                    std::size_t step_cap = 100000);

struct WholeSmcResult {
  std::vector<WeightedSample> samples;
  double evidence = 0.0;
  std::size_t live = 0;  // particles ending with positive weight
  std::size_t resamples = 0;
  std::size_t capped = 0;
  std::size_t errors = 0;
};

/// SMC over the whole pCFG: particles carry their current location, every
/// particle advances to its next weight transition, then the population is
/// resampled when ESS < J/2.
WholeSmcResult baseline_whole_smc(const Pcfg& g, std::size_t J, Rng& rng, std::size_t step_cap = 100000);

struct SweepSummary {
  std::size_t sweeps = 0;
  std::size_t live_sweeps = 0;  // sweeps ending with at least one live particle
  double live_fraction = 0.0;
  std::vector<WeightedSample> samples;  // positive-weight particles of all sweeps, raw weights
};

/// Independent whole-pCFG SMC sweeps of J particles each.
SweepSummary whole_smc_sweeps(const Pcfg& g, std::size_t J, std::size_t sweeps, Rng& rng,
                              std::size_t step_cap = 100000);

}  // namespace probcf
