#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "probcf/metrics.hpp"

namespace probcf {

struct ReferenceOptions {
  std::size_t accepted = 1000000;
  std::size_t max_attempts = 100000000;
  std::uint64_t seed = 1;
  std::size_t step_cap = 100000;
};

/// Closed forms for coin, unifCd, geomIt, poisCd and mixed; any other
/// builtin gets a rejection-oracle reference sample; a path ending in .csv
/// is read as a reference sample file.
GroundTruth ground_truth(std::string_view spec, const ReferenceOptions& opt = {});

/// True when `ground_truth` has a closed form for the program.
bool has_closed_form(std::string_view spec);

}  // namespace probcf
