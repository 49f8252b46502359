#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace probcf {

struct WeightedSample {
  double weight = 0.0;
  double value = 0.0;
  std::size_t flow = 0;
};

/// CSV with header `weight,value,flow_id`, floats at 17 significant digits.
void write_samples_csv(std::ostream& out, const std::vector<WeightedSample>& samples);
void write_samples_csv(const std::string& path, const std::vector<WeightedSample>& samples);

/// Accepts the format above; a missing flow_id column reads as 0 and a
/// missing weight column as 1. Throws std::runtime_error on malformed input.
std::vector<WeightedSample> read_samples_csv(std::istream& in);
std::vector<WeightedSample> read_samples_csv(const std::string& path);

}  // namespace probcf
