#pragma once

#include <string>

#include "probcf/hier_sampler.hpp"

namespace probcf {

/// report.json: config, per-arm table, pool statistics and scheduler counts.
/// Wall time is omitted unless requested so that equal seeds give equal bytes.
std::string report_to_json(const RunReport& r, bool include_wall_time = false);

}  // namespace probcf
