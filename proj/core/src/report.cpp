#include "probcf/report.hpp"

#include <json.hpp>

namespace probcf {

std::string report_to_json(const RunReport& r, bool include_wall_time) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["config"] = {
      {"budget", r.config.budget},
      {"particles", r.config.particles},
      {"timeout_ms", r.config.timeout.count()},
      {"weight_mode", std::string(weight_mode_name(r.config.mode))},
      {"seed", r.config.seed},
      {"max_flow_length", r.config.max_flow_length},
      {"expand_attempts", r.config.expand_attempts},
  };
  j["status"] = r.status;
  j["scheduler"] = {
      {"rounds", r.rounds},
      {"expand", r.expand_rounds},
      {"random", r.random_rounds},
      {"proportional", r.proportional_rounds},
      {"idle", r.idle_rounds},
      {"flows_examined", r.flows_examined},
      {"blacklisted", r.blacklisted},
      {"enumeration_exhausted", r.enumeration_exhausted},
  };
  j["pool"] = {
      {"size", r.pool_size},
      {"zero_weight_entries", r.zero_weight_entries},
      {"zero_weight_fraction", r.zero_weight_fraction},
      {"dropped_in_adjustment", r.dropped_in_adjustment},
  };
  j["smc"] = {{"runs", r.smc_runs}, {"timeouts", r.smc_timeouts}};
  ordered_json arms = ordered_json::array();
  for (const auto& a : r.arms) {
    arms.push_back({
        {"flow_id", a.flow_id},
        {"length", a.length},
        {"p_hat", a.p_hat},
        {"pulls", a.pulls},
        {"weight_sum", a.weight_sum},
        {"zero_pulls", a.zero_pulls},
        {"resamples", a.resamples},
        {"dead_particles", a.dead_particles},
        {"timeouts", a.timeouts},
    });
  }
  j["arms"] = std::move(arms);
  j["diagnostics"] = r.diagnostics;
  if (include_wall_time) j["timing"] = {{"wall_seconds", r.wall_seconds}};
  return j.dump(2) + "\n";
}

}  // namespace probcf
