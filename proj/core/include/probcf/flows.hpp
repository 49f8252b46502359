#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "probcf/pcfg.hpp"

namespace probcf {

struct ControlFlow {
  std::vector<LocId> locs;
  bool complete = false;

  std::size_t size() const { return locs.size(); }
  bool operator==(const ControlFlow& o) const { return locs == o.locs; }
};

std::string format_flow(const ControlFlow& f);

/// Resumable breadth-first enumeration of complete control flows, shortest
/// first, guard-true edge before guard-false edge.
class FlowEnumerator {
 public:
  enum class Status { Found, Exhausted, BudgetSpent };

  struct Result {
    Status status;
    std::optional<ControlFlow> flow;
    std::size_t flow_id = 0;  // index among all complete flows, blacklisted included
  };

  using Oracle = std::function<bool(const ControlFlow&, std::size_t flow_id)>;

  /// Flows longer than max_len locations are never produced.
  explicit FlowEnumerator(const Pcfg& g, std::size_t max_len = 4096);

  /// Next complete flow rejected by neither the oracle nor the budget.
  /// Each complete flow examined, accepted or not, costs one candidate.
  Result next(const Oracle& blacklisted = {}, std::size_t max_candidates = SIZE_MAX);

  std::size_t flows_examined() const { return examined_; }
  bool exhausted() const { return queue_.empty(); }
  bool truncated() const { return truncated_; }

 private:
  struct Node {
    LocId loc;
    std::int64_t parent;
    std::size_t depth;
  };

  ControlFlow path_to(std::size_t node) const;

  const Pcfg* g_;
  std::size_t max_len_;
  std::vector<Node> nodes_;
  std::deque<std::size_t> queue_;
  std::size_t examined_ = 0;
  bool truncated_ = false;
};

/// Convenience: the first `limit` complete flows, no blacklist.
std::vector<ControlFlow> enumerate_flows(const Pcfg& g, std::size_t limit, std::size_t max_len = 4096);

}  // namespace probcf
