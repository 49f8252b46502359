#include "probcf/flows.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace probcf {

std::string format_flow(const ControlFlow& f) { return fmt::format("{}", fmt::join(f.locs, " ")); }

FlowEnumerator::FlowEnumerator(const Pcfg& g, std::size_t max_len) : g_(&g), max_len_(max_len) {
  if (max_len_ >= 1 && g.size() > 0) {
    nodes_.push_back(Node{g.init, -1, 1});
    queue_.push_back(0);
  }
}

ControlFlow FlowEnumerator::path_to(std::size_t node) const {
  ControlFlow f;
  for (std::int64_t i = static_cast<std::int64_t>(node); i >= 0; i = nodes_[static_cast<std::size_t>(i)].parent)
    f.locs.push_back(nodes_[static_cast<std::size_t>(i)].loc);
  std::reverse(f.locs.begin(), f.locs.end());
  f.complete = !f.locs.empty() && f.locs.back() == g_->final_loc;
  return f;
}

FlowEnumerator::Result FlowEnumerator::next(const Oracle& blacklisted, std::size_t max_candidates) {
  std::size_t spent = 0;
  while (!queue_.empty()) {
    if (spent >= max_candidates) return Result{Status::BudgetSpent, std::nullopt, examined_};
    std::size_t idx = queue_.front();
    queue_.pop_front();
    Node node = nodes_[idx];
    const Location& l = (*g_)[node.loc];
    if (l.kind == LocKind::Final) {
      ControlFlow f = path_to(idx);
      std::size_t id = examined_++;
      ++spent;
      if (blacklisted && blacklisted(f, id)) continue;
      return Result{Status::Found, std::move(f), id};
    }
    for (LocId s : l.succ) {
      if (node.depth + 1 > max_len_) {
        truncated_ = true;
        continue;
      }
      nodes_.push_back(Node{s, static_cast<std::int64_t>(idx), node.depth + 1});
      queue_.push_back(nodes_.size() - 1);
    }
  }
  return Result{Status::Exhausted, std::nullopt, examined_};
}

std::vector<ControlFlow> enumerate_flows(const Pcfg& g, std::size_t limit, std::size_t max_len) {
  FlowEnumerator e(g, max_len);
  std::vector<ControlFlow> out;
  while (out.size() < limit) {
    auto r = e.next();
    if (r.status != FlowEnumerator::Status::Found) break;
    out.push_back(std::move(*r.flow));
  }
  return out;
}

}  // namespace probcf
