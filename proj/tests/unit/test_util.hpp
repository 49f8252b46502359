#pragma once

#include <string>
#include <string_view>

#include "probcf/flows.hpp"
#include "probcf/pcfg.hpp"
#include "probcf/programs.hpp"
#include "probcf/straight_line.hpp"

namespace probcf::test {

inline StraightLineProgram flow_program(const Pcfg& g, std::size_t flow_id) {
  auto flows = enumerate_flows(g, flow_id + 1);
  return straight_line(g, flows.at(flow_id));
}

/// The single flow of a branch-free source.
inline StraightLineProgram slp_from_source(std::string_view src) { return flow_program(compile(src), 0); }

inline std::string squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\n' && c != '\t' && c != '\r') out += c;
  }
  return out;
}

}  // namespace probcf::test
