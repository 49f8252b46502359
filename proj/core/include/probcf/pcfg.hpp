#pragma once

#include <string>
#include <vector>

#include "probcf/ast.hpp"
#include "probcf/eval.hpp"

namespace probcf {

enum class LocKind { Deterministic, ProbAssign, DetAssign, Weight, Final };

std::string_view loc_kind_name(LocKind k);

using LocId = std::uint32_t;

/// One pCFG location together with the label of its outgoing transition(s).
struct Location {
  LocKind kind = LocKind::Final;
  VarId var = 0;                // ProbAssign, DetAssign
  ExprPtr expr;                 // guard, assigned value or weight factor
  std::string family;           // ProbAssign
  std::vector<ExprPtr> args;    // ProbAssign
  std::vector<LocId> succ;      // Deterministic: {guard-true, guard-false}
  SourcePos pos{};
};

struct Pcfg {
  VarTable vars;
  MemoryState sigma_init;
  std::vector<Location> locs;
  LocId init = 0;
  LocId final_loc = 0;
  ExprPtr ret;

  const Location& operator[](LocId id) const { return locs.at(id); }
  std::size_t size() const { return locs.size(); }
};

/// Standard CFG construction over a desugared program. Constant initializers
/// land in sigma_init; draws and non-constant initializers become a prologue
/// of locations in declaration order. Location IDs follow a depth-first
/// preorder from l_init taking the guard-true edge first.
/// Throws std::invalid_argument when the program still contains sugar.
Pcfg build_pcfg(const Program& desugared);

struct Violation {
  LocId loc;
  std::string message;
};

std::vector<Violation> validate(const Pcfg& g);

/// Label of a location, e.g. "x := x + y" or "if (x < 3)".
std::string describe_location(const Pcfg& g, LocId id);

/// Human-readable listing, one location per line.
std::string print_pcfg(const Pcfg& g);

}  // namespace probcf
