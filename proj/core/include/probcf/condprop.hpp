#pragma once

#include <string>
#include <vector>

#include "probcf/predicate.hpp"
#include "probcf/straight_line.hpp"

namespace probcf {

/// consts[i] holds the variables whose value is fixed before step i;
/// consts[steps.size()] describes the final state.
std::vector<ConstEnv> propagate_constants(const StraightLineProgram& s);

struct PropagationResult {
  StraightLineProgram program;
  SymbolicPredicate continuation;  // predicate left at the head
  std::vector<std::string> diagnostics;
};

/// Backward condition propagation with domain restriction. Weight steps are
/// folded into the continuation and re-emitted right after the draws they
/// depend on; a draw whose constraints bound it to constant intervals is
/// restricted and compensated by weight(mass).
PropagationResult cdpg_full(const StraightLineProgram& s);
StraightLineProgram cdpg(const StraightLineProgram& s);

/// True iff some weight folds to the constant 0 or some restriction has
/// zero mass.
bool is_blacklisted(const StraightLineProgram& s);

}  // namespace probcf
