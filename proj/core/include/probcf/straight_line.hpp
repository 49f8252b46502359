#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "probcf/distributions.hpp"
#include "probcf/flows.hpp"
#include "probcf/pcfg.hpp"

namespace probcf {

enum class WeightOrigin { Guard, Observe, Weight, Restriction, Propagated };

std::string_view weight_origin_name(WeightOrigin o);

struct SlpStep {
  struct Assign {
    VarId var;
    ExprPtr value;
  };
  struct Sample {
    VarId var;
    std::string family;
    std::vector<ExprPtr> args;
    std::shared_ptr<const RestrictedDist> restricted;  // set by domain restriction
  };
  struct Weight {
    ExprPtr factor;
    WeightOrigin origin = WeightOrigin::Weight;
  };

  std::variant<Assign, Sample, Weight> node;

  const Assign* as_assign() const { return std::get_if<Assign>(&node); }
  const Sample* as_sample() const { return std::get_if<Sample>(&node); }
  const Weight* as_weight() const { return std::get_if<Weight>(&node); }
};

/// Branch-free program: a chain of assignment, draw and weight steps.
struct StraightLineProgram {
  VarTable vars;
  MemoryState sigma_init;
  std::vector<SlpStep> steps;
  ExprPtr ret;
};

/// Guards become observations: a Deterministic location left along its
/// guard-true edge yields observe(phi), along the other edge observe(!phi).
/// Throws std::invalid_argument when f is not a complete flow of g.
StraightLineProgram straight_line(const Pcfg& g, const ControlFlow& f);

/// Number of weight steps whose factor is an indicator.
std::size_t count_observations(const StraightLineProgram& s);

std::string print_step(const SlpStep& step, const VarTable& vars);
std::string print_slp(const StraightLineProgram& s);

}  // namespace probcf
