#include "probcf/straight_line.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "probcf/printer.hpp"

namespace probcf {

std::string_view weight_origin_name(WeightOrigin o) {
  switch (o) {
    case WeightOrigin::Guard: return "guard";
    case WeightOrigin::Observe: return "observe";
    case WeightOrigin::Weight: return "weight";
    case WeightOrigin::Restriction: return "restriction";
    case WeightOrigin::Propagated: return "propagated";
  }
  return "?";
}

StraightLineProgram straight_line(const Pcfg& g, const ControlFlow& f) {
  if (f.locs.empty() || f.locs.front() != g.init || f.locs.back() != g.final_loc)
    throw std::invalid_argument("straight_line: not a complete control flow");
  StraightLineProgram s;
  s.vars = g.vars;
  s.sigma_init = g.sigma_init;
  s.ret = g.ret;
  for (std::size_t i = 0; i + 1 < f.locs.size(); ++i) {
    const Location& l = g[f.locs[i]];
    LocId next = f.locs[i + 1];
    auto edge_ok = [&] {
      for (LocId x : l.succ)
        if (x == next) return true;
      return false;
    };
    if (!edge_ok()) throw std::invalid_argument(fmt::format("straight_line: no edge {} -> {}", f.locs[i], next));
    switch (l.kind) {
      case LocKind::Deterministic: {
        ExprPtr phi = next == l.succ[0] ? l.expr : make_not(l.expr);
        s.steps.push_back(SlpStep{SlpStep::Weight{make_indicator(phi), WeightOrigin::Guard}});
        break;
      }
      case LocKind::ProbAssign:
        s.steps.push_back(SlpStep{SlpStep::Sample{l.var, l.family, l.args, nullptr}});
        break;
      case LocKind::DetAssign:
        s.steps.push_back(SlpStep{SlpStep::Assign{l.var, l.expr}});
        break;
      case LocKind::Weight: {
        auto* u = l.expr->as_unary();
        bool obs = u && u->op == UnaryOp::Indicator;
        s.steps.push_back(SlpStep{SlpStep::Weight{l.expr, obs ? WeightOrigin::Observe : WeightOrigin::Weight}});
        break;
      }
      case LocKind::Final:
        throw std::invalid_argument("straight_line: final location inside flow");
    }
  }
  return s;
}

std::size_t count_observations(const StraightLineProgram& s) {
  std::size_t n = 0;
  for (const SlpStep& st : s.steps) {
    if (auto* w = st.as_weight()) {
      auto* u = w->factor->as_unary();
      if (u && u->op == UnaryOp::Indicator) ++n;
    }
  }
  return n;
}

std::string print_step(const SlpStep& step, const VarTable& vars) {
  if (auto* a = step.as_assign()) return vars[a->var].name + " := " + print_expr(*a->value, vars) + ";";
  if (auto* smp = step.as_sample()) {
    std::vector<std::string> args;
    for (const auto& e : smp->args) args.push_back(print_expr(*e, vars));
    std::string out = fmt::format("{} ~ {}({})", vars[smp->var].name, smp->family, fmt::join(args, ", "));
    if (smp->restricted) out += " | " + smp->restricted->admitted().to_string();
    return out + ";";
  }
  const auto* w = step.as_weight();
  auto* u = w->factor->as_unary();
  if (u && u->op == UnaryOp::Indicator) return "observe(" + print_expr(*u->operand, vars) + ");";
  return "weight(" + print_expr(*w->factor, vars) + ");";
}

std::string print_slp(const StraightLineProgram& s) {
  std::string out;
  for (const SlpStep& st : s.steps) out += print_step(st, s.vars) + "\n";
  out += "return " + print_expr(*s.ret, s.vars) + ";\n";
  return out;
}

}  // namespace probcf
