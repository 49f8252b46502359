#include "probcf/pcfg.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "probcf/desugar.hpp"
#include "probcf/printer.hpp"

namespace probcf {

std::string_view loc_kind_name(LocKind k) {
  switch (k) {
    case LocKind::Deterministic: return "D";
    case LocKind::ProbAssign: return "P";
    case LocKind::DetAssign: return "A";
    case LocKind::Weight: return "W";
    case LocKind::Final: return "F";
  }
  return "?";
}

namespace {

class Builder {
 public:
  std::vector<Location> locs;

  LocId add(Location l) {
    locs.push_back(std::move(l));
    return static_cast<LocId>(locs.size() - 1);
  }

  LocId block(const Block& b, LocId cont) {
    for (auto it = b.rbegin(); it != b.rend(); ++it) cont = command(*it, cont);
    return cont;
  }

  LocId command(const Command& c, LocId cont) {
    if (std::holds_alternative<Command::Skip>(c.node)) return cont;
    if (auto* a = std::get_if<Command::Assign>(&c.node)) {
      Location l{LocKind::DetAssign, a->var, a->value, {}, {}, {cont}, c.pos};
      return add(std::move(l));
    }
    if (auto* s = std::get_if<Command::Sample>(&c.node)) {
      Location l{LocKind::ProbAssign, s->var, nullptr, s->family, s->args, {cont}, c.pos};
      return add(std::move(l));
    }
    if (auto* w = std::get_if<Command::Weight>(&c.node)) {
      Location l{LocKind::Weight, 0, w->factor, {}, {}, {cont}, c.pos};
      return add(std::move(l));
    }
    if (auto* br = std::get_if<Command::If>(&c.node)) {
      LocId t = block(br->then_branch, cont);
      LocId e = block(br->else_branch, cont);
      if (t == cont && e == cont) return cont;
      Location l{LocKind::Deterministic, 0, br->condition, {}, {}, {t, e}, c.pos};
      return add(std::move(l));
    }
    if (auto* loop = std::get_if<Command::While>(&c.node)) {
      LocId head = add(Location{LocKind::Deterministic, 0, loop->condition, {}, {}, {}, c.pos});
      LocId body = block(loop->body, head);
      locs[head].succ = {body, cont};
      return head;
    }
    throw std::invalid_argument("build_pcfg: program contains ifp or observe; desugar it first");
  }
};

}  // namespace

Pcfg build_pcfg(const Program& p) {
  if (!is_core(p)) throw std::invalid_argument("build_pcfg: program contains ifp or observe; desugar it first");
  Pcfg g;
  g.vars = p.vars;
  g.ret = p.ret;
  g.sigma_init.assign(p.vars.size(), 0.0);

  Builder b;
  LocId fin = b.add(Location{LocKind::Final, 0, nullptr, {}, {}, {}, {}});
  LocId entry = b.block(p.body, fin);

  // Constant initializers fold into sigma_init; the rest form a prologue.
  ConstEnv env(p.vars.size());
  std::vector<bool> prologue(p.vars.size(), false);
  for (std::size_t i = 0; i < p.inits.size(); ++i) {
    const Initializer& init = p.inits[i];
    if (!init.is_sample()) {
      if (auto v = try_fold(init.value, &env)) {
        env[i] = *v;
        g.sigma_init[i] = *v;
        continue;
      }
    }
    prologue[i] = true;
  }
  for (std::size_t i = p.inits.size(); i-- > 0;) {
    if (!prologue[i]) continue;
    const Initializer& init = p.inits[i];
    VarId v = static_cast<VarId>(i);
    if (init.is_sample()) {
      entry = b.add(Location{LocKind::ProbAssign, v, nullptr, init.family, init.args, {entry}, {}});
    } else {
      entry = b.add(Location{LocKind::DetAssign, v, init.value, {}, {}, {entry}, {}});
    }
  }

  // Renumber by depth-first preorder from the entry.
  std::vector<LocId> order;
  std::vector<std::int64_t> new_id(b.locs.size(), -1);
  std::vector<LocId> stack{entry};
  while (!stack.empty()) {
    LocId id = stack.back();
    stack.pop_back();
    if (new_id[id] >= 0) continue;
    new_id[id] = static_cast<std::int64_t>(order.size());
    order.push_back(id);
    const auto& succ = b.locs[id].succ;
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) {
      if (new_id[*it] < 0) stack.push_back(*it);
    }
  }
  for (LocId old : order) {
    Location l = b.locs[old];
    for (LocId& s : l.succ) s = static_cast<LocId>(new_id[s]);
    g.locs.push_back(std::move(l));
  }
  g.init = 0;
  g.final_loc = static_cast<LocId>(new_id[fin]);
  return g;
}

std::vector<Violation> validate(const Pcfg& g) {
  std::vector<Violation> out;
  auto report = [&](LocId id, std::string msg) { out.push_back(Violation{id, std::move(msg)}); };
  const auto n = static_cast<LocId>(g.locs.size());
  if (g.init >= n) report(g.init, "initial location does not exist");
  if (g.final_loc >= n) {
    report(g.final_loc, "final location does not exist");
  } else if (g.locs[g.final_loc].kind != LocKind::Final) {
    report(g.final_loc, "designated final location is not of kind Final");
  }
  for (LocId id = 0; id < n; ++id) {
    const Location& l = g.locs[id];
    for (LocId s : l.succ) {
      if (s >= n) report(id, fmt::format("location {} has an edge to missing location {}", id, s));
    }
    switch (l.kind) {
      case LocKind::Deterministic:
        if (l.succ.size() != 2)
          report(id, fmt::format("deterministic location {} has {} outgoing edges, expected 2", id, l.succ.size()));
        if (!l.expr) report(id, fmt::format("deterministic location {} has no guard", id));
        break;
      case LocKind::ProbAssign:
      case LocKind::DetAssign:
      case LocKind::Weight:
        if (l.succ.size() != 1)
          report(id, fmt::format("{} location {} has {} outgoing edges, expected 1", loc_kind_name(l.kind), id,
                                 l.succ.size()));
        if (l.kind == LocKind::ProbAssign && l.family.empty())
          report(id, fmt::format("location {} draws from no distribution", id));
        if (l.kind != LocKind::ProbAssign && !l.expr)
          report(id, fmt::format("location {} has an empty label", id));
        break;
      case LocKind::Final:
        if (!l.succ.empty()) report(id, fmt::format("final location {} has outgoing edges", id));
        if (id != g.final_loc) report(id, fmt::format("location {} is a second final location", id));
        break;
    }
  }
  if (g.init < n) {
    std::vector<bool> seen(n, false);
    std::vector<LocId> stack{g.init};
    seen[g.init] = true;
    while (!stack.empty()) {
      LocId id = stack.back();
      stack.pop_back();
      for (LocId s : g.locs[id].succ) {
        if (s < n && !seen[s]) {
          seen[s] = true;
          stack.push_back(s);
        }
      }
    }
    for (LocId id = 0; id < n; ++id) {
      if (!seen[id]) report(id, fmt::format("location {} is unreachable from the initial location", id));
    }
  }
  return out;
}

std::string describe_location(const Pcfg& g, LocId id) {
  const Location& l = g.locs.at(id);
  switch (l.kind) {
    case LocKind::Deterministic:
      return "if (" + print_expr(*l.expr, g.vars) + ")";
    case LocKind::ProbAssign: {
      std::vector<std::string> args;
      for (const auto& a : l.args) args.push_back(print_expr(*a, g.vars));
      return fmt::format("{} ~ {}({})", g.vars[l.var].name, l.family, fmt::join(args, ", "));
    }
    case LocKind::DetAssign:
      return g.vars[l.var].name + " := " + print_expr(*l.expr, g.vars);
    case LocKind::Weight:
      return "weight(" + print_expr(*l.expr, g.vars) + ")";
    case LocKind::Final:
      return "return " + print_expr(*g.ret, g.vars);
  }
  return "?";
}

std::string print_pcfg(const Pcfg& g) {
  std::string out;
  for (std::size_t i = 0; i < g.vars.size(); ++i) {
    const auto id = static_cast<VarId>(i);
    out += fmt::format("init {} = {}\n", g.vars[id].name, print_const(g.sigma_init[i], g.vars[id].type));
  }
  for (LocId id = 0; id < g.locs.size(); ++id) {
    const Location& l = g.locs[id];
    std::string succ;
    if (l.succ.size() == 2) {
      succ = fmt::format(" -> {} | {}", l.succ[0], l.succ[1]);
    } else if (!l.succ.empty()) {
      succ = fmt::format(" -> {}", l.succ[0]);
    }
    out += fmt::format("{:>4} {} {}{}\n", id, loc_kind_name(l.kind), describe_location(g, id), succ);
  }
  return out;
}

}  // namespace probcf
