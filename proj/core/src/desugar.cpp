#include "probcf/desugar.hpp"

namespace probcf {

namespace {

class Desugarer {
 public:
  explicit Desugarer(Program& p) : prog_(p) {}

  Block block(const Block& in) {
    Block out;
    for (const Command& c : in) command(c, out);
    return out;
  }

 private:
  void command(const Command& c, Block& out) {
    if (auto* ifp = std::get_if<Command::IfP>(&c.node)) {
      VarId b = prog_.vars.add(prog_.vars.fresh_name("b"), Type::Bool, true);
      prog_.inits.push_back(Initializer{make_bool(false), {}, {}});
      out.push_back(Command{Command::Sample{b, "bernoulli", {make_const(ifp->probability)}}, c.pos});
      out.push_back(Command{Command::If{make_var(b), block(ifp->then_branch), block(ifp->else_branch)}, c.pos});
    } else if (auto* obs = std::get_if<Command::Observe>(&c.node)) {
      out.push_back(Command{Command::Weight{make_indicator(obs->condition)}, c.pos});
    } else if (auto* br = std::get_if<Command::If>(&c.node)) {
      out.push_back(Command{Command::If{br->condition, block(br->then_branch), block(br->else_branch)}, c.pos});
    } else if (auto* loop = std::get_if<Command::While>(&c.node)) {
      out.push_back(Command{Command::While{loop->condition, block(loop->body)}, c.pos});
    } else {
      out.push_back(c);
    }
  }

  Program& prog_;
};

bool block_is_core(const Block& b) {
  for (const Command& c : b) {
    if (std::holds_alternative<Command::IfP>(c.node) || std::holds_alternative<Command::Observe>(c.node))
      return false;
    if (auto* br = std::get_if<Command::If>(&c.node)) {
      if (!block_is_core(br->then_branch) || !block_is_core(br->else_branch)) return false;
    } else if (auto* loop = std::get_if<Command::While>(&c.node)) {
      if (!block_is_core(loop->body)) return false;
    }
  }
  return true;
}

}  // namespace

Program desugar(const Program& p) {
  Program out;
  out.vars = p.vars;
  out.inits = p.inits;
  out.ret = p.ret;
  Desugarer d(out);
  out.body = d.block(p.body);
  return out;
}

bool is_core(const Program& p) { return block_is_core(p.body); }

}  // namespace probcf
