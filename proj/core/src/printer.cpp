#include "probcf/printer.hpp"

#include <cmath>

#include <fmt/format.h>

namespace probcf {

namespace {

int precedence(const Expr& e) {
  if (auto* b = e.as_binary()) {
    switch (b->op) {
      case BinaryOp::Or: return 1;
      case BinaryOp::And: return 2;
      case BinaryOp::Add:
      case BinaryOp::Sub: return 4;
      case BinaryOp::Mul:
      case BinaryOp::Div: return 5;
      default: return 3;
    }
  }
  if (auto* u = e.as_unary()) return u->op == UnaryOp::Indicator ? 7 : 6;
  if (auto* c = e.as_const()) return c->value < 0 ? 6 : 7;
  return 7;
}

std::string wrap(const Expr& e, const VarTable& vars, bool parens) {
  std::string s = print_expr(e, vars);
  return parens ? "(" + s + ")" : s;
}

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

std::string print_block(const Block& b, const VarTable& vars, int indent) {
  std::string out = "{\n";
  for (const Command& c : b) out += print_command(c, vars, indent + 1);
  out += pad(indent) + "}";
  return out;
}

}  // namespace

std::string print_const(double value, Type type) {
  if (type == Type::Bool) return value != 0.0 ? "true" : "false";
  if (type == Type::Int && std::isfinite(value) && value == std::floor(value) && std::fabs(value) < 9.0e15)
    return fmt::format("{}", static_cast<long long>(value));
  std::string s = fmt::format("{}", value);
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

std::string print_expr(const Expr& e, const VarTable& vars) {
  if (auto* v = e.as_var()) return vars[v->id].name;
  if (auto* c = e.as_const()) return print_const(c->value, c->type);
  if (auto* u = e.as_unary()) {
    if (u->op == UnaryOp::Indicator) return "ind(" + print_expr(*u->operand, vars) + ")";
    const char* sym = u->op == UnaryOp::Neg ? "-" : "!";
    return sym + wrap(*u->operand, vars, precedence(*u->operand) < 6);
  }
  auto* b = e.as_binary();
  int p = precedence(e);
  bool lp, rp;
  if (p == 3) {
    lp = precedence(*b->lhs) <= 3;
    rp = precedence(*b->rhs) <= 3;
  } else {
    lp = precedence(*b->lhs) < p;
    rp = precedence(*b->rhs) <= p;
  }
  return fmt::format("{} {} {}", wrap(*b->lhs, vars, lp), op_symbol(b->op), wrap(*b->rhs, vars, rp));
}

std::string print_command(const Command& c, const VarTable& vars, int indent) {
  std::string out = pad(indent);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Command::Skip>) {
          out += "skip;";
        } else if constexpr (std::is_same_v<T, Command::Assign>) {
          out += vars[n.var].name + " := " + print_expr(*n.value, vars) + ";";
        } else if constexpr (std::is_same_v<T, Command::Sample>) {
          std::vector<std::string> args;
          for (const auto& a : n.args) args.push_back(print_expr(*a, vars));
          out += fmt::format("{} ~ {}({});", vars[n.var].name, n.family, fmt::join(args, ", "));
        } else if constexpr (std::is_same_v<T, Command::Weight>) {
          out += "weight(" + print_expr(*n.factor, vars) + ");";
        } else if constexpr (std::is_same_v<T, Command::Observe>) {
          out += "observe(" + print_expr(*n.condition, vars) + ");";
        } else if constexpr (std::is_same_v<T, Command::If>) {
          out += "if (" + print_expr(*n.condition, vars) + ") " + print_block(n.then_branch, vars, indent);
          if (!n.else_branch.empty()) out += " else " + print_block(n.else_branch, vars, indent);
        } else if constexpr (std::is_same_v<T, Command::IfP>) {
          out += "ifp (" + print_const(n.probability, Type::Double) + ") " +
                 print_block(n.then_branch, vars, indent);
          if (!n.else_branch.empty()) out += " else " + print_block(n.else_branch, vars, indent);
        } else {
          out += "while (" + print_expr(*n.condition, vars) + ") " + print_block(n.body, vars, indent);
        }
      },
      c.node);
  return out + "\n";
}

std::string print_program(const Program& p) {
  std::string out;
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    const VarDecl& d = p.vars[static_cast<VarId>(i)];
    const Initializer& init = p.inits[i];
    out += fmt::format("{} {}", type_name(d.type), d.name);
    if (init.is_sample()) {
      std::vector<std::string> args;
      for (const auto& a : init.args) args.push_back(print_expr(*a, p.vars));
      out += fmt::format(" ~ {}({});\n", init.family, fmt::join(args, ", "));
    } else {
      out += " := " + print_expr(*init.value, p.vars) + ";\n";
    }
  }
  for (const Command& c : p.body) out += print_command(c, p.vars, 0);
  out += "return " + print_expr(*p.ret, p.vars) + ";\n";
  return out;
}

}  // namespace probcf
