#include "probcf/ast.hpp"

#include <algorithm>
#include <stdexcept>

#include "probcf/errors.hpp"

namespace probcf {

SourceError::SourceError(const std::string& kind, const std::string& message, SourcePos pos)
    : std::runtime_error(kind + " at " + std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                         ": " + message),
      pos_(pos),
      message_(message) {}

std::string_view type_name(Type t) {
  switch (t) {
    case Type::Bool:
      return "bool";
    case Type::Int:
      return "int";
    case Type::Double:
      return "double";
  }
  return "?";
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::Eq:
    case BinaryOp::Ne:
      return true;
    default:
      return false;
  }
}

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul || op == BinaryOp::Div;
}

bool is_logical(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

std::string_view op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Sub:
      return "-";
    case BinaryOp::Mul:
      return "*";
    case BinaryOp::Div:
      return "/";
    case BinaryOp::Lt:
      return "<";
    case BinaryOp::Le:
      return "<=";
    case BinaryOp::Gt:
      return ">";
    case BinaryOp::Ge:
      return ">=";
    case BinaryOp::Eq:
      return "=";
    case BinaryOp::Ne:
      return "!=";
    case BinaryOp::And:
      return "&&";
    case BinaryOp::Or:
      return "||";
  }
  return "?";
}

ExprPtr make_var(VarId id) { return std::make_shared<const Expr>(Expr{Expr::Var{id}}); }

ExprPtr make_const(double value, Type type) {
  return std::make_shared<const Expr>(Expr{Expr::Const{value, type}});
}

ExprPtr make_bool(bool value) { return make_const(value ? 1.0 : 0.0, Type::Bool); }

ExprPtr make_unary(UnaryOp op, ExprPtr operand) {
  return std::make_shared<const Expr>(Expr{Expr::Unary{op, std::move(operand)}});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{Expr::Binary{op, std::move(lhs), std::move(rhs)}});
}

ExprPtr make_not(ExprPtr operand) { return make_unary(UnaryOp::Not, std::move(operand)); }

ExprPtr make_indicator(ExprPtr formula) { return make_unary(UnaryOp::Indicator, std::move(formula)); }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* v = a.as_var()) return v->id == b.as_var()->id;
  if (auto* c = a.as_const()) return c->value == b.as_const()->value && c->type == b.as_const()->type;
  if (auto* u = a.as_unary()) {
    auto* w = b.as_unary();
    return u->op == w->op && structurally_equal(*u->operand, *w->operand);
  }
  auto* x = a.as_binary();
  auto* y = b.as_binary();
  return x->op == y->op && structurally_equal(*x->lhs, *y->lhs) && structurally_equal(*x->rhs, *y->rhs);
}

bool mentions(const Expr& e, VarId id) {
  if (auto* v = e.as_var()) return v->id == id;
  if (e.as_const()) return false;
  if (auto* u = e.as_unary()) return mentions(*u->operand, id);
  auto* b = e.as_binary();
  return mentions(*b->lhs, id) || mentions(*b->rhs, id);
}

void collect_vars(const Expr& e, std::vector<VarId>& out) {
  if (auto* v = e.as_var()) {
    if (std::find(out.begin(), out.end(), v->id) == out.end()) out.push_back(v->id);
  } else if (auto* u = e.as_unary()) {
    collect_vars(*u->operand, out);
  } else if (auto* b = e.as_binary()) {
    collect_vars(*b->lhs, out);
    collect_vars(*b->rhs, out);
  }
}

VarId VarTable::add(std::string name, Type type, bool fresh) {
  decls_.push_back(VarDecl{std::move(name), type, fresh});
  return static_cast<VarId>(decls_.size() - 1);
}

bool VarTable::contains(std::string_view name) const {
  return std::any_of(decls_.begin(), decls_.end(), [&](const VarDecl& d) { return d.name == name; });
}

VarId VarTable::lookup(std::string_view name) const {
  for (std::size_t i = 0; i < decls_.size(); ++i) {
    if (decls_[i].name == name) return static_cast<VarId>(i);
  }
  throw std::out_of_range("unknown variable " + std::string(name));
}

std::string VarTable::fresh_name(std::string_view stem) const {
  for (std::size_t i = 0;; ++i) {
    std::string candidate = std::string(stem) + std::to_string(i);
    if (!contains(candidate)) return candidate;
  }
}

}  // namespace probcf
