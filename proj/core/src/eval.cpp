#include "probcf/eval.hpp"

#include <cmath>

#include "probcf/errors.hpp"

namespace probcf {

namespace {

double apply(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
      if (b == 0.0) throw EvalError("division by zero");
      return a / b;
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Ge: return a >= b;
    case BinaryOp::Eq: return a == b;
    case BinaryOp::Ne: return a != b;
    case BinaryOp::And: return (a != 0.0) && (b != 0.0);
    case BinaryOp::Or: return (a != 0.0) || (b != 0.0);
  }
  return 0.0;
}

double apply(UnaryOp op, double v) {
  switch (op) {
    case UnaryOp::Neg: return -v;
    case UnaryOp::Not: return v == 0.0 ? 1.0 : 0.0;
    case UnaryOp::Indicator: return v != 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

Type result_type(BinaryOp op, Type l, Type r) {
  if (is_comparison(op) || is_logical(op)) return Type::Bool;
  if (op == BinaryOp::Div) return Type::Double;
  return l == Type::Int && r == Type::Int ? Type::Int : Type::Double;
}

bool is_const(const ExprPtr& e, double v) {
  auto* c = e->as_const();
  return c && c->value == v;
}

}  // namespace

double eval_expr(const Expr& e, const MemoryState& sigma) {
  if (auto* v = e.as_var()) return sigma.at(v->id);
  if (auto* c = e.as_const()) return c->value;
  if (auto* u = e.as_unary()) return apply(u->op, eval_expr(*u->operand, sigma));
  auto* b = e.as_binary();
  if (b->op == BinaryOp::And) return eval_expr(*b->lhs, sigma) != 0.0 && eval_expr(*b->rhs, sigma) != 0.0;
  if (b->op == BinaryOp::Or) return eval_expr(*b->lhs, sigma) != 0.0 || eval_expr(*b->rhs, sigma) != 0.0;
  return apply(b->op, eval_expr(*b->lhs, sigma), eval_expr(*b->rhs, sigma));
}

bool eval_bool(const Expr& e, const MemoryState& sigma) { return eval_expr(e, sigma) != 0.0; }

ExprPtr substitute(const ExprPtr& e, VarId x, const ExprPtr& replacement) {
  if (auto* v = e->as_var()) return v->id == x ? replacement : e;
  if (e->as_const()) return e;
  if (auto* u = e->as_unary()) {
    ExprPtr o = substitute(u->operand, x, replacement);
    return o == u->operand ? e : make_unary(u->op, o);
  }
  auto* b = e->as_binary();
  ExprPtr l = substitute(b->lhs, x, replacement);
  ExprPtr r = substitute(b->rhs, x, replacement);
  return l == b->lhs && r == b->rhs ? e : make_binary(b->op, l, r);
}

ExprPtr simplify(const ExprPtr& e, const ConstEnv* env) {
  if (auto* v = e->as_var()) {
    if (env && v->id < env->size() && (*env)[v->id]) return make_const(*(*env)[v->id], Type::Double);
    return e;
  }
  if (e->as_const()) return e;
  if (auto* u = e->as_unary()) {
    ExprPtr o = simplify(u->operand, env);
    if (auto* c = o->as_const()) {
      Type t = u->op == UnaryOp::Neg ? c->type : (u->op == UnaryOp::Not ? Type::Bool : Type::Double);
      return make_const(apply(u->op, c->value), t);
    }
    if (u->op == UnaryOp::Not) {
      if (auto* inner = o->as_unary(); inner && inner->op == UnaryOp::Not) return inner->operand;
    }
    return o == u->operand ? e : make_unary(u->op, o);
  }
  auto* b = e->as_binary();
  ExprPtr l = simplify(b->lhs, env);
  ExprPtr r = simplify(b->rhs, env);
  auto* lc = l->as_const();
  auto* rc = r->as_const();
  if (b->op == BinaryOp::And) {
    if ((lc && lc->value == 0.0) || (rc && rc->value == 0.0)) return make_bool(false);
    if (lc) return r;
    if (rc) return l;
  } else if (b->op == BinaryOp::Or) {
    if ((lc && lc->value != 0.0) || (rc && rc->value != 0.0)) return make_bool(true);
    if (lc) return r;
    if (rc) return l;
  }
  if (lc && rc) {
    if (!(b->op == BinaryOp::Div && rc->value == 0.0))
      return make_const(apply(b->op, lc->value, rc->value), result_type(b->op, lc->type, rc->type));
  }
  switch (b->op) {
    case BinaryOp::Add:
      if (is_const(l, 0.0)) return r;
      if (is_const(r, 0.0)) return l;
      break;
    case BinaryOp::Sub:
      if (is_const(r, 0.0)) return l;
      break;
    case BinaryOp::Mul:
      if (is_const(l, 1.0)) return r;
      if (is_const(r, 1.0)) return l;
      break;
    case BinaryOp::Div:
      if (is_const(r, 1.0)) return l;
      break;
    default:
      break;
  }
  return l == b->lhs && r == b->rhs ? e : make_binary(b->op, l, r);
}

std::optional<double> try_fold(const ExprPtr& e, const ConstEnv* env) {
  ExprPtr s = simplify(e, env);
  if (auto* c = s->as_const()) return c->value;
  return std::nullopt;
}

}  // namespace probcf
