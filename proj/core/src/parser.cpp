#include "probcf/parser.hpp"

#include <charconv>
#include <string>

#include <fmt/format.h>

#include "probcf/distributions.hpp"
#include "probcf/errors.hpp"

namespace probcf {

namespace {

bool numeric(Type t) { return t == Type::Int || t == Type::Double; }

std::optional<Type> decl_type(TokenKind k) {
  switch (k) {
    case TokenKind::KwBool: return Type::Bool;
    case TokenKind::KwInt: return Type::Int;
    case TokenKind::KwDouble: return Type::Double;
    default: return std::nullopt;
  }
}

std::optional<BinaryOp> comparison_op(TokenKind k) {
  switch (k) {
    case TokenKind::Less: return BinaryOp::Lt;
    case TokenKind::LessEq: return BinaryOp::Le;
    case TokenKind::Greater: return BinaryOp::Gt;
    case TokenKind::GreaterEq: return BinaryOp::Ge;
    case TokenKind::Equal: return BinaryOp::Eq;
    case TokenKind::NotEqual: return BinaryOp::Ne;
    default: return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

  Program run() {
    while (decl_type(peek().kind)) declaration();
    while (!at(TokenKind::KwReturn)) {
      if (at(TokenKind::End)) throw SyntaxError("expected 'return' at end of program", peek().pos);
      if (decl_type(peek().kind))
        throw SyntaxError("declarations must precede the first statement", peek().pos);
      statement(prog_.body);
    }
    SourcePos ret_pos = advance().pos;
    prog_.ret = expression();
    type_of(*prog_.ret, prog_.vars, ret_pos);
    accept(TokenKind::Semi);
    if (!at(TokenKind::End)) throw SyntaxError("unexpected input after return", peek().pos);
    return std::move(prog_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool at(TokenKind k) const { return peek().kind == k; }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(TokenKind k) {
    if (!at(k)) return false;
    advance();
    return true;
  }
  const Token& expect(TokenKind k, std::string_view context) {
    if (!at(k))
      throw SyntaxError(fmt::format("expected {} {}, found {}", token_kind_name(k), context,
                                    peek().text.empty() ? std::string(token_kind_name(peek().kind))
                                                        : "'" + peek().text + "'"),
                        peek().pos);
    return advance();
  }

  bool at_assign() const { return at(TokenKind::Assign) || at(TokenKind::Equal); }

  void declaration() {
    Type type = *decl_type(advance().kind);
    std::vector<std::pair<std::string, SourcePos>> names;
    do {
      const Token& id = expect(TokenKind::Ident, "in declaration");
      if (prog_.vars.contains(id.text))
        throw SyntaxError(fmt::format("variable '{}' declared twice", id.text), id.pos);
      for (auto& n : names) {
        if (n.first == id.text) throw SyntaxError(fmt::format("variable '{}' declared twice", id.text), id.pos);
      }
      names.emplace_back(id.text, id.pos);
    } while (accept(TokenKind::Comma));

    Initializer init;
    SourcePos pos = peek().pos;
    if (accept(TokenKind::Tilde)) {
      auto [family, args] = draw(pos);
      init.family = std::move(family);
      init.args = std::move(args);
    } else if (at_assign()) {
      advance();
      init.value = expression();
    } else {
      throw SyntaxError("declaration requires an initializer (':=' or '~')", pos);
    }
    expect(TokenKind::Semi, "after declaration");

    // Initializers see only earlier declarations.
    if (init.is_sample()) {
      check_draw_target(init.family, type, pos);
    } else {
      check_assignable(type, type_of(*init.value, prog_.vars, pos), pos);
    }
    for (auto& [name, npos] : names) {
      prog_.vars.add(name, type);
      prog_.inits.push_back(init);
    }
  }

  std::pair<std::string, std::vector<ExprPtr>> draw(SourcePos pos) {
    const Token& fam = expect(TokenKind::Ident, "naming a distribution");
    const FamilySpec* spec = FamilyRegistry::global().find(fam.text);
    if (!spec) throw SyntaxError(fmt::format("unknown distribution '{}'", fam.text), fam.pos);
    expect(TokenKind::LParen, "after distribution name");
    std::vector<ExprPtr> args;
    if (!at(TokenKind::RParen)) {
      do {
        SourcePos apos = peek().pos;
        ExprPtr a = expression();
        if (!numeric(type_of(*a, prog_.vars, apos)))
          throw TypeError("distribution parameters must be numeric", apos);
        args.push_back(std::move(a));
      } while (accept(TokenKind::Comma));
    }
    expect(TokenKind::RParen, "closing distribution arguments");
    if (args.size() != spec->arity)
      throw SyntaxError(fmt::format("{} takes {} parameter(s), got {}", spec->name, spec->arity, args.size()),
                        pos);
    return {spec->name, std::move(args)};
  }

  void check_draw_target(const std::string& family, Type target, SourcePos pos) {
    const FamilySpec* spec = FamilyRegistry::global().find(family);
    if (target == Type::Bool && !spec->boolean_valued)
      throw TypeError(fmt::format("cannot draw a bool from {}", family), pos);
  }

  void check_assignable(Type target, Type value, SourcePos pos) {
    if ((target == Type::Bool) != (value == Type::Bool))
      throw TypeError(fmt::format("cannot assign {} to {}", type_name(value), type_name(target)), pos);
  }

  VarId variable(const Token& id) {
    if (!prog_.vars.contains(id.text)) throw UndeclaredVariable(id.text, id.pos);
    return prog_.vars.lookup(id.text);
  }

  ExprPtr guard(std::string_view what) {
    SourcePos pos = peek().pos;
    ExprPtr g = expression();
    if (type_of(*g, prog_.vars, pos) != Type::Bool)
      throw TypeError(fmt::format("{} must be a sharp boolean formula", what), pos);
    return g;
  }

  Block block_or_statement() {
    Block out;
    if (accept(TokenKind::LBrace)) {
      while (!accept(TokenKind::RBrace)) {
        if (at(TokenKind::End)) throw SyntaxError("unterminated block", peek().pos);
        statement(out);
      }
    } else {
      statement(out);
    }
    return out;
  }

  void statement(Block& out) {
    const Token& head = peek();
    SourcePos pos = head.pos;
    switch (head.kind) {
      case TokenKind::KwSkip:
        advance();
        expect(TokenKind::Semi, "after skip");
        out.push_back(Command{Command::Skip{}, pos});
        return;
      case TokenKind::LBrace: {
        Block inner = block_or_statement();
        for (auto& c : inner) out.push_back(std::move(c));
        return;
      }
      case TokenKind::KwObserve: {
        advance();
        expect(TokenKind::LParen, "after observe");
        ExprPtr phi = guard("observe argument");
        expect(TokenKind::RParen, "closing observe");
        expect(TokenKind::Semi, "after observe");
        out.push_back(Command{Command::Observe{std::move(phi)}, pos});
        return;
      }
      case TokenKind::KwWeight: {
        advance();
        expect(TokenKind::LParen, "after weight");
        SourcePos fpos = peek().pos;
        ExprPtr f = expression();
        if (!numeric(type_of(*f, prog_.vars, fpos)))
          throw TypeError("weight argument must be a numeric fuzzy predicate", fpos);
        expect(TokenKind::RParen, "closing weight");
        expect(TokenKind::Semi, "after weight");
        out.push_back(Command{Command::Weight{std::move(f)}, pos});
        return;
      }
      case TokenKind::KwIf: {
        advance();
        ExprPtr phi = guard("if guard");
        Block then_b = block_or_statement();
        Block else_b;
        if (accept(TokenKind::KwElse)) else_b = block_or_statement();
        out.push_back(Command{Command::If{std::move(phi), std::move(then_b), std::move(else_b)}, pos});
        return;
      }
      case TokenKind::KwIfp: {
        advance();
        expect(TokenKind::LParen, "after ifp");
        SourcePos ppos = peek().pos;
        double p = probability_literal();
        if (!(p >= 0.0 && p <= 1.0)) throw TypeError("ifp probability must lie in [0,1]", ppos);
        expect(TokenKind::RParen, "closing ifp probability");
        accept(TokenKind::KwThen);
        Block then_b = block_or_statement();
        Block else_b;
        if (accept(TokenKind::KwElse)) else_b = block_or_statement();
        out.push_back(Command{Command::IfP{p, std::move(then_b), std::move(else_b)}, pos});
        return;
      }
      case TokenKind::KwWhile: {
        advance();
        ExprPtr phi = guard("while guard");
        Block body = block_or_statement();
        out.push_back(Command{Command::While{std::move(phi), std::move(body)}, pos});
        return;
      }
      case TokenKind::Ident: {
        const Token& id = advance();
        VarId v = variable(id);
        Type t = prog_.vars[v].type;
        if (accept(TokenKind::Tilde)) {
          auto [family, args] = draw(pos);
          check_draw_target(family, t, pos);
          expect(TokenKind::Semi, "after draw");
          out.push_back(Command{Command::Sample{v, std::move(family), std::move(args)}, pos});
          return;
        }
        if (!at_assign())
          throw SyntaxError(fmt::format("expected ':=' or '~' after '{}'", id.text), peek().pos);
        advance();
        SourcePos vpos = peek().pos;
        ExprPtr e = expression();
        check_assignable(t, type_of(*e, prog_.vars, vpos), vpos);
        expect(TokenKind::Semi, "after assignment");
        out.push_back(Command{Command::Assign{v, std::move(e)}, pos});
        return;
      }
      default:
        throw SyntaxError(fmt::format("unexpected {} at start of statement",
                                      head.text.empty() ? std::string(token_kind_name(head.kind))
                                                        : "'" + head.text + "'"),
                          pos);
    }
  }

  double probability_literal() {
    bool neg = accept(TokenKind::Minus);
    if (!at(TokenKind::IntLit) && !at(TokenKind::FloatLit))
      throw SyntaxError("ifp probability must be a numeric literal", peek().pos);
    double v = std::stod(advance().text);
    return neg ? -v : v;
  }

  // Precedence climbing, lowest first.
  ExprPtr expression() { return disjunction(); }

  ExprPtr disjunction() {
    ExprPtr lhs = conjunction();
    while (accept(TokenKind::OrOr)) lhs = make_binary(BinaryOp::Or, lhs, conjunction());
    return lhs;
  }

  ExprPtr conjunction() {
    ExprPtr lhs = comparison();
    while (accept(TokenKind::AndAnd)) lhs = make_binary(BinaryOp::And, lhs, comparison());
    return lhs;
  }

  ExprPtr comparison() {
    ExprPtr first = additive();
    ExprPtr result;
    ExprPtr left = first;
    while (auto op = comparison_op(peek().kind)) {
      advance();
      ExprPtr right = additive();
      ExprPtr atom = make_binary(*op, left, right);
      result = result ? make_binary(BinaryOp::And, result, atom) : atom;
      left = right;
    }
    return result ? result : first;
  }

  ExprPtr additive() {
    ExprPtr lhs = multiplicative();
    for (;;) {
      if (accept(TokenKind::Plus)) {
        lhs = make_binary(BinaryOp::Add, lhs, multiplicative());
      } else if (accept(TokenKind::Minus)) {
        lhs = make_binary(BinaryOp::Sub, lhs, multiplicative());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr multiplicative() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept(TokenKind::Star)) {
        lhs = make_binary(BinaryOp::Mul, lhs, unary());
      } else if (accept(TokenKind::Slash)) {
        lhs = make_binary(BinaryOp::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (accept(TokenKind::Minus)) return make_unary(UnaryOp::Neg, unary());
    if (accept(TokenKind::Bang)) return make_not(unary());
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::IntLit:
        advance();
        return make_const(std::stod(t.text), Type::Int);
      case TokenKind::FloatLit:
        advance();
        return make_const(std::stod(t.text), Type::Double);
      case TokenKind::KwTrue:
        advance();
        return make_bool(true);
      case TokenKind::KwFalse:
        advance();
        return make_bool(false);
      case TokenKind::Ident:
        advance();
        return make_var(variable(t));
      case TokenKind::LParen: {
        advance();
        ExprPtr e = expression();
        expect(TokenKind::RParen, "closing parenthesis");
        return e;
      }
      case TokenKind::KwInd: {
        advance();
        expect(TokenKind::LParen, "after ind");
        SourcePos fpos = peek().pos;
        ExprPtr phi = expression();
        if (type_of(*phi, prog_.vars, fpos) != Type::Bool)
          throw TypeError("ind expects a boolean formula", fpos);
        expect(TokenKind::RParen, "closing ind");
        return make_indicator(std::move(phi));
      }
      default:
        throw SyntaxError(fmt::format("expected expression, found {}",
                                      t.text.empty() ? std::string(token_kind_name(t.kind)) : "'" + t.text + "'"),
                          t.pos);
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  Program prog_;
};

}  // namespace

Type type_of(const Expr& e, const VarTable& vars, SourcePos pos) {
  if (auto* v = e.as_var()) return vars[v->id].type;
  if (auto* c = e.as_const()) return c->type;
  if (auto* u = e.as_unary()) {
    Type t = type_of(*u->operand, vars, pos);
    switch (u->op) {
      case UnaryOp::Neg:
        if (!numeric(t)) throw TypeError("unary '-' applied to bool", pos);
        return t;
      case UnaryOp::Not:
        if (t != Type::Bool) throw TypeError("'!' applied to a numeric expression", pos);
        return Type::Bool;
      case UnaryOp::Indicator:
        if (t != Type::Bool) throw TypeError("indicator of a numeric expression", pos);
        return Type::Double;
    }
  }
  auto* b = e.as_binary();
  Type l = type_of(*b->lhs, vars, pos);
  Type r = type_of(*b->rhs, vars, pos);
  if (is_arithmetic(b->op)) {
    if (!numeric(l) || !numeric(r))
      throw TypeError(fmt::format("operator '{}' needs numeric operands", op_symbol(b->op)), pos);
    if (b->op == BinaryOp::Div) return Type::Double;
    return l == Type::Int && r == Type::Int ? Type::Int : Type::Double;
  }
  if (is_logical(b->op)) {
    if (l != Type::Bool || r != Type::Bool)
      throw TypeError(fmt::format("operator '{}' needs boolean operands", op_symbol(b->op)), pos);
    return Type::Bool;
  }
  if (b->op == BinaryOp::Eq || b->op == BinaryOp::Ne) {
    if ((l == Type::Bool) != (r == Type::Bool))
      throw TypeError(fmt::format("operator '{}' compares bool with number", op_symbol(b->op)), pos);
    return Type::Bool;
  }
  if (!numeric(l) || !numeric(r))
    throw TypeError(fmt::format("operator '{}' needs numeric operands", op_symbol(b->op)), pos);
  return Type::Bool;
}

Program parse(const std::vector<Token>& tokens) {
  if (tokens.empty() || tokens.back().kind != TokenKind::End)
    throw SyntaxError("token stream must end with End", {});
  return Parser(tokens).run();
}

Program parse_program(std::string_view source) { return parse(tokenize(source)); }

}  // namespace probcf
