#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace probcf {

enum class Type { Bool, Int, Double };

std::string_view type_name(Type t);

using VarId = std::uint32_t;

struct SourcePos {
  int line = 0;
  int column = 0;
};

enum class UnaryOp { Neg, Not, Indicator };

enum class BinaryOp { Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

bool is_comparison(BinaryOp op);
bool is_arithmetic(BinaryOp op);
bool is_logical(BinaryOp op);
std::string_view op_symbol(BinaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree. Booleans and integers are carried as doubles;
/// the static type tag on constants is kept for printing and diagnostics.
struct Expr {
  struct Var {
    VarId id;
  };
  struct Const {
    double value;
    Type type;
  };
  struct Unary {
    UnaryOp op;
    ExprPtr operand;
  };
  struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };

  std::variant<Var, Const, Unary, Binary> node;

  const Var* as_var() const { return std::get_if<Var>(&node); }
  const Const* as_const() const { return std::get_if<Const>(&node); }
  const Unary* as_unary() const { return std::get_if<Unary>(&node); }
  const Binary* as_binary() const { return std::get_if<Binary>(&node); }
};

ExprPtr make_var(VarId id);
ExprPtr make_const(double value, Type type = Type::Double);
ExprPtr make_bool(bool value);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_not(ExprPtr operand);
ExprPtr make_indicator(ExprPtr formula);

bool structurally_equal(const Expr& a, const Expr& b);
bool mentions(const Expr& e, VarId id);
void collect_vars(const Expr& e, std::vector<VarId>& out);

struct VarDecl {
  std::string name;
  Type type = Type::Double;
  bool fresh = false;  // introduced by desugaring
};

/// Ordered symbol table; VarId is the index into it.
class VarTable {
 public:
  VarId add(std::string name, Type type, bool fresh = false);
  const VarDecl& operator[](VarId id) const { return decls_.at(id); }
  std::size_t size() const { return decls_.size(); }
  bool contains(std::string_view name) const;
  VarId lookup(std::string_view name) const;  // throws std::out_of_range
  std::string fresh_name(std::string_view stem) const;
  auto begin() const { return decls_.begin(); }
  auto end() const { return decls_.end(); }

 private:
  std::vector<VarDecl> decls_;
};

struct Command;
using Block = std::vector<Command>;

struct Command {
  struct Skip {};
  struct Assign {
    VarId var;
    ExprPtr value;
  };
  struct Sample {
    VarId var;
    std::string family;
    std::vector<ExprPtr> args;
  };
  struct Weight {
    ExprPtr factor;
  };
  struct Observe {
    ExprPtr condition;
  };
  struct If {
    ExprPtr condition;
    Block then_branch;
    Block else_branch;
  };
  struct IfP {
    double probability;
    Block then_branch;
    Block else_branch;
  };
  struct While {
    ExprPtr condition;
    Block body;
  };

  std::variant<Skip, Assign, Sample, Weight, Observe, If, IfP, While> node;
  SourcePos pos{};
};

/// Declaration initializer: either an expression or a draw `~ family(args)`.
struct Initializer {
  ExprPtr value;  // set for deterministic initializers
  std::string family;
  std::vector<ExprPtr> args;
  bool is_sample() const { return value == nullptr; }
};

struct Program {
  VarTable vars;
  std::vector<Initializer> inits;  // parallel to vars; fresh vars get constants
  Block body;
  ExprPtr ret;
};

}  // namespace probcf
