#pragma once

#include <optional>
#include <vector>

#include "probcf/ast.hpp"

namespace probcf {

/// Values indexed by VarId. Booleans are 0/1.
using MemoryState = std::vector<double>;

/// Partial constant environment; nullopt means unknown.
using ConstEnv = std::vector<std::optional<double>>;

/// Strict evaluation. Throws EvalError on division by zero or a non-finite
/// intermediate that cannot be ordered.
double eval_expr(const Expr& e, const MemoryState& sigma);
bool eval_bool(const Expr& e, const MemoryState& sigma);

/// e[replacement / x]
ExprPtr substitute(const ExprPtr& e, VarId x, const ExprPtr& replacement);

/// Folds constant subterms and known variables; applies boolean unit and
/// annihilator laws. Never throws: an unfoldable subterm is kept.
ExprPtr simplify(const ExprPtr& e, const ConstEnv* env = nullptr);

/// Value of e when it folds to a constant.
std::optional<double> try_fold(const ExprPtr& e, const ConstEnv* env = nullptr);

}  // namespace probcf
