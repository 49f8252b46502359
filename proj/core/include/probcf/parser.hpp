#pragma once

#include <string_view>
#include <vector>

#include "probcf/ast.hpp"
#include "probcf/lexer.hpp"

namespace probcf {

/// Builds a typed Program from tokens. Chained comparisons `a <= b <= c`
/// become `a <= b && b <= c`.
/// Throws SyntaxError, TypeError or UndeclaredVariable.
Program parse(const std::vector<Token>& tokens);

/// tokenize + parse.
Program parse_program(std::string_view source);

/// Static type of an expression; throws TypeError on ill-typed input.
Type type_of(const Expr& e, const VarTable& vars, SourcePos pos = {});

}  // namespace probcf
