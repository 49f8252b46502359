#pragma once

#include <string>

#include "probcf/ast.hpp"

namespace probcf {

std::string print_expr(const Expr& e, const VarTable& vars);
std::string print_const(double value, Type type);
std::string print_command(const Command& c, const VarTable& vars, int indent = 0);
std::string print_program(const Program& p);

}  // namespace probcf
