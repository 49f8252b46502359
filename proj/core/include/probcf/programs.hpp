#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "probcf/pcfg.hpp"

namespace probcf {

struct BuiltinProgram {
  std::string name;
  std::vector<std::string> params;
  std::vector<double> defaults;
  std::string source;  // parameters appear as $name
};

const std::vector<BuiltinProgram>& builtin_programs();

struct ProgramSpec {
  std::string name;
  std::vector<double> args;
};

/// Parses `name` or `name(a, b, ...)`. Throws std::invalid_argument.
ProgramSpec parse_program_spec(std::string_view spec);

/// True when `spec` names a builtin, with or without arguments.
bool is_builtin(std::string_view spec);

/// Source text of a builtin with its parameters substituted; missing
/// trailing arguments take their defaults.
std::string builtin_source(std::string_view spec);

/// parse, desugar and build_pcfg in one call.
Pcfg compile(std::string_view source);

/// A builtin spec or a path to a .prob file.
Pcfg load_program(const std::string& spec_or_path);

}  // namespace probcf
