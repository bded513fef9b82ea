#pragma once

#include <string>

#include "jjsim/netlist/ast.hpp"

namespace jjsim::netlist {

/// Canonical textual form of an AST. Reparsing the result yields a
/// structurally equal AST: parse(print(ast)) == ast for every valid input.
std::string print(const NetlistAst& ast);

/// Formats a double so that it reparses to the identical value.
std::string format_number(double v);

}  // namespace jjsim::netlist
