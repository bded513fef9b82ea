#pragma once

#include <string_view>

#include "jjsim/netlist/ast.hpp"

namespace jjsim::netlist {

/// Parses netlist text into an AST.
///
/// Line-oriented grammar: a line whose first non-blank character is `*` or
/// `#` is a comment, `#` also starts an inline comment, and a line starting
/// with `+` continues the previous statement. Keywords are case-insensitive;
/// node, element, model, and subcircuit names are case-preserving and
/// case-sensitive. Throws ParseError with 1-based line/column on failure.
NetlistAst parse(std::string_view text);

/// Parses one number with optional SI suffix: p, n, u, m, k, meg (suffixes
/// are case-insensitive, except that a lone `m` is always milli and only the
/// three-letter `meg` means 1e6). Throws ParseError on malformed input.
double parse_si_number(std::string_view token, int line = 0, int col = 0);

}  // namespace jjsim::netlist
