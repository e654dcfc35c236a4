#pragma once

#include <string>
#include <string_view>

#include "vproblog/logic.hpp"

namespace vpl {

// Program text:
//
//   0.6::e(a,b).                      probabilistic fact
//   e(b,c).                           crisp fact (probability 1)
//   path(X,Y) :- e(X,Z), path(Z,Y).   rule
//   % comment to end of line
//
// Throws ParseError carrying the line and column of the offending clause.
ProbProgram parse_program(std::string_view text);

// A single atom, optionally followed by '.'. Each `_` is a fresh variable.
Atom parse_query(std::string_view text);

// Inverse of parse_program up to whitespace and comments.
std::string render_program(const ProbProgram& program);

std::string format_probability(double p);

}  // namespace vpl
