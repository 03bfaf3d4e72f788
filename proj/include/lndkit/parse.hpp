#pragma once

#include "lndkit/poly.hpp"

#include <string_view>

namespace lndkit {

// Parses an expression such as "x^2*v - y*u - 1" or "(1/2)*(1 + a*t)*x".
// Grammar: integers, rationals p/q, identifiers from `vars`, binary + - * ^,
// unary minus, parentheses. Multiplication must be explicit; division is only
// allowed by nonzero constants. Throws ParseError (with a byte position) or
// UnknownVariable.
Poly parse_poly(std::string_view text, const VarTablePtr& vars);

}  // namespace lndkit
