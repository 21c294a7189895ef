#pragma once

#include <string>

#include "wseries/bigreal.hpp"

namespace wseries {

// Parses a real-valued command-line expression at the given precision.
// Grammar: numbers (with optional scientific exponent), the constant `e`,
// + - * / ^ (right-associative) and parentheses, e.g. "(2*e)^2*1.05".
// Note "4e2" lexes as the number 400; write "4*e^2" for 4e^2.
BigReal parse_real_expr(const std::string& text, mpfr_prec_t prec);

} // namespace wseries
