#pragma once

#include <string>

#include "adelic/rational_function.hpp"

namespace adelic {

/// Parses an expression in the variable z over Q(i) into a RationalFunction.
/// Supports integers, i, z, + - * / ^, parentheses, and implicit
/// multiplication ("2z", "3(z-1)", "1/2 i"). Throws argument_error on
/// malformed input.
RationalFunction parse_rational_function(const std::string& text);

} // namespace adelic
