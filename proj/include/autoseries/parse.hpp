#pragma once

#include <string_view>
#include <vector>

#include "autoseries/types.hpp"

namespace autoseries {

/// Parses a real literal or small arithmetic expression: decimals, exact
/// rationals p/q, the tokens sqrt2 and pi, sqrt(...), + - * / and
/// parentheses. "(17*sqrt2-2)/15" is accepted. Throws UsageError.
real parse_real(std::string_view text);

/// Comma-separated list of parse_real values.
std::vector<real> parse_real_list(std::string_view text);

}  // namespace autoseries
