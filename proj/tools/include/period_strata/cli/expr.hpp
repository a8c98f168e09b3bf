#pragma once

#include "period_strata/poly.hpp"

#include <string>
#include <string_view>

namespace period_strata::cli {

// Polynomial expression in one variable: integers, + - * / ^, parentheses
// and implicit multiplication ("3x^2 - x/2 + 1/3", "(x-1)^2").
// Division is only by nonzero constants. An empty var allows constants only.
// Throws ParseError.
Poly parse_poly(std::string_view text, const std::string& var);

}  // namespace period_strata::cli
