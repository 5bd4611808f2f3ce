#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "infharm/expr/expr.hpp"
#include "infharm/expr/quotient.hpp"

namespace infharm::expr {

/// x, y, z when nvars <= 3, otherwise x1..xN.
std::vector<std::string> variable_names(std::size_t nvars);

/// Renders with explicit `*` and `^`, rationals as `p/q` and exp/cos/sin as
/// function calls, so that the output parses back to the same expression.
std::string to_string(const Expr& e);
/// "num" or "(num) / (den)".
std::string to_string(const Quotient& q);

}  // namespace infharm::expr
