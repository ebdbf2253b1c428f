#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace minbudget {

// Exact rational cost. Every comparison in the cbr-preorder must be exact, so
// no floating point ever touches a cost.
using Cost = mpq_class;

/// Parses "17", "-3", "2/6" (normalized to "1/3"). Rejects anything else,
/// including decimals and zero denominators, with ErrorKind::ParseError.
Cost parse_cost(std::string_view text);

/// Canonical text: integers as "n", everything else as "p/q" in lowest terms.
std::string format_cost(const Cost& cost);

inline bool is_integer(const Cost& cost) { return cost.get_den() == 1; }

}  // namespace minbudget
