#include "minbudget/cost.hpp"

#include <cctype>

#include "minbudget/error.hpp"

namespace minbudget {
namespace {

bool is_signed_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Cost parse_cost(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_signed_integer(num) ||
      (slash != std::string_view::npos &&
       (!is_signed_integer(den) || den.front() == '-' || den.front() == '+'))) {
    throw Error(ErrorKind::ParseError,
                "cost must be an integer or p/q, got '" + std::string(text) + "'");
  }
  // GMP does not accept a leading '+'.
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (!den.empty()) d = mpz_class(std::string(den), 10);
  if (d == 0) {
    throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  Cost out(n, d);
  out.canonicalize();
  return out;
}

std::string format_cost(const Cost& cost) { return cost.get_str(); }

}  // namespace minbudget
