#include "infharm/expr/format.hpp"

#include <sstream>

namespace infharm::expr {

std::vector<std::string> variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  names.reserve(nvars);
  if (nvars <= 3) {
    static const char* kShort[] = {"x", "y", "z"};
    for (std::size_t i = 0; i < nvars; ++i) names.emplace_back(kShort[i]);
  } else {
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

namespace {

std::string power_suffix(std::uint32_t k) { return k == 1 ? std::string() : "^" + std::to_string(k); }

std::string render_factors(const Monomial& m, const std::vector<std::string>& names) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m.coord[i] != 0) parts.push_back(names[i] + power_suffix(m.coord[i]));
  }
  if (m.exp) parts.push_back("exp(" + to_string(*m.exp) + ")");
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m.cos[i] != 0) parts.push_back("cos(" + names[i] + ")" + power_suffix(m.cos[i]));
  }
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m.sin[i] != 0) parts.push_back("sin(" + names[i] + ")" + power_suffix(m.sin[i]));
  }
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k != 0) out += "*";
    out += parts[k];
  }
  return out;
}

}  // namespace

std::string to_string(const Expr& e) {
  if (e.is_zero()) return "0";
  const auto names = variable_names(e.nvars());
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = c.abs();
    const std::string factors = render_factors(m, names);
    if (factors.empty()) {
      os << mag.to_string();
    } else if (mag.is_one()) {
      os << factors;
    } else if (mag.is_integer()) {
      os << mag.to_string() << "*" << factors;
    } else {
      os << "(" << mag.to_string() << ")*" << factors;
    }
  }
  return os.str();
}

std::string to_string(const Quotient& q) {
  const Expr den = q.denominator();
  if (den.is_constant()) return to_string(q.numerator() * (Rational(1) / den.constant_term()));
  return "(" + to_string(q.numerator()) + ") / (" + to_string(den) + ")";
}

}  // namespace infharm::expr
