#include "infharm/mapspec/complex_poly.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "infharm/errors.hpp"
#include "infharm/expr/parse.hpp"

namespace infharm::mapspec {

namespace {

std::uint32_t total(const std::vector<std::uint32_t>& e) {
  std::uint32_t d = 0;
  for (auto k : e) d += k;
  return d;
}

std::string magnitude_prefix(const Rational& mag) {
  if (mag.is_integer()) return mag.to_string();
  return "(" + mag.to_string() + ")";
}

Gaussian inverse(const Gaussian& g) {
  const Rational norm = g.re * g.re + g.im * g.im;
  return {g.re / norm, -g.im / norm};
}

std::optional<std::size_t> resolve_complex(std::string_view name, std::size_t nvars) {
  if (name == "z") return nvars == 1 ? std::optional<std::size_t>(0) : std::nullopt;
  if (name.size() >= 2 && name[0] == 'z') {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), value);
    if (ec == std::errc() && ptr == name.data() + name.size() && value >= 1 && value <= nvars) return value - 1;
  }
  return std::nullopt;
}

ComplexPoly eval(const expr::Ast& n, std::size_t nvars) {
  using Kind = expr::Ast::Kind;
  switch (n.kind) {
    case Kind::Number:
      return ComplexPoly::constant(nvars, {n.number, Rational(0)});
    case Kind::Imaginary:
      return ComplexPoly::constant(nvars, {Rational(0), Rational(1)});
    case Kind::Variable: {
      const auto idx = resolve_complex(n.name, nvars);
      if (!idx) throw ParseError("", "unknown complex variable '" + n.name + "'");
      return ComplexPoly::variable(nvars, *idx);
    }
    case Kind::Neg:
      return -eval(n.children[0], nvars);
    case Kind::Add:
      return eval(n.children[0], nvars) + eval(n.children[1], nvars);
    case Kind::Sub:
      return eval(n.children[0], nvars) - eval(n.children[1], nvars);
    case Kind::Mul:
      return eval(n.children[0], nvars) * eval(n.children[1], nvars);
    case Kind::Div: {
      const ComplexPoly den = eval(n.children[1], nvars);
      if (den.is_zero()) throw ParseError("", "division by zero");
      if (den.degree() != 0) throw UnsupportedExpression("holomorphic components must be polynomials");
      return eval(n.children[0], nvars) * ComplexPoly::constant(nvars, inverse(den.constant_term()));
    }
    case Kind::Pow: {
      if (n.exponent < 0) throw UnsupportedExpression("holomorphic components must be polynomials");
      const ComplexPoly base = eval(n.children[0], nvars);
      ComplexPoly out = ComplexPoly::constant(nvars, {Rational(1), Rational(0)});
      for (int k = 0; k < n.exponent; ++k) out = out * base;
      return out;
    }
    case Kind::Call:
      throw UnsupportedExpression("transcendental holomorphic map '" + n.name + "(...)' is not supported");
  }
  throw ParseError("", "malformed syntax tree");
}

}  // namespace

std::string Gaussian::to_string() const {
  if (im.is_zero()) return re.to_string();
  std::string imag = im.abs().is_one() ? "i" : magnitude_prefix(im.abs()) + "*i";
  if (re.is_zero()) return (im.sign() < 0 ? "-" : "") + imag;
  return "(" + re.to_string() + (im.sign() < 0 ? " - " : " + ") + imag + ")";
}

bool ExponentLess::operator()(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
  const auto da = total(a);
  const auto db = total(b);
  if (da != db) return da < db;
  return a > b;
}

ComplexPoly ComplexPoly::constant(std::size_t nvars, const Gaussian& c) {
  ComplexPoly p(nvars);
  p.add_term(std::vector<std::uint32_t>(nvars, 0), c);
  return p;
}

ComplexPoly ComplexPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("complex variable index out of range");
  std::vector<std::uint32_t> e(nvars, 0);
  e[index] = 1;
  ComplexPoly p(nvars);
  p.add_term(e, {Rational(1), Rational(0)});
  return p;
}

ComplexPoly ComplexPoly::parse(std::string_view text, std::size_t nvars) { return eval(expr::parse_ast(text), nvars); }

void ComplexPoly::add_term(const std::vector<std::uint32_t>& e, const Gaussian& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::uint32_t ComplexPoly::degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total(e));
  return d;
}

Gaussian ComplexPoly::coefficient(const std::vector<std::uint32_t>& exponents) const {
  const auto it = terms_.find(exponents);
  return it == terms_.end() ? Gaussian{} : it->second;
}

Gaussian ComplexPoly::linear_coefficient(std::size_t j) const {
  std::vector<std::uint32_t> e(nvars_, 0);
  e.at(j) = 1;
  return coefficient(e);
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& o) {
  if (o.nvars_ != nvars_) throw DimensionError("complex polynomial dimension mismatch");
  if (&o == this) {
    const ComplexPoly copy = o;
    return *this += copy;
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ComplexPoly operator-(const ComplexPoly& a) {
  ComplexPoly out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.nvars_ != b.nvars_) throw DimensionError("complex polynomial dimension mismatch");
  ComplexPoly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      std::vector<std::uint32_t> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::vector<std::string> complex_variable_names(std::size_t nvars) {
  if (nvars == 1) return {"z"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("z" + std::to_string(i + 1));
  return names;
}

std::string ComplexPoly::to_string() const {
  if (terms_.empty()) return "0";
  const auto names = complex_variable_names(nvars_);
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += names[i];
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    bool negative = false;
    std::string body;
    if (!c.re.is_zero() && !c.im.is_zero()) {
      body = c.to_string() + (factors.empty() ? "" : "*" + factors);
    } else if (c.im.is_zero()) {
      negative = c.re.sign() < 0;
      const Rational mag = c.re.abs();
      if (factors.empty()) {
        body = mag.to_string();
      } else {
        body = mag.is_one() ? factors : magnitude_prefix(mag) + "*" + factors;
      }
    } else {
      negative = c.im.sign() < 0;
      const Rational mag = c.im.abs();
      body = mag.is_one() ? "i" : magnitude_prefix(mag) + "*i";
      if (!factors.empty()) body += "*" + factors;
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    os << body;
  }
  return os.str();
}

RealParts real_parts(const ComplexPoly& p) {
  const std::size_t m = p.nvars();
  const std::size_t n = 2 * m;
  RealParts out{Expr(n), Expr(n)};
  for (const auto& [e, c] : p.terms()) {
    Expr re = Expr::constant(n, c.re);
    Expr im = Expr::constant(n, c.im);
    for (std::size_t j = 0; j < m; ++j) {
      const Expr x = Expr::coordinate(n, j);
      const Expr my = -Expr::coordinate(n, m + j);  // z_j = x_j + i (-y_j)
      for (std::uint32_t k = 0; k < e[j]; ++k) {
        Expr next_re = re * x - im * my;
        Expr next_im = re * my + im * x;
        re = std::move(next_re);
        im = std::move(next_im);
      }
    }
    out.re += re;
    out.im += im;
  }
  return out;
}

}  // namespace infharm::mapspec
