#include "infharm/expr/parse.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "infharm/errors.hpp"

namespace infharm::expr {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Ast parse() {
    Ast node = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("", "at position " + std::to_string(pos_) + " in '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static Ast binary(Ast::Kind kind, Ast lhs, Ast rhs) {
    Ast n;
    n.kind = kind;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
  }

  Ast parse_sum() {
    Ast lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Ast::Kind::Add, std::move(lhs), parse_product());
      } else if (accept('-')) {
        lhs = binary(Ast::Kind::Sub, std::move(lhs), parse_product());
      } else {
        return lhs;
      }
    }
  }

  Ast parse_product() {
    Ast lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Ast::Kind::Mul, std::move(lhs), parse_unary());
      } else if (accept('/')) {
        lhs = binary(Ast::Kind::Div, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Ast parse_unary() {
    if (accept('-')) {
      Ast n;
      n.kind = Ast::Kind::Neg;
      n.children.push_back(parse_unary());
      return n;
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  int parse_exponent() {
    bool parens = accept('(');
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || value > 1024) fail("exponent out of range");
    if (parens) expect(')');
    return negative ? -value : value;
  }

  Ast parse_power() {
    Ast base = parse_primary();
    if (accept('^')) {
      Ast n;
      n.kind = Ast::Kind::Pow;
      n.exponent = parse_exponent();
      n.children.push_back(std::move(base));
      return n;
    }
    return base;
  }

  Ast parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Ast inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
        if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
          pos_ = look;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
      }
      Ast n;
      n.kind = Ast::Kind::Number;
      try {
        n.number = Rational::parse(text_.substr(start, pos_ - start));
      } catch (const ParseError& e) {
        fail(e.what());
      }
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (accept('(')) {
        Ast n;
        n.kind = Ast::Kind::Call;
        n.name = std::move(name);
        n.children.push_back(parse_sum());
        expect(')');
        return n;
      }
      Ast n;
      n.kind = name == "i" ? Ast::Kind::Imaginary : Ast::Kind::Variable;
      n.name = std::move(name);
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Quotient eval_real(const Ast& n, std::size_t nvars) {
  switch (n.kind) {
    case Ast::Kind::Number:
      return Quotient::constant(nvars, n.number);
    case Ast::Kind::Variable: {
      const auto idx = resolve_coordinate(n.name, nvars);
      if (!idx) throw ParseError("", "unknown variable '" + n.name + "' for " + std::to_string(nvars) + " coordinates");
      return Quotient(Expr::coordinate(nvars, *idx));
    }
    case Ast::Kind::Imaginary:
      throw ParseError("", "imaginary unit 'i' is not allowed in a real expression");
    case Ast::Kind::Neg:
      return -eval_real(n.children[0], nvars);
    case Ast::Kind::Add:
      return eval_real(n.children[0], nvars) + eval_real(n.children[1], nvars);
    case Ast::Kind::Sub:
      return eval_real(n.children[0], nvars) - eval_real(n.children[1], nvars);
    case Ast::Kind::Mul:
      return eval_real(n.children[0], nvars) * eval_real(n.children[1], nvars);
    case Ast::Kind::Div: {
      Quotient den = eval_real(n.children[1], nvars);
      if (den.is_zero()) throw ParseError("", "division by zero");
      return eval_real(n.children[0], nvars) / den;
    }
    case Ast::Kind::Pow: {
      Quotient base = eval_real(n.children[0], nvars);
      if (n.exponent < 0 && base.is_zero()) throw ParseError("", "zero raised to a negative power");
      return pow(base, n.exponent);
    }
    case Ast::Kind::Call: {
      const Quotient arg = eval_real(n.children[0], nvars);
      const auto as_expr = arg.as_expr();
      if (n.name == "exp") {
        if (!as_expr || !as_expr->is_polynomial()) {
          throw UnsupportedExpression("exp() accepts only polynomial arguments");
        }
        return Quotient(Expr::exp(*as_expr));
      }
      if (n.name == "cos" || n.name == "sin") {
        const auto idx = as_expr ? as_expr->as_coordinate() : std::nullopt;
        if (!idx) throw UnsupportedExpression(n.name + "() accepts only a single coordinate argument");
        return Quotient(n.name == "cos" ? Expr::cos(nvars, *idx) : Expr::sin(nvars, *idx));
      }
      throw ParseError("", "unknown function '" + n.name + "'");
    }
  }
  throw ParseError("", "malformed syntax tree");
}

}  // namespace

Ast parse_ast(std::string_view text) { return Parser(text).parse(); }

std::optional<std::size_t> resolve_coordinate(std::string_view name, std::size_t nvars) {
  if (nvars <= 3 && name.size() == 1) {
    const std::size_t idx = name == "x" ? 0 : (name == "y" ? 1 : (name == "z" ? 2 : 99));
    if (idx < nvars) return idx;
    return std::nullopt;
  }
  if (name.size() >= 2 && name[0] == 'x') {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), value);
    if (ec == std::errc() && ptr == name.data() + name.size() && value >= 1 && value <= nvars) return value - 1;
  }
  return std::nullopt;
}

Quotient parse_quotient(std::string_view text, std::size_t nvars) { return eval_real(parse_ast(text), nvars); }

Expr parse_expr(std::string_view text, std::size_t nvars) {
  const Quotient q = parse_quotient(text, nvars);
  auto e = q.as_expr();
  if (!e) throw ParseError("", "division by a non-constant expression in '" + std::string(text) + "'");
  return *e;
}

}  // namespace infharm::expr
