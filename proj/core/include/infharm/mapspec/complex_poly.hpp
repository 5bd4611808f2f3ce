#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "infharm/expr/expr.hpp"

namespace infharm::mapspec {

using expr::Expr;
using expr::Rational;

/// a + b i with rational a, b.
struct Gaussian {
  Rational re;
  Rational im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Gaussian& operator+=(const Gaussian& o) { re += o.re; im += o.im; return *this; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
  std::string to_string() const;
};

struct ExponentLess {
  bool operator()(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const;
};

/// Polynomial in complex variables z1..zm with Gaussian-rational coefficients.
class ComplexPoly {
 public:
  using TermMap = std::map<std::vector<std::uint32_t>, Gaussian, ExponentLess>;

  explicit ComplexPoly(std::size_t nvars = 0) : nvars_(nvars) {}
  static ComplexPoly constant(std::size_t nvars, const Gaussian& c);
  static ComplexPoly variable(std::size_t nvars, std::size_t index);

  /// Reads `z` (m = 1) or `z1..zm`, the imaginary unit `i`, + - * ^ and
  /// division by nonzero constants. Function calls are rejected.
  static ComplexPoly parse(std::string_view text, std::size_t nvars);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::uint32_t degree() const;
  /// Coefficient of the monomial with the given exponents (zero if absent).
  Gaussian coefficient(const std::vector<std::uint32_t>& exponents) const;
  Gaussian constant_term() const { return coefficient(std::vector<std::uint32_t>(nvars_, 0)); }
  /// Coefficient of z_j.
  Gaussian linear_coefficient(std::size_t j) const;

  ComplexPoly& operator+=(const ComplexPoly& o);
  friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
  friend ComplexPoly operator-(const ComplexPoly& a);
  friend ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b) { return a + (-b); }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
  friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

  std::string to_string() const;

 private:
  void add_term(const std::vector<std::uint32_t>& e, const Gaussian& c);

  std::size_t nvars_;
  TermMap terms_;
};

/// Names used for complex variables: z when m = 1, else z1..zm.
std::vector<std::string> complex_variable_names(std::size_t nvars);

/// A holomorphic polynomial map C^m -> C^n.
struct ComplexPolyMap {
  std::size_t m = 1;
  std::vector<ComplexPoly> components;

  friend bool operator==(const ComplexPolyMap&, const ComplexPolyMap&) = default;
};

/// Real and imaginary part of a complex polynomial after z_j = x_j - i y_j,
/// as expressions over the real coordinates (x1..xm, y1..ym).
struct RealParts {
  Expr re;
  Expr im;
};
RealParts real_parts(const ComplexPoly& p);

}  // namespace infharm::mapspec
