#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "infharm/expr/rational.hpp"

namespace infharm::expr {

class Expr;

/// A product of atom powers over `nvars` coordinates.
///
/// Atoms are the coordinates x_i, cos(x_i), sin(x_i) and a single exponential
/// exp(p) whose exponent p is a canonical polynomial. In canonical form every
/// sin power is at most 1 and the exponential is absent when p = 0.
struct Monomial {
  std::vector<std::uint32_t> coord;
  std::vector<std::uint32_t> cos;
  std::vector<std::uint32_t> sin;
  std::shared_ptr<const Expr> exp;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : coord(nvars, 0), cos(nvars, 0), sin(nvars, 0) {}

  std::size_t nvars() const noexcept { return coord.size(); }
  /// Total degree in coordinates and trig atoms; the exponential has degree 0.
  std::uint32_t degree() const noexcept;
  bool is_unit() const noexcept;
  bool is_polynomial() const noexcept;
  bool has_trig() const noexcept;
};

/// Graded order: ascending total degree, then descending lexicographic on
/// coordinate powers, then exponential key, then cos powers, then sin powers.
int compare(const Monomial& a, const Monomial& b);
/// Total structural order on canonical expressions.
int compare(const Expr& a, const Expr& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

/// Canonical sum of rational multiples of monomials.
///
/// Values are immutable after construction and every public operation returns
/// a canonical result, so structural equality coincides with equality as
/// functions and `is_zero` is a decision procedure for this class.
class Expr {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialLess>;

  explicit Expr(std::size_t nvars = 0) : nvars_(nvars) {}

  static Expr constant(std::size_t nvars, const Rational& value);
  static Expr coordinate(std::size_t nvars, std::size_t index);
  /// exp(exponent); the exponent must be a polynomial (no exp/trig atoms).
  static Expr exp(const Expr& exponent);
  static Expr cos(std::size_t nvars, std::size_t index);
  static Expr sin(std::size_t nvars, std::size_t index);
  /// Builds a canonical expression from arbitrary (possibly unreduced) terms.
  static Expr from_terms(std::size_t nvars, std::vector<std::pair<Monomial, Rational>> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Coefficient of the unit monomial.
  Rational constant_term() const;
  /// No exp or trig atoms.
  bool is_polynomial() const noexcept;
  std::uint32_t degree() const noexcept;
  /// Index i when this expression is exactly x_i.
  std::optional<std::size_t> as_coordinate() const;

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator*=(const Rational& s);

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(Expr a, const Rational& s) { return a *= s; }
  friend Expr operator*(const Rational& s, Expr a) { return a *= s; }
  friend Expr operator-(const Expr& a);

  friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

 private:
  friend Expr mul(const Expr& a, const Expr& b);
  friend Expr add(const Expr& a, const Expr& b);
  friend Expr neg(const Expr& a);
  friend Expr canonicalize(const Expr& e);
  friend Expr partial_derivative(const Expr& e, std::size_t index);
  friend Expr substitute(const Expr& e, std::span<const Expr> images);
  friend std::optional<Expr> divide_exact(const Expr& num, const Expr& den);

  std::size_t nvars_;
  TermMap terms_;
};

Expr add(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr neg(const Expr& a);
Expr pow(const Expr& base, unsigned exponent);

/// Re-runs canonicalization on the stored terms. Idempotent on canonical input.
Expr canonicalize(const Expr& e);

/// Exact partial derivative with respect to coordinate `index`.
Expr partial_derivative(const Expr& e, std::size_t index);

/// Replaces coordinate i by images[i]. Every image must share one target
/// dimension. Trig atoms accept only images of the form x_j, -x_j or 0, and
/// substituted exponents must remain polynomial.
Expr substitute(const Expr& e, std::span<const Expr> images);

/// num / den when den divides num exactly as polynomials (graded
/// lexicographic division); std::nullopt otherwise or when either side carries
/// exp or trig atoms.
std::optional<Expr> divide_exact(const Expr& num, const Expr& den);

/// Double-precision evaluation (exp/cos/sin through <cmath>).
double evaluate(const Expr& e, std::span<const double> point);
double evaluate(const Expr& e, std::span<const Rational> point);
/// Exact evaluation; std::nullopt when e carries exp or trig atoms.
std::optional<Rational> evaluate_exact(const Expr& e, std::span<const Rational> point);
/// max over terms of |term value| at the point.
double largest_term_magnitude(const Expr& e, std::span<const double> point);

/// The coordinates x_0..x_{nvars-1} as expressions.
std::vector<Expr> coordinates(std::size_t nvars);

}  // namespace infharm::expr
