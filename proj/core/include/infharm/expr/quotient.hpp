#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "infharm/expr/expr.hpp"

namespace infharm::expr {

/// core * prod(base_k ^ power_k) with integer powers of nonvanishing polynomial
/// bases.
///
/// This is how conformal factors and stereographic metrics are carried without
/// leaving the polynomial class: a quotient is zero exactly when its core is,
/// and the negative powers are the clearing multiplier reported alongside
/// cleared identities. Bases are normalized so that their leading coefficient
/// is 1; identical bases merge, so powers cancel under multiplication.
class Quotient {
 public:
  struct Factor {
    Expr base;
    int power;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  Quotient() = default;
  explicit Quotient(Expr core);  // NOLINT(google-explicit-constructor)
  Quotient(Expr core, std::vector<Factor> factors);

  static Quotient constant(std::size_t nvars, const Rational& value) { return Quotient(Expr::constant(nvars, value)); }

  std::size_t nvars() const noexcept { return core_.nvars(); }
  const Expr& core() const noexcept { return core_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }

  bool is_zero() const noexcept { return core_.is_zero(); }
  /// True when no base appears with a negative power.
  bool is_polynomial_form() const noexcept;
  bool is_constant() const noexcept { return factors_.empty() && core_.is_constant(); }

  /// core times the positive-power bases, expanded.
  Expr numerator() const;
  /// Product of the negative-power bases, expanded (1 when none).
  Expr denominator() const;
  /// The expanded expression when there is no denominator.
  std::optional<Expr> as_expr() const;

  Quotient reciprocal() const;

  Quotient& operator+=(const Quotient& o);
  Quotient& operator-=(const Quotient& o);
  Quotient& operator*=(const Quotient& o);
  Quotient& operator*=(const Rational& s);

  friend Quotient operator+(Quotient a, const Quotient& b) { return a += b; }
  friend Quotient operator-(Quotient a, const Quotient& b) { return a -= b; }
  friend Quotient operator*(Quotient a, const Quotient& b) { return a *= b; }
  friend Quotient operator*(Quotient a, const Rational& s) { return a *= s; }
  friend Quotient operator*(const Rational& s, Quotient a) { return a *= s; }
  friend Quotient operator/(const Quotient& a, const Quotient& b) { return a * b.reciprocal(); }
  friend Quotient operator-(const Quotient& a) { return a * Rational(-1); }
  friend bool operator==(const Quotient& a, const Quotient& b) = default;

 private:
  void normalize();

  Expr core_;
  std::vector<Factor> factors_;
};

Quotient pow(const Quotient& base, int exponent);
/// The same value with a non-constant polynomial core moved into a base of
/// power 1, so that products keep it as a factor instead of expanding it.
Quotient factor_core(const Quotient& q);
Quotient partial_derivative(const Quotient& q, std::size_t index);
Quotient substitute(const Quotient& q, std::span<const Expr> images);
double evaluate(const Quotient& q, std::span<const double> point);
/// Largest |term| of the expanded numerator divided by |denominator| at the point.
double largest_term_magnitude(const Quotient& q, std::span<const double> point);

}  // namespace infharm::expr
