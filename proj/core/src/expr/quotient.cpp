#include "infharm/expr/quotient.hpp"

#include <algorithm>
#include <cmath>

#include "infharm/errors.hpp"

namespace infharm::expr {

Quotient::Quotient(Expr core) : core_(std::move(core)) {}

Quotient::Quotient(Expr core, std::vector<Factor> factors) : core_(std::move(core)), factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.base.nvars() != core_.nvars()) throw DimensionError("quotient factor dimension mismatch");
  }
  normalize();
}

void Quotient::normalize() {
  if (core_.is_zero()) {
    factors_.clear();
    return;
  }
  std::vector<Factor> kept;
  kept.reserve(factors_.size());
  for (auto& f : factors_) {
    if (f.power == 0) continue;
    if (f.base.is_zero()) {
      if (f.power < 0) throw ValidationError("quotient denominator vanishes identically");
      core_ = Expr(core_.nvars());
      factors_.clear();
      return;
    }
    if (f.base.is_constant()) {
      core_ *= pow(f.base.constant_term(), f.power);
      continue;
    }
    const Rational lead = f.base.terms().begin()->second;
    if (!lead.is_one()) {
      f.base *= Rational(1) / lead;
      core_ *= pow(lead, f.power);
    }
    kept.push_back(std::move(f));
  }
  // Cancel bases that divide the core exactly.
  if (core_.is_polynomial()) {
    for (auto& f : kept) {
      while (f.power < 0 && f.base.is_polynomial()) {
        auto q = divide_exact(core_, f.base);
        if (!q) break;
        core_ = std::move(*q);
        f.power += 1;
      }
    }
  }
  // A core that is itself (a multiple of) one of the bases folds into that base.
  if (!core_.is_constant()) {
    const Rational lead = core_.terms().begin()->second;
    const Expr monic = core_ * (Rational(1) / lead);
    for (auto& f : kept) {
      if (f.base == monic) {
        f.power += 1;
        core_ = Expr::constant(core_.nvars(), lead);
        break;
      }
    }
  }
  std::sort(kept.begin(), kept.end(), [](const Factor& a, const Factor& b) { return compare(a.base, b.base) < 0; });
  factors_.clear();
  for (auto& f : kept) {
    if (f.power == 0) continue;
    if (!factors_.empty() && factors_.back().base == f.base) {
      factors_.back().power += f.power;
      if (factors_.back().power == 0) factors_.pop_back();
    } else {
      factors_.push_back(std::move(f));
    }
  }
}

bool Quotient::is_polynomial_form() const noexcept {
  return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.power > 0; });
}

Expr Quotient::numerator() const {
  Expr out = core_;
  for (const auto& f : factors_) {
    if (f.power > 0) out = out * pow(f.base, static_cast<unsigned>(f.power));
  }
  return out;
}

Expr Quotient::denominator() const {
  Expr out = Expr::constant(core_.nvars(), 1);
  for (const auto& f : factors_) {
    if (f.power < 0) out = out * pow(f.base, static_cast<unsigned>(-f.power));
  }
  return out;
}

std::optional<Expr> Quotient::as_expr() const {
  if (!is_polynomial_form()) return std::nullopt;
  return numerator();
}

Quotient Quotient::reciprocal() const {
  if (core_.is_zero()) throw ValidationError("reciprocal of zero quotient");
  std::vector<Factor> inv;
  inv.reserve(factors_.size() + 1);
  for (const auto& f : factors_) inv.push_back({f.base, -f.power});
  if (core_.is_constant()) {
    return Quotient(Expr::constant(core_.nvars(), Rational(1) / core_.constant_term()), std::move(inv));
  }
  inv.push_back({core_, -1});
  return Quotient(Expr::constant(core_.nvars(), 1), std::move(inv));
}

Quotient& Quotient::operator+=(const Quotient& o) {
  if (o.is_zero()) {
    if (core_.nvars() != o.nvars()) throw DimensionError("quotient dimension mismatch");
    return *this;
  }
  if (is_zero()) {
    if (core_.nvars() != o.nvars()) throw DimensionError("quotient dimension mismatch");
    *this = o;
    return *this;
  }
  Expr a = core_;
  Expr b = o.core_;
  std::vector<Factor> common;
  std::size_t i = 0;
  std::size_t j = 0;
  auto lift = [](Expr& core, const Expr& base, int power) {
    if (power > 0) core = core * pow(base, static_cast<unsigned>(power));
  };
  while (i < factors_.size() || j < o.factors_.size()) {
    int c = 0;
    if (i == factors_.size()) {
      c = 1;
    } else if (j == o.factors_.size()) {
      c = -1;
    } else {
      c = compare(factors_[i].base, o.factors_[j].base);
    }
    const Expr& base = c <= 0 ? factors_[i].base : o.factors_[j].base;
    const int pa = c <= 0 ? factors_[i].power : 0;
    const int pb = c >= 0 ? o.factors_[j].power : 0;
    const int low = std::min(pa, pb);
    lift(a, base, pa - low);
    lift(b, base, pb - low);
    if (low != 0) common.push_back({base, low});
    if (c <= 0) ++i;
    if (c >= 0) ++j;
  }
  core_ = a + b;
  factors_ = std::move(common);
  normalize();
  return *this;
}

Quotient& Quotient::operator-=(const Quotient& o) { return *this += o * Rational(-1); }

Quotient& Quotient::operator*=(const Quotient& o) {
  core_ = core_ * o.core_;
  factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end());
  normalize();
  return *this;
}

Quotient& Quotient::operator*=(const Rational& s) {
  core_ *= s;
  if (core_.is_zero()) factors_.clear();
  return *this;
}

Quotient pow(const Quotient& base, int exponent) {
  if (exponent < 0) return pow(base.reciprocal(), -exponent);
  std::vector<Quotient::Factor> factors;
  for (const auto& f : base.factors()) factors.push_back({f.base, f.power * exponent});
  return Quotient(pow(base.core(), static_cast<unsigned>(exponent)), std::move(factors));
}

Quotient factor_core(const Quotient& q) {
  if (q.core().is_constant() || !q.core().is_polynomial()) return q;
  std::vector<Quotient::Factor> factors = q.factors();
  factors.push_back({q.core(), 1});
  return Quotient(Expr::constant(q.nvars(), 1), std::move(factors));
}

Quotient partial_derivative(const Quotient& q, std::size_t index) {
  Quotient out(partial_derivative(q.core(), index), q.factors());
  for (std::size_t k = 0; k < q.factors().size(); ++k) {
    const auto& f = q.factors()[k];
    std::vector<Quotient::Factor> lowered = q.factors();
    lowered[k].power -= 1;
    Expr piece = q.core() * partial_derivative(f.base, index) * Rational(f.power);
    out += Quotient(std::move(piece), std::move(lowered));
  }
  return out;
}

Quotient substitute(const Quotient& q, std::span<const Expr> images) {
  std::vector<Quotient::Factor> factors;
  factors.reserve(q.factors().size());
  for (const auto& f : q.factors()) {
    Expr base = substitute(f.base, images);
    if (base.is_zero() && f.power < 0) {
      throw ValidationError("substitution makes a denominator vanish identically");
    }
    factors.push_back({std::move(base), f.power});
  }
  return Quotient(substitute(q.core(), images), std::move(factors));
}

double evaluate(const Quotient& q, std::span<const double> point) {
  double v = evaluate(q.core(), point);
  for (const auto& f : q.factors()) v *= std::pow(evaluate(f.base, point), static_cast<double>(f.power));
  return v;
}

double largest_term_magnitude(const Quotient& q, std::span<const double> point) {
  double v = largest_term_magnitude(q.core(), point);
  for (const auto& f : q.factors()) v *= std::pow(std::fabs(evaluate(f.base, point)), static_cast<double>(f.power));
  return v;
}

}  // namespace infharm::expr
