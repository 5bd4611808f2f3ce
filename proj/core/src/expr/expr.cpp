#include "infharm/expr/expr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "infharm/errors.hpp"

namespace infharm::expr {

namespace {

int compare_desc(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  // Larger leading powers come first.
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

void check_same_nvars(const Expr& a, const Expr& b) {
  if (a.nvars() != b.nvars()) {
    throw DimensionError("expression dimension mismatch: " + std::to_string(a.nvars()) + " vs " +
                         std::to_string(b.nvars()));
  }
}

void accumulate(Expr::TermMap& terms, Monomial&& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(std::move(m), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

// Inserts c*m after reducing it to canonical form: drops exp(0) and rewrites
// sin^k (k >= 2) through sin^2 = 1 - cos^2.
void accumulate_reduced(Expr::TermMap& terms, Monomial m, const Rational& c) {
  if (c.is_zero()) return;
  if (m.exp && m.exp->is_zero()) m.exp.reset();
  for (std::size_t i = 0; i < m.sin.size(); ++i) {
    if (m.sin[i] >= 2) {
      m.sin[i] -= 2;
      Monomial with_cos = m;
      with_cos.cos[i] += 2;
      accumulate_reduced(terms, std::move(m), c);
      accumulate_reduced(terms, std::move(with_cos), -c);
      return;
    }
  }
  accumulate(terms, std::move(m), c);
}

Monomial multiply_raw(const Monomial& a, const Monomial& b) {
  Monomial m(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    m.coord[i] = a.coord[i] + b.coord[i];
    m.cos[i] = a.cos[i] + b.cos[i];
    m.sin[i] = a.sin[i] + b.sin[i];
  }
  if (a.exp && b.exp) {
    Expr sum = *a.exp + *b.exp;
    if (!sum.is_zero()) m.exp = std::make_shared<const Expr>(std::move(sum));
  } else if (a.exp) {
    m.exp = a.exp;
  } else if (b.exp) {
    m.exp = b.exp;
  }
  return m;
}

double monomial_value(const Monomial& m, std::span<const double> point) {
  double v = 1.0;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m.coord[i] != 0) v *= std::pow(point[i], static_cast<double>(m.coord[i]));
    if (m.cos[i] != 0) v *= std::pow(std::cos(point[i]), static_cast<double>(m.cos[i]));
    if (m.sin[i] != 0) v *= std::pow(std::sin(point[i]), static_cast<double>(m.sin[i]));
  }
  if (m.exp) v *= std::exp(evaluate(*m.exp, point));
  return v;
}

void check_point(const Expr& e, std::size_t size) {
  if (size != e.nvars()) {
    throw DimensionError("evaluation point has " + std::to_string(size) + " coordinates, expected " +
                         std::to_string(e.nvars()));
  }
}

}  // namespace

std::uint32_t Monomial::degree() const noexcept {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < coord.size(); ++i) d += coord[i] + cos[i] + sin[i];
  return d;
}

bool Monomial::is_unit() const noexcept { return degree() == 0 && !exp; }

bool Monomial::is_polynomial() const noexcept { return !exp && !has_trig(); }

bool Monomial::has_trig() const noexcept {
  for (std::size_t i = 0; i < cos.size(); ++i) {
    if (cos[i] != 0 || sin[i] != 0) return true;
  }
  return false;
}

int compare(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  if (int c = compare_desc(a.coord, b.coord); c != 0) return c;
  if (a.exp.get() != b.exp.get()) {
    if (!a.exp) return -1;
    if (!b.exp) return 1;
    if (int c = compare(*a.exp, *b.exp); c != 0) return c;
  }
  if (int c = compare_desc(a.cos, b.cos); c != 0) return c;
  return compare_desc(a.sin, b.sin);
}

int compare(const Expr& a, const Expr& b) {
  if (a.nvars() != b.nvars()) return a.nvars() < b.nvars() ? -1 : 1;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (int c = compare(ia->first, ib->first); c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms().end()) return 1;
  if (ib != b.terms().end()) return -1;
  return 0;
}

Expr Expr::constant(std::size_t nvars, const Rational& value) {
  Expr e(nvars);
  if (!value.is_zero()) e.terms_.emplace(Monomial(nvars), value);
  return e;
}

Expr Expr::coordinate(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("coordinate index " + std::to_string(index) + " out of range");
  Monomial m(nvars);
  m.coord[index] = 1;
  Expr e(nvars);
  e.terms_.emplace(std::move(m), Rational(1));
  return e;
}

Expr Expr::exp(const Expr& exponent) {
  if (!exponent.is_polynomial()) {
    throw UnsupportedExpression("exponent of exp() must be a polynomial in the coordinates");
  }
  const std::size_t n = exponent.nvars();
  if (exponent.is_zero()) return constant(n, 1);
  Monomial m(n);
  m.exp = std::make_shared<const Expr>(exponent);
  Expr e(n);
  e.terms_.emplace(std::move(m), Rational(1));
  return e;
}

Expr Expr::cos(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("cos: coordinate index out of range");
  Monomial m(nvars);
  m.cos[index] = 1;
  Expr e(nvars);
  e.terms_.emplace(std::move(m), Rational(1));
  return e;
}

Expr Expr::sin(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("sin: coordinate index out of range");
  Monomial m(nvars);
  m.sin[index] = 1;
  Expr e(nvars);
  e.terms_.emplace(std::move(m), Rational(1));
  return e;
}

Expr Expr::from_terms(std::size_t nvars, std::vector<std::pair<Monomial, Rational>> terms) {
  Expr e(nvars);
  for (auto& [m, c] : terms) {
    if (m.nvars() != nvars) throw DimensionError("from_terms: monomial dimension mismatch");
    if (m.exp && !m.exp->is_polynomial()) throw UnsupportedExpression("exp exponent must be polynomial");
    accumulate_reduced(e.terms_, std::move(m), c);
  }
  return e;
}

bool Expr::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational Expr::constant_term() const {
  if (terms_.empty()) return Rational(0);
  const auto& [m, c] = *terms_.begin();
  return m.is_unit() ? c : Rational(0);
}

bool Expr::is_polynomial() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_polynomial(); });
}

std::uint32_t Expr::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::optional<std::size_t> Expr::as_coordinate() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (!c.is_one() || !m.is_polynomial() || m.degree() != 1) return std::nullopt;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (m.coord[i] == 1) return i;
  }
  return std::nullopt;
}

Expr& Expr::operator+=(const Expr& o) {
  check_same_nvars(*this, o);
  if (&o == this) return *this *= Rational(2);
  for (const auto& [m, c] : o.terms_) accumulate(terms_, Monomial(m), c);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  check_same_nvars(*this, o);
  if (&o == this) return *this *= Rational(0);
  for (const auto& [m, c] : o.terms_) accumulate(terms_, Monomial(m), -c);
  return *this;
}

Expr& Expr::operator*=(const Expr& o) {
  *this = mul(*this, o);
  return *this;
}

Expr& Expr::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }

Expr operator-(const Expr& a) { return neg(a); }

Expr add(const Expr& a, const Expr& b) { return a + b; }

Expr neg(const Expr& a) {
  Expr out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Expr mul(const Expr& a, const Expr& b) {
  check_same_nvars(a, b);
  Expr out(a.nvars());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      accumulate_reduced(out.terms_, multiply_raw(ma, mb), ca * cb);
    }
  }
  return out;
}

Expr pow(const Expr& base, unsigned exponent) {
  Expr result = Expr::constant(base.nvars(), 1);
  Expr square = base;
  while (exponent != 0) {
    if ((exponent & 1U) != 0) result = mul(result, square);
    exponent >>= 1U;
    if (exponent != 0) square = mul(square, square);
  }
  return result;
}

namespace {

// Leading term under graded lexicographic order: highest degree, then the
// largest leading powers, which the map stores first within a degree.
Expr::TermMap::const_iterator leading_term(const Expr::TermMap& terms) {
  const std::uint32_t top = terms.rbegin()->first.degree();
  auto it = std::prev(terms.end());
  while (it != terms.begin() && std::prev(it)->first.degree() == top) --it;
  return it;
}

}  // namespace

std::optional<Expr> divide_exact(const Expr& num, const Expr& den) {
  check_same_nvars(num, den);
  if (den.is_zero() || !num.is_polynomial() || !den.is_polynomial()) return std::nullopt;
  const std::size_t n = num.nvars();
  if (num.is_zero()) return Expr(n);
  const auto lead = leading_term(den.terms());
  const Monomial& lm = lead->first;
  if (num.degree() < den.degree()) return std::nullopt;
  Expr quotient(n);
  Expr rest = num;
  while (!rest.is_zero()) {
    const auto top = leading_term(rest.terms());
    Monomial t(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (top->first.coord[i] < lm.coord[i]) return std::nullopt;
      t.coord[i] = top->first.coord[i] - lm.coord[i];
    }
    const Rational c = top->second / lead->second;
    Expr step(n);
    step.terms_.emplace(std::move(t), c);
    quotient += step;
    rest -= step * den;
  }
  return quotient;
}

Expr canonicalize(const Expr& e) {
  Expr out(e.nvars());
  for (const auto& [m, c] : e.terms_) accumulate_reduced(out.terms_, Monomial(m), c);
  return out;
}

Expr partial_derivative(const Expr& e, std::size_t index) {
  if (index >= e.nvars()) {
    throw DimensionError("partial derivative index " + std::to_string(index) + " out of range");
  }
  Expr out(e.nvars());
  for (const auto& [m, c] : e.terms_) {
    if (m.coord[index] != 0) {
      Monomial d = m;
      d.coord[index] -= 1;
      accumulate_reduced(out.terms_, std::move(d), c * Rational(static_cast<long>(m.coord[index])));
    }
    if (m.cos[index] != 0) {
      // d/dx cos^k = -k cos^(k-1) sin
      Monomial d = m;
      d.cos[index] -= 1;
      d.sin[index] += 1;
      accumulate_reduced(out.terms_, std::move(d), -c * Rational(static_cast<long>(m.cos[index])));
    }
    if (m.sin[index] != 0) {
      Monomial d = m;
      d.sin[index] -= 1;
      d.cos[index] += 1;
      accumulate_reduced(out.terms_, std::move(d), c * Rational(static_cast<long>(m.sin[index])));
    }
    if (m.exp) {
      const Expr dk = partial_derivative(*m.exp, index);
      for (const auto& [mk, ck] : dk.terms_) {
        accumulate_reduced(out.terms_, multiply_raw(m, mk), c * ck);
      }
    }
  }
  return out;
}

Expr substitute(const Expr& e, std::span<const Expr> images) {
  if (images.size() != e.nvars()) {
    throw DimensionError("substitute: expected " + std::to_string(e.nvars()) + " images, got " +
                         std::to_string(images.size()));
  }
  if (images.empty()) {
    throw DimensionError("substitute: cannot infer target dimension from zero images");
  }
  const std::size_t target = images.front().nvars();
  for (const auto& img : images) {
    if (img.nvars() != target) throw DimensionError("substitute: images disagree on dimension");
  }

  // powers[i][k] = images[i]^k, filled on demand.
  std::vector<std::vector<Expr>> powers(images.size());
  auto power_of = [&](std::size_t i, std::uint32_t k) -> const Expr& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Expr::constant(target, 1));
    while (cache.size() <= k) cache.push_back(mul(cache.back(), images[i]));
    return cache[k];
  };

  // Trig atoms only survive substitution by +-x_j or 0.
  auto trig_image = [&](std::size_t i, bool is_cos) -> Expr {
    const Expr& img = images[i];
    if (img.is_zero()) return Expr::constant(target, is_cos ? 1 : 0);
    if (auto j = img.as_coordinate()) return is_cos ? Expr::cos(target, *j) : Expr::sin(target, *j);
    if (auto j = neg(img).as_coordinate()) {
      return is_cos ? Expr::cos(target, *j) : neg(Expr::sin(target, *j));
    }
    throw UnsupportedExpression("cos/sin accept only single-coordinate arguments");
  };

  Expr out(target);
  for (const auto& [m, c] : e.terms_) {
    Expr term = Expr::constant(target, c);
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m.coord[i] != 0) term = mul(term, power_of(i, m.coord[i]));
      if (m.cos[i] != 0) term = mul(term, pow(trig_image(i, true), m.cos[i]));
      if (m.sin[i] != 0) term = mul(term, pow(trig_image(i, false), m.sin[i]));
      if (term.is_zero()) break;
    }
    if (m.exp && !term.is_zero()) {
      Expr key = substitute(*m.exp, images);
      if (!key.is_polynomial()) {
        throw UnsupportedExpression("substitution places a non-polynomial expression inside exp()");
      }
      term = mul(term, Expr::exp(key));
    }
    out += term;
  }
  return out;
}

double evaluate(const Expr& e, std::span<const double> point) {
  check_point(e, point.size());
  double sum = 0.0;
  for (const auto& [m, c] : e.terms()) sum += c.to_double() * monomial_value(m, point);
  return sum;
}

double evaluate(const Expr& e, std::span<const Rational> point) {
  std::vector<double> p(point.size());
  std::transform(point.begin(), point.end(), p.begin(), [](const Rational& r) { return r.to_double(); });
  return evaluate(e, p);
}

std::optional<Rational> evaluate_exact(const Expr& e, std::span<const Rational> point) {
  check_point(e, point.size());
  if (!e.is_polynomial()) return std::nullopt;
  Rational sum(0);
  for (const auto& [m, c] : e.terms()) {
    Rational v = c;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m.coord[i] != 0) v *= pow(point[i], static_cast<int>(m.coord[i]));
    }
    sum += v;
  }
  return sum;
}

double largest_term_magnitude(const Expr& e, std::span<const double> point) {
  check_point(e, point.size());
  double best = 0.0;
  for (const auto& [m, c] : e.terms()) best = std::max(best, std::fabs(c.to_double() * monomial_value(m, point)));
  return best;
}

std::vector<Expr> coordinates(std::size_t nvars) {
  std::vector<Expr> out;
  out.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) out.push_back(Expr::coordinate(nvars, i));
  return out;
}

}  // namespace infharm::expr
