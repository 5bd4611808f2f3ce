#include "infharm/expr/rational.hpp"

#include <cctype>
#include <string>

#include "infharm/errors.hpp"

namespace infharm::expr {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw ParseError("", "malformed rational '" + std::string(whole) + "'");
  mpz_class z;
  z.set_str(std::string(digits), 10);
  if (!s.empty() && s.front() == '-') z = -z;
  return z;
}

}  // namespace

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ValidationError("division by zero rational");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("", "empty rational");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(text.substr(0, slash), text);
    const mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(num, den));
  }

  // Finite decimal with optional exponent, converted exactly.
  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const mpz_class ez = parse_integer(text.substr(e + 1), text);
    if (!ez.fits_slong_p() || ::abs(ez) > 4096) throw ParseError("", "exponent out of range in '" + std::string(text) + "'");
    exponent = ez.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const auto int_part = mantissa.substr(0, dot);
    const auto frac_part = mantissa.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw ParseError("", "malformed rational '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(mantissa)) throw ParseError("", "malformed rational '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  mpz_class num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? Rational(mpq_class(num * scale)) : Rational(mpq_class(num, scale));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return pow(Rational(1) / base, -exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(mpq_class(num, den));
}

}  // namespace infharm::expr
