#include "hslope/exact.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "hslope/errors.hpp"

namespace hslope {

using boost::multiprecision::mpz_int;

namespace {

// mpz_int's string constructor reads a leading 0 as an octal prefix.
mpz_int decimal_digits_value(const std::string& digits) {
  std::size_t nz = digits.find_first_not_of('0');
  return nz == std::string::npos ? mpz_int(0) : mpz_int(digits.substr(nz));
}

mpz_int parse_integer(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw InputError("invalid integer: '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw InputError("invalid integer: '" + s + "'");
  }
  mpz_int v = decimal_digits_value(s.substr(i));
  return s[0] == '-' ? mpz_int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_int num = parse_integer(s.substr(0, slash));
    mpz_int den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator: '" + s + "'");
    return Rational(num, den);
  }
  auto fail = [&]() -> Rational { throw InputError("invalid decimal string: '" + s + "'"); };
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) return fail();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    std::string ed;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
    if (ed.empty() || ed.size() > 6) return fail();
    long e = std::stol(ed);
    scale += eneg ? -e : e;
  }
  if (i != s.size()) return fail();
  mpz_int mantissa = decimal_digits_value(digits);
  mpz_int ten_pow = boost::multiprecision::pow(mpz_int(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  Rational q = scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  return negative ? Rational(-q) : q;
}

Rational to_rational(const Real& x) {
  if (!x.is_finite()) throw NumericError("cannot convert a non-finite value to a rational");
  if (x.is_zero()) return Rational(0);
  mpz_int m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.backend().data(), x.get());
  if (e >= 0) {
    mpz_int scaled = m << static_cast<unsigned>(e);
    return Rational(scaled);
  }
  mpz_int den = mpz_int(1) << static_cast<unsigned>(-e);
  return Rational(m, den);
}

std::string to_exact_string(const Rational& q) {
  mpz_int num = numerator(q);
  mpz_int den = denominator(q);
  if (den == 1) return num.str();
  unsigned twos = 0, fives = 0;
  mpz_int rest = den;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();
  unsigned places = std::max(twos, fives);
  mpz_int scaled = num * boost::multiprecision::pow(mpz_int(10), places) / den;
  bool negative = scaled < 0;
  std::string digits = (negative ? mpz_int(-scaled) : scaled).str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return (negative ? "-" : "") + digits;
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.get(), q.backend().data(), MPFR_RNDN);
  return r;
}

}  // namespace hslope
