#include "packdens/scalar.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <stdexcept>

namespace packdens {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Scalar parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6)
      throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s))
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  mpz_class numerator(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Scalar value = exponent >= 0 ? Scalar(numerator * scale) : Scalar(numerator, scale);
  value.canonicalize();
  return negative ? Scalar(-value) : value;
}

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  mpz_class value(std::string(s), 10);
  return negative ? mpz_class(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)), s);
    mpz_class den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    Scalar value(num, den);
    value.canonicalize();
    return value;
  }
  return parse_decimal(s);
}

std::string to_string(const Scalar& value) {
  Scalar canonical = value;
  canonical.canonicalize();
  return canonical.get_str(10);
}

long double to_long_double(const Scalar& value) {
  if (value == 0) return 0.0L;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  mpz_class abs_num = abs(num);
  // Shift so the integer quotient carries exactly 64 significant bits.
  long shift = 64 - (static_cast<long>(mpz_sizeinbase(abs_num.get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
  mpz_class scaled_num = abs_num;
  mpz_class scaled_den = den;
  if (shift >= 0)
    scaled_num <<= static_cast<mp_bitcnt_t>(shift);
  else
    scaled_den <<= static_cast<mp_bitcnt_t>(-shift);
  mpz_class quotient = scaled_num / scaled_den;
  while (mpz_sizeinbase(quotient.get_mpz_t(), 2) > 64) {
    quotient >>= 1;
    --shift;
  }
  static_assert(sizeof(unsigned long) * CHAR_BIT == 64);
  long double mantissa = static_cast<long double>(mpz_get_ui(quotient.get_mpz_t()));
  long double result = std::ldexp(mantissa, static_cast<int>(-shift));
  return num < 0 ? -result : result;
}

}  // namespace packdens
