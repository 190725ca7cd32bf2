#include "lotalloc/numeric.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "lotalloc/errors.hpp"

namespace lotalloc {

Integer factorial(int k) {
  Integer result = 1;
  for (int i = 2; i <= k; ++i) result *= i;
  return result;
}

Integer power(Integer base, int exponent) {
  Integer result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

namespace {

Integer parse_integer(const std::string& text) {
  if (text.empty()) throw ParseError("empty number");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw ParseError("malformed number '" + text + "'");
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw ParseError("malformed number '" + text + "'");
    }
    value = value * 10 + (text[pos] - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(parse_integer(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) throw ParseError("malformed number '" + text + "'");
    Integer scale = power(10, static_cast<int>(frac.size()));
    Integer int_part = parse_integer(whole);
    Integer frac_part = parse_integer(frac);
    if (frac[0] == '-' || frac[0] == '+') throw ParseError("malformed number '" + text + "'");
    bool negative = !whole.empty() && whole[0] == '-';
    Integer num = int_part * scale + (negative ? Integer(-frac_part) : frac_part);
    return Rational(num, scale);
  }
  return Rational(parse_integer(text));
}

std::string to_decimal(const Rational& value, int decimals) {
  Integer scale = power(10, decimals);
  // floor(value * scale + 1/2)
  Integer num = value.numerator() * scale * 2 + value.denominator();
  Integer den = value.denominator() * 2;
  Integer q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  bool negative = q < 0;
  Integer magnitude = negative ? Integer(-q) : q;
  std::string digits = magnitude.str();
  if (static_cast<int>(digits.size()) <= decimals) {
    digits.insert(0, static_cast<std::size_t>(decimals + 1 - static_cast<int>(digits.size())), '0');
  }
  std::string out = negative ? "-" : "";
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
  if (decimals > 0) {
    out += '.';
    out += digits.substr(digits.size() - static_cast<std::size_t>(decimals));
  }
  return out;
}

int table_decimals(const Rational& value) {
  Integer whole = boost::rational_cast<Integer>(value);
  if (whole < 0) whole = -whole;
  int int_digits = static_cast<int>(whole.str().size());
  int decimals = 5 - int_digits;
  if (decimals > 3) decimals = 3;
  if (decimals < 0) decimals = 0;
  return decimals;
}

SmallRational to_small(const Rational& value) {
  using Safe = boost::safe_numerics::safe<std::int64_t>;
  const Integer limit = std::numeric_limits<std::int64_t>::max();
  if (value.numerator() > limit || value.numerator() < -limit || value.denominator() > limit) {
    throw std::overflow_error("value does not fit a 64-bit rational");
  }
  return SmallRational(Safe(value.numerator().convert_to<std::int64_t>()),
                       Safe(value.denominator().convert_to<std::int64_t>()));
}

Rational from_small(const SmallRational& value) {
  return Rational(Integer(static_cast<std::int64_t>(value.numerator())),
                  Integer(static_cast<std::int64_t>(value.denominator())));
}

double to_double(const Rational& value) {
  return value.numerator().convert_to<double>() / value.denominator().convert_to<double>();
}

}  // namespace lotalloc
