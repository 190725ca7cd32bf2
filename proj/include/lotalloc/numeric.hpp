#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <boost/safe_numerics/safe_integer.hpp>

namespace lotalloc {

// Overflow raises std::overflow_error instead of wrapping.
using Integer = boost::multiprecision::checked_int128_t;
using Rational = boost::rational<Integer>;
// Per-profile hot paths; overflow throws std::system_error.
using SmallRational = boost::rational<boost::safe_numerics::safe<std::int64_t>>;

SmallRational to_small(const Rational& value);
Rational from_small(const SmallRational& value);

Integer factorial(int k);
Integer power(Integer base, int exponent);

/// Parses "3", "-2", "7/4" or a plain decimal such as "2.5" into an exact value.
Rational parse_rational(const std::string& text);

/// Rounds half-up (toward +inf on ties) to `decimals` places and prints with
/// exactly that many fractional digits.
std::string to_decimal(const Rational& value, int decimals);

/// Decimal places used by the comparison tables: five significant digits,
/// never more than three decimals (6.000, 12.292, 114.27, 1731.0).
int table_decimals(const Rational& value);

double to_double(const Rational& value);

}  // namespace lotalloc

// boost::rational's mixed equality recurses forever under C++20 rewritten
// comparisons when the integer type is not a builtin; route it explicitly.
namespace boost {
inline bool operator==(const lotalloc::Rational& a, long long b) { return a == lotalloc::Rational(b); }
inline bool operator==(const lotalloc::Rational& a, int b) { return a == lotalloc::Rational(b); }
}  // namespace boost
