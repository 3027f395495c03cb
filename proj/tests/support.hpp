#ifndef BOXSERIES_TESTS_SUPPORT_HPP
#define BOXSERIES_TESTS_SUPPORT_HPP

#include <algorithm>
#include <string>

#include "boxseries/numerics.hpp"

namespace boxseries::testing {

inline std::string strip_spaces(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

/// Printed tables end either truncated or rounded at the last digit shown:
/// accept |value| in [|printed| - ulp/2, |printed| + ulp).
inline bool matches_printed(const BigReal& value, const std::string& text) {
  const std::string printed = strip_spaces(text);
  const auto point = printed.find('.');
  const long decimals = point == std::string::npos ? 0 : static_cast<long>(printed.size() - point - 1);
  const long bits = std::max(value.bits(), digits_to_bits(static_cast<int>(printed.size()) + 10));
  const Rational exact = parse_rational(printed);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimals));
  const Rational ulp(1, scale);
  if ((exact < 0) != (value.sign() < 0) && exact != 0) return false;
  const BigReal mag = abs(value.with_bits(bits));
  const Rational p = abs(exact);
  return mag >= BigReal(Rational(p - ulp / 2), bits) && mag < BigReal(Rational(p + ulp), bits);
}

/// Significant digits in a printed number (leading zeros excluded).
inline int printed_digits(const std::string& text) {
  int n = 0;
  bool started = false;
  for (char c : strip_spaces(text)) {
    if (c < '0' || c > '9') continue;
    if (c != '0') started = true;
    if (started) ++n;
  }
  return n;
}

}  // namespace boxseries::testing

#endif  // BOXSERIES_TESTS_SUPPORT_HPP
