#ifndef BOXSERIES_NUMERICS_HPP
#define BOXSERIES_NUMERICS_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

namespace boxseries {

/// Exact rational scalar. GMP keeps results of arithmetic in lowest terms.
using Rational = mpq_class;

/// Parses "7", "-3/4" or "0.125" exactly and canonicalizes.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);

/// Number of mantissa bits that hold `digits` decimal digits.
long digits_to_bits(int digits);

/// Working precision contract.
///
/// `target_digits` is what the caller wants to be correct in the printed
/// result. `working_digits` is what arithmetic is carried out at; it never
/// drops below target + guard. Cancellation observed while summing a series
/// is added on top through escalate().
struct PrecisionContext {
  int target_digits = 0;
  int working_digits = 0;
  int guard_digits = 10;

  /// Working digits the guard policy demands for a given cancellation.
  [[nodiscard]] int required_working(int cancellation_digits) const {
    return target_digits + cancellation_digits + guard_digits;
  }
  [[nodiscard]] long working_bits() const { return digits_to_bits(working_digits); }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;
};

PrecisionContext make_context(int target_digits);

/// Returns a context able to absorb `observed_cancellation_digits` of
/// cancellation. Never lowers the working precision.
PrecisionContext escalate(const PrecisionContext& ctx, int observed_cancellation_digits);

/// Arbitrary precision binary float with per-value precision.
///
/// Binary operators produce a result at the larger operand precision.
/// Compound assignment keeps the precision of the left-hand side.
class BigReal {
 public:
  BigReal() : BigReal(0L, 64) {}
  BigReal(long value, long bits);
  BigReal(const Rational& value, long bits);
  BigReal(std::string_view decimal, long bits);
  template <std::floating_point F>
  BigReal(F, long) = delete;  // use from_double

  static BigReal from_double(double value, long bits);

  static BigReal from_digits(long value, int digits) { return {value, digits_to_bits(digits)}; }
  static BigReal from_digits(const Rational& value, int digits) {
    return {value, digits_to_bits(digits)};
  }
  static BigReal from_digits(std::string_view decimal, int digits) {
    return {decimal, digits_to_bits(digits)};
  }
  static BigReal pi(long bits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  [[nodiscard]] long bits() const { return static_cast<long>(mpfr_get_prec(value_)); }
  /// Same value rounded to a new precision (exact when widening).
  [[nodiscard]] BigReal with_bits(long bits) const;

  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// log10 |x| as a double; -inf for zero. Safe for exponents beyond double range.
  [[nodiscard]] double log10_abs() const;

  /// Decimal rendering with `significant_digits` digits, round-half-even.
  /// Plain notation for |x| in [1e-6, 1e9), otherwise d.ddde+XX.
  [[nodiscard]] std::string to_decimal(int significant_digits) const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a);

  friend BigReal abs(const BigReal& x);
  friend BigReal sqrt(const BigReal& x);
  friend BigReal pow(const BigReal& x, long n);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

  [[nodiscard]] mpfr_srcptr raw() const { return value_; }
  [[nodiscard]] mpfr_ptr raw() { return value_; }

 private:
  explicit BigReal(long bits);
  mpfr_t value_;
};

BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

/// Formats a decimal mantissa string and decimal exponent the way
/// BigReal::to_decimal does. `digits` holds only [0-9]; the value is
/// 0.digits x 10^exponent.
std::string format_decimal(bool negative, std::string_view digits, long exponent);

}  // namespace boxseries

#endif  // BOXSERIES_NUMERICS_HPP
