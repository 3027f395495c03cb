#include "boxseries/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace boxseries {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

mpz_class pow10(unsigned long n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
  if (text.empty()) fail();

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    q = Rational(mpz_class(std::string(num), 10), d);
    q.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = std::string(body.substr(e + 1));
      std::size_t used = 0;
      try {
        exponent = std::stol(exp_text, &used);
      } catch (const std::exception&) {
        fail();
      }
      if (used != exp_text.size()) fail();
      body = body.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
      auto ip = body.substr(0, dot);
      auto fp = body.substr(dot + 1);
      if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) fail();
      digits = std::string(ip) + std::string(fp);
      frac_len = static_cast<long>(fp.size());
    } else {
      if (!all_digits(body)) fail();
      digits = std::string(body);
    }
    mpz_class mantissa(digits, 10);
    long shift = exponent - frac_len;
    if (shift >= 0) {
      q = Rational(mantissa * pow10(static_cast<unsigned long>(shift)));
    } else {
      q = Rational(mantissa, pow10(static_cast<unsigned long>(-shift)));
      q.canonicalize();
    }
  }
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long digits_to_bits(int digits) {
  // log2(10) = 3.3219...; a few extra bits keep the last digit honest.
  return static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 8;
}

PrecisionContext make_context(int target_digits) {
  if (target_digits < 1) {
    throw std::invalid_argument("target_digits must be positive, got " + std::to_string(target_digits));
  }
  PrecisionContext ctx;
  ctx.target_digits = target_digits;
  ctx.working_digits = ctx.required_working(0);
  return ctx;
}

PrecisionContext escalate(const PrecisionContext& ctx, int observed_cancellation_digits) {
  PrecisionContext out = ctx;
  out.working_digits = std::max(ctx.working_digits, ctx.required_working(std::max(0, observed_cancellation_digits)));
  return out;
}

// --- BigReal ---------------------------------------------------------------

BigReal::BigReal(long bits) { mpfr_init2(value_, std::max<long>(bits, MPFR_PREC_MIN)); }

BigReal::BigReal(long value, long bits) : BigReal(bits) { mpfr_set_si(value_, value, MPFR_RNDN); }

BigReal BigReal::from_double(double value, long bits) {
  BigReal r(bits);
  mpfr_set_d(r.value_, value, MPFR_RNDN);
  return r;
}

BigReal::BigReal(const Rational& value, long bits) : BigReal(bits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal::BigReal(std::string_view decimal, long bits) : BigReal(bits) {
  std::string s(decimal);
  char* end = nullptr;
  mpfr_strtofr(value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size() || !mpfr_number_p(value_)) {
    // delegated constructor already ran, so ~BigReal releases value_
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
}

BigReal BigReal::pi(long bits) {
  BigReal r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

BigReal::BigReal(const BigReal& other) : BigReal(other.bits()) { mpfr_set(value_, other.value_, MPFR_RNDN); }

BigReal::BigReal(BigReal&& other) noexcept : BigReal(MPFR_PREC_MIN) { mpfr_swap(value_, other.value_); }

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::with_bits(long bits) const {
  BigReal r(bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

double BigReal::log10_abs() const {
  if (is_zero()) return -INFINITY;
  long exp2 = 0;
  double mant = mpfr_get_d_2exp(&exp2, value_, MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398119521;
}

std::string format_decimal(bool negative, std::string_view digits, long exponent) {
  // value = 0.d1d2... x 10^exponent, so the leading digit sits at 10^(exponent-1).
  const long n = static_cast<long>(digits.size());
  const long lead = exponent - 1;
  std::string out = negative ? "-" : "";
  if (lead >= -6 && lead < 9) {
    if (exponent <= 0) {
      out += "0.";
      out.append(static_cast<std::size_t>(-exponent), '0');
      out += digits;
    } else if (exponent >= n) {
      out += digits;
      out.append(static_cast<std::size_t>(exponent - n), '0');
      out += ".0";
    } else {
      out += digits.substr(0, static_cast<std::size_t>(exponent));
      out += '.';
      out += digits.substr(static_cast<std::size_t>(exponent));
    }
    return out;
  }
  out += digits.front();
  out += '.';
  if (n > 1) {
    out += digits.substr(1);
  } else {
    out += '0';
  }
  out += 'e';
  out += lead < 0 ? '-' : '+';
  std::string e = std::to_string(lead < 0 ? -lead : lead);
  if (e.size() < 2) e.insert(0, "0");
  return out + e;
}

std::string BigReal::to_decimal(int significant_digits) const {
  if (significant_digits < 1) throw std::invalid_argument("significant_digits must be positive");
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) {
    return significant_digits > 1 ? "0." + std::string(static_cast<std::size_t>(significant_digits - 1), '0') : "0.0";
  }
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(significant_digits), value_, MPFR_RNDN),
      mpfr_free_str);
  std::string_view s(raw.get());
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  return format_decimal(negative, s, static_cast<long>(exp10));
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator-=(const BigReal& rhs) {
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(const BigReal& rhs) {
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(const BigReal& rhs) {
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.bits(), b.bits()));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.bits(), b.bits()));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.bits(), b.bits()));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.bits(), b.bits()));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
BigReal operator*(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
BigReal operator/(const BigReal& a, long b) {
  BigReal r(a.bits());
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}
BigReal operator-(const BigReal& a) {
  BigReal r(a.bits());
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& x) {
  BigReal r(x.bits());
  mpfr_abs(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigReal sqrt(const BigReal& x) {
  BigReal r(x.bits());
  mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r(x.bits());
  mpfr_pow_si(r.value_, x.value_, n, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

}  // namespace boxseries
