#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "boxseries/eigensolver.hpp"
#include "boxseries/recurrence.hpp"
#include "boxseries/series.hpp"

using namespace boxseries;

namespace {

std::vector<Rational> exact_series(const Potential& p, const Rational& e, const Rational& a0, const Rational& a1,
                                   int degree) {
  const auto terms = potential_terms<Rational>(p, [](const Rational& v) { return v; });
  return recurrence_coefficients<Rational>(terms, e, a0, a1, degree);
}

BigReal pi_squared_over(long d, long bits) {
  BigReal pi = BigReal::pi(bits);
  return pi * pi / d;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("quartic recurrence by direct substitution") {
  const auto p = parse_potential("x^2+x^4");
  for (const Rational e : {Rational(1), Rational(-3, 7), Rational(22, 5), Rational(0)}) {
    CAPTURE(e.get_str());
    const auto a = exact_series(p, e, 1, 0, 8);
    CHECK(a[2] == -e / 2);
    CHECK(a[3] == 0);
    CHECK(a[4] == (1 + e * e / 2) / 12);
  }
  const auto a = exact_series(p, 1, 1, 0, 4);
  CHECK(a[2] == Rational(-1, 2));
  CHECK(a[4] == Rational(1, 8));
}

TEST_CASE("Eq. 2 form of the recurrence") {
  // a_l = (g a_{l-2k-2} + mu2 a_{l-4} - E a_{l-2}) / (l (l - 1))
  const Rational mu2(-5, 2);
  const Rational g(3);
  const int k = 3;
  const Rational e(7, 4);
  const auto a = exact_series(anharmonic(mu2, g, k), e, Rational(2, 3), Rational(-1, 5), 60);
  auto at = [&](int l) { return l < 0 ? Rational(0) : a[static_cast<std::size_t>(l)]; };
  for (int l = 2; l <= 60; ++l) {
    CHECK(at(l) == (g * at(l - 2 * k - 2) + mu2 * at(l - 4) - e * at(l - 2)) / (l * (l - 1)));
  }
}

TEST_CASE("free particle series collapses to the cosine") {
  const Rational e(9, 4);
  const auto a = exact_series(Potential{}, e, 1, 0, 30);
  Rational power = 1;
  mpz_class factorial = 1;
  for (int m = 0; 2 * m <= 30; ++m) {
    if (m > 0) {
      power *= -e;
      factorial *= (2 * m - 1) * (2 * m);
    }
    CHECK(a[static_cast<std::size_t>(2 * m)] == power / Rational(factorial));
  }
}

TEST_CASE("parity purity: alternate coefficients vanish exactly") {
  const PrecisionContext ctx = make_context(30);
  const long bits = ctx.working_bits();
  for (const auto& p : {parse_potential("x^2+x^4"), parse_potential("x^2+x^6"), parse_potential("-25x^2+x^4"),
                        parse_potential("x^2+x^12")}) {
    const BigReal e("1.7", bits);
    const auto even = series_coefficients(p, e, BigReal(1L, bits), BigReal(0L, bits), 120, ctx);
    const auto odd = series_coefficients(p, e, BigReal(0L, bits), BigReal(1L, bits), 120, ctx);
    for (std::size_t l = 1; l < even.a.size(); l += 2) CHECK(even.a[l].is_zero());
    for (std::size_t l = 0; l < odd.a.size(); l += 2) CHECK(odd.a[l].is_zero());
    auto nonzero = [](const SeriesSolution& s) {
      return std::count_if(s.a.begin(), s.a.end(), [](const BigReal& v) { return !v.is_zero(); });
    };
    CHECK(even.terms == 120);
    CHECK(nonzero(even) == 120);
    CHECK(nonzero(odd) == 120);
  }
}

TEST_CASE("I counts live terms, seeds included") {
  const PrecisionContext ctx = make_context(20);
  const long bits = ctx.working_bits();
  const auto quartic = parse_potential("x^2+x^4");
  const auto s = series_coefficients(quartic, BigReal(1L, bits), BigReal(1L, bits), BigReal(0L, bits), 25, ctx);
  CHECK(s.terms == 25);
  CHECK(s.a.size() == 49);  // degree 2 (I - 1)
  const auto t = series_coefficients(quartic, BigReal(1L, bits), BigReal(0L, bits), BigReal(1L, bits), 25, ctx);
  CHECK(t.a.size() == 50);  // degree 2 I - 1
  const auto d = series_coefficients(quartic, BigReal(1L, bits), BigReal(1L, bits), BigReal(0L, bits),
                                     Truncation::max_degree(10), ctx);
  CHECK(d.a.size() == 11);
}

TEST_CASE("seed linearity holds exactly") {
  const auto morse = morse_series(400, 1, 30);
  const auto quartic = parse_potential("x^2 + x^4 - 3/7x^3");
  for (const auto& p : {morse, quartic}) {
    const Rational e(197, 10);
    const Rational a0(-5, 3);
    const Rational a1(11, 2);
    const auto f0 = exact_series(p, e, 1, 0, 70);
    const auto f1 = exact_series(p, e, 0, 1, 70);
    const auto mixed = exact_series(p, e, a0, a1, 70);
    for (std::size_t l = 0; l < mixed.size(); ++l) CHECK(mixed[l] == a0 * f0[l] + a1 * f1[l]);
  }
}

TEST_CASE("big-float coefficients agree with the exact recurrence") {
  const PrecisionContext ctx = make_context(40);
  const long bits = ctx.working_bits();
  const auto p = parse_potential("x^2 - 2/3x^3 + x^4");
  const Rational e(13, 8);
  const auto exact = exact_series(p, e, 1, Rational(1, 2), 60);
  const auto big = series_coefficients(p, BigReal(e, bits), BigReal(1L, bits), BigReal(Rational(1, 2), bits),
                                       Truncation::max_degree(60), ctx);
  for (std::size_t l = 0; l < exact.size(); ++l) {
    const BigReal ref(exact[l], bits);
    if (exact[l] == 0) {
      CHECK(big.a[l].is_zero());
    } else {
      CHECK((big.a[l] - ref).log10_abs() - ref.log10_abs() < -45);
    }
  }
}

TEST_CASE("boundary_even and boundary_odd on the free particle") {
  const PrecisionContext ctx = make_context(20);
  const long bits = ctx.working_bits();
  const Potential zero;
  const Rational one(1);

  const auto at_node = boundary_even(zero, pi_squared_over(4, bits), one, 60, ctx);
  CHECK(at_node.value.log10_abs() < -20);
  CHECK(boundary_even(zero, BigReal(0L, bits), one, 60, ctx).value == BigReal(1L, bits));

  const auto odd_node = boundary_odd(zero, pi_squared_over(1, bits), one, 60, ctx);
  CHECK(odd_node.value.log10_abs() < -20);
  CHECK(boundary_odd(zero, BigReal(0L, bits), one, 60, ctx).value == BigReal(1L, bits));
}

TEST_CASE("quartic sign changes at L = 2, I = 100") {
  const PrecisionContext ctx = make_context(20);
  const long bits = ctx.working_bits();
  const auto p = parse_potential("x^2+x^4");
  const Rational two(2);
  auto even = [&](const char* e) { return boundary_even(p, BigReal(e, bits), two, 100, ctx).value.sign(); };
  auto odd = [&](const char* e) { return boundary_odd(p, BigReal(e, bits), two, 100, ctx).value.sign(); };
  CHECK(even("1.39") * even("1.41") < 0);
  CHECK(odd("4.5") * odd("4.7") < 0);
}

TEST_CASE("asymmetric potentials have no parity functionals") {
  const PrecisionContext ctx = make_context(20);
  const auto morse = morse_series(400, 1, 30);
  CHECK_THROWS_AS(boundary_even(morse, BigReal(1L, 80), Rational(2), 50, ctx), std::invalid_argument);
  CHECK_THROWS_AS(boundary_odd(morse, BigReal(1L, 80), Rational(2), 50, ctx), std::invalid_argument);
}

TEST_CASE("symmetric determinant factorizes as -2 f0(L) f1(L)") {
  const PrecisionContext ctx = make_context(30);
  const long bits = ctx.working_bits();
  for (const auto& p : {parse_potential("x^2+x^4"), parse_potential("-5x^2+x^4"), parse_potential("x^2+x^6")}) {
    for (const char* e : {"0.3", "1.2", "4.4", "9.75", "-2.5"}) {
      const BigReal energy(e, bits);
      const Rational width(3);
      const int terms = 400;
      const auto det = boundary_det(p, energy, width, terms, ctx);
      const auto f0 = boundary_even(p, energy, width, terms, ctx);
      const auto f1 = boundary_odd(p, energy, width, terms, ctx);
      const BigReal product = f0.value * f1.value * -2L;
      CAPTURE(e);
      CHECK((det.value - product).log10_abs() - product.log10_abs() < -(ctx.target_digits - 2));
      CHECK(det.cancellation_digits >= 0);
      CHECK(f0.cancellation_digits >= 0);
    }
  }
}

TEST_CASE("determinant zeros of the free particle sit at (n pi / 2)^2") {
  const PrecisionContext ctx = make_context(20);
  const long bits = ctx.working_bits();
  const Potential zero;
  for (long n = 1; n <= 4; ++n) {
    const BigReal root = pi_squared_over(4, bits) * (n * n);
    CHECK(boundary_det(zero, root, Rational(1), 80, ctx).value.log10_abs() < -18);
    const BigReal off = root + BigReal("0.01", bits);
    CHECK(boundary_det(zero, off, Rational(1), 80, ctx).value.log10_abs() > -5);
  }
}

TEST_CASE("Morse determinant changes sign between 19 and 20.5 at L = 2") {
  const PrecisionContext ctx = make_context(20);
  const long bits = ctx.working_bits();
  const auto morse = morse_series(400, 1, 30);
  const BigReal lo("19", bits);
  const BigReal hi("20.5", bits);
  const int terms = auto_truncation(morse, FunctionalKind::determinant, {lo, hi}, Rational(2), ctx);
  PrecisionContext wide = ctx;
  wide.working_digits = 200;
  const auto a = boundary_det(morse, lo, Rational(2), terms, wide);
  const auto b = boundary_det(morse, hi, Rational(2), terms, wide);
  REQUIRE(a.sign_reliable());
  REQUIRE(b.sign_reliable());
  CHECK(a.value.sign() * b.value.sign() < 0);
}

TEST_CASE("truncation stability past the tail estimate") {
  const PrecisionContext ctx = make_context(25);
  const long bits = ctx.working_bits();
  const auto p = parse_potential("x^2+x^4");
  const BigReal e("1.5", bits);
  const Rational width(3);
  const int enough = series_tail_terms(p, false, e, width, 40, 1 << 14);
  const auto a = boundary_even(p, e, width, enough, ctx);
  const auto b = boundary_even(p, e, width, 2 * enough, ctx);
  const BigReal scale = max(BigReal(1L, bits), abs(a.value));
  CHECK((a.value - b.value).log10_abs() - scale.log10_abs() < -ctx.target_digits);
}

TEST_CASE("cancellation audit grows with the box") {
  PrecisionContext ctx = make_context(20);
  ctx.working_digits = 200;
  const long bits = ctx.working_bits();
  const BigReal e(100L, bits);
  int last = -1;
  for (int width : {1, 2, 4}) {
    const int terms = series_tail_terms(Potential{}, false, e, Rational(width), 40, 1 << 14);
    const auto eval = boundary_even(Potential{}, e, Rational(width), terms, ctx);
    CAPTURE(width);
    // cos(10 L) summed from terms near e^(10 L) / sqrt(20 pi L).
    const double kl = 10.0 * width;
    const double expect = (kl - 0.5 * std::log(2.0 * M_PI * kl)) / std::log(10.0) - std::log10(std::abs(std::cos(kl)));
    CHECK(std::abs(eval.cancellation_digits - expect) <= 2.0);
    CHECK(eval.cancellation_digits > last);
    CHECK(eval.max_term_magnitude >= abs(eval.value));
    last = eval.cancellation_digits;
  }
  CHECK(last >= 16);
}

TEST_CASE("wavefunction samples") {
  const PrecisionContext ctx = make_context(20);
  const long bits = ctx.working_bits();

  SUBCASE("free particle ground state is cos(pi x / 2)") {
    const auto samples = wavefunction_samples(Potential{}, pi_squared_over(4, bits), Rational(1), 80,
                                              {BigReal(1L, bits), BigReal(0L, bits)}, 21, ctx);
    REQUIRE(samples.size() == 21);
    CHECK(samples.front().x == BigReal(-1L, bits));
    CHECK(samples.back().x == BigReal(1L, bits));
    for (const auto& s : samples) {
      const double expect = std::cos(M_PI * s.x.to_double() / 2.0);
      CHECK(s.psi.to_double() == doctest::Approx(expect).epsilon(1e-14).scale(1.0));
    }
    CHECK(samples.front().psi.log10_abs() < -19);
    CHECK(samples.back().psi.log10_abs() < -19);
  }

  SUBCASE("node counts follow the oscillation theorem") {
    const auto p = parse_potential("x^2+x^4");
    const auto records = solve_spectrum(p, Rational(3), 3, ctx);
    for (std::size_t n = 0; n < records.size(); ++n) {
      const auto& rec = records[n];
      const auto seed = eigen_seed(p, rec, ctx);
      PrecisionContext c = ctx;
      c.working_digits = std::max(c.working_digits, rec.working_digits);
      const auto samples = wavefunction_samples(p, rec.value, rec.half_width, rec.terms_used, seed, 301, c);
      int nodes = 0;
      int previous = 0;
      for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const int sign = samples[i].psi.sign();
        if (sign == 0) continue;
        if (previous != 0 && sign != previous) ++nodes;
        previous = sign;
      }
      CAPTURE(n);
      CHECK(nodes == static_cast<int>(n));
    }
  }

  SUBCASE("csv layout") {
    const auto samples = wavefunction_samples(Potential{}, BigReal(0L, bits), Rational(1), 10,
                                              {BigReal(0L, bits), BigReal(1L, bits)}, 3, ctx);
    std::ostringstream out;
    write_wavefunction_csv(out, samples, 5);
    CHECK(out.str() == "x,psi\n-1.0000,-1.0000\n0.0000,0.0000\n1.0000,1.0000\n");
  }

  CHECK_THROWS_AS(wavefunction_samples(Potential{}, BigReal(0L, bits), Rational(1), 10,
                                       {BigReal(1L, bits), BigReal(0L, bits)}, 1, ctx),
                  std::invalid_argument);
}

TEST_CASE("functional kinds round-trip through text") {
  for (auto kind : {FunctionalKind::even, FunctionalKind::odd, FunctionalKind::determinant}) {
    CHECK(parse_kind(to_string(kind)) == kind);
  }
  CHECK(parse_kind("+") == FunctionalKind::even);
  CHECK(parse_kind("-") == FunctionalKind::odd);
  CHECK(parse_kind("det") == FunctionalKind::determinant);
  CHECK_THROWS_AS(parse_kind("sideways"), std::invalid_argument);
}

}  // TEST_SUITE
