#include "boxseries/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "boxseries/recurrence.hpp"

namespace boxseries {

std::vector<bool> live_pattern(const Potential& potential, bool a0_live, bool a1_live, int max_degree) {
  std::vector<bool> live(static_cast<std::size_t>(std::max(max_degree, 1)) + 1, false);
  live[0] = a0_live;
  live[1] = a1_live;
  for (int l = 2; l <= max_degree; ++l) {
    bool on = live[static_cast<std::size_t>(l - 2)];
    for (const auto& [degree, value] : potential.coefficients()) {
      if (on) break;
      const int idx = l - 2 - degree;
      if (idx >= 0 && live[static_cast<std::size_t>(idx)]) on = true;
    }
    live[static_cast<std::size_t>(l)] = on;
  }
  live.resize(static_cast<std::size_t>(max_degree) + 1);
  return live;
}

int degree_for_terms(const Potential& potential, bool a0_live, bool a1_live, int terms) {
  if (terms < 1) throw std::invalid_argument("number of series terms must be >= 1");
  if (!a0_live && !a1_live) throw std::invalid_argument("series seed (0, 0) has no live terms");
  // Every live index keeps index + 2 live, so 2 * terms always suffices.
  const auto live = live_pattern(potential, a0_live, a1_live, 2 * terms + 1);
  int count = 0;
  for (int l = 0; l < static_cast<int>(live.size()); ++l) {
    if (live[static_cast<std::size_t>(l)] && ++count == terms) return l;
  }
  throw std::logic_error("live pattern shorter than expected");
}

namespace {

int resolve_degree(const Potential& potential, bool a0_live, bool a1_live, Truncation truncation) {
  if (truncation.by_degree) {
    if (truncation.count < 0) throw std::invalid_argument("max degree must be non-negative");
    return truncation.count;
  }
  return degree_for_terms(potential, a0_live, a1_live, truncation.count);
}

// Steps b_l = a_l L^l for a unit seed directly:
//   l (l-1) b_l = (v_0 - E) L^2 b_{l-2} + sum_{j>=1} v_j L^{j+2} b_{l-2-j}
// so the recurrence state is the partial terms of psi(L) themselves.
class ScaledRecurrence {
 public:
  ScaledRecurrence(const Potential& potential, const BigReal& energy, const Rational& half_width, bool odd_seed,
                   long bits)
      : bits_(bits), odd_seed_(odd_seed), shift_(0L, bits), acc_(0L, bits), half_width_(half_width, bits) {
    const Rational l2 = half_width * half_width;
    shift_ = BigReal(potential.coefficient(0) * l2, bits);
    BigReal e_scaled = energy.with_bits(bits);
    e_scaled *= BigReal(l2, bits);
    shift_ -= e_scaled;
    Rational lpow = l2;
    int reached = 0;
    for (const auto& [j, v] : potential.coefficients()) {
      if (j == 0) continue;
      for (; reached < j; ++reached) lpow *= half_width;
      weights_.push_back({j, BigReal(Rational(v * lpow), bits)});
    }
  }

  /// Index of the term the next call to step() produces.
  [[nodiscard]] int index() const { return static_cast<int>(b_.size()); }
  [[nodiscard]] bool live(int l) const { return live_[static_cast<std::size_t>(l)]; }

  const BigReal& step() {
    const int l = index();
    BigReal& bl = b_.emplace_back(0L, bits_);
    if (l == 0) {
      live_.push_back(!odd_seed_);
      if (!odd_seed_) mpfr_set_ui(bl.raw(), 1, MPFR_RNDN);
      return bl;
    }
    if (l == 1) {
      live_.push_back(odd_seed_);
      if (odd_seed_) mpfr_set(bl.raw(), half_width_.raw(), MPFR_RNDN);
      return bl;
    }
    bool on = live(l - 2);
    for (const auto& w : weights_) {
      const int idx = l - 2 - w.degree;
      if (idx < 0 || on) break;
      on = live(idx);
    }
    live_.push_back(on);
    if (!on) return bl;
    mpfr_mul(acc_.raw(), shift_.raw(), b_[static_cast<std::size_t>(l - 2)].raw(), MPFR_RNDN);
    for (const auto& w : weights_) {
      const int idx = l - 2 - w.degree;
      if (idx < 0) break;
      if (!live(idx)) continue;
      mpfr_fma(acc_.raw(), w.value.raw(), b_[static_cast<std::size_t>(idx)].raw(), acc_.raw(), MPFR_RNDN);
    }
    mpfr_div_ui(bl.raw(), acc_.raw(), static_cast<unsigned long>(l) * static_cast<unsigned long>(l - 1), MPFR_RNDN);
    return bl;
  }

  void reserve(int degree) { b_.reserve(static_cast<std::size_t>(degree) + 1); }

 private:
  long bits_;
  bool odd_seed_;
  BigReal shift_;
  BigReal acc_;
  BigReal half_width_;
  std::vector<PotentialTerm<BigReal>> weights_;
  std::vector<BigReal> b_;
  std::vector<bool> live_;
};

/// Sums of b_l for a unit seed at +L and -L.
struct ScaledSums {
  BigReal plus;
  BigReal minus;
  BigReal max_term;
  int degree = 0;
};

ScaledSums scaled_sums(const Potential& potential, const BigReal& energy, const Rational& half_width, bool odd_seed,
                       Truncation truncation, long bits) {
  const int degree = resolve_degree(potential, !odd_seed, odd_seed, truncation);
  ScaledRecurrence rec(potential, energy, half_width, odd_seed, bits);
  rec.reserve(degree);
  BigReal even_sum(0L, bits);
  BigReal odd_sum(0L, bits);
  BigReal max_term(0L, bits);
  for (int l = 0; l <= degree; ++l) {
    const BigReal& bl = rec.step();
    if (bl.is_zero()) continue;
    BigReal& target = l % 2 == 0 ? even_sum : odd_sum;
    mpfr_add(target.raw(), target.raw(), bl.raw(), MPFR_RNDN);
    if (mpfr_cmpabs(bl.raw(), max_term.raw()) > 0) mpfr_abs(max_term.raw(), bl.raw(), MPFR_RNDN);
  }
  return {even_sum + odd_sum, even_sum - odd_sum, max_term, degree};
}

int cancellation_between(const BigReal& max_term, const BigReal& value, int working_digits) {
  const double top = max_term.log10_abs();
  if (!std::isfinite(top)) return 0;
  const double bottom = std::max(value.log10_abs(), top - working_digits);
  return std::max(0, static_cast<int>(std::ceil(top - bottom)));
}

BoundaryEval make_eval(BigReal value, BigReal max_term, int degree, const PrecisionContext& ctx) {
  BoundaryEval eval{std::move(value), std::move(max_term), 0, degree, ctx.working_digits};
  eval.cancellation_digits = cancellation_between(eval.max_term_magnitude, eval.value, ctx.working_digits);
  return eval;
}

void require_symmetric(const Potential& potential, std::string_view what) {
  if (!potential.symmetric()) {
    throw std::invalid_argument(std::string(what) + " needs a symmetric potential; use the determinant functional");
  }
}

}  // namespace

int series_tail_terms(const Potential& potential, bool odd_seed, const BigReal& energy, const Rational& half_width,
                      int digits, int max_terms) {
  const long bits = digits_to_bits(std::max(40, digits + 20));
  ScaledRecurrence rec(potential, energy, half_width, odd_seed, bits);
  double peak = -INFINITY;
  int live_count = 0;
  int quiet = 0;
  constexpr int kQuietRun = 8;
  while (live_count < max_terms) {
    const int l = rec.index();
    const BigReal& bl = rec.step();
    if (!rec.live(l)) continue;
    ++live_count;
    const double mag = bl.log10_abs();
    if (mag > peak) {
      peak = mag;
      quiet = 0;
      continue;
    }
    quiet = mag < peak - digits ? quiet + 1 : 0;
    if (quiet >= kQuietRun) return live_count;
  }
  return max_terms;
}

double BoundaryEval::noise_floor_log10() const {
  return max_term_magnitude.log10_abs() - working_digits + std::log10(static_cast<double>(degree) + 1.0) + 1.0;
}

SeriesSolution series_coefficients(const Potential& potential, const BigReal& energy, const BigReal& a0,
                                   const BigReal& a1, Truncation truncation, const PrecisionContext& ctx) {
  const long bits = ctx.working_bits();
  const bool a0_live = !a0.is_zero();
  const bool a1_live = !a1.is_zero();
  int degree = 0;
  if (truncation.by_degree) {
    degree = resolve_degree(potential, true, true, truncation);
  } else {
    degree = degree_for_terms(potential, a0_live, a1_live, truncation.count);
  }
  auto terms = potential_terms<BigReal>(potential, [bits](const Rational& v) { return BigReal(v, bits); });
  SeriesSolution out{recurrence_coefficients<BigReal>(terms, energy.with_bits(bits), a0.with_bits(bits),
                                                      a1.with_bits(bits), degree),
                     0, a0, a1};
  const auto live = live_pattern(potential, a0_live, a1_live, degree);
  out.terms = static_cast<int>(std::count(live.begin(), live.end(), true));
  return out;
}

std::string_view to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::even:
      return "even";
    case FunctionalKind::odd:
      return "odd";
    case FunctionalKind::determinant:
      return "determinant";
  }
  return "?";
}

FunctionalKind parse_kind(std::string_view text) {
  if (text == "even" || text == "+") return FunctionalKind::even;
  if (text == "odd" || text == "-") return FunctionalKind::odd;
  if (text == "determinant" || text == "det") return FunctionalKind::determinant;
  throw std::invalid_argument("unknown functional kind '" + std::string(text) + "'");
}

BoundaryEval boundary_even(const Potential& potential, const BigReal& energy, const Rational& half_width,
                           Truncation truncation, const PrecisionContext& ctx) {
  require_symmetric(potential, "even boundary functional");
  auto sums = scaled_sums(potential, energy, half_width, false, truncation, ctx.working_bits());
  return make_eval(std::move(sums.plus), std::move(sums.max_term), sums.degree, ctx);
}

BoundaryEval boundary_odd(const Potential& potential, const BigReal& energy, const Rational& half_width,
                          Truncation truncation, const PrecisionContext& ctx) {
  require_symmetric(potential, "odd boundary functional");
  auto sums = scaled_sums(potential, energy, half_width, true, truncation, ctx.working_bits());
  return make_eval(std::move(sums.plus), std::move(sums.max_term), sums.degree, ctx);
}

BoundaryEval boundary_det(const Potential& potential, const BigReal& energy, const Rational& half_width,
                          Truncation truncation, const PrecisionContext& ctx) {
  const long bits = ctx.working_bits();
  auto f0 = scaled_sums(potential, energy, half_width, false, truncation, bits);
  auto f1 = scaled_sums(potential, energy, half_width, true, truncation, bits);
  BigReal left = f0.plus * f1.minus;
  BigReal right = f1.plus * f0.minus;
  BigReal value = left - right;
  // Audit: the largest summand magnitude that fed either product.
  BigReal f0_size = max(abs(f0.plus), abs(f0.minus));
  BigReal f1_size = max(abs(f1.plus), abs(f1.minus));
  BigReal max_term = max(f0.max_term * f1_size, f1.max_term * f0_size);
  return make_eval(std::move(value), std::move(max_term), std::max(f0.degree, f1.degree), ctx);
}

WallValues wall_values(const Potential& potential, const BigReal& energy, const Rational& half_width,
                       Truncation truncation, const PrecisionContext& ctx) {
  const long bits = ctx.working_bits();
  auto f0 = scaled_sums(potential, energy, half_width, false, truncation, bits);
  auto f1 = scaled_sums(potential, energy, half_width, true, truncation, bits);
  return {std::move(f0.plus), std::move(f0.minus), std::move(f1.plus), std::move(f1.minus)};
}

BoundaryEval boundary_value(FunctionalKind kind, const Potential& potential, const BigReal& energy,
                            const Rational& half_width, Truncation truncation, const PrecisionContext& ctx) {
  switch (kind) {
    case FunctionalKind::even:
      return boundary_even(potential, energy, half_width, truncation, ctx);
    case FunctionalKind::odd:
      return boundary_odd(potential, energy, half_width, truncation, ctx);
    case FunctionalKind::determinant:
      return boundary_det(potential, energy, half_width, truncation, ctx);
  }
  throw std::logic_error("unhandled functional kind");
}

std::vector<WavefunctionSample> wavefunction_samples(const Potential& potential, const BigReal& energy,
                                                     const Rational& half_width, Truncation truncation,
                                                     std::pair<BigReal, BigReal> seed, int npoints,
                                                     const PrecisionContext& ctx) {
  if (npoints < 2) throw std::invalid_argument("wavefunction sampling needs at least 2 points");
  const long bits = ctx.working_bits();
  const auto series = series_coefficients(potential, energy, seed.first, seed.second, truncation, ctx);
  std::vector<WavefunctionSample> out;
  out.reserve(static_cast<std::size_t>(npoints));
  for (int i = 0; i < npoints; ++i) {
    // x_i = -L + 2 L i / (n - 1), kept exact until the final conversion.
    Rational xq = half_width * Rational(2 * i - (npoints - 1), npoints - 1);
    xq.canonicalize();
    BigReal x(xq, bits);
    BigReal psi(0L, bits);
    for (auto it = series.a.rbegin(); it != series.a.rend(); ++it) {
      psi *= x;
      psi += *it;
    }
    out.push_back({std::move(x), std::move(psi)});
  }
  return out;
}

void write_wavefunction_csv(std::ostream& out, const std::vector<WavefunctionSample>& samples, int digits) {
  out << "x,psi\n";
  for (const auto& s : samples) out << s.x.to_decimal(digits) << ',' << s.psi.to_decimal(digits) << '\n';
}

}  // namespace boxseries
