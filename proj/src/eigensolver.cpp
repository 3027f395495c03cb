#include "boxseries/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <utility>

namespace boxseries {

namespace {

struct DecimalParts {
  bool negative = false;
  std::string digits;  // significant digits, no leading zeros
  long exponent = 0;   // decimal exponent of the leading digit
};

DecimalParts decompose(const std::string& text) {
  DecimalParts out;
  std::string_view s = text;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    out.negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exp = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exp = std::stol(std::string(s.substr(e + 1)));
    s = s.substr(0, e);
  }
  auto dot = s.find('.');
  const long int_len = static_cast<long>(dot == std::string_view::npos ? s.size() : dot);
  std::string all;
  for (char c : s) {
    if (c != '.') all += c;
  }
  auto first = all.find_first_not_of('0');
  if (first == std::string::npos) return out;
  out.digits = all.substr(first);
  out.exponent = int_len - static_cast<long>(first) - 1 + exp;
  return out;
}

struct Evaluated {
  BoundaryEval eval;
  PrecisionContext ctx;
};

/// Evaluates the functional, raising working precision until its sign is
/// above the rounding noise of the summation.
Evaluated evaluate_reliably(const Potential& potential, FunctionalKind kind, const BigReal& energy,
                            const Rational& half_width, Truncation truncation, PrecisionContext ctx,
                            const SolverOptions& options) {
  int zero_retries = 0;
  for (;;) {
    auto eval = boundary_value(kind, potential, energy, half_width, truncation, ctx);
    if (eval.sign_reliable()) return {std::move(eval), ctx};
    int next = 0;
    if (eval.value.is_zero()) {
      // An exact zero that survives two precision doublings is taken at face value.
      if (zero_retries++ >= 2) return {std::move(eval), ctx};
      next = 2 * ctx.working_digits;
    } else {
      const double deficit = eval.noise_floor_log10() - eval.value.log10_abs();
      next = ctx.working_digits + static_cast<int>(std::ceil(deficit)) + ctx.guard_digits;
    }
    if (next > options.max_working_digits) {
      throw ConvergenceError("boundary functional sign lost in rounding noise at E = " + energy.to_decimal(20) +
                             " even at " + std::to_string(ctx.working_digits) + " working digits");
    }
    ctx.working_digits = next;
  }
}

/// 10^-digits * max(1, min(|lo|, |hi|)); the scale drops to 1 when the
/// interval straddles zero.
BigReal relative_tolerance(const BigReal& lo, const BigReal& hi, int digits) {
  const long bits = std::max(lo.bits(), hi.bits());
  BigReal scale(1L, bits);
  if (lo.sign() == hi.sign()) scale = max(scale, min(abs(lo), abs(hi)));
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0)));
  return scale / BigReal(Rational(power), bits);
}

int stable_digit_count(const EigenvalueRecord& a, const EigenvalueRecord& b) {
  int agree = agree_digits(a.energy, b.energy);
  BigReal diff = abs(a.value - b.value);
  if (diff.is_zero()) return a.target_digits;
  const double by_gap = std::floor(b.value.log10_abs() - diff.log10_abs());
  return std::min(a.target_digits, std::max(agree, static_cast<int>(by_gap)));
}

/// Brackets near `around` with spacing `step`, nearest first.
std::vector<Bracket> rescan_window(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                   Truncation truncation, const BigReal& around, const BigReal& step,
                                   const PrecisionContext& ctx, const SolverOptions& options) {
  BigReal reach = step * static_cast<long>(options.rescan_steps);
  auto found = scan(potential, kind, half_width, truncation, around - reach, around + reach, step, ctx, options);
  std::sort(found.begin(), found.end(), [&](const Bracket& x, const Bracket& y) {
    return abs(x.midpoint() - around) < abs(y.midpoint() - around);
  });
  return found;
}

/// Confirms the sign change of `bracket` at the given truncation, re-scanning
/// a window around it when the root has drifted out.
Bracket revalidate(const Potential& potential, const Bracket& bracket, const Rational& half_width,
                   Truncation truncation, const PrecisionContext& ctx, const SolverOptions& options) {
  const FunctionalKind kind = bracket.kind;
  if (bracket.degenerate()) {
    auto at = evaluate_reliably(potential, kind, bracket.lo, half_width, truncation, ctx, options);
    if (at.eval.value.is_zero()) return bracket;
    BigReal w = max(BigReal(1L, 64), abs(bracket.lo)) * BigReal("1e-6", bracket.lo.bits());
    auto found = rescan_window(potential, kind, half_width, truncation, bracket.lo, w, ctx, options);
    if (found.empty()) throw ConvergenceError("root near " + bracket.lo.to_decimal(20) + " vanished");
    return found.front();
  }
  auto lo = evaluate_reliably(potential, kind, bracket.lo, half_width, truncation, ctx, options);
  auto hi = evaluate_reliably(potential, kind, bracket.hi, half_width, truncation, ctx, options);
  const int slo = lo.eval.value.sign();
  const int shi = hi.eval.value.sign();
  if (slo * shi < 0) return Bracket{bracket.lo, bracket.hi, slo, shi, kind};
  if (slo == 0) return Bracket{bracket.lo, bracket.lo, 0, 0, kind};
  if (shi == 0) return Bracket{bracket.hi, bracket.hi, 0, 0, kind};
  auto found = rescan_window(potential, kind, half_width, truncation, bracket.midpoint(), bracket.width(), ctx,
                             options);
  if (found.empty()) {
    throw ConvergenceError("sign change near " + bracket.midpoint().to_decimal(20) + " lost after changing truncation");
  }
  return found.front();
}

int auto_terms(const Potential& potential, FunctionalKind kind, const std::vector<BigReal>& energies,
               const Rational& half_width, int digits, const SolverOptions& options) {
  int terms = 1;
  for (const auto& e : energies) {
    if (kind != FunctionalKind::odd) {
      terms = std::max(terms, series_tail_terms(potential, false, e, half_width, digits, options.max_terms));
    }
    if (kind != FunctionalKind::even) {
      terms = std::max(terms, series_tail_terms(potential, true, e, half_width, digits, options.max_terms));
    }
  }
  return terms;
}

/// Truncation at which the tail sits below the digits this context resolves,
/// including the cancellation measured at the given energies. A short series
/// overstates |F| and so understates cancellation; the estimate is iterated
/// until it stops growing.
int terms_for_context(const Potential& potential, FunctionalKind kind, const std::vector<BigReal>& energies,
                      const Rational& half_width, const PrecisionContext& ctx, const SolverOptions& options) {
  const int base_digits = ctx.target_digits + options.bisect_extra_digits + ctx.guard_digits;
  int terms = auto_terms(potential, kind, energies, half_width, base_digits, options);
  int cancellation = 0;
  for (int round = 0; round < 8; ++round) {
    int measured = 0;
    for (const auto& e : energies) {
      auto at = evaluate_reliably(potential, kind, e, half_width, terms, ctx, options);
      measured = std::max(measured, at.eval.cancellation_digits);
    }
    if (measured <= cancellation) break;
    cancellation = measured;
    const int next = auto_terms(potential, kind, energies, half_width, base_digits + cancellation, options);
    if (next <= terms) break;
    terms = next;
  }
  return terms;
}

double potential_minimum(const Potential& potential, double half_width) {
  constexpr int kSamples = 4000;
  double lowest = potential.evaluate(-half_width);
  for (int i = 1; i <= kSamples; ++i) {
    lowest = std::min(lowest, potential.evaluate(-half_width + 2.0 * half_width * i / kSamples));
  }
  return lowest;
}

}  // namespace

int agree_digits(const std::string& a, const std::string& b) {
  const auto x = decompose(a);
  const auto y = decompose(b);
  if (x.digits.empty() || y.digits.empty()) return 0;
  if (x.negative != y.negative || x.exponent != y.exponent) return 0;
  const std::size_t n = std::min(x.digits.size(), y.digits.size());
  std::size_t k = 0;
  while (k < n && x.digits[k] == y.digits[k]) ++k;
  return static_cast<int>(k);
}

int estimate_terms(const Potential& potential, FunctionalKind kind, const BigReal& energy,
                   const Rational& half_width, int digits) {
  SolverOptions options;
  return auto_terms(potential, kind, {energy}, half_width, digits, options);
}

std::vector<ScanPoint> scan_samples(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                    Truncation truncation, const BigReal& e_min, const BigReal& e_max,
                                    const BigReal& step, const PrecisionContext& ctx, const SolverOptions& options) {
  if (!(e_min < e_max)) throw std::invalid_argument("scan range must satisfy e_min < e_max");
  if (step.sign() <= 0) throw std::invalid_argument("scan step must be positive");
  const double count = std::floor(((e_max - e_min) / step).to_double());
  if (count > 1e7) throw std::invalid_argument("scan grid too fine");
  const long n = static_cast<long>(count);

  PrecisionContext c = ctx;
  const long bits = std::max({c.working_bits(), e_min.bits(), e_max.bits(), step.bits()});
  std::vector<ScanPoint> out;
  out.reserve(static_cast<std::size_t>(n) + 2);
  auto visit = [&](BigReal e) {
    auto at = evaluate_reliably(potential, kind, e, half_width, truncation, c, options);
    c = at.ctx;
    out.push_back({std::move(e), at.eval.value.sign(), at.eval.value.log10_abs()});
  };
  const BigReal e0 = e_min.with_bits(bits);
  const BigReal h = step.with_bits(bits);
  for (long i = 0; i <= n; ++i) visit(e0 + h * i);
  if (out.back().energy < e_max) visit(e_max.with_bits(bits));
  return out;
}

std::vector<Bracket> brackets_from_samples(const std::vector<ScanPoint>& samples, FunctionalKind kind) {
  std::vector<Bracket> out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples[i];
    if (p.sign == 0) {
      out.push_back(Bracket{p.energy, p.energy, 0, 0, kind});
      continue;
    }
    if (i == 0) continue;
    const auto& q = samples[i - 1];
    if (q.sign != 0 && q.sign != p.sign) out.push_back(Bracket{q.energy, p.energy, q.sign, p.sign, kind});
  }
  return out;
}

std::vector<Bracket> scan(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                          Truncation truncation, const BigReal& e_min, const BigReal& e_max, const BigReal& step,
                          const PrecisionContext& ctx, const SolverOptions& options) {
  return brackets_from_samples(
      scan_samples(potential, kind, half_width, truncation, e_min, e_max, step, ctx, options), kind);
}

namespace {

EigenvalueRecord root_in_bracket(const Potential& potential, const Bracket& bracket, const Rational& half_width,
                                 Truncation truncation, const PrecisionContext& ctx, const SolverOptions& options,
                                 bool secant) {
  EigenvalueRecord rec;
  rec.kind = bracket.kind;
  rec.terms_used = truncation.count;
  rec.half_width = half_width;
  rec.target_digits = ctx.target_digits;

  if (bracket.degenerate()) {
    rec.value = bracket.lo;
    rec.energy = rec.value.to_decimal(ctx.target_digits);
    rec.working_digits = ctx.working_digits;
    rec.converged = true;
    return rec;
  }
  if (!(bracket.lo < bracket.hi)) throw std::invalid_argument("bracket must satisfy lo < hi");

  const FunctionalKind kind = bracket.kind;
  auto lo_eval = evaluate_reliably(potential, kind, bracket.lo, half_width, truncation, ctx, options);
  auto hi_eval = evaluate_reliably(potential, kind, bracket.hi, half_width, truncation, lo_eval.ctx, options);
  PrecisionContext c = hi_eval.ctx;
  const int sign_lo = lo_eval.eval.value.sign();
  const int sign_hi = hi_eval.eval.value.sign();
  if (sign_lo * sign_hi >= 0) {
    if (sign_lo == 0 || sign_hi == 0) {
      rec.value = sign_lo == 0 ? bracket.lo : bracket.hi;
      rec.energy = rec.value.to_decimal(ctx.target_digits);
      rec.working_digits = c.working_digits;
      rec.converged = true;
      return rec;
    }
    throw ConvergenceError("no sign change on [" + bracket.lo.to_decimal(20) + ", " + bracket.hi.to_decimal(20) +
                           "] at I = " + std::to_string(truncation.count));
  }

  const int resolve_digits = ctx.target_digits + options.bisect_extra_digits;
  const BigReal tol = relative_tolerance(bracket.lo, bracket.hi, resolve_digits);

  // Guard policy: near the root |F| shrinks to about slope * tol, so the
  // cancellation that matters is max_term / (slope * tol), not max_term / |F(lo)|.
  {
    const double slope = (abs(hi_eval.eval.value - lo_eval.eval.value) / bracket.width()).log10_abs();
    const double smallest = slope + tol.log10_abs();
    const double top = std::max(lo_eval.eval.max_term_magnitude.log10_abs(),
                                hi_eval.eval.max_term_magnitude.log10_abs());
    const double noise = std::log10(std::max(lo_eval.eval.degree, hi_eval.eval.degree) + 1.0) + 1.0;
    const int needed = static_cast<int>(std::ceil(top - smallest + noise));
    c = escalate(c, needed - c.target_digits);
  }
  rec.cancellation_digits = std::max(lo_eval.eval.cancellation_digits, hi_eval.eval.cancellation_digits);

  long bits = c.working_bits();
  BigReal lo = bracket.lo.with_bits(std::max(bits, bracket.lo.bits()));
  BigReal hi = bracket.hi.with_bits(std::max(bits, bracket.hi.bits()));
  BigReal f_lo = lo_eval.eval.value;
  BigReal f_hi = hi_eval.eval.value;
  int kept = 0;  // which end survived the last secant step: -1 lo, +1 hi
  bool halve_next = false;
  while (hi - lo > tol) {
    BigReal next = (lo + hi) / 2L;
    if (secant && !halve_next) {
      // Illinois step, falling back to the midpoint when it leaves the bracket.
      const BigReal guess = hi - f_hi * (hi - lo) / (f_hi - f_lo);
      if (lo < guess && guess < hi) next = guess;
    }
    const BigReal width_before = hi - lo;
    auto at = evaluate_reliably(potential, kind, next, half_width, truncation, c, options);
    if (at.ctx.working_digits > c.working_digits) {
      c = at.ctx;
      bits = c.working_bits();
      lo = lo.with_bits(std::max(bits, lo.bits()));
      hi = hi.with_bits(std::max(bits, hi.bits()));
    }
    const int s = at.eval.value.sign();
    if (s == 0) {
      lo = next;
      hi = next;
      break;
    }
    if (s == sign_lo) {
      lo = std::move(next);
      f_lo = std::move(at.eval.value);
      if (kept == 1) f_hi = f_hi / 2L;
      kept = 1;
    } else {
      hi = std::move(next);
      f_hi = std::move(at.eval.value);
      if (kept == -1) f_lo = f_lo / 2L;
      kept = -1;
    }
    halve_next = secant && !halve_next && (hi - lo) * 2L > width_before;
  }
  rec.value = (lo + hi) / 2L;
  rec.energy = rec.value.to_decimal(ctx.target_digits);
  rec.working_digits = c.working_digits;
  rec.converged = true;
  return rec;
}

}  // namespace

EigenvalueRecord bisect(const Potential& potential, const Bracket& bracket, const Rational& half_width,
                        Truncation truncation, const PrecisionContext& ctx, const SolverOptions& options) {
  return root_in_bracket(potential, bracket, half_width, truncation, ctx, options, false);
}

EigenvalueRecord secant_polish(const Potential& potential, const Bracket& bracket, const Rational& half_width,
                               Truncation truncation, const PrecisionContext& ctx, const SolverOptions& options) {
  return root_in_bracket(potential, bracket, half_width, truncation, ctx, options, true);
}

EigenvalueRecord converge_in_terms(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                   const Bracket& bracket, const PrecisionContext& ctx, std::optional<int> start_terms,
                                   const SolverOptions& options) {
  Bracket original = bracket;
  original.kind = kind;
  int terms = start_terms ? *start_terms
                          : terms_for_context(potential, kind, {bracket.lo, bracket.hi}, half_width, ctx, options);
  std::optional<EigenvalueRecord> prev;
  std::optional<Bracket> narrowed;
  for (;;) {
    if (terms > options.max_terms) {
      throw ConvergenceError("no convergence in series terms up to I = " + std::to_string(options.max_terms));
    }
    Bracket current = original;
    bool have = false;
    if (narrowed) {
      try {
        current = revalidate(potential, *narrowed, half_width, terms, ctx, options);
        have = current.lo >= original.lo && current.hi <= original.hi;
      } catch (const ConvergenceError&) {
        have = false;
      }
    }
    if (!have) current = revalidate(potential, original, half_width, terms, ctx, options);

    auto rec = bisect(potential, current, half_width, terms, ctx, options);
    if (prev) {
      const int stable = stable_digit_count(*prev, rec);
      if (stable >= ctx.target_digits) {
        rec.stable_digits = stable;
        return rec;
      }
      // Next root should sit well inside a few multiples of the last move.
      BigReal reach = abs(rec.value - prev->value) * 8L + relative_tolerance(rec.value, rec.value, ctx.target_digits);
      narrowed = Bracket{rec.value - reach, rec.value + reach, 0, 0, kind};
    }
    prev = std::move(rec);
    terms *= 2;
  }
}

WidthConvergence converge_in_width(const Potential& potential, FunctionalKind kind, const Bracket& bracket,
                                   const std::vector<Rational>& schedule, const PrecisionContext& ctx,
                                   const SolverOptions& options) {
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i - 1] < schedule[i])) throw std::invalid_argument("width schedule must be strictly increasing");
  }
  WidthConvergence out;
  Bracket current = bracket;
  current.kind = kind;
  for (const auto& half_width : schedule) {
    auto rec = converge_in_terms(potential, kind, half_width, current, ctx, std::nullopt, options);
    if (!out.records.empty()) out.agreement.push_back(agree_digits(out.records.back().energy, rec.energy));
    // Keep the bracket width so the next re-scan window can follow the drift.
    BigReal half = current.width() / 2L;
    current = Bracket{rec.value - half, rec.value + half, 0, 0, kind};
    out.records.push_back(std::move(rec));
  }
  return out;
}

std::vector<Bracket> lowest_brackets(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                     int count, std::optional<int> terms, const SolverOptions& options) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  const PrecisionContext scan_ctx = make_context(options.scan_digits);
  const long bits = scan_ctx.working_bits();
  // Dirichlet eigenvalues lie strictly above min V on the box.
  const double floor_energy = std::floor(potential_minimum(potential, half_width.get_d())) - 1.0;
  const BigReal e_floor(Rational(static_cast<long>(floor_energy)), bits);
  double window = std::max(4.0, 4.0 * count);
  for (;;) {
    if (window > 1e8) throw ConvergenceError("could not find " + std::to_string(count) + " roots above the potential minimum");
    BigReal e_top = e_floor + BigReal(Rational(static_cast<long>(window)), bits);
    const int scan_terms =
        terms ? *terms : terms_for_context(potential, kind, {e_floor, e_top}, half_width, scan_ctx, options);
    BigReal step = (e_top - e_floor) / static_cast<long>(options.scan_points);
    auto found = scan(potential, kind, half_width, scan_terms, e_floor, e_top, step, scan_ctx, options);
    if (static_cast<int>(found.size()) >= count) {
      // Halve the step until the count below the last wanted root is stable,
      // so near-coincident roots of one kind are not merged.
      for (int refine = 0; refine < 3; ++refine) {
        BigReal top = found[static_cast<std::size_t>(count - 1)].hi + step;
        step /= 2L;
        auto finer = scan(potential, kind, half_width, scan_terms, e_floor, top, step, scan_ctx, options);
        std::size_t before = 0;
        for (const auto& b : found) {
          if (b.hi <= top) ++before;
        }
        if (finer.size() <= before) break;
        found = std::move(finer);
      }
      found.resize(static_cast<std::size_t>(count));
      return found;
    }
    window *= 2.0;
  }
}

namespace {

struct Candidate {
  Bracket bracket;
  int index;
};

std::vector<EigenvalueRecord> converge_candidates(const Potential& potential, const std::vector<Candidate>& candidates,
                                                  const Rational& half_width, const PrecisionContext& ctx,
                                                  std::optional<int> terms, const SolverOptions& options) {
  auto work = [&](const Candidate& cand) {
    EigenvalueRecord rec = terms ? bisect(potential, cand.bracket, half_width, *terms, ctx, options)
                                 : converge_in_terms(potential, cand.bracket.kind, half_width, cand.bracket, ctx,
                                                     std::nullopt, options);
    rec.index = cand.index;
    return rec;
  };
  std::vector<EigenvalueRecord> out;
  if (options.parallel) {
    std::vector<std::future<EigenvalueRecord>> futures;
    for (const auto& cand : candidates) futures.push_back(std::async(std::launch::async, work, std::cref(cand)));
    for (auto& f : futures) out.push_back(f.get());
  } else {
    for (const auto& cand : candidates) out.push_back(work(cand));
  }
  std::sort(out.begin(), out.end(),
            [](const EigenvalueRecord& a, const EigenvalueRecord& b) { return a.value < b.value; });
  return out;
}

}  // namespace

std::vector<EigenvalueRecord> solve_kind(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                         int count, const PrecisionContext& ctx, std::optional<int> terms,
                                         const SolverOptions& options) {
  auto found = lowest_brackets(potential, kind, half_width, count, terms, options);
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < found.size(); ++i) candidates.push_back({std::move(found[i]), static_cast<int>(i)});
  return converge_candidates(potential, candidates, half_width, ctx, terms, options);
}

std::vector<EigenvalueRecord> solve_spectrum(const Potential& potential, const Rational& half_width, int count,
                                             const PrecisionContext& ctx, std::optional<int> terms,
                                             const SolverOptions& options) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (!potential.symmetric()) {
    return solve_kind(potential, FunctionalKind::determinant, half_width, count, ctx, terms, options);
  }
  // Parity spectra interleave; take the lowest `count` brackets across both
  // before paying for convergence.
  std::vector<Candidate> candidates;
  for (auto kind : {FunctionalKind::even, FunctionalKind::odd}) {
    auto found = lowest_brackets(potential, kind, half_width, count, terms, options);
    for (std::size_t i = 0; i < found.size(); ++i) candidates.push_back({std::move(found[i]), static_cast<int>(i)});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.bracket.midpoint() < b.bracket.midpoint(); });
  candidates.resize(static_cast<std::size_t>(count));
  return converge_candidates(potential, candidates, half_width, ctx, terms, options);
}

EigenvalueRecord refine(const Potential& potential, const EigenvalueRecord& rec, int target_digits,
                        const SolverOptions& options) {
  if (target_digits <= rec.target_digits) return rec;
  if (target_digits > options.max_target_digits) {
    throw ConvergenceError("refinement beyond " + std::to_string(options.max_target_digits) + " digits");
  }
  const PrecisionContext ctx = make_context(target_digits);
  const BigReal reach = relative_tolerance(rec.value, rec.value, std::max(1, rec.target_digits - 2));
  const Bracket around{rec.value - reach, rec.value + reach, 0, 0, rec.kind};
  EigenvalueRecord out = rec.stable_digits < 0
                             ? bisect(potential, around, rec.half_width, rec.terms_used, ctx, options)
                             : converge_in_terms(potential, rec.kind, rec.half_width, around, ctx, rec.terms_used, options);
  out.index = rec.index;
  return out;
}

int auto_truncation(const Potential& potential, FunctionalKind kind, const std::vector<BigReal>& energies,
                    const Rational& half_width, const PrecisionContext& ctx, const SolverOptions& options) {
  return terms_for_context(potential, kind, energies, half_width, ctx, options);
}

std::pair<BigReal, BigReal> eigen_seed(const Potential& potential, const EigenvalueRecord& rec,
                                       const PrecisionContext& ctx) {
  const long bits = ctx.working_bits();
  if (rec.kind == FunctionalKind::even) return {BigReal(1L, bits), BigReal(0L, bits)};
  if (rec.kind == FunctionalKind::odd) return {BigReal(0L, bits), BigReal(1L, bits)};
  PrecisionContext c = ctx;
  c.working_digits = std::max(c.working_digits, rec.working_digits);
  auto walls = wall_values(potential, rec.value, rec.half_width, rec.terms_used, c);
  // Take the null vector of the wall row with the larger norm: the other
  // wall is then violated only by det / |row|.
  const bool use_plus = max(abs(walls.f0_plus), abs(walls.f1_plus)) >= max(abs(walls.f0_minus), abs(walls.f1_minus));
  BigReal a0 = use_plus ? walls.f1_plus : walls.f1_minus;
  BigReal a1 = -(use_plus ? walls.f0_plus : walls.f0_minus);
  BigReal scale = max(abs(a0), abs(a1));
  if (scale.is_zero()) throw ConvergenceError("degenerate wall system; no eigenfunction seed");
  if (a0.sign() < 0 || (a0.is_zero() && a1.sign() < 0)) scale = -scale;
  return {(a0 / scale).with_bits(bits), (a1 / scale).with_bits(bits)};
}

SplittingReport splitting(const Potential& potential, const Rational& half_width, const PrecisionContext& ctx,
                          const SolverOptions& options) {
  if (!potential.symmetric() || potential.coefficient(2) >= 0) {
    throw std::invalid_argument("splitting needs a symmetric double well (negative x^2 coefficient)");
  }
  Bracket even = lowest_brackets(potential, FunctionalKind::even, half_width, 1, std::nullopt, options).front();
  Bracket odd = lowest_brackets(potential, FunctionalKind::odd, half_width, 1, std::nullopt, options).front();

  constexpr int kGapDigits = 6;
  PrecisionContext c = ctx;
  for (;;) {
    auto run = [&](const Bracket& b) {
      return converge_in_terms(potential, b.kind, half_width, b, c, std::nullopt, options);
    };
    EigenvalueRecord plus;
    EigenvalueRecord minus;
    if (options.parallel) {
      auto f = std::async(std::launch::async, run, std::cref(odd));
      plus = run(even);
      minus = f.get();
    } else {
      plus = run(even);
      minus = run(odd);
    }
    plus.index = 0;
    minus.index = 0;
    const int agree = agree_digits(plus.energy, minus.energy);
    if (c.target_digits >= agree + kGapDigits) {
      SplittingReport report;
      report.agree_digits = agree;
      report.delta = (minus.value - plus.value).to_decimal(c.target_digits - agree);
      report.plus = std::move(plus);
      report.minus = std::move(minus);
      return report;
    }
    const int next = std::max(agree + kGapDigits + 4, c.target_digits + 1);
    if (next > options.max_target_digits) {
      throw ConvergenceError("splitting unresolved within " + std::to_string(options.max_target_digits) + " digits");
    }
    // Later passes restart from tight brackets around the previous roots.
    auto tighten = [&](const EigenvalueRecord& r) {
      BigReal reach = relative_tolerance(r.value, r.value, c.target_digits - 2);
      return Bracket{r.value - reach, r.value + reach, 0, 0, r.kind};
    };
    even = tighten(plus);
    odd = tighten(minus);
    c = make_context(next);
  }
}

}  // namespace boxseries
