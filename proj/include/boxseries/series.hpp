#ifndef BOXSERIES_SERIES_HPP
#define BOXSERIES_SERIES_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boxseries/numerics.hpp"
#include "boxseries/potential.hpp"

namespace boxseries {

/// How far the series is carried.
///
/// The canonical knob counts nonvanishing retained terms (seeds included),
/// so a parity solution of a symmetric potential with I terms reaches
/// degree 2(I - 1) or 2I - 1. `max_degree` is the raw alternative.
struct Truncation {
  int count = 0;
  bool by_degree = false;

  Truncation(int terms) : count(terms) {}  // NOLINT: terms is the canonical unit
  static Truncation terms(int n) { return Truncation(n); }
  static Truncation max_degree(int d) {
    Truncation t(d);
    t.by_degree = true;
    return t;
  }
};

struct SeriesSolution {
  std::vector<BigReal> a;  // a_0 .. a_D
  int terms = 0;           // live coefficients retained
  BigReal a0;
  BigReal a1;
};

SeriesSolution series_coefficients(const Potential& potential, const BigReal& energy, const BigReal& a0,
                                   const BigReal& a1, Truncation truncation, const PrecisionContext& ctx);

/// Number of live terms after which the partial terms a_l L^l of the unit-seed
/// solution stay `digits` decades below their peak. Capped at `max_terms`.
int series_tail_terms(const Potential& potential, bool odd_seed, const BigReal& energy, const Rational& half_width,
                      int digits, int max_terms);

enum class FunctionalKind { even, odd, determinant };

std::string_view to_string(FunctionalKind kind);
FunctionalKind parse_kind(std::string_view text);

/// A boundary functional evaluated at one energy, with a cancellation audit.
struct BoundaryEval {
  BigReal value;
  BigReal max_term_magnitude;  // largest |a_l L^l| met while summing
  int cancellation_digits = 0;
  int degree = 0;              // highest series degree used
  int working_digits = 0;

  /// Magnitude below which the sign of `value` cannot be trusted.
  [[nodiscard]] double noise_floor_log10() const;
  [[nodiscard]] bool sign_reliable() const { return value.log10_abs() > noise_floor_log10(); }
};

/// psi(L) for the even solution (a0, a1) = (1, 0). Requires a symmetric potential.
BoundaryEval boundary_even(const Potential& potential, const BigReal& energy, const Rational& half_width,
                           Truncation truncation, const PrecisionContext& ctx);

/// psi(L) for the odd solution (a0, a1) = (0, 1). Requires a symmetric potential.
BoundaryEval boundary_odd(const Potential& potential, const BigReal& energy, const Rational& half_width,
                          Truncation truncation, const PrecisionContext& ctx);

/// f0(L) f1(-L) - f1(L) f0(-L) with f0, f1 the solutions seeded by (1,0), (0,1).
/// Valid for any potential; zero exactly when psi(+-L) = 0 has a nontrivial solution.
BoundaryEval boundary_det(const Potential& potential, const BigReal& energy, const Rational& half_width,
                          Truncation truncation, const PrecisionContext& ctx);

/// f0 and f1 (seeds (1,0) and (0,1)) evaluated at both walls.
struct WallValues {
  BigReal f0_plus;
  BigReal f0_minus;
  BigReal f1_plus;
  BigReal f1_minus;
};

WallValues wall_values(const Potential& potential, const BigReal& energy, const Rational& half_width,
                       Truncation truncation, const PrecisionContext& ctx);

BoundaryEval boundary_value(FunctionalKind kind, const Potential& potential, const BigReal& energy,
                            const Rational& half_width, Truncation truncation, const PrecisionContext& ctx);

struct WavefunctionSample {
  BigReal x;
  BigReal psi;
};

/// Unnormalized psi on a uniform grid of `npoints` over [-L, L].
std::vector<WavefunctionSample> wavefunction_samples(const Potential& potential, const BigReal& energy,
                                                     const Rational& half_width, Truncation truncation,
                                                     std::pair<BigReal, BigReal> seed, int npoints,
                                                     const PrecisionContext& ctx);

/// Two-column CSV with header "x,psi"; values carry ctx.target_digits digits.
void write_wavefunction_csv(std::ostream& out, const std::vector<WavefunctionSample>& samples, int digits);

}  // namespace boxseries

#endif  // BOXSERIES_SERIES_HPP
