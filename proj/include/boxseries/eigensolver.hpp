#ifndef BOXSERIES_EIGENSOLVER_HPP
#define BOXSERIES_EIGENSOLVER_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "boxseries/numerics.hpp"
#include "boxseries/potential.hpp"
#include "boxseries/series.hpp"

namespace boxseries {

/// Raised when a root cannot be pinned down: sign lost in noise beyond the
/// precision ceiling, truncation ceiling reached, or a bracket vanished.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Energy interval over which a boundary functional changes sign.
/// lo == hi marks an exact zero found on a grid point.
struct Bracket {
  BigReal lo;
  BigReal hi;
  int sign_lo = 0;
  int sign_hi = 0;
  FunctionalKind kind = FunctionalKind::determinant;

  [[nodiscard]] bool degenerate() const { return lo == hi; }
  [[nodiscard]] BigReal width() const { return hi - lo; }
  [[nodiscard]] BigReal midpoint() const { return (lo + hi) / 2L; }
};

struct EigenvalueRecord {
  std::string energy;  // decimal, target_digits significant digits
  BigReal value;
  FunctionalKind kind = FunctionalKind::determinant;
  int index = 0;        // order within kind
  int terms_used = 0;   // I
  Rational half_width;  // L
  int target_digits = 0;
  int working_digits = 0;
  int stable_digits = -1;  // digits unchanged under the last I doubling; -1 when not checked
  int cancellation_digits = 0;
  bool converged = false;
};

struct SplittingReport {
  EigenvalueRecord plus;   // even
  EigenvalueRecord minus;  // odd
  int agree_digits = 0;
  std::string delta;       // minus - plus
};

struct SolverOptions {
  int scan_digits = 30;
  int scan_points = 200;
  int bisect_extra_digits = 4;
  int rescan_steps = 10;
  int max_terms = 1 << 15;
  int max_working_digits = 40000;
  int max_target_digits = 2000;
  bool parallel = true;
};

/// Leading significant digits shared by two decimal renderings; 0 when the
/// signs or decimal exponents differ.
int agree_digits(const std::string& a, const std::string& b);

/// Series terms after which every further term sits `digits` decades below
/// the largest one, at energy `energy`.
int estimate_terms(const Potential& potential, FunctionalKind kind, const BigReal& energy,
                   const Rational& half_width, int digits);

struct ScanPoint {
  BigReal energy;
  int sign = 0;
  double log10_abs = 0.0;  // log10 |F(E)|, -inf at an exact zero
};

/// The functional on the grid e_min, e_min + step, ..., e_max (e_max always included).
std::vector<ScanPoint> scan_samples(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                    Truncation truncation, const BigReal& e_min, const BigReal& e_max,
                                    const BigReal& step, const PrecisionContext& ctx,
                                    const SolverOptions& options = {});

/// Brackets from consecutive samples of opposite sign; exact zeros give
/// zero-width brackets.
std::vector<Bracket> brackets_from_samples(const std::vector<ScanPoint>& samples, FunctionalKind kind);

/// Sign changes of the functional on e_min, e_min + step, ..., e_max.
std::vector<Bracket> scan(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                          Truncation truncation, const BigReal& e_min, const BigReal& e_max, const BigReal& step,
                          const PrecisionContext& ctx, const SolverOptions& options = {});

/// Plain bisection until the bracket is narrower than 10^-target max(1, |E|).
EigenvalueRecord bisect(const Potential& potential, const Bracket& bracket, const Rational& half_width,
                        Truncation truncation, const PrecisionContext& ctx, const SolverOptions& options = {});

/// Same contract as bisect, reached with Illinois false-position steps; any
/// step that fails to halve the bracket is followed by a plain bisection.
EigenvalueRecord secant_polish(const Potential& potential, const Bracket& bracket, const Rational& half_width,
                               Truncation truncation, const PrecisionContext& ctx, const SolverOptions& options = {});

/// Bisects with I, 2I, 4I, ... until two successive energies agree to the
/// target. `start` defaults to an estimate from the series tail.
EigenvalueRecord converge_in_terms(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                   const Bracket& bracket, const PrecisionContext& ctx,
                                   std::optional<int> start_terms = std::nullopt,
                                   const SolverOptions& options = {});

struct WidthConvergence {
  std::vector<EigenvalueRecord> records;
  std::vector<int> agreement;  // agree_digits between consecutive records
};

WidthConvergence converge_in_width(const Potential& potential, FunctionalKind kind, const Bracket& bracket,
                                   const std::vector<Rational>& schedule, const PrecisionContext& ctx,
                                   const SolverOptions& options = {});

/// Brackets for the lowest `count` zeros of one functional, searching upward
/// from the potential minimum on [-L, L].
std::vector<Bracket> lowest_brackets(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                     int count, std::optional<int> terms, const SolverOptions& options = {});

/// Lowest `count` eigenvalues in increasing order. Symmetric potentials use
/// the parity functionals and interleave them; others use the determinant.
/// With `terms` set, every root is bisected at exactly that I.
std::vector<EigenvalueRecord> solve_spectrum(const Potential& potential, const Rational& half_width, int count,
                                             const PrecisionContext& ctx, std::optional<int> terms = std::nullopt,
                                             const SolverOptions& options = {});

/// Lowest `count` zeros of a single functional, each converged (or bisected at `terms`).
std::vector<EigenvalueRecord> solve_kind(const Potential& potential, FunctionalKind kind, const Rational& half_width,
                                         int count, const PrecisionContext& ctx, std::optional<int> terms = std::nullopt,
                                         const SolverOptions& options = {});

/// The same root carried to `target_digits`, starting from a tight bracket
/// around `rec`. Fixed-I records stay at their I.
EigenvalueRecord refine(const Potential& potential, const EigenvalueRecord& rec, int target_digits,
                        const SolverOptions& options = {});

/// Truncation the solver would pick for `kind` around the given energies.
int auto_truncation(const Potential& potential, FunctionalKind kind, const std::vector<BigReal>& energies,
                    const Rational& half_width, const PrecisionContext& ctx, const SolverOptions& options = {});

/// Seed (a0, a1) of the eigenfunction at a converged energy: the parity seed
/// for even/odd records, otherwise the null vector (f1, -f0) of whichever wall row
/// has the larger norm.
std::pair<BigReal, BigReal> eigen_seed(const Potential& potential, const EigenvalueRecord& rec,
                                       const PrecisionContext& ctx);

/// Ground-state tunnelling splitting of a symmetric double well, raising the
/// target until six digits of the gap are resolved.
SplittingReport splitting(const Potential& potential, const Rational& half_width, const PrecisionContext& ctx,
                          const SolverOptions& options = {});

}  // namespace boxseries

#endif  // BOXSERIES_EIGENSOLVER_HPP
