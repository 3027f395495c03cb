#ifndef BOXSERIES_ORACLE_HPP
#define BOXSERIES_ORACLE_HPP

#include <vector>

#include "boxseries/numerics.hpp"
#include "boxseries/potential.hpp"

namespace boxseries {

/// Morse well V0 (1 - exp(-lambda x))^2 and its bound-state count.
struct MorseParams {
  Rational v0;
  Rational lambda;
  int n_max = -1;  // highest n with n < sqrt(V0)/|lambda| - 1/2; -1 when none
};

MorseParams make_morse_params(const Rational& v0, const Rational& lambda);

/// E_n = 2 lambda sqrt(V0) (n + 1/2) - lambda^2 (n + 1/2)^2 for the unbounded well.
/// Exact whenever V0 is the square of a rational.
BigReal morse_exact_energy(const MorseParams& params, int n, const PrecisionContext& ctx);

/// Unbounded Morse ground state z^s exp(-z/2), z = (2 sqrt(V0)/|lambda|) exp(-lambda x),
/// s = sqrt(V0)/|lambda| - 1/2, scaled so its peak is 1. Requires n_max >= 0.
double morse_ground_state(const MorseParams& params, double x);

/// (n pi / (2 L))^2: level n >= 1 of the free particle between walls at +-L.
BigReal square_well_energy(const Rational& half_width, int n, const PrecisionContext& ctx);

/// Lowest `count` eigenvalues of -psi'' + V psi on `grid_points` interior
/// points of [-L, L] with Dirichlet walls, central differences, double precision.
std::vector<double> fd_eigenvalues(const Potential& potential, double half_width, int grid_points, int count);

}  // namespace boxseries

#endif  // BOXSERIES_ORACLE_HPP
