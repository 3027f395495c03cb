#ifndef BOXSERIES_RECURRENCE_HPP
#define BOXSERIES_RECURRENCE_HPP

#include <span>
#include <vector>

#include "boxseries/potential.hpp"

namespace boxseries {

/// One monomial v_j x^j of a potential, converted to the scalar in use.
template <class Scalar>
struct PotentialTerm {
  int degree;
  Scalar value;
};

/// Coefficients a_0..a_D of the power-series solution of
/// psi'' + (E - V) psi = 0, from
///   l (l - 1) a_l = sum_j v_j a_{l-2-j} - E a_{l-2},   a_l = 0 for l < 0.
///
/// Generic in the scalar so the same recurrence runs over exact rationals,
/// doubles and BigReal.
template <class Scalar>
std::vector<Scalar> recurrence_coefficients(std::span<const PotentialTerm<Scalar>> terms, const Scalar& energy,
                                            const Scalar& a0, const Scalar& a1, int max_degree) {
  std::vector<Scalar> a;
  a.reserve(static_cast<std::size_t>(max_degree) + 1);
  a.push_back(a0);
  if (max_degree >= 1) a.push_back(a1);
  for (int l = 2; l <= max_degree; ++l) {
    Scalar acc = -(energy * a[static_cast<std::size_t>(l - 2)]);
    for (const auto& term : terms) {
      const int idx = l - 2 - term.degree;
      if (idx < 0) continue;
      acc += term.value * a[static_cast<std::size_t>(idx)];
    }
    a.push_back(Scalar(acc / static_cast<long>(l) / static_cast<long>(l - 1)));
  }
  return a;
}

template <class Scalar, class Convert>
std::vector<PotentialTerm<Scalar>> potential_terms(const Potential& potential, Convert&& convert) {
  std::vector<PotentialTerm<Scalar>> out;
  out.reserve(potential.coefficients().size());
  for (const auto& [degree, value] : potential.coefficients()) out.push_back({degree, convert(value)});
  return out;
}

/// Which coefficient indices can be nonzero for a generic energy, given
/// which seeds are nonzero. Index l is live when any a_{l-2-j} feeding it
/// (including the energy term j = 0) is live.
std::vector<bool> live_pattern(const Potential& potential, bool a0_live, bool a1_live, int max_degree);

/// Smallest degree D such that a_0..a_D holds `terms` live coefficients
/// (seeds included). Throws when both seeds are zero.
int degree_for_terms(const Potential& potential, bool a0_live, bool a1_live, int terms);

}  // namespace boxseries

#endif  // BOXSERIES_RECURRENCE_HPP
