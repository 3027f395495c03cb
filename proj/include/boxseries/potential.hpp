#ifndef BOXSERIES_POTENTIAL_HPP
#define BOXSERIES_POTENTIAL_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "boxseries/numerics.hpp"

namespace boxseries {

/// Polynomial potential V(x) = sum_j v_j x^j with exact rational coefficients.
///
/// Stored sparse: zero coefficients are dropped on construction, so the
/// zero polynomial has an empty map. Immutable once built.
class Potential {
 public:
  Potential() = default;
  explicit Potential(std::map<int, Rational> coeffs, std::string label = {});

  [[nodiscard]] const std::map<int, Rational>& coefficients() const { return coeffs_; }
  [[nodiscard]] Rational coefficient(int degree) const;
  /// True iff every odd-degree coefficient vanishes, i.e. V(x) = V(-x).
  [[nodiscard]] bool symmetric() const { return symmetric_; }
  /// Highest degree present, -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// Display label; falls back to the canonical rendering.
  [[nodiscard]] const std::string& label() const { return label_; }

  /// Canonical form, ascending degree: "-25*x^2 + x^4", "7/12*x^4", "0".
  [[nodiscard]] std::string render() const;

  [[nodiscard]] double evaluate(double x) const;

  friend bool operator==(const Potential& a, const Potential& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::map<int, Rational> coeffs_;
  bool symmetric_ = true;
  std::string label_;
};

/// V = mu2 x^2 + g x^(2k). Accepts any k >= 1; the interesting range is 2..6.
Potential anharmonic(const Rational& mu2, const Rational& g, int k);

/// V = -depth x^2 + x^4, the symmetric double well labelled by its mass parameter.
Potential double_well(const Rational& depth);

inline constexpr int kDefaultMorseTruncation = 30;

/// Taylor polynomial of V0 (1 - exp(-lambda x))^2 through x^J.
/// Coefficient j is V0 lambda^j ((-2)^j - 2(-1)^j) / j!.
Potential morse_series(const Rational& v0, const Rational& lambda, int max_degree = kDefaultMorseTruncation);

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses sums of terms "c*x^j" where c is an integer, decimal or n/d literal.
/// The '*' is optional ("3x^2"), "x" alone means x^1 and a bare literal is x^0.
Potential parse_potential(std::string_view expr);

}  // namespace boxseries

#endif  // BOXSERIES_POTENTIAL_HPP
