#include "boxseries/potential.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace boxseries {

Potential::Potential(std::map<int, Rational> coeffs, std::string label) : label_(std::move(label)) {
  for (auto& [degree, value] : coeffs) {
    if (degree < 0) throw std::invalid_argument("negative degree in potential");
    if (value != 0) coeffs_.emplace(degree, std::move(value));
  }
  for (const auto& [degree, value] : coeffs_) {
    if (degree % 2 != 0) symmetric_ = false;
  }
  if (label_.empty()) label_ = render();
}

Rational Potential::coefficient(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::string Potential::render() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [degree, value] : coeffs_) {
    Rational magnitude = abs(value);
    if (first) {
      if (value < 0) out += '-';
    } else {
      out += value < 0 ? " - " : " + ";
    }
    first = false;
    if (degree == 0) {
      out += to_string(magnitude);
      continue;
    }
    if (magnitude != 1) out += to_string(magnitude) + "*";
    out += 'x';
    if (degree != 1) out += "^" + std::to_string(degree);
  }
  return out;
}

double Potential::evaluate(double x) const {
  double sum = 0.0;
  int power = degree();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    for (; power > it->first; --power) sum *= x;
    sum += it->second.get_d();
  }
  for (; power > 0; --power) sum *= x;
  return sum;
}

Potential anharmonic(const Rational& mu2, const Rational& g, int k) {
  if (g <= 0) throw std::invalid_argument("anharmonic coupling g must be positive");
  if (k < 1) throw std::invalid_argument("anharmonic exponent k must be >= 1");
  std::map<int, Rational> coeffs;
  coeffs[2] += mu2;
  coeffs[2 * k] += g;
  return Potential(std::move(coeffs));
}

Potential double_well(const Rational& depth) { return anharmonic(-depth, Rational(1), 2); }

Potential morse_series(const Rational& v0, const Rational& lambda, int max_degree) {
  if (v0 <= 0) throw std::invalid_argument("Morse depth V0 must be positive");
  if (lambda == 0) throw std::invalid_argument("Morse range parameter lambda must be nonzero");
  if (max_degree < 2) throw std::invalid_argument("Morse truncation degree must be >= 2");

  std::map<int, Rational> coeffs;
  mpz_class factorial = 1;
  mpz_class minus_two_pow = 1;  // (-2)^j
  Rational lambda_pow = 1;
  for (int j = 1; j <= max_degree; ++j) {
    factorial *= j;
    minus_two_pow *= -2;
    lambda_pow *= lambda;
    mpz_class numerator = minus_two_pow - (j % 2 == 0 ? 2 : -2);
    if (numerator == 0) continue;
    coeffs[j] = v0 * lambda_pow * Rational(numerator, factorial);
    coeffs[j].canonicalize();
  }
  return Potential(std::move(coeffs),
                   "morse(V0=" + to_string(v0) + ", lambda=" + to_string(lambda) + ", J=" +
                       std::to_string(max_degree) + ")");
}

namespace {

class PotentialParser {
 public:
  explicit PotentialParser(std::string_view text) : text_(text) {}

  Potential parse() {
    std::map<int, Rational> coeffs;
    skip_space();
    if (at_end()) throw ParseError("empty potential expression", pos_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      auto [coeff, degree] = term();
      coeffs[degree] += sign * coeff;
      skip_space();
    }
    return Potential(std::move(coeffs));
  }

 private:
  std::pair<Rational, int> term() {
    Rational coeff = 1;
    bool have_literal = false;
    if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) != 0 || peek() == '.')) {
      coeff = literal();
      have_literal = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        if (at_end() || peek() != 'x') throw ParseError("expected 'x' after '*'", pos_);
      }
    }
    if (at_end() || peek() != 'x') {
      if (!have_literal) throw ParseError("expected a number or 'x'", pos_);
      return {coeff, 0};
    }
    ++pos_;  // 'x'
    skip_space();
    int degree = 1;
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      if (!at_end() && peek() == '-') throw ParseError("negative exponent", pos_);
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", pos_);
      if (pos_ - start > 6) throw ParseError("exponent too large", start);
      degree = std::stoi(std::string(text_.substr(start, pos_ - start)));
    }
    return {coeff, degree};
  }

  Rational literal() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
    };
    digits();
    if (!at_end() && peek() == '.') {
      ++pos_;
      digits();
    } else if (!at_end() && peek() == '/') {
      ++pos_;
      std::size_t den_start = pos_;
      digits();
      if (den_start == pos_) throw ParseError("expected denominator", pos_);
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), start);
    }
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())) != 0) ++pos_;
  }
  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Potential parse_potential(std::string_view expr) { return PotentialParser(expr).parse(); }

}  // namespace boxseries
