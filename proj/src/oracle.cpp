#include "boxseries/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace boxseries {

namespace {

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace

MorseParams make_morse_params(const Rational& v0, const Rational& lambda) {
  if (v0 <= 0) throw std::invalid_argument("Morse depth V0 must be positive");
  if (lambda == 0) throw std::invalid_argument("Morse range parameter lambda must be nonzero");
  MorseParams p{v0, lambda, -1};
  const Rational scale = abs(lambda);
  // Bound states satisfy n < s with s = sqrt(V0)/|lambda| - 1/2.
  if (auto root = exact_sqrt(v0)) {
    Rational s = *root / scale - Rational(1, 2);
    if (s > 0) {
      mpz_class ceil_s;
      mpz_cdiv_q(ceil_s.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
      p.n_max = static_cast<int>(ceil_s.get_si()) - 1;
    }
  } else {
    const long bits = digits_to_bits(60);
    BigReal s = sqrt(BigReal(v0, bits)) / BigReal(scale, bits) - BigReal(Rational(1, 2), bits);
    if (s.sign() > 0) {
      BigReal c(0L, bits);
      mpfr_ceil(c.raw(), s.raw());
      p.n_max = static_cast<int>(mpfr_get_si(c.raw(), MPFR_RNDN)) - 1;
    }
  }
  return p;
}

BigReal morse_exact_energy(const MorseParams& params, int n, const PrecisionContext& ctx) {
  if (n < 0 || n > params.n_max) {
    throw std::invalid_argument("Morse level " + std::to_string(n) + " outside bound range 0.." +
                                std::to_string(params.n_max));
  }
  const long bits = ctx.working_bits();
  const Rational scale = abs(params.lambda);
  const Rational half_n = Rational(2 * n + 1, 2);
  if (auto root = exact_sqrt(params.v0)) {
    Rational e = 2 * scale * *root * half_n - scale * scale * half_n * half_n;
    return BigReal(e, bits);
  }
  BigReal root = sqrt(BigReal(params.v0, bits));
  BigReal e = root * BigReal(Rational(2 * scale * half_n), bits);
  e -= BigReal(Rational(scale * scale * half_n * half_n), bits);
  return e;
}

double morse_ground_state(const MorseParams& params, double x) {
  if (params.n_max < 0) throw std::invalid_argument("Morse well has no bound state");
  const double lambda = params.lambda.get_d();
  const double root = std::sqrt(params.v0.get_d());
  const double s = root / std::abs(lambda) - 0.5;
  const double log_z = std::log(2.0 * root / std::abs(lambda)) - lambda * x;
  const double z = std::exp(log_z);
  return std::exp(s * log_z - z / 2.0 - (s * std::log(2.0 * s) - s));
}

BigReal square_well_energy(const Rational& half_width, int n, const PrecisionContext& ctx) {
  if (n < 1) throw std::invalid_argument("square-well level must be >= 1");
  if (half_width <= 0) throw std::invalid_argument("half width L must be positive");
  const long bits = ctx.working_bits();
  BigReal k = BigReal::pi(bits) * static_cast<long>(n) / BigReal(Rational(2 * half_width), bits);
  return k * k;
}

std::vector<double> fd_eigenvalues(const Potential& potential, double half_width, int grid_points, int count) {
  if (!(half_width > 0)) throw std::invalid_argument("half width L must be positive");
  if (grid_points < 16) throw std::invalid_argument("finite-difference grid needs at least 16 points");
  if (grid_points > 200000) throw std::invalid_argument("finite-difference grid too large");
  if (count < 1 || count > grid_points / 4) throw std::invalid_argument("count must lie in 1..grid_points/4");

  const double h = 2.0 * half_width / (grid_points + 1);
  const double inv_h2 = 1.0 / (h * h);
  Eigen::VectorXd diag(grid_points);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(grid_points - 1, -inv_h2);
  for (int i = 0; i < grid_points; ++i) {
    const double x = -half_width + (i + 1) * h;
    diag(i) = 2.0 * inv_h2 + potential.evaluate(x);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolver failed");
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  return {values.data(), values.data() + count};
}

}  // namespace boxseries
