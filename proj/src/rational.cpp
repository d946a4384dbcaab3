#include "conelab/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace conelab {

Rational rational_from_decimal(const std::string& int_digits,
                               const std::string& frac_digits) {
  mpz_class num(int_digits.empty() ? "0" : int_digits);
  mpz_class den(1);
  for (char c : frac_digits) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::optional<Rational> rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents p_k/q_k of |x|.
  const bool neg = x < 0;
  double v = std::fabs(x);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(v);
    if (fl > 9e17) break;
    std::int64_t a = static_cast<std::int64_t>(fl);
    if (q1 != 0 && (max_den - q0) / q1 < a) break;  // next q would overflow cap
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = v - fl;
    if (rem < 1e-15 * std::max(1.0, std::fabs(x))) break;
    v = 1.0 / rem;
  }
  if (q1 == 0) return std::nullopt;
  Rational q(static_cast<long>(neg ? -p1 : p1), static_cast<long>(q1));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_str();
}

}  // namespace conelab
