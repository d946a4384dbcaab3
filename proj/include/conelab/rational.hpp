#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace conelab {

// Exact rational scalar used by every symbolic operation. Floats appear
// only in the sampling/measure paths.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

// "3.25" -> 13/4. Exact, no float round trip.
Rational rational_from_decimal(const std::string& int_digits,
                               const std::string& frac_digits);

// Nearest rational with denominator <= max_den (continued fractions).
// Returns nullopt for non-finite input.
std::optional<Rational> rationalize(double x, std::int64_t max_den = 1000000);

std::string to_string(const Rational& q);

}  // namespace conelab
