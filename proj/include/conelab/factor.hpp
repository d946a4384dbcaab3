#pragma once

#include <optional>
#include <vector>

#include "conelab/polynomial.hpp"

namespace conelab {

class factor_timeout : public poly_error {
 public:
  using poly_error::poly_error;
};

struct Factor {
  Polynomial poly;
  int multiplicity = 1;
};

// constant * prod factor_i^mult_i reassembles the input exactly. Factors are
// integer-primitive with positive leading coefficient, pairwise non-associate.
struct FactorList {
  Rational constant{1};
  std::vector<Factor> factors;
  Polynomial reassemble(int nvars) const;
};

// Canonical total order on polynomials (graded-lex term sequences).
int poly_cmp(const Polynomial& a, const Polynomial& b);

// Integer-primitive scaling with positive leading (graded-lex) coefficient.
Polynomial normalize_primitive(const Polynomial& f);

// gcd over Q[x1..xn], normalized as above; gcd(0,0) = 0.
Polynomial poly_gcd(const Polynomial& f, const Polynomial& g);

// Exact division, nullopt when g does not divide f.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

// Square-free decomposition (Yun per main variable, content recursion),
// then distinct linear forms split off each square-free factor — exact for
// bivariate homogeneous factors. Candidates recovered from numeric zero
// sets (three variables) are supplied by the cone module via
// try_divide_candidate.
FactorList square_free_factor(const Polynomial& f, int degree_cap = 24);

// Exact bivariate-homogeneous linear splitting of each factor.
void split_linear_factors(FactorList& fl);

// Trial-divides each factor by the candidate; on success the candidate and
// cofactor replace the factor. Returns true if anything split.
bool try_divide_candidate(FactorList& fl, const Polynomial& candidate);

}  // namespace conelab
