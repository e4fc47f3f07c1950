#pragma once

#include <gmpxx.h>

#include <vector>

namespace aqs::poly {

/// Dense univariate polynomial over Q, coefficients from the constant term up.
using Poly = std::vector<mpq_class>;

void trim(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
mpq_class eval(const Poly& p, const mpq_class& x);
Poly derivative(const Poly& p);
void divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem);
Poly gcd(Poly a, Poly b);  // monic
Poly squarefree_part(const Poly& p);

/// Number of distinct real roots in (a, b], by Sturm's theorem.
int count_real_roots(const Poly& p, const mpq_class& a, const mpq_class& b);
int count_real_roots(const Poly& p);

/// Simplest (smallest denominator) rational in the closed interval [a, b].
mpq_class simplest_rational(mpq_class a, mpq_class b);

/// Result of exact real-root analysis of a polynomial.
struct RootReport {
  std::vector<mpq_class> rational_roots;  ///< distinct, ascending
  int distinct_real_roots = 0;
  int distinct_roots = 0;                 ///< degree of the square-free part
  bool splits_over_q() const {
    return static_cast<int>(rational_roots.size()) == distinct_roots;
  }
};

/// Isolates real roots with Sturm sequences and decides rationality exactly:
/// a rational root p/q of a primitive integer polynomial has q | lc, so once an
/// isolating interval is shorter than 1/lc^2 its simplest fraction is the only
/// candidate.
RootReport analyze_roots(const Poly& p);

}  // namespace aqs::poly
