#include "aqs/polynomial.hpp"

#include <stdexcept>
#include <utility>

namespace aqs::poly {

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (sgn(p[static_cast<std::size_t>(i)]) != 0) return i;
  }
  return -1;
}

mpq_class eval(const Poly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

void divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem) {
  const int dd = degree(den);
  if (dd < 0) throw std::domain_error("polynomial division by zero");
  rem = num;
  trim(rem);
  const int dn = degree(rem);
  quot.assign(dn >= dd ? static_cast<std::size_t>(dn - dd + 1) : 0, mpq_class(0));
  const mpq_class lead = den[static_cast<std::size_t>(dd)];
  while (degree(rem) >= dd) {
    const int dr = degree(rem);
    const mpq_class f = rem[static_cast<std::size_t>(dr)] / lead;
    const std::size_t shift = static_cast<std::size_t>(dr - dd);
    quot[shift] = f;
    for (int i = 0; i <= dd; ++i) {
      rem[shift + static_cast<std::size_t>(i)] -= f * den[static_cast<std::size_t>(i)];
    }
    trim(rem);
  }
  trim(quot);
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (degree(b) >= 0) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (degree(a) >= 0) {
    const mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Poly squarefree_part(const Poly& p) {
  Poly q, r;
  divmod(p, gcd(p, derivative(p)), q, r);
  return q;
}

namespace {

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> seq{p, derivative(p)};
  while (degree(seq.back()) > 0) {
    Poly q, r;
    divmod(seq[seq.size() - 2], seq.back(), q, r);
    for (auto& c : r) c = -c;
    if (degree(r) < 0) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

int variations(const std::vector<Poly>& seq, const mpq_class& x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int v = sgn(eval(s, x));
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

mpq_class cauchy_bound(const Poly& p) {
  const int d = degree(p);
  mpq_class m = 0;
  for (int i = 0; i < d; ++i) {
    const mpq_class r = abs(p[static_cast<std::size_t>(i)] / p[static_cast<std::size_t>(d)]);
    if (r > m) m = r;
  }
  return m + 1;
}

// Primitive integer multiple's leading coefficient.
mpz_class integer_leading(const Poly& p) {
  mpz_class den_lcm = 1;
  for (const auto& c : p) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  mpz_class content = 0;
  for (const auto& c : p) {
    const mpz_class v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  const mpz_class lead = p.back().get_num() * (den_lcm / p.back().get_den());
  return abs(lead / content);
}

}  // namespace

int count_real_roots(const Poly& p, const mpq_class& a, const mpq_class& b) {
  const Poly sf = squarefree_part(p);
  if (degree(sf) <= 0) return 0;
  const auto seq = sturm_sequence(sf);
  return variations(seq, a) - variations(seq, b);
}

int count_real_roots(const Poly& p) {
  const Poly sf = squarefree_part(p);
  if (degree(sf) <= 0) return 0;
  const mpq_class bound = cauchy_bound(sf);
  return count_real_roots(sf, -bound, bound);
}

mpq_class simplest_rational(mpq_class a, mpq_class b) {
  if (a > b) std::swap(a, b);
  if (sgn(a) <= 0 && sgn(b) >= 0) return 0;
  if (sgn(b) < 0) return -simplest_rational(-b, -a);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  if (mpq_class(n) == a) return a;
  if (mpq_class(n + 1) <= b) return mpq_class(n + 1);
  // a, b in (n, n+1): recurse on reciprocals of the fractional parts
  const mpq_class inner = simplest_rational(1 / (b - n), 1 / (a - n));
  return mpq_class(n) + 1 / inner;
}

RootReport analyze_roots(const Poly& p_in) {
  Poly p = p_in;
  trim(p);
  RootReport report;
  if (degree(p) <= 0) return report;
  const Poly sf = squarefree_part(p);
  report.distinct_roots = degree(sf);
  const auto seq = sturm_sequence(sf);
  const mpq_class bound = cauchy_bound(sf);
  const auto count = [&](const mpq_class& a, const mpq_class& b) {
    return variations(seq, a) - variations(seq, b);
  };
  report.distinct_real_roots = count(-bound, bound);

  const mpz_class lc = integer_leading(sf);
  const mpq_class width_goal(1, lc * lc);

  std::vector<std::pair<mpq_class, mpq_class>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int c = count(a, b);
    if (c == 0) continue;
    if (c > 1) {
      const mpq_class mid = (a + b) / 2;
      stack.emplace_back(a, mid);
      stack.emplace_back(mid, b);
      continue;
    }
    // exactly one root in (a, b]
    bool found = false;
    while (true) {
      if (sgn(eval(sf, b)) == 0) {
        report.rational_roots.push_back(b);
        found = true;
        break;
      }
      if (b - a < width_goal) break;
      const mpq_class mid = (a + b) / 2;
      if (count(a, mid) == 1) {
        b = mid;
      } else {
        a = mid;
      }
    }
    if (found) continue;
    const mpq_class candidate = simplest_rational(a, b);
    if (candidate.get_den() <= lc && sgn(eval(sf, candidate)) == 0) {
      report.rational_roots.push_back(candidate);
    }
  }
  std::sort(report.rational_roots.begin(), report.rational_roots.end());
  return report;
}

}  // namespace aqs::poly
