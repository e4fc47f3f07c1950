#include "aqs/scalar.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <stdexcept>

#include "aqs/error.hpp"

namespace aqs {

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("AQS_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1e-9;
}

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> tau{initial_tolerance()};
  return tau;
}

}  // namespace

double tolerance() { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tolerance(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tolerance must be positive");
  tolerance_slot().store(tau, std::memory_order_relaxed);
}

const char* to_string(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::Parse: return "parse";
    case ErrorFamily::Precondition: return "precondition";
    case ErrorFamily::Internal: return "internal";
  }
  return "unknown";
}

namespace detail {
namespace {

using Terms = std::vector<std::pair<std::uint32_t, mpq_class>>;

constexpr std::size_t kMaxRadicals = 32;

void sort_and_merge(Terms& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Terms out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const auto& t) { return sgn(t.second) == 0; });
  terms = std::move(out);
}

// Pairwise-coprime refinement of a multiset of integers > 1: every input is a
// product of powers of the outputs.  Each split strictly lowers the product.
std::vector<mpz_class> coprime_refine(std::vector<mpz_class> xs) {
  std::erase_if(xs, [](const mpz_class& x) { return x <= 1; });
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < xs.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < xs.size() && !changed; ++j) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), xs[i].get_mpz_t(), xs[j].get_mpz_t());
        if (g == 1) continue;
        changed = true;
        if (xs[i] == xs[j]) {
          xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(j));
          break;
        }
        const mpz_class a = xs[i] / g;
        const mpz_class b = xs[j] / g;
        xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(j));
        xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(i));
        for (const mpz_class* v : std::array<const mpz_class*, 3>{&g, &a, &b}) {
          if (*v > 1) xs.push_back(*v);
        }
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

mpz_class mask_product(const std::vector<mpz_class>& base, std::uint32_t mask) {
  mpz_class p = 1;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (mask & (1u << i)) p *= base[i];
  }
  return p;
}

// Re-express `s` over the coprime refinement `refined` of a superset of its base.
Surd rebase(const Surd& s, const std::vector<mpz_class>& refined,
            const std::vector<mpz_class>& roots /* root or 0 per refined entry */,
            const std::vector<mpz_class>& new_base) {
  // exponent table: old base element -> exponents over `refined`
  std::vector<std::vector<unsigned long>> exps(s.base.size(),
                                               std::vector<unsigned long>(refined.size(), 0));
  for (std::size_t i = 0; i < s.base.size(); ++i) {
    mpz_class x = s.base[i];
    for (std::size_t c = 0; c < refined.size(); ++c) {
      while (mpz_divisible_p(x.get_mpz_t(), refined[c].get_mpz_t())) {
        x /= refined[c];
        ++exps[i][c];
      }
    }
    if (x != 1) throw std::logic_error("coprime refinement does not cover radicand");
  }
  std::vector<int> new_index(refined.size(), -1);
  for (std::size_t c = 0; c < refined.size(); ++c) {
    if (roots[c] != 0) continue;
    const auto it = std::lower_bound(new_base.begin(), new_base.end(), refined[c]);
    new_index[c] = static_cast<int>(it - new_base.begin());
  }

  Surd out;
  out.base = new_base;
  for (const auto& [mask, q] : s.terms) {
    std::vector<unsigned long> e(refined.size(), 0);
    for (std::size_t i = 0; i < s.base.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      for (std::size_t c = 0; c < refined.size(); ++c) e[c] += exps[i][c];
    }
    mpz_class factor = 1;
    std::uint32_t new_mask = 0;
    for (std::size_t c = 0; c < refined.size(); ++c) {
      if (e[c] == 0) continue;
      mpz_class p;
      if (roots[c] != 0) {
        mpz_pow_ui(p.get_mpz_t(), roots[c].get_mpz_t(), e[c]);
      } else {
        mpz_pow_ui(p.get_mpz_t(), refined[c].get_mpz_t(), e[c] / 2);
        if (e[c] % 2) new_mask |= 1u << new_index[c];
      }
      factor *= p;
    }
    out.terms.emplace_back(new_mask, q * mpq_class(factor));
  }
  sort_and_merge(out.terms);
  return out;
}

std::pair<Surd, Surd> unify(const Surd& a, const Surd& b) {
  if (a.base == b.base) return {a, b};
  std::vector<mpz_class> all = a.base;
  all.insert(all.end(), b.base.begin(), b.base.end());
  const auto refined = coprime_refine(std::move(all));
  std::vector<mpz_class> roots(refined.size(), 0);
  std::vector<mpz_class> new_base;
  for (std::size_t c = 0; c < refined.size(); ++c) {
    if (mpz_perfect_square_p(refined[c].get_mpz_t())) {
      mpz_sqrt(roots[c].get_mpz_t(), refined[c].get_mpz_t());
    } else {
      new_base.push_back(refined[c]);
    }
  }
  if (new_base.size() > kMaxRadicals) throw std::length_error("too many adjoined square roots");
  return {rebase(a, refined, roots, new_base), rebase(b, refined, roots, new_base)};
}

// Drops unused radicands and zero terms.
void compress(Surd& s) {
  sort_and_merge(s.terms);
  std::uint32_t used = 0;
  for (const auto& t : s.terms) used |= t.first;
  std::vector<int> remap(s.base.size(), -1);
  std::vector<mpz_class> base;
  for (std::size_t i = 0; i < s.base.size(); ++i) {
    if (used & (1u << i)) {
      remap[i] = static_cast<int>(base.size());
      base.push_back(s.base[i]);
    }
  }
  for (auto& t : s.terms) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < s.base.size(); ++i) {
      if (t.first & (1u << i)) m |= 1u << remap[i];
    }
    t.first = m;
  }
  s.base = std::move(base);
  sort_and_merge(s.terms);
}

Surd add_same(const Surd& a, const Surd& b, int sign_b) {
  Surd out;
  out.base = a.base;
  out.terms = a.terms;
  for (const auto& [m, q] : b.terms) out.terms.emplace_back(m, sign_b > 0 ? q : mpq_class(-q));
  sort_and_merge(out.terms);
  return out;
}

Surd mul_same(const Surd& a, const Surd& b) {
  Surd out;
  out.base = a.base;
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& [ma, qa] : a.terms) {
    for (const auto& [mb, qb] : b.terms) {
      const std::uint32_t common = ma & mb;
      mpq_class c = qa * qb;
      if (common) c *= mpq_class(mask_product(a.base, common));
      out.terms.emplace_back(ma ^ mb, std::move(c));
    }
  }
  sort_and_merge(out.terms);
  return out;
}

int highest_bit(const Surd& s) {
  int t = -1;
  for (const auto& term : s.terms) {
    for (int i = 31; i > t; --i) {
      if (term.first & (1u << i)) {
        t = i;
        break;
      }
    }
  }
  return t;
}

// x = u + v*sqrt(base[t]) with u, v free of bit t.
void split(const Surd& x, int t, Surd& u, Surd& v) {
  u.base = x.base;
  v.base = x.base;
  u.terms.clear();
  v.terms.clear();
  for (const auto& [m, q] : x.terms) {
    if (m & (1u << t)) {
      v.terms.emplace_back(m & ~(1u << t), q);
    } else {
      u.terms.emplace_back(m, q);
    }
  }
  sort_and_merge(u.terms);
  sort_and_merge(v.terms);
}

Surd scaled(const Surd& x, const mpq_class& c) {
  Surd out = x;
  for (auto& t : out.terms) t.second *= c;
  sort_and_merge(out.terms);
  return out;
}

int surd_sign(const Surd& x) {
  if (x.terms.empty()) return 0;
  const int t = highest_bit(x);
  if (t < 0) return sgn(x.terms.front().second);
  Surd u, v;
  split(x, t, u, v);
  const int su = surd_sign(u);
  const int sv = surd_sign(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // opposite signs: compare u^2 with b v^2
  const Surd w = add_same(mul_same(u, u), scaled(mul_same(v, v), mpq_class(x.base[t])), -1);
  return su * surd_sign(w);
}

Surd surd_inverse(const Surd& x) {
  if (x.terms.empty()) throw std::domain_error("division by zero");
  const int t = highest_bit(x);
  if (t < 0) {
    Surd out;
    out.base = x.base;
    out.terms.emplace_back(0u, 1 / x.terms.front().second);
    return out;
  }
  Surd u, v;
  split(x, t, u, v);
  // 1/(u + v sqrt b) = (u - v sqrt b) / (u^2 - b v^2)
  Surd conj = u;
  for (const auto& [m, q] : v.terms) conj.terms.emplace_back(m | (1u << t), -q);
  sort_and_merge(conj.terms);
  const Surd norm = add_same(mul_same(u, u), scaled(mul_same(v, v), mpq_class(x.base[t])), -1);
  return mul_same(conj, surd_inverse(norm));
}

Surd as_surd(const mpq_class& q) {
  Surd s;
  if (sgn(q) != 0) s.terms.emplace_back(0u, q);
  return s;
}

// Removes square factors p^2 for small primes p and folds a square remainder.
void reduce_radicand(mpz_class& m, mpz_class& outside) {
  outside = 1;
  for (unsigned long p = 2; p < 2000; p += (p == 2 ? 1 : 2)) {
    const mpz_class p2 = p * p;
    if (p2 > m) break;
    while (mpz_divisible_p(m.get_mpz_t(), p2.get_mpz_t())) {
      m /= p2;
      outside *= p;
    }
  }
  if (mpz_perfect_square_p(m.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    outside *= r;
    m = 1;
  }
}

}  // namespace
}  // namespace detail

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar::Scalar(long num, long den) : value_(mpq_class(num, den)) {
  if (den == 0) throw std::domain_error("zero denominator");
  std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::from_surd(detail::Surd s) {
  detail::compress(s);
  if (s.terms.empty()) return Scalar(0);
  if (s.base.empty()) return Scalar(s.terms.front().second);
  return Scalar(SurdPtr(std::make_shared<const detail::Surd>(std::move(s))));
}

const mpq_class& Scalar::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw std::logic_error("scalar is not rational: " + str());
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_d();
  if (const auto* f = std::get_if<Float>(&value_)) return f->v;
  const auto& s = *std::get<SurdPtr>(value_);
  double v = 0.0;
  for (const auto& [m, q] : s.terms) {
    v += q.get_d() * std::sqrt(detail::mask_product(s.base, m).get_d());
  }
  return v;
}

bool Scalar::is_zero() const {
  // a stored surd is compressed and has an irrational term, so it is never zero
  if (std::holds_alternative<SurdPtr>(value_)) return false;
  return sign() == 0;
}

int Scalar::sign() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q);
  if (const auto* f = std::get_if<Float>(&value_)) {
    if (std::abs(f->v) <= tolerance()) return 0;
    return f->v < 0 ? -1 : 1;
  }
  return detail::surd_sign(*std::get<SurdPtr>(value_));
}

namespace {

std::string float_str(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string Scalar::str() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  if (const auto* f = std::get_if<Float>(&value_)) return float_str(f->v);
  const auto& s = *std::get<SurdPtr>(value_);
  std::string out;
  for (const auto& [m, q] : s.terms) {
    const bool neg = sgn(q) < 0;
    const mpq_class mag = neg ? mpq_class(-q) : q;
    std::string term;
    if (m == 0) {
      term = mag.get_str();
    } else {
      const std::string rad = "sqrt(" + detail::mask_product(s.base, m).get_str() + ")";
      term = (mag == 1) ? rad : mag.get_str() + "*" + rad;
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  if (const auto* f = std::get_if<Float>(&value_)) return Scalar(Float{-f->v});
  return from_surd(detail::scaled(*std::get<SurdPtr>(value_), mpq_class(-1)));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_float() || b.is_float()) return Scalar::from_double(a.to_double() + b.to_double());
  if (a.is_rational() && b.is_rational()) return Scalar(mpq_class(a.rational() + b.rational()));
  if (a.is_rational() || b.is_rational()) {
    const Scalar& r = a.is_rational() ? a : b;
    detail::Surd out = *std::get<Scalar::SurdPtr>((a.is_rational() ? b : a).value_);
    if (sgn(r.rational()) == 0) return a.is_rational() ? b : a;
    out.terms.emplace_back(0u, r.rational());
    return Scalar::from_surd(std::move(out));
  }
  const auto& pa = *std::get<Scalar::SurdPtr>(a.value_);
  const auto& pb = *std::get<Scalar::SurdPtr>(b.value_);
  if (pa.base == pb.base) return Scalar::from_surd(detail::add_same(pa, pb, +1));
  const auto sa = a.is_rational() ? detail::as_surd(a.rational()) : *std::get<Scalar::SurdPtr>(a.value_);
  const auto sb = b.is_rational() ? detail::as_surd(b.rational()) : *std::get<Scalar::SurdPtr>(b.value_);
  auto [ua, ub] = detail::unify(sa, sb);
  return Scalar::from_surd(detail::add_same(ua, ub, +1));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_float() || b.is_float()) return Scalar::from_double(a.to_double() - b.to_double());
  if (a.is_rational() && b.is_rational()) return Scalar(mpq_class(a.rational() - b.rational()));
  return a + (-b);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_float() || b.is_float()) return Scalar::from_double(a.to_double() * b.to_double());
  if (a.is_rational() && b.is_rational()) return Scalar(mpq_class(a.rational() * b.rational()));
  if (a.is_rational()) {
    if (sgn(a.rational()) == 0) return Scalar(0);
    return Scalar::from_surd(detail::scaled(*std::get<Scalar::SurdPtr>(b.value_), a.rational()));
  }
  if (b.is_rational()) return b * a;
  const auto& pa = *std::get<Scalar::SurdPtr>(a.value_);
  const auto& pb = *std::get<Scalar::SurdPtr>(b.value_);
  if (pa.base == pb.base) return Scalar::from_surd(detail::mul_same(pa, pb));
  auto [ua, ub] = detail::unify(*std::get<Scalar::SurdPtr>(a.value_), *std::get<Scalar::SurdPtr>(b.value_));
  return Scalar::from_surd(detail::mul_same(ua, ub));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.is_float() || b.is_float()) return Scalar::from_double(a.to_double() / b.to_double());
  if (b.is_rational()) {
    if (sgn(b.rational()) == 0) throw std::domain_error("division by zero");
    if (a.is_rational()) return Scalar(mpq_class(a.rational() / b.rational()));
    return Scalar::from_surd(detail::scaled(*std::get<Scalar::SurdPtr>(a.value_), 1 / b.rational()));
  }
  return a * Scalar::from_surd(detail::surd_inverse(*std::get<Scalar::SurdPtr>(b.value_)));
}

Scalar Scalar::sqrt(const Scalar& x) {
  if (x.is_float()) {
    const double v = x.to_double();
    if (v < -tolerance()) throw std::domain_error("square root of a negative number");
    return from_double(std::sqrt(std::max(v, 0.0)));
  }
  if (!x.is_rational()) {
    throw precondition_error("NestedRadical", "square root of an irrational tower element: " + x.str());
  }
  const mpq_class& q = x.rational();
  if (sgn(q) < 0) throw std::domain_error("square root of a negative number");
  if (sgn(q) == 0) return Scalar(0);
  // sqrt(n/d) = sqrt(n d) / d
  mpz_class m = q.get_num() * q.get_den();
  mpz_class outside;
  detail::reduce_radicand(m, outside);
  const mpq_class coeff(outside, q.get_den());
  if (m == 1) return Scalar(mpq_class(coeff));
  detail::Surd s;
  s.base.push_back(m);
  s.terms.emplace_back(1u, coeff);
  s.terms.front().second.canonicalize();
  return from_surd(std::move(s));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Unsigned rational literal: "p", "p/q" or "a.b" (decimal, converted exactly).
mpq_class parse_unsigned_rational(std::string_view s, std::string_view whole) {
  s = trim(s);
  const auto bad = [&] { return parse_error("ScalarParse", "malformed scalar '" + std::string(whole) + "'"); };
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = trim(s.substr(0, slash));
    const auto den = trim(s.substr(slash + 1));
    if (!is_digits(num) || !is_digits(den)) throw bad();
    const mpz_class d(std::string(den), 10);
    if (d == 0) throw bad();
    mpq_class q{mpz_class(std::string(num), 10), d};
    q.canonicalize();
    return q;
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto ip = s.substr(0, dot);
    const auto fp = s.substr(dot + 1);
    if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp)) || (ip.empty() && fp.empty())) {
      throw bad();
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    mpq_class q(mpz_class(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10), den);
    q.canonicalize();
    return q;
  }
  if (!is_digits(s)) throw bad();
  return mpq_class(mpz_class(std::string(s), 10));
}

Scalar parse_exact_term(std::string_view term, std::string_view whole) {
  term = trim(term);
  const auto bad = [&] { return parse_error("ScalarParse", "malformed scalar '" + std::string(whole) + "'"); };
  const auto pos = term.find("sqrt(");
  if (pos == std::string_view::npos) return Scalar(parse_unsigned_rational(term, whole));
  if (term.back() != ')') throw bad();
  const auto rad = term.substr(pos + 5, term.size() - pos - 6);
  Scalar coeff(1);
  auto head = trim(term.substr(0, pos));
  if (!head.empty()) {
    if (head.back() != '*') throw bad();
    head.remove_suffix(1);
    coeff = Scalar(parse_unsigned_rational(head, whole));
  }
  return coeff * Scalar::sqrt(Scalar(parse_unsigned_rational(rad, whole)));
}

}  // namespace

Scalar Scalar::parse(std::string_view text, bool float_mode) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.empty()) throw parse_error("ScalarParse", "empty scalar");
  if (float_mode) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec == std::errc() && res.ptr == text.data() + text.size()) return from_double(v);
    if (text.find('/') != std::string_view::npos || text.find("sqrt") != std::string_view::npos) {
      return parse(text, false).to_float();
    }
    throw parse_error("ScalarParse", "malformed float scalar '" + std::string(whole) + "'");
  }
  // split on top-level + / - (not inside parentheses, not a leading sign)
  Scalar total(0);
  int sign = 1;
  std::size_t start = 0;
  if (text.front() == '-' || text.front() == '+') {
    sign = text.front() == '-' ? -1 : 1;
    start = 1;
  }
  int depth = 0;
  for (std::size_t i = start; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : '\0';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '\0' || (depth == 0 && (c == '+' || c == '-') && i > start)) {
      const auto term = text.substr(start, i - start);
      if (trim(term).empty()) throw parse_error("ScalarParse", "malformed scalar '" + std::string(whole) + "'");
      const Scalar t = parse_exact_term(term, whole);
      total += sign > 0 ? t : -t;
      if (c != '\0') sign = c == '-' ? -1 : 1;
      start = i + 1;
    }
  }
  if (depth != 0) throw parse_error("ScalarParse", "unbalanced parentheses in '" + std::string(whole) + "'");
  return total;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace aqs
