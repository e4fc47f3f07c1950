#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace aqs {

/// Tolerance used by every equality/zero test on float-mode scalars.
/// Initialized from the AQS_TOLERANCE environment variable when set, else 1e-9.
double tolerance();
void set_tolerance(double tau);

namespace detail {

/// Element of a multiquadratic field Q(sqrt(b_1), ..., sqrt(b_k)).
///
/// The radicands b_i are integers > 1, pairwise coprime and not perfect squares,
/// so the square roots of their subset products are linearly independent over Q
/// and the representation below is unique for a fixed base.  Bit i of a mask
/// selects b_i; the term (mask, q) stands for q * sqrt(prod_{i in mask} b_i).
struct Surd {
  std::vector<mpz_class> base;
  std::vector<std::pair<std::uint32_t, mpq_class>> terms;  // sorted by mask, nonzero coefficients
};

}  // namespace detail

/// Real scalar used throughout the library.
///
/// Exact mode holds a rational or, once a square root of a positive rational has
/// been adjoined, an element of the multiquadratic tower over Q.  Float mode holds
/// a double and compares against `tolerance()`.  Mixing the two promotes to float.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(int v) : value_(mpq_class(v)) {}
  Scalar(long v) : value_(mpq_class(v)) {}
  Scalar(long long v) : value_(mpq_class(mpz_class(std::to_string(v), 10))) {}
  Scalar(unsigned long v) : value_(mpq_class(v)) {}
  Scalar(mpq_class q);
  Scalar(long num, long den);

  static Scalar from_double(double v) { return Scalar(Float{v}); }

  /// Parses "p", "p/q", "c*sqrt(m) + ..." (exact) or a decimal literal (float).
  /// Throws aqs::Error (Parse family) on malformed text.
  static Scalar parse(std::string_view text, bool float_mode = false);

  /// Square root of a nonnegative rational (exact) or of any nonnegative float.
  static Scalar sqrt(const Scalar& x);

  bool is_float() const { return std::holds_alternative<Float>(value_); }
  bool is_exact() const { return !is_float(); }
  bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }

  /// Rational value; throws if the scalar is float or irrational.
  const mpq_class& rational() const;
  double to_double() const;
  Scalar to_float() const { return from_double(to_double()); }

  bool is_zero() const;
  /// Exact sign in exact mode; in float mode values within tolerance are 0.
  int sign() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  std::string str() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) {
    if (auto* q = std::get_if<mpq_class>(&value_); q && o.is_rational()) {
      *q += o.rational();
      return *this;
    }
    return *this = *this + o;
  }
  Scalar& operator-=(const Scalar& o) {
    if (auto* q = std::get_if<mpq_class>(&value_); q && o.is_rational()) {
      *q -= o.rational();
      return *this;
    }
    return *this = *this - o;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Float {
    double v;
  };
  using SurdPtr = std::shared_ptr<const detail::Surd>;

  explicit Scalar(Float f) : value_(f) {}
  explicit Scalar(SurdPtr p) : value_(std::move(p)) {}
  static Scalar from_surd(detail::Surd s);

  std::variant<mpq_class, SurdPtr, Float> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace aqs
