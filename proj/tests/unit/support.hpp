#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "aqs/acm.hpp"
#include "aqs/linalg.hpp"

namespace aqs::test {

inline std::string data_path(const std::string& name) { return std::string(AQS_TEST_DATA_DIR) + "/" + name; }

/// Seed from AQS_SEED, else a fixed default so failures reproduce.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("AQS_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611ULL;
}

inline Scalar random_rational(std::mt19937_64& rng, int span = 5, int den = 3) {
  std::uniform_int_distribution<int> num(-span, span), d(1, den);
  return Scalar(num(rng), d(rng));
}

inline Scalar random_nonzero(std::mt19937_64& rng, int span = 5, int den = 3) {
  for (;;) {
    Scalar s = random_rational(rng, span, den);
    if (!s.is_zero()) return s;
  }
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int span = 2) {
  std::uniform_int_distribution<int> dist(-span, span);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  }
  return m;
}

inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n, int span = 2) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n, span);
    if (!determinant(m).is_zero()) return m;
  }
}

inline KForm random_form(std::mt19937_64& rng, std::size_t dim, std::size_t degree) {
  KForm f(dim, degree);
  std::uniform_int_distribution<int> keep(0, 2);
  for (std::size_t r = 0; r < f.size(); ++r) {
    if (keep(rng) != 0) f.coeff_at(r) = random_rational(rng);
  }
  return f;
}

}  // namespace aqs::test
