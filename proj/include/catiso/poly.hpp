#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "catiso/dag.hpp"
#include "catiso/errors.hpp"

namespace catiso {

// Sparse univariate polynomial over the integers.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(BigInt constant);  // NOLINT(google-explicit-constructor)
  static Polynomial monomial(std::uint64_t exponent, BigInt coefficient = 1);
  static Polynomial from_dense(const std::vector<BigInt>& coefficients);

  bool is_zero() const { return terms_.empty(); }
  // Highest exponent; requires a nonzero polynomial.
  std::uint64_t degree() const;
  std::uint64_t min_degree() const;
  BigInt coefficient(std::uint64_t exponent) const;
  const std::map<std::uint64_t, BigInt>& terms() const { return terms_; }
  std::vector<BigInt> dense() const;
  BigInt evaluate(const BigInt& y) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  // Exact division; throws CorruptionError when the remainder is nonzero.
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(std::uint64_t exponent, const BigInt& coefficient);
  std::map<std::uint64_t, BigInt> terms_;
};

inline bool is_zero(const BigInt& x) { return x == 0; }
inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

// Fraction-free Gaussian elimination (Bareiss). Ring needs +, -, *, exact /.
template <typename Ring>
Ring bareiss_determinant(std::vector<std::vector<Ring>> a) {
  const std::size_t n = a.size();
  if (n == 0) return Ring(BigInt(1));
  for (const auto& row : a) {
    if (row.size() != n) throw PreconditionError("determinant of a non-square matrix");
  }
  bool negate = false;
  Ring previous(BigInt(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(a[k][k])) {
      std::size_t pivot = k + 1;
      while (pivot < n && is_zero(a[pivot][k])) ++pivot;
      if (pivot == n) return Ring(BigInt(0));
      std::swap(a[k], a[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / previous;
      }
    }
    previous = a[k][k];
  }
  Ring det = a[n - 1][n - 1];
  return negate ? Ring(BigInt(0)) - det : det;
}

}  // namespace catiso
