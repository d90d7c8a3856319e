#include "catiso/poly.hpp"

#include <sstream>

namespace catiso {

Polynomial::Polynomial(BigInt constant) {
  if (constant != 0) terms_.emplace(0, std::move(constant));
}

Polynomial Polynomial::monomial(std::uint64_t exponent, BigInt coefficient) {
  Polynomial p;
  p.add_term(exponent, coefficient);
  return p;
}

Polynomial Polynomial::from_dense(const std::vector<BigInt>& coefficients) {
  Polynomial p;
  for (std::size_t e = 0; e < coefficients.size(); ++e) p.add_term(e, coefficients[e]);
  return p;
}

void Polynomial::add_term(std::uint64_t exponent, const BigInt& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

std::uint64_t Polynomial::degree() const {
  if (terms_.empty()) throw PreconditionError("degree of the zero polynomial");
  return terms_.rbegin()->first;
}

std::uint64_t Polynomial::min_degree() const {
  if (terms_.empty()) throw PreconditionError("min degree of the zero polynomial");
  return terms_.begin()->first;
}

BigInt Polynomial::coefficient(std::uint64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

std::vector<BigInt> Polynomial::dense() const {
  if (terms_.empty()) return {};
  std::vector<BigInt> out(degree() + 1, 0);
  for (const auto& [e, c] : terms_) out[e] = c;
  return out;
}

BigInt Polynomial::evaluate(const BigInt& y) const {
  BigInt result = 0;
  std::uint64_t current = terms_.empty() ? 0 : degree();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    while (current > it->first) {
      result *= y;
      --current;
    }
    result += it->second;
  }
  while (current > 0) {
    result *= y;
    --current;
  }
  return result;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  Polynomial remainder = a;
  Polynomial quotient;
  const std::uint64_t lead_exp = b.degree();
  const BigInt& lead = b.terms_.rbegin()->second;
  while (!remainder.is_zero()) {
    const std::uint64_t top = remainder.degree();
    if (top < lead_exp) throw CorruptionError("inexact polynomial division");
    const BigInt& coef = remainder.terms_.rbegin()->second;
    if (coef % lead != 0) throw CorruptionError("inexact polynomial division");
    Polynomial step = Polynomial::monomial(top - lead_exp, coef / lead);
    quotient += step;
    remainder -= step * b;
  }
  return quotient;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    out << it->second;
    if (it->first > 0) out << "*y^" << it->first;
  }
  return out.str();
}

}  // namespace catiso
