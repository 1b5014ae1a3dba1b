#include "cuspk/witt/polynomial.hpp"

#include <algorithm>

#include "cuspk/errors.hpp"

namespace cuspk::witt {

IntegerPolynomial IntegerPolynomial::constant(const BigInt& c) {
  IntegerPolynomial p;
  if (sgn(c) != 0) p.terms_.emplace(Monomial{}, c);
  return p;
}

IntegerPolynomial IntegerPolynomial::variable(std::uint16_t var, std::uint16_t exponent) {
  IntegerPolynomial p;
  if (exponent == 0)
    p.terms_.emplace(Monomial{}, BigInt(1));
  else
    p.terms_.emplace(Monomial{{var, exponent}}, BigInt(1));
  return p;
}

void IntegerPolynomial::add_term(const Monomial& m, const BigInt& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

IntegerPolynomial& IntegerPolynomial::operator+=(const IntegerPolynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator-=(const IntegerPolynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

IntegerPolynomial IntegerPolynomial::scaled(const BigInt& factor) const {
  IntegerPolynomial out;
  if (sgn(factor) == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c * factor);
  return out;
}

namespace {

Monomial multiply_monomials(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, static_cast<std::uint16_t>(a[i].second + b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

IntegerPolynomial operator*(const IntegerPolynomial& lhs, const IntegerPolynomial& rhs) {
  IntegerPolynomial out;
  for (const auto& [ma, ca] : lhs.terms_)
    for (const auto& [mb, cb] : rhs.terms_) out.add_term(multiply_monomials(ma, mb), ca * cb);
  return out;
}

IntegerPolynomial IntegerPolynomial::pow(unsigned n) const {
  IntegerPolynomial result = constant(1);
  IntegerPolynomial base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

IntegerPolynomial IntegerPolynomial::exact_divide(const BigInt& d) const {
  IntegerPolynomial out;
  for (const auto& [m, c] : terms_) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
      throw IntegrityError("inexact division of coefficient " + c.get_str() + " by " + d.get_str());
    BigInt q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    out.terms_.emplace_hint(out.terms_.end(), m, std::move(q));
  }
  return out;
}

std::vector<std::uint16_t> IntegerPolynomial::max_exponents(std::size_t num_vars) const {
  std::vector<std::uint16_t> out(num_vars, 0);
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) {
      if (v >= num_vars) throw InvalidArgument("max_exponents: variable out of range");
      out[v] = std::max(out[v], e);
    }
  return out;
}

}  // namespace cuspk::witt
