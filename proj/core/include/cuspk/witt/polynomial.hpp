#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cuspk::witt {

using BigInt = mpz_class;

/// Sparse monomial: (variable, exponent) pairs sorted by variable,
/// exponents positive.
using Monomial = std::vector<std::pair<std::uint16_t, std::uint16_t>>;

/// Multivariate polynomial with arbitrary-precision integer coefficients,
/// stored as a sparse monomial -> coefficient map.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;

  static IntegerPolynomial constant(const BigInt& c);
  static IntegerPolynomial variable(std::uint16_t var, std::uint16_t exponent = 1);

  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const BigInt& c);
  IntegerPolynomial& operator+=(const IntegerPolynomial& other);
  IntegerPolynomial& operator-=(const IntegerPolynomial& other);
  IntegerPolynomial scaled(const BigInt& factor) const;
  IntegerPolynomial pow(unsigned n) const;
  /// Divides every coefficient by d; throws IntegrityError if any division
  /// is inexact.
  IntegerPolynomial exact_divide(const BigInt& d) const;

  /// Largest exponent of each variable, indexed by variable.
  std::vector<std::uint16_t> max_exponents(std::size_t num_vars) const;

  friend IntegerPolynomial operator*(const IntegerPolynomial& lhs, const IntegerPolynomial& rhs);
  friend IntegerPolynomial operator+(IntegerPolynomial lhs, const IntegerPolynomial& rhs) { return lhs += rhs; }
  friend IntegerPolynomial operator-(IntegerPolynomial lhs, const IntegerPolynomial& rhs) { return lhs -= rhs; }
  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

 private:
  std::map<Monomial, BigInt> terms_;
};

/// Polynomial compiled for repeated evaluation over a coefficient ring:
/// coefficients already mapped into the ring, zero images dropped.
template <class Ring>
class CompiledPolynomial {
 public:
  using Element = typename Ring::Element;

  CompiledPolynomial() = default;
  CompiledPolynomial(const Ring& ring, const IntegerPolynomial& poly) {
    for (const auto& [mono, coef] : poly.terms()) {
      Element c = ring.from_integer(coef);
      if (ring.equal(c, ring.zero())) continue;
      Term t{std::move(c), static_cast<std::uint32_t>(factors_.size()), 0};
      for (const auto& f : mono) factors_.push_back(f);
      t.last = static_cast<std::uint32_t>(factors_.size());
      terms_.push_back(std::move(t));
    }
  }

  std::size_t size() const { return terms_.size(); }

  /// powers[v][k] must hold value(v)^k for every exponent used.
  Element evaluate(const Ring& ring, const std::vector<std::vector<Element>>& powers) const {
    Element sum = ring.zero();
    for (const auto& t : terms_) {
      Element acc = t.coef;
      for (std::uint32_t i = t.first; i < t.last; ++i) acc = ring.mul(acc, powers[factors_[i].first][factors_[i].second]);
      sum = ring.add(sum, acc);
    }
    return sum;
  }

 private:
  struct Term {
    Element coef;
    std::uint32_t first;
    std::uint32_t last;
  };
  std::vector<Term> terms_;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> factors_;
};

/// Fills powers[v][0..max_exp[v]] with value(v)^k.
template <class Ring>
void fill_powers(const Ring& ring, std::span<const typename Ring::Element> values,
                 const std::vector<std::uint16_t>& max_exp, std::vector<std::vector<typename Ring::Element>>& powers) {
  powers.resize(values.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    auto& row = powers[v];
    const std::size_t top = v < max_exp.size() ? max_exp[v] : 0;
    row.resize(top + 1);
    row[0] = ring.one();
    for (std::size_t k = 1; k <= top; ++k) row[k] = ring.mul(row[k - 1], values[v]);
  }
}

}  // namespace cuspk::witt
