#pragma once

#include <gmpxx.h>

#include "cuspk/witt/finite_field.hpp"

namespace cuspk::witt {

/// The integers as a coefficient ring, used for ghost-map oracles.
class IntegerRing {
 public:
  using Element = mpz_class;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element from_integer(const mpz_class& n) const { return n; }
  Element from_long(long n) const { return n; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  Element pow(const Element& a, unsigned long n) const {
    Element r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), n);
    return r;
  }
  CoefficientTag tag() const { return {0, 0}; }

  friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }
};

}  // namespace cuspk::witt
