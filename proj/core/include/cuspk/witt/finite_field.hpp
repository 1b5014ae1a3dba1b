#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cuspk::witt {

/// Identifies a coefficient ring: (p, e) for F_{p^e}, (0, 0) for Z.
struct CoefficientTag {
  unsigned characteristic = 0;
  unsigned degree = 0;
  friend bool operator==(const CoefficientTag&, const CoefficientTag&) = default;
};

bool is_prime(unsigned long n);

/// Monic degree-e modulus used by default for F_{p^e}: the Conway
/// polynomial for p <= 7, e <= 4, otherwise the lexicographically first
/// monic irreducible. Coefficients low to high, length e + 1.
std::vector<unsigned> default_modulus(unsigned p, unsigned e);

/// True iff the monic polynomial has no monic factor of degree <= deg/2
/// over Z/p (exhaustive search).
bool is_irreducible(unsigned p, const std::vector<unsigned>& monic);

/// F_q = (Z/p)[z] / (modulus). Elements are encoded as integers in [0, q):
/// code = sum c_i p^i  <->  sum c_i z^i.
class FiniteField {
 public:
  using Element = std::uint32_t;

  FiniteField(unsigned p, unsigned e);
  FiniteField(unsigned p, std::vector<unsigned> modulus);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint64_t size() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }
  CoefficientTag tag() const { return {p_, e_}; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element pow(Element a, std::uint64_t n) const;
  Element inverse(Element a) const;
  Element from_integer(const mpz_class& n) const;
  Element from_long(long n) const;
  bool equal(Element a, Element b) const { return a == b; }

  /// The class of z (equal to -modulus[0] when e == 1).
  Element generator() const;
  /// F_p-basis 1, z, ..., z^{e-1}.
  std::vector<Element> basis() const;
  /// Coordinates in basis(): base-p digits of the code.
  std::vector<unsigned> digits(Element a) const;

  std::string format(Element a) const;

  friend bool operator==(const FiniteField& lhs, const FiniteField& rhs) {
    return lhs.p_ == rhs.p_ && lhs.e_ == rhs.e_ && lhs.modulus_ == rhs.modulus_;
  }

 private:
  Element mul_slow(Element a, Element b) const;
  Element add_slow(Element a, Element b) const;

  unsigned p_;
  unsigned e_;
  std::uint32_t q_;
  std::vector<unsigned> modulus_;
  // q <= 256: full addition and multiplication tables
  std::shared_ptr<const std::vector<std::uint16_t>> add_table_;
  std::shared_ptr<const std::vector<std::uint16_t>> mul_table_;
};

}  // namespace cuspk::witt
