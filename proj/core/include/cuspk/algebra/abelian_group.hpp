#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cuspk/algebra/integer_matrix.hpp"

namespace cuspk::algebra {

/// Finitely generated abelian group Z^r + Z/d_1 + ... + Z/d_k in canonical
/// form: every d_i >= 2 and d_i | d_{i+1}. Two structures are isomorphic
/// iff they compare equal.
class AbelianGroupStructure {
 public:
  AbelianGroupStructure() = default;

  /// Validates the divisibility chain; throws InvalidArgument otherwise.
  static AbelianGroupStructure from_invariant_factors(std::vector<BigInt> factors,
                                                      std::size_t free_rank = 0);
  /// Direct sum of cyclic groups of the given orders (any order, 0 means Z,
  /// 1 is dropped); normalized to invariant factors.
  static AbelianGroupStructure from_cyclic_orders(const std::vector<BigInt>& orders,
                                                  std::size_t free_rank = 0);
  static AbelianGroupStructure trivial() { return {}; }
  static AbelianGroupStructure free(std::size_t rank);
  static AbelianGroupStructure cyclic(const BigInt& order);
  /// (Z/p^exponent)^copies
  static AbelianGroupStructure elementary(unsigned long p, unsigned exponent, std::size_t copies);

  const std::vector<BigInt>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Order of the torsion subgroup.
  BigInt torsion_order() const;
  /// Sum of p-adic valuations of the invariant factors.
  std::size_t p_length(unsigned long p) const;

  AbelianGroupStructure direct_sum(const AbelianGroupStructure& other) const;

  /// "0", "Z", "Z/2", "Z/2 x Z/6 x Z^3", ...
  std::string to_string() const;

  friend bool operator==(const AbelianGroupStructure&, const AbelianGroupStructure&) = default;

 private:
  std::vector<BigInt> factors_;
  std::size_t free_rank_ = 0;
};

std::ostream& operator<<(std::ostream& os, const AbelianGroupStructure& g);

/// Z^rows / (column span of M).
AbelianGroupStructure cokernel_structure(const IntegerMatrix& m);
AbelianGroupStructure cokernel_structure(const SparseIntegerMatrix& m);

/// ker(d_out) / im(d_in) at the middle term of  . --d_in--> C --d_out--> .
/// Free rank is dim C - rank(d_out) - rank(d_in); torsion is read off the
/// nontrivial invariant factors of d_in. Throws IntegrityError if
/// d_out * d_in != 0.
AbelianGroupStructure homology_at(const SparseIntegerMatrix& d_in, const SparseIntegerMatrix& d_out);
AbelianGroupStructure homology_at(const IntegerMatrix& d_in, const IntegerMatrix& d_out);

/// Same group, computed by writing im(d_in) in an explicit basis of
/// ker(d_out) and taking the cokernel. Dense; for cross-checks.
AbelianGroupStructure homology_via_kernel_basis(const IntegerMatrix& d_in, const IntegerMatrix& d_out);

}  // namespace cuspk::algebra
