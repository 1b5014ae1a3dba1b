#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

#include "cuspk/algebra/integer_matrix.hpp"
#include "cuspk/witt/finite_field.hpp"
#include "cuspk/witt/witt_vector.hpp"

namespace cuspk::witt {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

using FieldWittRing = WittRing<FiniteField>;
using FieldWittVector = FieldWittRing::Vector;

/// q^|S|, or ResourceError if it exceeds `cap`.
std::uint64_t witt_group_order(const TruncationSet& set, const FiniteField& field,
                               std::uint64_t cap = kDefaultEnumerationCap);

/// Mixed-radix packing of W_S(F_q) into [0, q^|S|): coordinate i is digit i
/// in base q. Requires q^|S| <= cap.
class WittCodec {
 public:
  WittCodec(const TruncationSet& set, const FiniteField& field, std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t order() const { return order_; }
  std::uint64_t encode(const FieldWittVector& w) const;
  FieldWittVector decode(std::uint64_t code) const;

 private:
  TruncationSet set_;
  std::uint64_t q_;
  std::uint64_t order_;
};

/// All q^|S| elements of W_S(F_q), each exactly once, in code order.
class GroupEnumeration {
 public:
  GroupEnumeration(const TruncationSet& set, const FiniteField& field, std::uint64_t cap = kDefaultEnumerationCap)
      : codec_(set, field, cap) {}

  std::uint64_t size() const { return codec_.order(); }
  FieldWittVector operator[](std::uint64_t i) const { return codec_.decode(i); }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FieldWittVector;
    using difference_type = std::ptrdiff_t;

    iterator(const WittCodec* codec, std::uint64_t i) : codec_(codec), i_(i) {}
    FieldWittVector operator*() const { return codec_->decode(i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

   private:
    const WittCodec* codec_;
    std::uint64_t i_;
  };

  iterator begin() const { return {&codec_, 0}; }
  iterator end() const { return {&codec_, codec_.order()}; }

 private:
  WittCodec codec_;
};

inline GroupEnumeration enumerate_group(const TruncationSet& set, const FiniteField& field,
                                        std::uint64_t cap = kDefaultEnumerationCap) {
  return GroupEnumeration(set, field, cap);
}

/// V_m[c] for m in S (ascending) and c in the basis 1, z, ..., z^{e-1}.
/// Built from coordinates alone; no structure table is needed.
std::vector<FieldWittVector> additive_generators(const TruncationSet& set, const FiniteField& field);
inline std::vector<FieldWittVector> additive_generators(const FieldWittRing& ring) {
  return additive_generators(ring.set(), ring.coefficients());
}

/// Writes w uniquely as sum over m in S, j < e of c_{m,j} V_m[z^j] with
/// 0 <= c_{m,j} < p (peeling off the lowest nonzero coordinate each step).
/// Entry m_pos * e + j of the result is c_{m,j}. Throws IntegrityError if
/// the peeling does not terminate at zero.
std::vector<unsigned> digit_decomposition(const FieldWittRing& ring, const FieldWittVector& w);

/// Relation matrix R of W_S(F_q) on the generators of additive_generators:
/// column i is p e_i - digits(p g_i), so W_S(F_q) = Z^{|S| e} / R. Its
/// determinant is checked to be +-q^|S|.
algebra::IntegerMatrix additive_presentation(const FieldWittRing& ring);

}  // namespace cuspk::witt
