#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "cuspk/algebra/abelian_group.hpp"
#include "cuspk/algebra/integer_matrix.hpp"
#include "cuspk/semigroup.hpp"

namespace cuspk::bar {

inline constexpr unsigned kDefaultBarCap = 14;
inline constexpr unsigned kHardBarCap = 24;

using Simplex = std::vector<std::uint32_t>;

/// Normalized chains of B^cy(<t>) / B^cy(<t^a, t^b>) in weight m.
/// boundary[n] : C_n -> C_{n-1} (boundary[0] has zero rows).
struct ChainComplex {
  unsigned m = 0;
  std::vector<std::vector<Simplex>> basis;
  std::vector<algebra::SparseIntegerMatrix> boundary;

  std::size_t dimension(std::size_t n) const { return n < basis.size() ? basis[n].size() : 0; }
  std::size_t total_dimension() const;
  /// sum (-1)^n dim C_n
  long euler_characteristic() const;
};

/// Degree -> group; degrees with trivial groups are omitted.
using GradedGroups = std::map<int, algebra::AbelianGroupStructure>;

/// Basis in degree n: (i_0, ..., i_n) with i_0 >= 0, i_k >= 1, sum m, not
/// all entries in <a, b>; tuples in lexicographic order. Throws
/// ResourceError if m > cap (cap itself may not exceed kHardBarCap) and
/// IntegrityError if d o d != 0.
ChainComplex relative_complex(const CuspPair& pair, unsigned m, unsigned cap = kDefaultBarCap);

GradedGroups homology(const ChainComplex& complex);
GradedGroups homology(const CuspPair& pair, unsigned m, unsigned cap = kDefaultBarCap);

/// Homology of the total cofiber of the square of circle orbits, shifted
/// by 2 ell(a, b, m).
GradedGroups predicted_homology(const CuspPair& pair, unsigned m);

/// Equal degreewise, absent entries counting as trivial.
bool same_homology(const GradedGroups& lhs, const GradedGroups& rhs);

struct HomologyReport {
  unsigned m = 0;
  GradedGroups groups;
  GradedGroups predicted;
  bool agree = false;
  std::size_t basis_size = 0;
};

/// One report per m = 1..m_max, computed on up to `jobs` threads.
std::vector<HomologyReport> verify_bar(const CuspPair& pair, unsigned m_max, unsigned cap = kDefaultBarCap,
                                       unsigned jobs = 1);

}  // namespace cuspk::bar
