#pragma once

#include <cstddef>
#include <vector>

#include "cuspk/algebra/integer_matrix.hpp"

namespace cuspk::algebra {

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithDecomposition {
  IntegerMatrix diagonal;
  IntegerMatrix left;   // U, rows x rows
  IntegerMatrix right;  // V, cols x cols
};

SmithDecomposition smith_normal_form(const IntegerMatrix& m);

/// Diagonal of the Smith form without transforms: rank and the entries > 1.
struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<BigInt> nontrivial;  // ascending, each divides the next
};

InvariantFactors invariant_factors(const IntegerMatrix& m);

// Sparse elimination: unit pivots are cleared first, with a Markowitz-style
// choice of pivot to limit fill-in; whatever is left is handed to the dense
// routine.
InvariantFactors invariant_factors(const SparseIntegerMatrix& m);

}  // namespace cuspk::algebra
