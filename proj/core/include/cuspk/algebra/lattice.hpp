#pragma once

#include <vector>

#include "cuspk/algebra/abelian_group.hpp"
#include "cuspk/algebra/integer_matrix.hpp"

namespace cuspk::algebra {

/// Columns form a Z-basis of {x : M x = 0}.
IntegerMatrix kernel_basis(const IntegerMatrix& m);

/// span(lattice) / span(sublattice), where every column of `sublattice`
/// lies in the column span of `lattice`. Throws IntegrityError otherwise.
AbelianGroupStructure lattice_quotient(const IntegerMatrix& lattice, const IntegerMatrix& sublattice);

/// Kernel and cokernel of a homomorphism between finite abelian groups
/// A = (+) Z/source_orders[j] -> B = (+) Z/target_orders[i], given by an
/// integer matrix (column j is the image of the j-th generator).
struct FiniteHomGroups {
  AbelianGroupStructure kernel;
  AbelianGroupStructure cokernel;
};

FiniteHomGroups finite_hom_kernel_cokernel(const IntegerMatrix& map, const std::vector<BigInt>& source_orders,
                                           const std::vector<BigInt>& target_orders);

}  // namespace cuspk::algebra
