#include "cuspk/algebra/lattice.hpp"

#include <algorithm>

#include "cuspk/algebra/smith.hpp"
#include "cuspk/errors.hpp"

namespace cuspk::algebra {

IntegerMatrix kernel_basis(const IntegerMatrix& m) {
  SmithDecomposition snf = smith_normal_form(m);
  std::size_t rank = 0;
  const std::size_t limit = std::min(m.rows(), m.cols());
  while (rank < limit && sgn(snf.diagonal(rank, rank)) != 0) ++rank;
  return snf.right.column_block(rank, m.cols() - rank);
}

AbelianGroupStructure lattice_quotient(const IntegerMatrix& lattice, const IntegerMatrix& sublattice) {
  if (lattice.rows() != sublattice.rows()) throw InvalidArgument("lattice_quotient: ambient dimension mismatch");
  SmithDecomposition snf = smith_normal_form(lattice);
  std::size_t rank = 0;
  const std::size_t limit = std::min(lattice.rows(), lattice.cols());
  while (rank < limit && sgn(snf.diagonal(rank, rank)) != 0) ++rank;

  // Coordinates of each sublattice generator in the basis U^{-1} e_i * d_i.
  IntegerMatrix image = snf.left * sublattice;
  IntegerMatrix coords(rank, sublattice.cols());
  for (std::size_t j = 0; j < sublattice.cols(); ++j) {
    for (std::size_t i = 0; i < image.rows(); ++i) {
      const BigInt& y = image(i, j);
      if (i >= rank) {
        if (sgn(y) != 0) throw IntegrityError("lattice_quotient: generator outside the lattice");
        continue;
      }
      const BigInt& d = snf.diagonal(i, i);
      if (!mpz_divisible_p(y.get_mpz_t(), d.get_mpz_t()))
        throw IntegrityError("lattice_quotient: generator outside the lattice");
      mpz_divexact(coords(i, j).get_mpz_t(), y.get_mpz_t(), d.get_mpz_t());
    }
  }
  return cokernel_structure(coords);
}

FiniteHomGroups finite_hom_kernel_cokernel(const IntegerMatrix& map, const std::vector<BigInt>& source_orders,
                                           const std::vector<BigInt>& target_orders) {
  const std::size_t n = source_orders.size();
  const std::size_t k = target_orders.size();
  if (map.rows() != k || map.cols() != n) throw InvalidArgument("finite_hom_kernel_cokernel: shape mismatch");
  for (const auto& o : source_orders)
    if (o < 1) throw InvalidArgument("finite_hom_kernel_cokernel: orders must be positive");
  for (const auto& o : target_orders)
    if (o < 1) throw InvalidArgument("finite_hom_kernel_cokernel: orders must be positive");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigInt image = map(i, j) * source_orders[j];
      if (!mpz_divisible_p(image.get_mpz_t(), target_orders[i].get_mpz_t()))
        throw InvalidArgument("finite_hom_kernel_cokernel: matrix does not define a homomorphism");
    }

  IntegerMatrix presented = IntegerMatrix::concat_columns(map, IntegerMatrix::diagonal(target_orders));
  FiniteHomGroups out;
  out.cokernel = cokernel_structure(presented);

  // {x : map x in im(diag(target_orders))} is the projection of ker[map | D].
  IntegerMatrix relations = kernel_basis(presented);
  IntegerMatrix preimage(n, relations.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < relations.cols(); ++j) preimage(i, j) = relations(i, j);
  out.kernel = lattice_quotient(preimage, IntegerMatrix::diagonal(source_orders));
  return out;
}

}  // namespace cuspk::algebra
