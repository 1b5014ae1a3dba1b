#include "cuspk/algebra/abelian_group.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "cuspk/algebra/lattice.hpp"
#include "cuspk/algebra/smith.hpp"
#include "cuspk/errors.hpp"

namespace cuspk::algebra {

AbelianGroupStructure AbelianGroupStructure::from_invariant_factors(std::vector<BigInt> factors,
                                                                    std::size_t free_rank) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw InvalidArgument("invariant factor below 2: " + factors[i].get_str());
    if (i + 1 < factors.size() && !mpz_divisible_p(factors[i + 1].get_mpz_t(), factors[i].get_mpz_t()))
      throw InvalidArgument("invariant factors must form a divisibility chain");
  }
  AbelianGroupStructure g;
  g.factors_ = std::move(factors);
  g.free_rank_ = free_rank;
  return g;
}

AbelianGroupStructure AbelianGroupStructure::from_cyclic_orders(const std::vector<BigInt>& orders,
                                                                std::size_t free_rank) {
  std::vector<BigInt> finite;
  for (const auto& o : orders) {
    if (sgn(o) == 0)
      ++free_rank;
    else if (abs(o) > 1)
      finite.push_back(abs(o));
  }
  InvariantFactors inv = algebra::invariant_factors(IntegerMatrix::diagonal(finite));
  return from_invariant_factors(std::move(inv.nontrivial), free_rank);
}

AbelianGroupStructure AbelianGroupStructure::free(std::size_t rank) {
  AbelianGroupStructure g;
  g.free_rank_ = rank;
  return g;
}

AbelianGroupStructure AbelianGroupStructure::cyclic(const BigInt& order) {
  return from_cyclic_orders({order});
}

AbelianGroupStructure AbelianGroupStructure::elementary(unsigned long p, unsigned exponent,
                                                        std::size_t copies) {
  if (exponent == 0 || copies == 0) return trivial();
  BigInt order;
  mpz_ui_pow_ui(order.get_mpz_t(), p, exponent);
  return from_invariant_factors(std::vector<BigInt>(copies, order));
}

BigInt AbelianGroupStructure::torsion_order() const {
  BigInt n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

std::size_t AbelianGroupStructure::p_length(unsigned long p) const {
  std::size_t total = 0;
  BigInt prime = p;
  for (const auto& d : factors_) {
    BigInt rest;
    total += mpz_remove(rest.get_mpz_t(), d.get_mpz_t(), prime.get_mpz_t());
  }
  return total;
}

AbelianGroupStructure AbelianGroupStructure::direct_sum(const AbelianGroupStructure& other) const {
  std::vector<BigInt> orders = factors_;
  orders.insert(orders.end(), other.factors_.begin(), other.factors_.end());
  return from_cyclic_orders(orders, free_rank_ + other.free_rank_);
}

std::string AbelianGroupStructure::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : factors_) {
    if (!first) os << " x ";
    os << "Z/" << d.get_str();
    first = false;
  }
  if (free_rank_ > 0) {
    if (!first) os << " x ";
    os << "Z";
    if (free_rank_ > 1) os << '^' << free_rank_;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const AbelianGroupStructure& g) { return os << g.to_string(); }

AbelianGroupStructure cokernel_structure(const IntegerMatrix& m) {
  InvariantFactors inv = invariant_factors(m);
  return AbelianGroupStructure::from_invariant_factors(std::move(inv.nontrivial), m.rows() - inv.rank);
}

AbelianGroupStructure cokernel_structure(const SparseIntegerMatrix& m) {
  InvariantFactors inv = invariant_factors(m);
  return AbelianGroupStructure::from_invariant_factors(std::move(inv.nontrivial), m.rows() - inv.rank);
}

AbelianGroupStructure homology_at(const SparseIntegerMatrix& d_in, const SparseIntegerMatrix& d_out) {
  if (d_in.rows() != d_out.cols())
    throw InvalidArgument("homology_at: d_in and d_out do not meet at a common term");
  if (!d_out.product_is_zero(d_in)) throw IntegrityError("homology_at: d_out * d_in != 0");
  InvariantFactors in = invariant_factors(d_in);
  InvariantFactors out = invariant_factors(d_out);
  const std::size_t dim = d_out.cols();
  return AbelianGroupStructure::from_invariant_factors(std::move(in.nontrivial), dim - out.rank - in.rank);
}

AbelianGroupStructure homology_at(const IntegerMatrix& d_in, const IntegerMatrix& d_out) {
  return homology_at(SparseIntegerMatrix::from_dense(d_in), SparseIntegerMatrix::from_dense(d_out));
}

AbelianGroupStructure homology_via_kernel_basis(const IntegerMatrix& d_in, const IntegerMatrix& d_out) {
  if (d_in.rows() != d_out.cols())
    throw InvalidArgument("homology_via_kernel_basis: d_in and d_out do not meet at a common term");
  if (!(d_out * d_in).is_zero()) throw IntegrityError("homology_via_kernel_basis: d_out * d_in != 0");
  return lattice_quotient(kernel_basis(d_out), d_in);
}

}  // namespace cuspk::algebra
