#include "cuspk/witt/group.hpp"

#include <string>

#include "cuspk/errors.hpp"

namespace cuspk::witt {

std::uint64_t witt_group_order(const TruncationSet& set, const FiniteField& field, std::uint64_t cap) {
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (order > cap / field.size())
      throw ResourceError("W_S(F_" + std::to_string(field.size()) + ") with |S| = " + std::to_string(set.size()) +
                          " has more than " + std::to_string(cap) + " elements; lower q or r");
    order *= field.size();
  }
  if (order > cap)
    throw ResourceError("group order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
  return order;
}

WittCodec::WittCodec(const TruncationSet& set, const FiniteField& field, std::uint64_t cap)
    : set_(set), q_(field.size()), order_(witt_group_order(set, field, cap)) {}

std::uint64_t WittCodec::encode(const FieldWittVector& w) const {
  if (!(w.set() == set_)) throw InvalidArgument("WittCodec: vector indexed by a different set");
  std::uint64_t code = 0;
  for (std::size_t i = w.size(); i-- > 0;) code = code * q_ + w.coords()[i];
  return code;
}

FieldWittVector WittCodec::decode(std::uint64_t code) const {
  if (code >= order_) throw InvalidArgument("WittCodec: code out of range");
  std::vector<FiniteField::Element> coords(set_.size());
  for (auto& c : coords) {
    c = static_cast<FiniteField::Element>(code % q_);
    code /= q_;
  }
  return FieldWittVector(set_, std::move(coords));
}

std::vector<FieldWittVector> additive_generators(const TruncationSet& set, const FiniteField& field) {
  std::vector<FieldWittVector> out;
  for (std::uint32_t m : set.members()) {
    TruncationSet source = set.divide(m);
    for (auto b : field.basis()) {
      std::vector<FiniteField::Element> coords(source.size(), field.zero());
      coords[0] = b;
      out.push_back(verschiebung(m, FieldWittVector(source, std::move(coords)), set, field.zero()));
    }
  }
  return out;
}

std::vector<unsigned> digit_decomposition(const FieldWittRing& ring, const FieldWittVector& w) {
  const auto& field = ring.coefficients();
  const std::size_t n = ring.set().size();
  const std::size_t e = field.degree();
  const auto gens = additive_generators(ring);
  std::vector<unsigned> digits(n * e, 0);
  FieldWittVector rest = w;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k)
      if (rest.coords()[k] != field.zero()) throw IntegrityError("digit_decomposition: lower coordinate survived");
    const auto c = field.digits(rest.coords()[i]);
    for (std::size_t j = 0; j < e; ++j) {
      digits[i * e + j] = c[j];
      if (c[j] != 0) rest = ring.sub(rest, ring.multiple(c[j], gens[i * e + j]));
    }
    if (rest.coords()[i] != field.zero()) throw IntegrityError("digit_decomposition: coordinate did not clear");
  }
  if (!(rest == ring.zero())) throw IntegrityError("digit_decomposition: nonzero remainder");
  return digits;
}

algebra::IntegerMatrix additive_presentation(const FieldWittRing& ring) {
  const auto& field = ring.coefficients();
  const auto gens = additive_generators(ring);
  const std::size_t n = gens.size();
  algebra::IntegerMatrix rel(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto d = digit_decomposition(ring, ring.multiple(field.characteristic(), gens[i]));
    for (std::size_t k = 0; k < n; ++k) rel(k, i) = -static_cast<long>(d[k]);
    rel(i, i) += field.characteristic();
  }
  BigInt expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), field.size(), ring.set().size());
  BigInt det = abs(rel.determinant());
  if (det != expected)
    throw IntegrityError("additive_presentation: |det| = " + det.get_str() + ", expected q^|S| = " +
                         expected.get_str());
  return rel;
}

}  // namespace cuspk::witt
