#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cuspk/errors.hpp"
#include "cuspk/witt/integer_ring.hpp"
#include "cuspk/witt/polynomial.hpp"
#include "cuspk/witt/structure_table.hpp"
#include "cuspk/witt/truncation_set.hpp"

namespace cuspk::witt {

/// Coordinates of a big Witt vector, one per member of the truncation set
/// (in the set's sorted order).
template <class E>
class WittVector {
 public:
  using Element = E;

  WittVector() = default;
  WittVector(TruncationSet set, std::vector<E> coords) : set_(std::move(set)), coords_(std::move(coords)) {
    if (coords_.size() != set_.size()) throw InvalidArgument("WittVector: one coordinate per set member required");
  }

  const TruncationSet& set() const { return set_; }
  const std::vector<E>& coords() const { return coords_; }
  std::vector<E>& coords() { return coords_; }
  std::size_t size() const { return coords_.size(); }

  /// Coordinate at index m (must be a member).
  const E& at(std::uint32_t m) const {
    auto pos = set_.index_of(m);
    if (!pos) throw InvalidArgument("WittVector: index " + std::to_string(m) + " not in " + set_.to_string());
    return coords_[*pos];
  }

  friend bool operator==(const WittVector& lhs, const WittVector& rhs) {
    return lhs.set_ == rhs.set_ && lhs.coords_ == rhs.coords_;
  }

 private:
  TruncationSet set_;
  std::vector<E> coords_;
};

/// W_S(R) for a coefficient ring R (FiniteField or IntegerRing). Operations
/// evaluate the universal structure polynomials of S.
template <class Coeff>
class WittRing {
 public:
  using Element = typename Coeff::Element;
  using Vector = WittVector<Element>;

  WittRing(Coeff coeff, TruncationSet set, std::shared_ptr<const StructurePolynomialTable> table = nullptr)
      : coeff_(std::move(coeff)), set_(std::move(set)), state_(std::make_shared<State>()) {
    if (!table) table = StructureTableCache::shared().get(set_);
    if (!(table->set() == set_)) throw InvalidArgument("WittRing: structure table is for a different set");
    table_ = std::move(table);
    const std::size_t n = set_.size();
    sum_.reserve(n);
    prod_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      sum_.emplace_back(coeff_, table_->sum_polynomials()[i]);
      prod_.emplace_back(coeff_, table_->product_polynomials()[i]);
    }
    // x_m and y_m occur with exponent at most max(S)/m in either family.
    max_exp_.assign(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto top = static_cast<std::uint16_t>(set_.members().back() / set_.members()[i]);
      max_exp_[x_var(i)] = max_exp_[y_var(i)] = top;
    }
  }

  const Coeff& coefficients() const { return coeff_; }
  const TruncationSet& set() const { return set_; }
  const StructurePolynomialTable& table() const { return *table_; }

  Vector make(std::vector<Element> coords) const { return Vector(set_, std::move(coords)); }
  Vector zero() const { return Vector(set_, std::vector<Element>(set_.size(), coeff_.zero())); }
  Vector one() const { return teichmuller(coeff_.one()); }
  Vector teichmuller(const Element& c) const {
    auto out = zero();
    if (!out.coords().empty()) out.coords()[0] = c;
    return out;
  }

  Vector add(const Vector& x, const Vector& y) const { return apply(sum_, x, y); }
  Vector mul(const Vector& x, const Vector& y) const { return apply(prod_, x, y); }

  /// Solved coordinate by coordinate: the m-th sum polynomial is
  /// x_m + y_m + (terms in lower coordinates), so z_m = -P_m(x, z)|_{z_m = 0}.
  Vector neg(const Vector& x) const {
    check(x);
    const std::size_t n = set_.size();
    std::vector<Element> values(2 * n, coeff_.zero());
    for (std::size_t i = 0; i < n; ++i) values[x_var(i)] = x.coords()[i];
    std::vector<std::vector<Element>> powers;
    fill_powers<Coeff>(coeff_, values, max_exp_, powers);
    auto out = zero();
    for (std::size_t i = 0; i < n; ++i) {
      Element z = coeff_.neg(sum_[i].evaluate(coeff_, powers));
      out.coords()[i] = z;
      auto& row = powers[y_var(i)];
      for (std::size_t k = 1; k < row.size(); ++k) row[k] = coeff_.mul(row[k - 1], z);
    }
    return out;
  }

  Vector sub(const Vector& x, const Vector& y) const { return add(x, neg(y)); }

  /// n * x by double-and-add; negative n allowed.
  Vector multiple(long n, const Vector& x) const {
    Vector base = n < 0 ? neg(x) : x;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
    Vector acc = zero();
    while (k) {
      if (k & 1) acc = add(acc, base);
      k >>= 1;
      if (k) base = add(base, base);
    }
    return acc;
  }

  /// F_n : W_S -> W_{S/n}.
  Vector frobenius(std::uint32_t n, const Vector& x) const {
    check(x);
    if (n == 0) throw InvalidArgument("frobenius: n must be positive");
    const auto& polys = frobenius_family(n);
    TruncationSet target = set_.divide(n);
    std::vector<std::uint16_t> exps(set_.size(), static_cast<std::uint16_t>(set_.empty() ? 0 : set_.members().back()));
    std::vector<std::vector<Element>> powers;
    fill_powers<Coeff>(coeff_, x.coords(), exps, powers);
    std::vector<Element> out;
    out.reserve(target.size());
    for (const auto& poly : polys) out.push_back(poly.evaluate(coeff_, powers));
    return Vector(target, std::move(out));
  }

 private:
  struct State {
    std::mutex mutex;
    std::map<std::uint32_t, std::shared_ptr<const std::vector<CompiledPolynomial<Coeff>>>> frobenius;
  };

  void check(const Vector& x) const {
    if (!(x.set() == set_))
      throw InvalidArgument("Witt vector on " + x.set().to_string() + " used in W_" + set_.to_string());
  }

  Vector apply(const std::vector<CompiledPolynomial<Coeff>>& family, const Vector& x, const Vector& y) const {
    check(x);
    check(y);
    const std::size_t n = set_.size();
    std::vector<Element> values(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      values[x_var(i)] = x.coords()[i];
      values[y_var(i)] = y.coords()[i];
    }
    std::vector<std::vector<Element>> powers;
    fill_powers<Coeff>(coeff_, values, max_exp_, powers);
    std::vector<Element> out;
    out.reserve(n);
    for (const auto& poly : family) out.push_back(poly.evaluate(coeff_, powers));
    return Vector(set_, std::move(out));
  }

  const std::vector<CompiledPolynomial<Coeff>>& frobenius_family(std::uint32_t n) const {
    std::lock_guard lock(state_->mutex);
    auto& slot = state_->frobenius[n];
    if (!slot) {
      auto compiled = std::make_shared<std::vector<CompiledPolynomial<Coeff>>>();
      for (const auto& poly : frobenius_polynomials(set_, n)) compiled->emplace_back(coeff_, poly);
      slot = std::move(compiled);
    }
    return *slot;
  }

  Coeff coeff_;
  TruncationSet set_;
  std::shared_ptr<const StructurePolynomialTable> table_;
  std::vector<CompiledPolynomial<Coeff>> sum_;
  std::vector<CompiledPolynomial<Coeff>> prod_;
  std::vector<std::uint16_t> max_exp_;
  std::shared_ptr<State> state_;
};

/// V_n : W_{S/n} -> W_S, (V_n w)_m = w_{m/n} if n | m, else 0.
template <class E>
WittVector<E> verschiebung(std::uint32_t n, const WittVector<E>& w, const TruncationSet& target, const E& zero) {
  if (n == 0) throw InvalidArgument("verschiebung: n must be positive");
  if (!(w.set() == target.divide(n)))
    throw InvalidArgument("verschiebung: source indexed by " + w.set().to_string() + ", expected S/" +
                          std::to_string(n) + " = " + target.divide(n).to_string());
  std::vector<E> coords(target.size(), zero);
  for (std::size_t i = 0; i < target.size(); ++i) {
    const std::uint32_t m = target.members()[i];
    if (m % n == 0) coords[i] = w.at(m / n);
  }
  return WittVector<E>(target, std::move(coords));
}

template <class Coeff>
typename WittRing<Coeff>::Vector verschiebung(const WittRing<Coeff>& ring, std::uint32_t n,
                                              const typename WittRing<Coeff>::Vector& w) {
  return verschiebung(n, w, ring.set(), ring.coefficients().zero());
}

/// Ghost components w_m = sum_{d|m} d x_d^{m/d}, indexed like the set.
std::vector<mpz_class> ghost(const WittVector<mpz_class>& w);

/// Coordinatewise reduction of an integral Witt vector into F_p.
WittVector<FiniteField::Element> reduce(const WittVector<mpz_class>& w, const FiniteField& field);

}  // namespace cuspk::witt
