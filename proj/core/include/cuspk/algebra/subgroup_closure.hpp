#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cuspk/algebra/abelian_group.hpp"
#include "cuspk/errors.hpp"

namespace cuspk::algebra {

inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 22;

template <class T>
struct SubgroupClosure {
  BigInt order;
  std::vector<T> elements;  // elements[0] is the identity
  AbelianGroupStructure structure;
};

namespace detail {

inline std::vector<unsigned long> prime_factors(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

/// Subgroup generated by `generators` inside a finite abelian group of order
/// `ambient_order`. Breadth-first closure under addition of generators; the
/// structure is then read off the counts |G[p^k]| for each prime p dividing
/// the order. Throws ResourceError when more than `cap` elements appear and
/// IntegrityError when the closure outgrows the ambient order.
template <class T, class Add, class Neg, class Hash = std::hash<T>, class Eq = std::equal_to<T>>
SubgroupClosure<T> subgroup_closure(const BigInt& ambient_order, std::span<const T> generators, Add add,
                                    Neg neg, const T& zero, std::size_t cap = kDefaultClosureCap,
                                    Hash hash = Hash{}, Eq eq = Eq{}) {
  std::unordered_map<T, std::size_t, Hash, Eq> index(16, hash, eq);
  SubgroupClosure<T> out;
  out.elements.push_back(zero);
  index.emplace(zero, 0);

  for (std::size_t frontier = 0; frontier < out.elements.size(); ++frontier) {
    for (const T& g : generators) {
      T sum = add(out.elements[frontier], g);
      if (index.find(sum) != index.end()) continue;
      if (out.elements.size() >= cap)
        throw ResourceError("subgroup_closure: more than " + std::to_string(cap) + " elements");
      if (ambient_order <= out.elements.size())
        throw IntegrityError("subgroup_closure: closure exceeds the ambient order " + ambient_order.get_str());
      index.emplace(sum, out.elements.size());
      out.elements.push_back(std::move(sum));
    }
  }
  for (const T& g : generators)
    if (index.find(neg(g)) == index.end()) throw IntegrityError("subgroup_closure: not closed under negation");

  const std::size_t n = out.elements.size();
  out.order = static_cast<unsigned long>(n);

  // times_p[i] = index of p * elements[i]
  std::vector<BigInt> cyclic_orders;
  for (unsigned long p : detail::prime_factors(static_cast<unsigned long>(n))) {
    std::vector<std::size_t> times_p(n);
    for (std::size_t i = 0; i < n; ++i) {
      T acc = out.elements[i];
      for (unsigned long k = 1; k < p; ++k) acc = add(acc, out.elements[i]);
      times_p[i] = index.at(acc);
    }
    constexpr std::size_t unknown = static_cast<std::size_t>(-1);
    std::vector<std::size_t> level(n, unknown);  // least k with p^k x = 0
    level[0] = 0;
    std::vector<std::size_t> torsion_count{1};  // |G[p^k]|
    for (std::size_t k = 1;; ++k) {
      std::size_t added = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (level[i] == unknown && level[times_p[i]] == k - 1) {
          level[i] = k;
          ++added;
        }
      if (added == 0) break;
      torsion_count.push_back(torsion_count.back() + added);
    }
    // #cyclic p-factors of exponent >= k is log_p(|G[p^k]| / |G[p^{k-1}]|).
    std::vector<std::size_t> at_least(torsion_count.size(), 0);
    for (std::size_t k = 1; k < torsion_count.size(); ++k) {
      std::size_t ratio = torsion_count[k] / torsion_count[k - 1];
      std::size_t e = 0;
      while (ratio > 1) {
        ratio /= p;
        ++e;
      }
      at_least[k] = e;
    }
    for (std::size_t k = 1; k < at_least.size(); ++k) {
      std::size_t exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
      BigInt order;
      mpz_ui_pow_ui(order.get_mpz_t(), p, static_cast<unsigned long>(k));
      for (std::size_t c = 0; c < exactly; ++c) cyclic_orders.push_back(order);
    }
  }
  out.structure = AbelianGroupStructure::from_cyclic_orders(cyclic_orders);
  return out;
}

}  // namespace cuspk::algebra
