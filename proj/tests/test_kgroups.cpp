#include <catch_amalgamated.hpp>

#include <unordered_set>

#include "cuspk/algebra/subgroup_closure.hpp"
#include "cuspk/errors.hpp"
#include "cuspk/kgroups.hpp"
#include "cuspk/witt/group.hpp"

using namespace cuspk;
using algebra::AbelianGroupStructure;

namespace {

AbelianGroupStructure group(std::vector<long> factors) {
  return AbelianGroupStructure::from_invariant_factors(std::vector<algebra::BigInt>(factors.begin(), factors.end()));
}

// The quotient by brute force: enumerate W_S(F_q), close the V-images, and
// read the quotient's structure off the orders of cosets.
AbelianGroupStructure brute_quotient(const CuspPair& pair, unsigned r, algebra::BigInt* subgroup_order) {
  const auto set = truncation_set(pair, r);
  const witt::FiniteField field(pair.p, pair.e);
  const witt::FieldWittRing ring(field, set);
  const witt::WittCodec codec(set, field);
  std::vector<std::uint64_t> gens;
  for (unsigned n : {pair.a, pair.b}) {
    const auto small = set.divide(n);
    if (small.empty()) continue;
    for (const auto& g : witt::additive_generators(small, field))
      gens.push_back(codec.encode(witt::verschiebung(ring, n, g)));
  }
  auto add = [&](std::uint64_t x, std::uint64_t y) { return codec.encode(ring.add(codec.decode(x), codec.decode(y))); };
  auto neg = [&](std::uint64_t x) { return codec.encode(ring.neg(codec.decode(x))); };
  const auto sub = algebra::subgroup_closure<std::uint64_t>(codec.order(), std::span<const std::uint64_t>(gens), add,
                                                            neg, 0);
  *subgroup_order = sub.order;
  const std::unordered_set<std::uint64_t> h(sub.elements.begin(), sub.elements.end());

  // |Q[n]| = #{cosets x + H : n x in H} = #{x : n x in H} / |H|.
  std::map<unsigned long, unsigned long> killed;
  unsigned long exponent = 1;
  for (unsigned i = 0; i <= 2 * set.size(); ++i) exponent *= pair.p;
  std::vector<unsigned long> ns;
  for (unsigned long n = 1; n <= exponent && n <= 4096; n *= pair.p) ns.push_back(n);
  for (std::uint64_t x = 0; x < codec.order(); ++x) {
    const auto w = codec.decode(x);
    for (auto n : ns)
      if (h.count(codec.encode(ring.multiple(static_cast<long>(n), w)))) ++killed[n];
  }
  // Invariant factors of a p-group from |Q[p^k]|: the number of cyclic
  // factors of order >= p^k is log_p(|Q[p^k]| / |Q[p^{k-1}]|).
  const unsigned long hsize = sub.order.get_ui();
  std::vector<algebra::BigInt> orders;
  std::vector<unsigned> at_least;
  for (std::size_t k = 1; k < ns.size(); ++k) {
    unsigned long ratio = (killed[ns[k]] / hsize) / (killed[ns[k - 1]] / hsize);
    unsigned c = 0;
    while (ratio > 1) {
      ratio /= pair.p;
      ++c;
    }
    at_least.push_back(c);
  }
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const unsigned exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
    for (unsigned i = 0; i < exactly; ++i) orders.push_back(algebra::BigInt(ns[k + 1]));
  }
  return AbelianGroupStructure::from_cyclic_orders(orders);
}

}  // namespace

TEST_CASE("closed form examples") {
  CHECK(closed_form(normalize_orientation(2, 3, 2, 1), 0) == group({2}));
  CHECK(closed_form(normalize_orientation(2, 3, 2, 2), 0) == group({2, 2}));
  CHECK(closed_form(normalize_orientation(2, 3, 2, 1), 1).p_length(2) == 3);
}

TEST_CASE("witt quotient of (2,3), p = 2, r = 0") {
  const auto details = witt_quotient_details(normalize_orientation(2, 3, 2, 1), 0);
  CHECK(details.set.members() == std::vector<std::uint32_t>{1, 2, 3, 4, 6});
  CHECK(details.ambient_order == 32);
  CHECK(details.subgroup_order == 16);
  CHECK(details.quotient == group({2}));
  CHECK(witt_quotient(normalize_orientation(2, 3, 2, 2), 0) == group({2, 2}));
}

TEST_CASE("witt quotient agrees with a coset-counting oracle") {
  for (auto [a, b, p, e, r] : std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned, unsigned>>{
           {2, 3, 2, 1, 0}, {2, 3, 2, 2, 0}, {2, 3, 3, 1, 0}, {2, 3, 2, 1, 1}, {2, 5, 2, 1, 0}, {3, 4, 2, 1, 0},
           {2, 3, 5, 1, 0}, {3, 4, 3, 1, 0}}) {
    const auto pair = normalize_orientation(a, b, p, e);
    algebra::BigInt sub_order;
    const auto expected = brute_quotient(pair, r, &sub_order);
    const auto details = witt_quotient_details(pair, r);
    INFO(pair.to_string() << " r=" << r);
    REQUIRE(details.subgroup_order == sub_order);
    REQUIRE(details.quotient == expected);
    REQUIRE(details.quotient == closed_form(pair, r));
  }
}

TEST_CASE("witt quotient respects the cap") {
  const auto pair = normalize_orientation(3, 5, 5, 2);
  KGroupOptions options;
  CHECK_FALSE(witt_route_within_cap(pair, 2, options.witt_cap));
  CHECK_THROWS_AS(witt_quotient(pair, 2, options), ResourceError);
  CHECK(witt_route_within_cap(normalize_orientation(2, 3, 2, 1), 0, 32));
  CHECK_FALSE(witt_route_within_cap(normalize_orientation(2, 3, 2, 1), 0, 31));
}

TEST_CASE("k_group examples") {
  const auto pair = normalize_orientation(2, 3, 2, 1);
  const auto k0 = k_group(pair, 0);
  CHECK(k0.group == group({2}));
  CHECK(k0.agree);
  CHECK(k0.routes.size() == 3);
  CHECK(k0.length_ok);

  const auto k1 = k_group(pair, 1);
  CHECK(k1.group.is_trivial());
  CHECK(k1.agree);

  const auto k2 = k_group(pair, 2);
  CHECK(k2.length == 3);
  CHECK(k2.agree);
  CHECK(k2.routes.size() == 3);

  CHECK_THROWS_AS(k_group(pair, 2 * (kMaxTruncation + 1)), InvalidArgument);
}

TEST_CASE("k_group skips routes over their caps") {
  KGroupOptions options;
  options.witt_cap = 16;
  const auto res = k_group(normalize_orientation(2, 3, 2, 1), 0, {}, options);
  CHECK(res.routes.count(kRouteWittQuotient) == 0);
  CHECK(res.skipped.count(kRouteWittQuotient) == 1);
  CHECK(res.agree);

  const auto only_closed = k_group(normalize_orientation(2, 3, 2, 1), 0, RouteSelection{false, false});
  CHECK(only_closed.routes.size() == 1);
}

TEST_CASE("orientation invariance") {
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned r = 0; r <= 2; ++r) {
      const auto x = k_group(normalize_orientation(2, 5, p, 1), 2 * r, RouteSelection{false, true});
      const auto y = k_group(normalize_orientation(5, 2, p, 1), 2 * r, RouteSelection{false, true});
      REQUIRE(x.group == y.group);
    }
}

TEST_CASE("length grows by e (a-1)(b-1) per step of r") {
  for (auto [a, b] : {std::pair{2u, 3u}, {2, 5}, {3, 4}, {3, 5}})
    for (unsigned p : {2u, 3u, 5u})
      for (unsigned e : {1u, 2u}) {
        const auto pair = normalize_orientation(a, b, p, e);
        std::size_t prev_size = 0, prev_length = 0;
        for (unsigned r = 0; r <= 6; ++r) {
          const auto size = truncation_set(pair, r).size();
          const auto length = closed_form(pair, r).p_length(p);
          REQUIRE(size >= prev_size);
          if (r > 0) REQUIRE(length == prev_length + e * (a - 1) * (b - 1));
          REQUIRE(tc_route(pair, r) == closed_form(pair, r));
          prev_size = size;
          prev_length = length;
        }
      }
}

TEST_CASE("verify_grid") {
  const auto single = verify_grid({{2, 3, 2, 1, 0}});
  REQUIRE(single.points.size() == 1);
  CHECK(single.pass());
  CHECK(single.points[0].routes_run.size() == 3);
  CHECK(single.points[0].group == "Z/2");

  const auto quick = verify_grid(quick_grid(), {}, {}, 2);
  CHECK(quick.pass());
  for (std::size_t i = 0; i < quick.points.size(); ++i) CHECK(quick.points[i].point.to_string() == quick_grid()[i].to_string());

  KGroupOptions corrupt;
  corrupt.corrupt_h_offset = 1;
  const auto bad = verify_grid({{2, 3, 2, 1, 0}}, {}, corrupt);
  CHECK_FALSE(bad.pass());
  CHECK(bad.failures == 1);
  CHECK_FALSE(bad.points[0].pass);

  const auto invalid = verify_grid({{4, 6, 2, 1, 0}});
  CHECK(invalid.failures == 1);
  CHECK_FALSE(invalid.points[0].error.empty());
}

TEST_CASE("default grid shape") {
  const auto grid = default_grid();
  CHECK(grid.size() == 120);
}
