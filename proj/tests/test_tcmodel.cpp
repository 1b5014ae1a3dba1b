#include <catch_amalgamated.hpp>

#include <optional>
#include <set>

#include "cuspk/errors.hpp"
#include "cuspk/kgroups.hpp"
#include "cuspk/tcmodel.hpp"

using namespace cuspk;
using namespace cuspk::tc;
using algebra::AbelianGroupStructure;

namespace {

struct Found {
  CuspPair pair;
  unsigned r;
  std::uint64_t m_prime;
};

// First (pair, r, m') in a small search whose tower has the given case and s.
std::optional<Found> find_class(TowerCase wanted, unsigned s, unsigned max_u, unsigned p) {
  for (auto [a, b] : {std::pair{2u, 3u}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {5, 6}, {3, 8}})
    for (unsigned r = 0; r <= 4; ++r) {
      const auto pair = normalize_orientation(a, b, p, 1);
      if (pair.u > max_u) continue;
      for (std::uint64_t m = 1; m <= 40; ++m) {
        if (m % p == 0) continue;
        if (classify(pair, r, m) == wanted && s_exponent(pair, r, m) == s) return Found{pair, r, m};
      }
    }
  return std::nullopt;
}

std::vector<unsigned> lengths(std::initializer_list<unsigned> l) { return l; }

}  // namespace

TEST_CASE("graded ring model lengths") {
  for (unsigned v = 0; v <= 8; ++v) {
    const GradedRingModel fixed(v, RingVariant::fixed_points);
    const GradedRingModel tate(v, RingVariant::tate);
    CHECK(fixed.length(0) == v + 1);
    for (int j = 1; j <= 6; ++j) {
      CHECK(fixed.length(2 * j) == v + 1);
      CHECK(fixed.length(-2 * j) == v);
      CHECK(tate.length(2 * j) == v);
      CHECK(tate.length(-2 * j) == v);
    }
    CHECK(tate.length(0) == v);
    // Explicit reduction of the degree components over Z.
    for (unsigned p : {2u, 3u, 5u})
      for (int degree = -8; degree <= 8; degree += 2) {
        REQUIRE(fixed.reduced_length(degree, p) == fixed.length(degree));
        REQUIRE(tate.reduced_length(degree, p) == tate.length(degree));
      }
  }
}

TEST_CASE("corestriction image has order p^(u+1)") {
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned v = 0; v <= 5; ++v)
      for (unsigned u = 0; u <= v; ++u) {
        // Order of the subgroup generated by p^{v-u} in Z/p^{v+1}, counted.
        unsigned long modulus = 1, step = 1;
        for (unsigned i = 0; i <= v; ++i) modulus *= p;
        for (unsigned i = 0; i < v - u; ++i) step *= p;
        std::set<unsigned long> image;
        for (unsigned long k = 0; k < modulus; ++k) image.insert(k * step % modulus);
        unsigned long expected = 1;
        for (unsigned i = 0; i <= u; ++i) expected *= p;
        REQUIRE(image.size() == expected);
        REQUIRE(corestriction_image_length(p, u, v) == u + 1);
      }
}

TEST_CASE("tower tables") {
  const auto p23 = normalize_orientation(2, 3, 2, 1);
  const auto t = towers(p23, 0, 1);
  CHECK(t.case_tag == TowerCase::a_only_u_le_s);
  CHECK(t.s == 3);
  CHECK(t.u == 1);
  CHECK(t.V == 6);
  CHECK(t.H == lengths({1, 1, 1, 1, 1, 1, 1}));
  CHECK(t.T == lengths({0, 1, 1, 1, 1, 1, 1}));

  const auto neither = find_class(TowerCase::neither, 2, 1, 2);
  REQUIRE(neither);
  const auto tn = towers(neither->pair, neither->r, neither->m_prime, 4);
  CHECK(tn.H == lengths({1, 2, 2, 3, 4}));
  CHECK(tn.T == lengths({0, 1, 2, 3, 4}));
  CHECK(tn.phi_iso == std::vector<bool>{true, true, false, false, false});
  CHECK(tn.can_iso == std::vector<bool>{false, false, true, true, true});

  const auto tb = towers(p23, 0, 3);
  CHECK(tb.case_tag == TowerCase::b_divides);
  for (auto x : tb.H) CHECK(x == 0);
  for (auto x : tb.T) CHECK(x == 0);

  CHECK_THROWS_AS(towers(p23, 0, 1, 4), InvalidArgument);  // s + u + 1 = 5
  CHECK_THROWS_AS(towers(p23, 0, 2), InvalidArgument);

  auto broken = t;
  broken.H[3] = 2;
  CHECK_THROWS_AS(broken.validate(), IntegrityError);
}

TEST_CASE("case a_only with s < u") {
  // a = 4 = 2^2 with p = 2; small s makes s < u.
  const auto found = find_class(TowerCase::a_only_s_lt_u, 1, 4, 2);
  REQUIRE(found);
  const auto t = towers(found->pair, found->r, found->m_prime);
  const unsigned u = found->pair.u;
  for (unsigned v = 0; v <= t.V; ++v) {
    const unsigned h = v < t.s ? v + 1 : (v < u ? v : u);
    const unsigned tt = v < u ? v : u;
    REQUIRE(t.H[v] == h);
    REQUIRE(t.T[v] == tt);
  }
}

TEST_CASE("tables agree with the level-by-level derivation") {
  for (auto [a, b] : {std::pair{2u, 3u}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {8, 9}})
    for (unsigned p : {2u, 3u, 5u})
      for (unsigned r = 0; r <= 4; ++r) {
        const auto pair = normalize_orientation(a, b, p, 1);
        for (std::uint64_t m = 1; m <= 60; ++m) {
          if (m % p == 0) continue;
          REQUIRE(towers(pair, r, m) == derive_towers(pair, r, m));
        }
      }
}

TEST_CASE("frobenius index bookkeeping") {
  for (auto [a, b] : {std::pair{2u, 3u}, {2, 5}, {3, 4}, {3, 5}})
    for (unsigned p : {2u, 3u, 5u}) {
      const auto pair = normalize_orientation(a, b, p, 1);
      for (std::uint64_t m = 1; m <= 200; ++m) REQUIRE(frobenius_shift_check(pair, m));
    }
}

TEST_CASE("equalizer examples") {
  for (unsigned p : {2u, 3u}) {
    const auto neither = find_class(TowerCase::neither, 2, 8, p);
    REQUIRE(neither);
    const witt::FiniteField fp(p, 1);
    const auto g = equalizer_groups(towers(neither->pair, neither->r, neither->m_prime), fp);
    CHECK(g.tc_odd == AbelianGroupStructure::elementary(p, 2, 1));
    CHECK(g.tc_even.is_trivial());
  }
  const auto p23 = normalize_orientation(2, 3, 2, 2);
  const witt::FiniteField f2(2, 1), f4(2, 2);
  const auto b = equalizer_groups(towers(p23, 0, 3), f2);
  CHECK(b.tc_odd.is_trivial());
  CHECK(b.tc_even.is_trivial());
  const auto a = equalizer_groups(towers(p23, 0, 1), f4);
  CHECK(a.tc_odd == AbelianGroupStructure::elementary(2, 1, 2));
  CHECK(a.tc_even.is_trivial());
}

TEST_CASE("tc of a class") {
  const witt::FiniteField f2(2, 1);
  CHECK(tc_of_class(normalize_orientation(2, 3, 2, 1), 0, 1, f2) == AbelianGroupStructure::cyclic(2));
  CHECK(tc_of_class(normalize_orientation(2, 3, 2, 1), 0, 3, f2).is_trivial());
  const auto p35 = normalize_orientation(3, 5, 2, 1);
  CHECK(tc_of_class(p35, 1, 1, f2) == AbelianGroupStructure::elementary(2, h_exponent(p35, 1, 1), 1));
}

TEST_CASE("elimination is independent of the unspecified maps") {
  for (const auto& g : default_grid()) {
    const auto pair = normalize_orientation(g.a, g.b, g.p, g.e);
    const witt::FiniteField field(g.p, g.e);
    const auto set = truncation_set(pair, g.r);
    for (std::uint64_t m = 1; m <= set.members().back(); ++m) {
      if (m % g.p == 0) continue;
      const auto t = towers(pair, g.r, m);
      const auto expected = EqualizerGroups{AbelianGroupStructure::elementary(g.p, h_exponent(pair, g.r, m), g.e), {}};
      const auto zero = equalizer_groups(t, field, {FillPolicy::zero, EliminationRoute::structural, 1});
      const auto proj = equalizer_groups(t, field, {FillPolicy::projection, EliminationRoute::structural, 1});
      REQUIRE(zero == expected);
      REQUIRE(proj == zero);
      REQUIRE(equalizer_groups(t, field, {FillPolicy::projection, EliminationRoute::direct, 1}) == zero);
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        REQUIRE(equalizer_groups(t, field, {FillPolicy::random, EliminationRoute::structural, seed}) == zero);
        REQUIRE(equalizer_groups(t, field, {FillPolicy::random, EliminationRoute::direct, seed}) == zero);
      }
    }
  }
}
