#include "cuspk/kgroups.hpp"

#include "cuspk/algebra/subgroup_closure.hpp"
#include "cuspk/errors.hpp"
#include "cuspk/parallel.hpp"
#include "cuspk/tcmodel.hpp"
#include "cuspk/witt/witt_vector.hpp"

namespace cuspk {

using algebra::AbelianGroupStructure;
using algebra::BigInt;
using algebra::IntegerMatrix;

AbelianGroupStructure closed_form(const CuspPair& pair, unsigned r, const KGroupOptions& options) {
  AbelianGroupStructure out;
  for (const auto& [m_prime, h] : p_typical_profile(pair, r).entries) {
    const int corrupted = static_cast<int>(h) + options.corrupt_h_offset;
    out = out.direct_sum(AbelianGroupStructure::elementary(pair.p, static_cast<unsigned>(std::max(0, corrupted)), pair.e));
  }
  return out;
}

bool witt_route_within_cap(const CuspPair& pair, unsigned r, std::uint64_t cap) {
  const std::size_t n = truncation_set(pair, r).size();
  const std::uint64_t q = pair.q();
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (order > cap / q) return false;
    order *= q;
  }
  return order <= cap;
}

WittQuotientResult witt_quotient_details(const CuspPair& pair, unsigned r, const KGroupOptions& options) {
  using witt::FieldWittVector;
  WittQuotientResult out;
  out.set = truncation_set(pair, r);
  const witt::FiniteField field(pair.p, pair.e);
  const witt::WittCodec codec(out.set, field, options.witt_cap);
  out.ambient_order = static_cast<unsigned long>(codec.order());
  if (out.set.size() > options.table_cap)
    throw ResourceError("witt_quotient: |S| = " + std::to_string(out.set.size()) + " exceeds the table cap " +
                        std::to_string(options.table_cap));
  auto& cache = options.cache ? *options.cache : witt::StructureTableCache::shared();
  const witt::FieldWittRing ring(field, out.set, cache.get(out.set));

  std::vector<FieldWittVector> generators;
  for (std::uint32_t n : {pair.a, pair.b})
    for (const auto& g : witt::additive_generators(out.set.divide(n), field))
      generators.push_back(witt::verschiebung(n, g, out.set, field.zero()));

  std::vector<std::uint64_t> codes;
  for (const auto& g : generators) codes.push_back(codec.encode(g));
  auto add = [&](std::uint64_t x, std::uint64_t y) { return codec.encode(ring.add(codec.decode(x), codec.decode(y))); };
  auto neg = [&](std::uint64_t x) { return codec.encode(ring.neg(codec.decode(x))); };
  auto closure = algebra::subgroup_closure<std::uint64_t>(out.ambient_order, codes, add, neg, 0,
                                                          static_cast<std::size_t>(options.witt_cap));
  out.subgroup_order = closure.order;
  out.subgroup = closure.structure;

  // W_S(F_q) = Z^N / R; the subgroup adds the digit vectors of its generators.
  const IntegerMatrix presentation = witt::additive_presentation(ring);
  IntegerMatrix relations(presentation.rows(), generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    const auto digits = witt::digit_decomposition(ring, generators[j]);
    for (std::size_t i = 0; i < digits.size(); ++i) relations(i, j) = digits[i];
  }
  out.quotient = algebra::cokernel_structure(IntegerMatrix::concat_columns(presentation, relations));
  if (!out.quotient.is_finite() || out.quotient.torsion_order() * out.subgroup_order != out.ambient_order)
    throw IntegrityError("witt_quotient: |quotient| = " + out.quotient.torsion_order().get_str() + " and |subgroup| = " +
                         out.subgroup_order.get_str() + " do not multiply to q^|S| = " + out.ambient_order.get_str());
  return out;
}

AbelianGroupStructure tc_route(const CuspPair& pair, unsigned r) {
  const witt::FiniteField field(pair.p, pair.e);
  const auto set = truncation_set(pair, r);
  AbelianGroupStructure out;
  for (std::uint64_t m_prime = 1; m_prime <= set.members().back(); ++m_prime) {
    if (m_prime % pair.p == 0) continue;
    out = out.direct_sum(tc::tc_of_class(pair, r, m_prime, field));
  }
  return out;
}

KGroupResult k_group(const CuspPair& pair, long j, const RouteSelection& routes, const KGroupOptions& options) {
  KGroupResult result;
  result.pair = pair;
  result.j = j;
  if (j < 0 || j % 2 != 0) {
    result.routes.emplace(kRouteClosedForm, AbelianGroupStructure::trivial());
    return result;
  }
  if (j / 2 > static_cast<long>(kMaxTruncation))
    throw InvalidArgument("j = " + std::to_string(j) + " needs r > " + std::to_string(kMaxTruncation));
  const auto r = static_cast<unsigned>(j / 2);

  result.group = closed_form(pair, r, options);
  result.routes.emplace(kRouteClosedForm, result.group);
  if (routes.witt_quotient) {
    const std::size_t size = truncation_set(pair, r).size();
    if (!witt_route_within_cap(pair, r, options.witt_cap))
      result.skipped.emplace(kRouteWittQuotient, "q^|S| = " + std::to_string(pair.q()) + "^" + std::to_string(size) +
                                                     " exceeds the cap " + std::to_string(options.witt_cap));
    else if (size > options.table_cap)
      result.skipped.emplace(kRouteWittQuotient, "|S| = " + std::to_string(size) + " exceeds the table cap " +
                                                     std::to_string(options.table_cap));
    else
      result.routes.emplace(kRouteWittQuotient, witt_quotient(pair, r, options));
  }
  if (routes.tc) result.routes.emplace(kRouteTc, tc_route(pair, r));

  for (const auto& [name, group] : result.routes)
    if (!(group == result.group)) result.agree = false;
  result.length = result.group.p_length(pair.p);
  result.expected_length = pair.e * sylvester_length(pair, r);
  result.length_ok = result.length == result.expected_length;
  return result;
}

std::string GridPoint::to_string() const {
  return "(a=" + std::to_string(a) + ", b=" + std::to_string(b) + ", p=" + std::to_string(p) +
         ", e=" + std::to_string(e) + ", r=" + std::to_string(r) + ")";
}

std::vector<GridPoint> default_grid() {
  std::vector<GridPoint> grid;
  for (auto [a, b] : {std::pair{2u, 3u}, {2u, 5u}, {3u, 4u}, {3u, 5u}})
    for (unsigned p : {2u, 3u, 5u})
      for (unsigned e : {1u, 2u})
        for (unsigned r = 0; r <= 4; ++r) grid.push_back({a, b, p, e, r});
  return grid;
}

std::vector<GridPoint> quick_grid() {
  return {{2, 3, 2, 1, 0}, {2, 3, 2, 2, 0}, {2, 3, 2, 1, 1}, {2, 3, 3, 1, 0},
          {2, 5, 2, 1, 0}, {3, 4, 2, 1, 0}, {3, 5, 2, 1, 0}, {3, 4, 3, 1, 1}};
}

GridReport verify_grid(const std::vector<GridPoint>& grid, const RouteSelection& routes,
                       const KGroupOptions& options, unsigned jobs) {
  GridReport report;
  report.points.resize(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    auto& out = report.points[i];
    out.point = grid[i];
    try {
      const CuspPair pair = normalize_orientation(grid[i].a, grid[i].b, grid[i].p, grid[i].e);
      const KGroupResult result = k_group(pair, 2 * static_cast<long>(grid[i].r), routes, options);
      for (const auto& [name, group] : result.routes) out.routes_run.push_back(name);
      for (const auto& [name, reason] : result.skipped) out.routes_skipped.push_back(name);
      out.routes_agree = result.agree;
      out.length_ok = result.length_ok;
      out.group = result.group.to_string();
      out.pass = result.agree && result.length_ok;
    } catch (const Error& e) {
      out.error = e.what();
    }
  });
  for (const auto& p : report.points)
    if (!p.pass) ++report.failures;
  return report;
}

}  // namespace cuspk
