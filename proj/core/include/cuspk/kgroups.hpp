#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cuspk/algebra/abelian_group.hpp"
#include "cuspk/semigroup.hpp"
#include "cuspk/witt/finite_field.hpp"
#include "cuspk/witt/group.hpp"
#include "cuspk/witt/structure_table.hpp"

namespace cuspk {

inline constexpr const char* kRouteClosedForm = "closed_form";
inline constexpr const char* kRouteWittQuotient = "witt_quotient";
inline constexpr const char* kRouteTc = "tc";

struct RouteSelection {
  bool witt_quotient = true;
  bool tc = true;
};

struct KGroupOptions {
  std::uint64_t witt_cap = witt::kDefaultEnumerationCap;  // bound on q^|S|
  std::size_t table_cap = witt::kDefaultTableCap;        // bound on |S| for structure tables
  witt::StructureTableCache* cache = nullptr;             // shared() when null
  /// Test hook: added to every h of the closed form (0 in normal use).
  int corrupt_h_offset = 0;
};

/// prod over the p-typical profile of (Z/p^h)^e.
algebra::AbelianGroupStructure closed_form(const CuspPair& pair, unsigned r, const KGroupOptions& options = {});

struct WittQuotientResult {
  witt::TruncationSet set;
  algebra::BigInt ambient_order;   // q^|S|
  algebra::BigInt subgroup_order;  // |V_a W_{S/a} + V_b W_{S/b}| by closure
  algebra::AbelianGroupStructure subgroup;
  algebra::AbelianGroupStructure quotient;
};

/// W_S(F_q) / (V_a W_{S/a} + V_b W_{S/b}) with S = S(a, b, r). The
/// subgroup is enumerated by closure; the quotient structure comes from the
/// additive presentation of W_S(F_q) with the subgroup generators added as
/// relations, and its order is checked against the closure. Throws
/// ResourceError when q^|S| exceeds options.witt_cap.
WittQuotientResult witt_quotient_details(const CuspPair& pair, unsigned r, const KGroupOptions& options = {});
inline algebra::AbelianGroupStructure witt_quotient(const CuspPair& pair, unsigned r,
                                                    const KGroupOptions& options = {}) {
  return witt_quotient_details(pair, r, options).quotient;
}

/// prod over p-free m' <= max S(a, b, r) of TC_{2r+1}(m').
algebra::AbelianGroupStructure tc_route(const CuspPair& pair, unsigned r);

/// q^|S(a, b, r)| <= cap, without overflow.
bool witt_route_within_cap(const CuspPair& pair, unsigned r, std::uint64_t cap);

struct KGroupResult {
  CuspPair pair;
  long j = 0;
  algebra::AbelianGroupStructure group;
  std::map<std::string, algebra::AbelianGroupStructure> routes;
  std::map<std::string, std::string> skipped;  // route -> reason
  bool agree = true;
  std::uint64_t length = 0;           // sum of v_p of the invariant factors
  std::uint64_t expected_length = 0;  // e (2r + 1)(a - 1)(b - 1) / 2, or 0
  bool length_ok = true;
};

/// K_j(k[x, y]/(y^a - x^b), (x, y)) for k = F_{p^e}. For j = 2r >= 0 runs
/// the closed form and the selected routes that fit their caps; odd and
/// negative j give the trivial group.
KGroupResult k_group(const CuspPair& pair, long j, const RouteSelection& routes = {},
                     const KGroupOptions& options = {});

struct GridPoint {
  unsigned a = 0, b = 0, p = 0, e = 1, r = 0;
  std::string to_string() const;
};

/// (a, b) in {(2,3), (2,5), (3,4), (3,5)}, p in {2, 3, 5}, e in {1, 2}, r <= 4.
std::vector<GridPoint> default_grid();
/// A small subset of the default grid for smoke runs.
std::vector<GridPoint> quick_grid();

struct GridPointReport {
  GridPoint point;
  std::vector<std::string> routes_run;
  std::vector<std::string> routes_skipped;
  bool routes_agree = false;
  bool length_ok = false;
  bool pass = false;
  std::string group;
  std::string error;  // set when a computation threw
};

struct GridReport {
  std::vector<GridPointReport> points;
  std::size_t failures = 0;
  bool pass() const { return failures == 0; }
};

/// Runs k_group(j = 2r) at every point; failures (including thrown errors)
/// are recorded, not raised. Points are evaluated on up to `jobs` threads;
/// the report keeps the input order.
GridReport verify_grid(const std::vector<GridPoint>& grid, const RouteSelection& routes = {},
                       const KGroupOptions& options = {}, unsigned jobs = 1);

}  // namespace cuspk
