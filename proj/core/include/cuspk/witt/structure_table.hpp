#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cuspk/witt/polynomial.hpp"
#include "cuspk/witt/truncation_set.hpp"

namespace cuspk::witt {

inline constexpr std::size_t kDefaultTableCap = 24;
inline constexpr int kTableFormatVersion = 1;

/// Variable numbering used by the structure tables of a set S: for the
/// member at position i, x_{S[i]} is variable 2i and y_{S[i]} is 2i + 1.
inline std::uint16_t x_var(std::size_t position) { return static_cast<std::uint16_t>(2 * position); }
inline std::uint16_t y_var(std::size_t position) { return static_cast<std::uint16_t>(2 * position + 1); }

/// Universal Witt addition and multiplication polynomials on a truncation
/// set, solved from the ghost equations
///   sum_{d|m} d * P_d^{m/d} = w_m(x) + w_m(y)   (resp. w_m(x) * w_m(y)),
/// where w_m(x) = sum_{d|m} d * x_d^{m/d}.
class StructurePolynomialTable {
 public:
  /// Throws ResourceError if |S| > cap and IntegrityError if some division
  /// by m is inexact.
  static StructurePolynomialTable build(const TruncationSet& set, std::size_t cap = kDefaultTableCap);

  const TruncationSet& set() const { return set_; }
  /// Indexed by member position.
  const std::vector<IntegerPolynomial>& sum_polynomials() const { return sum_; }
  const std::vector<IntegerPolynomial>& product_polynomials() const { return prod_; }

  std::size_t num_variables() const { return 2 * set_.size(); }

  /// Self-describing text form: version tag, set, both families, decimal
  /// coefficients.
  std::string serialize() const;
  /// Throws IntegrityError on a malformed file or a version mismatch.
  static StructurePolynomialTable parse(std::string_view text);

  friend bool operator==(const StructurePolynomialTable&, const StructurePolynomialTable&) = default;

 private:
  TruncationSet set_;
  std::vector<IntegerPolynomial> sum_;
  std::vector<IntegerPolynomial> prod_;
};

/// build_structure_table(S)
inline StructurePolynomialTable build_structure_table(const TruncationSet& set, std::size_t cap = kDefaultTableCap) {
  return StructurePolynomialTable::build(set, cap);
}

/// Ghost polynomial w_m in the variables of `family` (0 for x, 1 for y) of
/// the table layout of `set`.
IntegerPolynomial ghost_polynomial(const TruncationSet& set, std::uint32_t m, int family);

/// Frobenius polynomials F_n : W_S -> W_{S/n}, solved from
///   sum_{d|m} d * F_d^{m/d} = w_{nm}(x),  m in S/n.
/// Variables are x_d with index = position of d in S. Indexed by position
/// in S/n.
std::vector<IntegerPolynomial> frobenius_polynomials(const TruncationSet& set, std::uint32_t n);

/// CUSPK_CACHE if set, else $XDG_CACHE_HOME/cuspk, else $HOME/.cache/cuspk.
std::filesystem::path default_cache_directory();

/// In-memory table cache, optionally backed by a directory with one file
/// per truncation set. Safe for concurrent use; files are written to a
/// temporary name and renamed into place.
class StructureTableCache {
 public:
  explicit StructureTableCache(std::optional<std::filesystem::path> directory = std::nullopt,
                               std::size_t cap = kDefaultTableCap);

  std::shared_ptr<const StructurePolynomialTable> get(const TruncationSet& set);

  const std::optional<std::filesystem::path>& directory() const { return directory_; }
  std::filesystem::path file_for(const TruncationSet& set) const;
  std::size_t cap() const { return cap_; }

  /// Process-wide memory-only cache.
  static StructureTableCache& shared();

 private:
  std::optional<std::filesystem::path> directory_;
  std::size_t cap_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const StructurePolynomialTable>> tables_;
};

}  // namespace cuspk::witt
