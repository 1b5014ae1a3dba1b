#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cuspk::witt {

/// Finite divisor-closed set of positive integers, stored sorted. Copies
/// share storage.
class TruncationSet {
 public:
  TruncationSet();
  /// Sorts and deduplicates; throws InvalidArgument unless divisor-closed
  /// and all members are positive.
  explicit TruncationSet(std::vector<std::uint32_t> members);

  /// {1, ..., n}'s divisors: the set of divisors of n.
  static TruncationSet divisors_of(std::uint32_t n);

  const std::vector<std::uint32_t>& members() const { return *members_; }
  std::size_t size() const { return members_->size(); }
  bool empty() const { return members_->empty(); }
  bool contains(std::uint32_t m) const;
  /// Position of m in members(), if present.
  std::optional<std::size_t> index_of(std::uint32_t m) const;

  /// S/n = {m >= 1 : n m in S}.
  TruncationSet divide(std::uint32_t n) const;

  /// "{1,2,3,4,6}"
  std::string to_string() const;
  /// "1_2_3_4_6" (used as a cache key)
  std::string key() const;

  friend bool operator==(const TruncationSet& lhs, const TruncationSet& rhs) {
    return lhs.members_ == rhs.members_ || *lhs.members_ == *rhs.members_;
  }

 private:
  std::shared_ptr<const std::vector<std::uint32_t>> members_;
};

/// divide_set(S, n)
inline TruncationSet divide_set(const TruncationSet& s, std::uint32_t n) { return s.divide(n); }

}  // namespace cuspk::witt
