#include "cuspk/witt/truncation_set.hpp"

#include <algorithm>
#include <sstream>

#include "cuspk/errors.hpp"

namespace cuspk::witt {

TruncationSet::TruncationSet() : members_(std::make_shared<const std::vector<std::uint32_t>>()) {}

TruncationSet::TruncationSet(std::vector<std::uint32_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && members.front() == 0) throw InvalidArgument("truncation set members must be positive");
  for (std::uint32_t m : members)
    for (std::uint32_t d = 1; d * d <= m; ++d) {
      if (m % d) continue;
      if (!std::binary_search(members.begin(), members.end(), d) ||
          !std::binary_search(members.begin(), members.end(), m / d))
        throw InvalidArgument("set is not divisor-closed: " + std::to_string(m) + " lacks a divisor");
    }
  members_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(members));
}

TruncationSet TruncationSet::divisors_of(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("divisors_of(0)");
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return TruncationSet(std::move(out));
}

bool TruncationSet::contains(std::uint32_t m) const {
  return std::binary_search(members_->begin(), members_->end(), m);
}

std::optional<std::size_t> TruncationSet::index_of(std::uint32_t m) const {
  auto it = std::lower_bound(members_->begin(), members_->end(), m);
  if (it == members_->end() || *it != m) return std::nullopt;
  return static_cast<std::size_t>(it - members_->begin());
}

TruncationSet TruncationSet::divide(std::uint32_t n) const {
  if (n == 0) throw InvalidArgument("divide_set: n must be positive");
  std::vector<std::uint32_t> out;
  for (std::uint32_t m : *members_)
    if (m % n == 0) out.push_back(m / n);
  return TruncationSet(std::move(out));
}

std::string TruncationSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_->size(); ++i) os << (i ? "," : "") << (*members_)[i];
  os << '}';
  return os.str();
}

std::string TruncationSet::key() const {
  if (members_->empty()) return "empty";
  std::ostringstream os;
  for (std::size_t i = 0; i < members_->size(); ++i) os << (i ? "_" : "") << (*members_)[i];
  return os.str();
}

}  // namespace cuspk::witt
