#include "cuspk/semigroup.hpp"

#include <numeric>
#include <vector>

#include "cuspk/errors.hpp"
#include "cuspk/witt/finite_field.hpp"

namespace cuspk {

std::uint64_t CuspPair::q() const {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) out *= p;
  return out;
}

std::string CuspPair::to_string() const {
  return "(a=" + std::to_string(a) + ", b=" + std::to_string(b) + ", p=" + std::to_string(p) +
         ", e=" + std::to_string(e) + ")";
}

CuspPair normalize_orientation(long a, long b, long p, long e) {
  if (a < 2 || b < 2) throw InvalidArgument("a and b must be at least 2");
  if (a > kMaxGenerator || b > kMaxGenerator)
    throw InvalidArgument("a and b must be at most " + std::to_string(kMaxGenerator));
  if (std::gcd(a, b) != 1)
    throw InvalidArgument("a = " + std::to_string(a) + " and b = " + std::to_string(b) + " are not coprime");
  if (p < 2 || !witt::is_prime(static_cast<unsigned long>(p)))
    throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (e < 1) throw InvalidArgument("e must be at least 1");
  if (e > 24) throw InvalidArgument("e must be at most 24");

  CuspPair pair;
  pair.p = static_cast<unsigned>(p);
  pair.e = static_cast<unsigned>(e);
  pair.swapped = b % p == 0;
  pair.a = static_cast<unsigned>(pair.swapped ? b : a);
  pair.b = static_cast<unsigned>(pair.swapped ? a : b);
  pair.a_prime = pair.a;
  while (pair.a_prime % pair.p == 0) {
    pair.a_prime /= pair.p;
    ++pair.u;
  }
  return pair;
}

std::uint64_t ell(std::uint64_t a, std::uint64_t b, std::int64_t m) {
  if (m < 1) return 0;
  const auto n = static_cast<std::uint64_t>(m);
  std::uint64_t count = 0;
  for (std::uint64_t i = 1; a * i + b <= n; ++i)
    if ((n - a * i) % b == 0) ++count;
  return count;
}

bool semigroup_member(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  for (std::uint64_t i = 0; a * i <= n; ++i)
    if ((n - a * i) % b == 0) return true;
  return false;
}

witt::TruncationSet truncation_set(const CuspPair& pair, unsigned r) {
  if (r > kMaxTruncation) throw InvalidArgument("r must be at most " + std::to_string(kMaxTruncation));
  const std::uint64_t ab = std::uint64_t{pair.a} * pair.b;
  const std::uint64_t bound = ab * (r + 2);
  std::vector<std::uint32_t> members;
  std::uint64_t misses = 0;
  for (std::uint64_t m = 1; misses < ab; ++m) {
    if (ell(pair, static_cast<std::int64_t>(m)) <= r) {
      if (m > bound) throw IntegrityError("truncation_set: member " + std::to_string(m) + " above a b (r + 2)");
      members.push_back(static_cast<std::uint32_t>(m));
      misses = 0;
    } else {
      ++misses;
    }
  }
  return witt::TruncationSet(std::move(members));
}

unsigned s_exponent(const CuspPair& pair, unsigned r, std::uint64_t m_prime) {
  if (m_prime == 0) throw InvalidArgument("m' must be positive");
  if (m_prime % pair.p == 0)
    throw InvalidArgument("m' = " + std::to_string(m_prime) + " is divisible by p = " + std::to_string(pair.p));
  if (ell(pair, static_cast<std::int64_t>(m_prime)) > r) return 0;
  std::uint64_t power = m_prime;
  for (unsigned s = 1;; ++s) {
    if (power > (std::uint64_t{1} << 62) / pair.p) throw IntegrityError("s_exponent: scan did not terminate");
    power *= pair.p;
    if (ell(pair, static_cast<std::int64_t>(power)) > r) return s;
  }
}

unsigned h_exponent(const CuspPair& pair, unsigned r, std::uint64_t m_prime) {
  const unsigned s = s_exponent(pair, r, m_prime);
  if (m_prime % pair.b == 0) return 0;
  if (m_prime % pair.a_prime == 0) return std::min(s, pair.u);
  return s;
}

std::uint64_t sylvester_length(const CuspPair& pair, unsigned r) {
  const std::uint64_t twice = (2 * std::uint64_t{r} + 1) * (pair.a - 1) * (pair.b - 1);
  if (twice % 2 != 0) throw IntegrityError("sylvester_length: (2r+1)(a-1)(b-1) is odd");
  return twice / 2;
}

std::uint64_t gap_count(std::uint64_t a, std::uint64_t b) {
  // every n >= (a - 1)(b - 1) lies in the semigroup
  std::uint64_t gaps = 0;
  for (std::uint64_t n = 1; n < (a - 1) * (b - 1); ++n)
    if (!semigroup_member(a, b, n)) ++gaps;
  return gaps;
}

PTypicalProfile p_typical_profile(const CuspPair& pair, unsigned r) {
  PTypicalProfile profile;
  profile.r = r;
  const witt::TruncationSet set = truncation_set(pair, r);
  for (std::uint32_t m : set.members()) {
    if (m % pair.p == 0) continue;
    if (unsigned h = h_exponent(pair, r, m); h > 0) {
      profile.entries.emplace(m, h);
      profile.total_length += h;
    }
  }
  if (profile.total_length != sylvester_length(pair, r))
    throw IntegrityError("p_typical_profile: total " + std::to_string(profile.total_length) +
                         " differs from the Sylvester length " + std::to_string(sylvester_length(pair, r)));
  return profile;
}

}  // namespace cuspk
