#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cuspk/witt/truncation_set.hpp"

namespace cuspk {

inline constexpr unsigned kMaxGenerator = 64;
inline constexpr unsigned kMaxTruncation = 16;

/// Coprime exponents (a, b) of the cusp y^a = x^b together with the residue
/// characteristic p and the degree e of k = F_{p^e}, oriented so that p does
/// not divide b. a = p^u * a_prime with p not dividing a_prime.
struct CuspPair {
  unsigned a = 0;
  unsigned b = 0;
  unsigned p = 0;
  unsigned u = 0;
  unsigned a_prime = 0;
  unsigned e = 1;
  bool swapped = false;

  std::uint64_t q() const;
  std::string to_string() const;

  friend bool operator==(const CuspPair&, const CuspPair&) = default;
};

/// Validates the input (a, b >= 2, coprime, <= kMaxGenerator; p prime;
/// e >= 1) and swaps a and b when p divides b.
CuspPair normalize_orientation(long a, long b, long p, long e);

/// Number of (i, j) with i, j >= 1 and a i + b j = m; zero for m < 1.
std::uint64_t ell(std::uint64_t a, std::uint64_t b, std::int64_t m);
inline std::uint64_t ell(const CuspPair& pair, std::int64_t m) { return ell(pair.a, pair.b, m); }

/// n = a i + b j with i, j >= 0.
bool semigroup_member(std::uint64_t a, std::uint64_t b, std::uint64_t n);
inline bool semigroup_member(const CuspPair& pair, std::uint64_t n) { return semigroup_member(pair.a, pair.b, n); }

/// S(a, b, r) = {m >= 1 : ell(a, b, m) <= r}.
witt::TruncationSet truncation_set(const CuspPair& pair, unsigned r);

/// Least s >= 1 with ell(p^{s-1} m') <= r < ell(p^s m'), or 0 when
/// ell(m') > r. Throws InvalidArgument if p divides m'.
unsigned s_exponent(const CuspPair& pair, unsigned r, std::uint64_t m_prime);

/// s, min(s, u) or 0 according to whether neither a' nor b, only a', or b
/// divides m'.
unsigned h_exponent(const CuspPair& pair, unsigned r, std::uint64_t m_prime);

/// (2r + 1)(a - 1)(b - 1) / 2.
std::uint64_t sylvester_length(const CuspPair& pair, unsigned r);

/// Number of positive integers outside the semigroup <a, b>.
std::uint64_t gap_count(std::uint64_t a, std::uint64_t b);

struct PTypicalProfile {
  unsigned r = 0;
  std::map<std::uint64_t, unsigned> entries;  // m' -> h, only h > 0
  std::uint64_t total_length = 0;
};

/// All p-free m' with h > 0. Throws IntegrityError if the total differs
/// from sylvester_length.
PTypicalProfile p_typical_profile(const CuspPair& pair, unsigned r);

}  // namespace cuspk
