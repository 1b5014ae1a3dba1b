#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuspk/algebra/abelian_group.hpp"
#include "cuspk/semigroup.hpp"
#include "cuspk/witt/finite_field.hpp"

namespace cuspk::tc {

enum class RingVariant { fixed_points, tate };

/// W(k)[t, x]/(tx - p, p^v t) (fixed points) or W(k)[t^{+-1}, x]/(tx - p,
/// p^v t) (Tate), deg t = -2, deg x = 2. Lengths are W(k)-lengths of the
/// homogeneous components.
class GradedRingModel {
 public:
  GradedRingModel(unsigned v, RingVariant variant) : v_(v), variant_(variant) {}

  unsigned level() const { return v_; }
  RingVariant variant() const { return variant_; }

  /// Length in even degree `degree` (odd degrees are zero).
  unsigned length(int degree) const;

  /// The same length obtained by writing down the degree component over Z
  /// on the monomials t^i x^k (|i| <= window) and taking the cokernel of
  /// the relations (tx - p) * monomial and p^v t * monomial. Throws
  /// IntegrityError if the result has free part or is not a p-group.
  unsigned reduced_length(int degree, unsigned p, unsigned window = 12) const;

 private:
  unsigned v_;
  RingVariant variant_;
};

/// Order of the image of multiplication by p^{v-u} on Z/p^{v+1}, as a
/// power of p (requires u <= v).
unsigned corestriction_image_length(unsigned p, unsigned u, unsigned v);

enum class TowerCase { neither, a_only_u_le_s, a_only_s_lt_u, b_divides };

std::string to_string(TowerCase c);

/// Lengths of pi_{2r+1} of the homotopy fixed points (H) and Tate
/// constructions (T) on the factors p^v m', v = 0..V, and which Frobenius
/// maps phi_v : H_v -> T_{v+1} and canonical maps can_v : H_v -> T_v are
/// isomorphisms.
struct TowerPair {
  TowerCase case_tag = TowerCase::neither;
  unsigned s = 0;
  unsigned u = 0;
  unsigned V = 0;
  std::vector<unsigned> H;
  std::vector<unsigned> T;
  std::vector<bool> phi_iso;  // index v = 0..V
  std::vector<bool> can_iso;

  /// Throws IntegrityError unless an isomorphism joins equal lengths and
  /// the vectors have V + 1 entries.
  void validate() const;

  friend bool operator==(const TowerPair&, const TowerPair&) = default;
};

TowerCase classify(const CuspPair& pair, unsigned r, std::uint64_t m_prime);

/// Tower tables by case. V defaults to s + u + 2; throws InvalidArgument if
/// V < s + u + 1 or p | m'.
TowerPair towers(const CuspPair& pair, unsigned r, std::uint64_t m_prime, std::optional<unsigned> V = std::nullopt);

/// The same towers computed level by level: H_v and T_v are read off the
/// graded ring models in degree 2(r - ell(p^v m')); when a | p^v m' they
/// are cokernels of multiplication by p^u from level v - u, and they vanish
/// when b | p^v m'.
TowerPair derive_towers(const CuspPair& pair, unsigned r, std::uint64_t m_prime,
                        std::optional<unsigned> V = std::nullopt);

/// Frobenius index bookkeeping for the weight m = p^v m': for each r up to
/// ell(m) + 1, a Frobenius landing in level v comes from level v - 1, and
/// nothing lands in level 0 (T_0 = 0 when p does not divide m). Also checks
/// that ell(p^i m') is nondecreasing in i.
bool frobenius_shift_check(const CuspPair& pair, std::uint64_t m);

/// How the maps the tables leave open (can_v for v < s, phi_v for v >= s)
/// are filled in.
enum class FillPolicy { zero, projection, random };

enum class EliminationRoute {
  structural,  // pivot on the isomorphisms, then solve the residual map
  direct       // kernel and cokernel of the whole truncated matrix
};

struct EqualizerOptions {
  FillPolicy fill = FillPolicy::zero;
  EliminationRoute route = EliminationRoute::structural;
  std::uint64_t seed = 1;
};

struct EqualizerGroups {
  algebra::AbelianGroupStructure tc_odd;   // ker(phi - can)
  algebra::AbelianGroupStructure tc_even;  // coker(phi - can)

  friend bool operator==(const EqualizerGroups&, const EqualizerGroups&) = default;
};

/// Kernel and cokernel of phi - can : prod_v H_v -> prod_v T_v with each
/// W_c(F_q) written as (Z/p^c)^e.
EqualizerGroups equalizer_groups(const TowerPair& tower, const witt::FiniteField& field,
                                 const EqualizerOptions& options = {});

/// TC_{2r+1}(m'): towers plus elimination, checked against the graded-ring
/// derivation, the direct route, and (Z/p^h)^e with h = h_exponent.
algebra::AbelianGroupStructure tc_of_class(const CuspPair& pair, unsigned r, std::uint64_t m_prime,
                                           const witt::FiniteField& field);

}  // namespace cuspk::tc
