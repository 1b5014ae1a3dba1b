#include "cuspk/tcmodel.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "cuspk/algebra/lattice.hpp"
#include "cuspk/errors.hpp"

namespace cuspk::tc {

using algebra::AbelianGroupStructure;
using algebra::BigInt;
using algebra::IntegerMatrix;

namespace {

BigInt power(unsigned p, unsigned k) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, k);
  return out;
}

// Length of a finite p-group order, IntegrityError if not a power of p.
unsigned p_log(const BigInt& order, unsigned p) {
  BigInt n = order;
  unsigned k = 0;
  while (n > 1) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) throw IntegrityError("expected a p-group, got order " + order.get_str());
    n /= p;
    ++k;
  }
  return k;
}

BigInt mod(const BigInt& x, const BigInt& n) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

unsigned GradedRingModel::length(int degree) const {
  if (degree % 2 != 0) return 0;
  if (variant_ == RingVariant::tate) return v_;
  return degree >= 0 ? v_ + 1 : v_;
}

unsigned GradedRingModel::reduced_length(int degree, unsigned p, unsigned window) const {
  if (degree % 2 != 0) return 0;
  if (window < 1) throw InvalidArgument("reduced_length: window must be positive");
  const int j = degree / 2;
  // Degree-2j monomials t^i x^{i+j}; x-exponent >= 0, and t-exponent >= 0
  // unless t is inverted.
  const int lowest = variant_ == RingVariant::tate ? -j : std::max(0, -j);
  const std::size_t n = window + 1;
  IntegerMatrix rel(n, 0);
  std::vector<std::vector<BigInt>> columns;
  // (tx - p) m_i = m_{i+1} - p m_i
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<BigInt> c(n, 0);
    c[k + 1] = 1;
    c[k] = -static_cast<long>(p);
    columns.push_back(std::move(c));
  }
  // p^v t * (t^{i-1} x^{i+j}) = p^v m_i whenever t^{i-1} x^{i+j} exists
  const BigInt pv = power(p, v_);
  for (std::size_t k = 0; k < n; ++k) {
    const int i = lowest + static_cast<int>(k);
    if (variant_ == RingVariant::fixed_points && i - 1 < 0) continue;
    std::vector<BigInt> c(n, 0);
    c[k] = pv;
    columns.push_back(std::move(c));
  }
  IntegerMatrix m(n, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = columns[c][r];
  AbelianGroupStructure g = algebra::cokernel_structure(m);
  if (!g.is_finite()) throw IntegrityError("reduced_length: component is not of finite length");
  return p_log(g.torsion_order(), p);
}

unsigned corestriction_image_length(unsigned p, unsigned u, unsigned v) {
  if (u > v) throw InvalidArgument("corestriction_image_length: requires u <= v");
  const BigInt modulus = power(p, v + 1);
  const BigInt image = power(p, v - u);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), image.get_mpz_t(), modulus.get_mpz_t());
  return p_log(modulus / g, p);
}

std::string to_string(TowerCase c) {
  switch (c) {
    case TowerCase::neither:
      return "neither";
    case TowerCase::a_only_u_le_s:
      return "a_only_u_le_s";
    case TowerCase::a_only_s_lt_u:
      return "a_only_s_lt_u";
    case TowerCase::b_divides:
      return "b_divides";
  }
  return "?";
}

void TowerPair::validate() const {
  const std::size_t n = std::size_t{V} + 1;
  if (H.size() != n || T.size() != n || phi_iso.size() != n || can_iso.size() != n)
    throw IntegrityError("tower: expected " + std::to_string(n) + " levels");
  for (std::size_t v = 0; v < n; ++v) {
    if (can_iso[v] && H[v] != T[v])
      throw IntegrityError("tower: can_" + std::to_string(v) + " claimed iso between lengths " +
                           std::to_string(H[v]) + " and " + std::to_string(T[v]));
    if (phi_iso[v] && v + 1 < n && H[v] != T[v + 1])
      throw IntegrityError("tower: phi_" + std::to_string(v) + " claimed iso between lengths " +
                           std::to_string(H[v]) + " and " + std::to_string(T[v + 1]));
  }
}

namespace {

TowerCase classify_with_s(const CuspPair& pair, unsigned s, std::uint64_t m_prime) {
  if (m_prime % pair.b == 0) return TowerCase::b_divides;
  if (m_prime % pair.a_prime == 0) return pair.u <= s ? TowerCase::a_only_u_le_s : TowerCase::a_only_s_lt_u;
  return TowerCase::neither;
}

TowerPair skeleton(const CuspPair& pair, unsigned r, std::uint64_t m_prime, std::optional<unsigned> V) {
  if (m_prime == 0 || m_prime % pair.p == 0)
    throw InvalidArgument("towers: m' = " + std::to_string(m_prime) + " must be positive and prime to p");
  TowerPair t;
  t.s = s_exponent(pair, r, m_prime);
  t.u = pair.u;
  t.case_tag = classify_with_s(pair, t.s, m_prime);
  t.V = V.value_or(t.s + t.u + 2);
  if (t.V < t.s + t.u + 1)
    throw InvalidArgument("towers: V = " + std::to_string(t.V) + " below s + u + 1 = " +
                          std::to_string(t.s + t.u + 1));
  const std::size_t n = std::size_t{t.V} + 1;
  t.H.assign(n, 0);
  t.T.assign(n, 0);
  t.phi_iso.assign(n, false);
  t.can_iso.assign(n, false);
  for (unsigned v = 0; v <= t.V; ++v) {
    t.phi_iso[v] = v < t.s;
    t.can_iso[v] = v >= t.s;
  }
  return t;
}

}  // namespace

TowerCase classify(const CuspPair& pair, unsigned r, std::uint64_t m_prime) {
  return classify_with_s(pair, s_exponent(pair, r, m_prime), m_prime);
}

TowerPair towers(const CuspPair& pair, unsigned r, std::uint64_t m_prime, std::optional<unsigned> V) {
  TowerPair t = skeleton(pair, r, m_prime, V);
  const unsigned s = t.s, u = t.u;
  for (unsigned v = 0; v <= t.V; ++v) {
    switch (t.case_tag) {
      case TowerCase::neither:
        t.H[v] = v < s ? v + 1 : v;
        t.T[v] = v;
        break;
      case TowerCase::a_only_u_le_s:
        t.H[v] = v < u ? v + 1 : u;
        t.T[v] = v < u ? v : u;
        break;
      case TowerCase::a_only_s_lt_u:
        t.H[v] = v < s ? v + 1 : (v < u ? v : u);
        t.T[v] = v < u ? v : u;
        break;
      case TowerCase::b_divides:
        break;
    }
  }
  t.validate();
  return t;
}

TowerPair derive_towers(const CuspPair& pair, unsigned r, std::uint64_t m_prime, std::optional<unsigned> V) {
  TowerPair t = skeleton(pair, r, m_prime, V);
  std::uint64_t m = m_prime;
  for (unsigned v = 0; v <= t.V; ++v, m *= pair.p) {
    if (m % pair.b == 0) continue;  // b | m, or both: the factor vanishes
    const int degree = 2 * (static_cast<int>(r) - static_cast<int>(ell(pair, static_cast<std::int64_t>(m))));
    for (auto variant : {RingVariant::fixed_points, RingVariant::tate}) {
      const unsigned target = GradedRingModel(v, variant).length(degree);
      unsigned len = target;
      if (m % pair.a == 0) {
        // cofiber of the level (v - u) -> level v map taking 1 to p^u
        const unsigned source = GradedRingModel(v - pair.u, variant).length(degree);
        IntegerMatrix map{{1}};
        map(0, 0) = power(pair.p, pair.u);
        auto groups = algebra::finite_hom_kernel_cokernel(map, {power(pair.p, source)}, {power(pair.p, target)});
        if (!groups.kernel.is_trivial())
          throw IntegrityError("derive_towers: multiplication by p^u is not injective at level " + std::to_string(v));
        len = p_log(groups.cokernel.torsion_order(), pair.p);
      }
      (variant == RingVariant::fixed_points ? t.H : t.T)[v] = len;
    }
  }
  t.validate();
  return t;
}

bool frobenius_shift_check(const CuspPair& pair, std::uint64_t m) {
  if (m == 0) throw InvalidArgument("frobenius_shift_check: m must be positive");
  unsigned v = 0;
  std::uint64_t m_prime = m;
  while (m_prime % pair.p == 0) {
    m_prime /= pair.p;
    ++v;
  }
  std::uint64_t previous = 0;
  std::uint64_t weight = m_prime;
  for (unsigned i = 0; i <= v + 1; ++i, weight *= pair.p) {
    const std::uint64_t l = ell(pair, static_cast<std::int64_t>(weight));
    if (l < previous) return false;
    previous = l;
  }
  const std::uint64_t top = std::min<std::uint64_t>(ell(pair, static_cast<std::int64_t>(m)) + 1, kMaxTruncation);
  for (unsigned r = 0; r <= top; ++r) {
    const unsigned s = s_exponent(pair, r, m_prime);
    const TowerPair t = towers(pair, r, m_prime, std::max(v + 1, s + pair.u + 2));
    if (!(t == derive_towers(pair, r, m_prime, t.V))) return false;
    if (t.T[0] != 0) return false;  // Frobenius into a weight prime to p is zero
    if (v >= 1 && v - 1 < t.s && t.H[v - 1] != t.T[v]) return false;
  }
  return true;
}

namespace {

// phi - can as a (V+1) x (V+1) array of e x e blocks; block (i, j) maps
// (Z/p^{H_j})^e to (Z/p^{T_i})^e.
class BlockSystem {
 public:
  BlockSystem(const TowerPair& tower, unsigned p, unsigned e) : tower_(tower), p_(p), e_(e) {
    for (unsigned v = 0; v <= tower.V; ++v) {
      rows_.insert(v);
      cols_.insert(v);
    }
  }

  void set(unsigned row, unsigned col, IntegerMatrix block) { blocks_[{row, col}] = reduce(row, std::move(block)); }

  // Schur complement on the invertible block (row, col).
  void pivot(unsigned row, unsigned col) {
    const unsigned len = tower_.T[row];
    if (len != tower_.H[col])
      throw IntegrityError("elimination: pivot joins lengths " + std::to_string(tower_.H[col]) + " and " +
                           std::to_string(len));
    if (len > 0) {
      const IntegerMatrix inverse = invert(block(row, col), power(p_, len));
      for (unsigned r : rows_) {
        if (r == row) continue;
        auto c_it = blocks_.find({r, col});
        if (c_it == blocks_.end() || c_it->second.is_zero()) continue;
        const IntegerMatrix left = c_it->second * inverse;
        for (unsigned c : cols_) {
          if (c == col) continue;
          auto b_it = blocks_.find({row, c});
          if (b_it == blocks_.end() || b_it->second.is_zero()) continue;
          IntegerMatrix update = left * b_it->second;
          IntegerMatrix current = block(r, c);
          for (std::size_t i = 0; i < e_; ++i)
            for (std::size_t k = 0; k < e_; ++k) current(i, k) -= update(i, k);
          set(r, c, std::move(current));
        }
      }
    }
    rows_.erase(row);
    cols_.erase(col);
  }

  bool live(unsigned row, unsigned col) const { return rows_.count(row) && cols_.count(col); }

  // Kernel and cokernel of what is left.
  EqualizerGroups solve() const {
    std::vector<unsigned> rows, cols;
    for (unsigned r : rows_)
      if (tower_.T[r] > 0) rows.push_back(r);
    for (unsigned c : cols_)
      if (tower_.H[c] > 0) cols.push_back(c);
    IntegerMatrix map(rows.size() * e_, cols.size() * e_);
    std::vector<BigInt> source, target;
    for (unsigned c : cols)
      for (unsigned k = 0; k < e_; ++k) source.push_back(power(p_, tower_.H[c]));
    for (unsigned r : rows)
      for (unsigned k = 0; k < e_; ++k) target.push_back(power(p_, tower_.T[r]));
    for (std::size_t bi = 0; bi < rows.size(); ++bi)
      for (std::size_t bj = 0; bj < cols.size(); ++bj) {
        IntegerMatrix b = block(rows[bi], cols[bj]);
        for (std::size_t i = 0; i < e_; ++i)
          for (std::size_t k = 0; k < e_; ++k) map(bi * e_ + i, bj * e_ + k) = b(i, k);
      }
    auto groups = algebra::finite_hom_kernel_cokernel(map, source, target);
    return {groups.kernel, groups.cokernel};
  }

 private:
  IntegerMatrix block(unsigned row, unsigned col) const {
    auto it = blocks_.find({row, col});
    return it == blocks_.end() ? IntegerMatrix(e_, e_) : it->second;
  }

  IntegerMatrix reduce(unsigned row, IntegerMatrix b) const {
    const BigInt modulus = power(p_, tower_.T[row]);
    for (std::size_t i = 0; i < e_; ++i)
      for (std::size_t k = 0; k < e_; ++k) b(i, k) = mod(b(i, k), modulus);
    return b;
  }

  // Gauss-Jordan over Z/p^len; a unit pivot exists in every column of an
  // invertible matrix.
  IntegerMatrix invert(IntegerMatrix a, const BigInt& modulus) const {
    const std::size_t n = e_;
    IntegerMatrix inv = IntegerMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t pr = c;
      while (pr < n && mpz_divisible_ui_p(a(pr, c).get_mpz_t(), p_)) ++pr;
      if (pr == n) throw IntegrityError("elimination: pivot block is not invertible");
      a.swap_rows(c, pr);
      inv.swap_rows(c, pr);
      BigInt unit;
      mpz_invert(unit.get_mpz_t(), a(c, c).get_mpz_t(), modulus.get_mpz_t());
      for (std::size_t k = 0; k < n; ++k) {
        a(c, k) = mod(a(c, k) * unit, modulus);
        inv(c, k) = mod(inv(c, k) * unit, modulus);
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || sgn(a(r, c)) == 0) continue;
        const BigInt f = a(r, c);
        for (std::size_t k = 0; k < n; ++k) {
          a(r, k) = mod(a(r, k) - f * a(c, k), modulus);
          inv(r, k) = mod(inv(r, k) - f * inv(c, k), modulus);
        }
      }
    }
    return inv;
  }

  const TowerPair& tower_;
  unsigned p_;
  std::size_t e_;
  std::set<unsigned> rows_, cols_;
  std::map<std::pair<unsigned, unsigned>, IntegerMatrix> blocks_;
};

}  // namespace

EqualizerGroups equalizer_groups(const TowerPair& tower, const witt::FiniteField& field,
                                 const EqualizerOptions& options) {
  tower.validate();
  const unsigned p = field.characteristic();
  const unsigned e = field.degree();
  std::mt19937_64 rng(options.seed);

  // A homomorphism Z/p^h -> Z/p^t is multiplication by a multiple of
  // p^{max(0, t - h)}.
  auto filler = [&](unsigned source_len, unsigned target_len) {
    IntegerMatrix b(e, e);
    if (source_len == 0 || target_len == 0) return b;
    const BigInt step = power(p, target_len > source_len ? target_len - source_len : 0);
    switch (options.fill) {
      case FillPolicy::zero:
        break;
      case FillPolicy::projection:
        for (unsigned i = 0; i < e; ++i) b(i, i) = step;
        break;
      case FillPolicy::random: {
        const BigInt modulus = power(p, target_len);
        for (unsigned i = 0; i < e; ++i)
          for (unsigned k = 0; k < e; ++k) b(i, k) = mod(BigInt(static_cast<unsigned long>(rng())) * step, modulus);
        break;
      }
    }
    return b;
  };
  auto negated = [](IntegerMatrix b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t k = 0; k < b.cols(); ++k) b(i, k) = -b(i, k);
    return b;
  };

  BlockSystem system(tower, p, e);
  for (unsigned v = 0; v <= tower.V; ++v) {
    system.set(v, v, negated(tower.can_iso[v] ? IntegerMatrix::identity(e) : filler(tower.H[v], tower.T[v])));
    if (v + 1 <= tower.V)
      system.set(v + 1, v, tower.phi_iso[v] ? IntegerMatrix::identity(e) : filler(tower.H[v], tower.T[v + 1]));
  }

  if (options.route == EliminationRoute::structural) {
    // Canonical isomorphisms from the top down keep the pivot columns
    // single-entry, then Frobenius isomorphisms from the bottom up.
    for (unsigned v = tower.V + 1; v-- > 0;)
      if (tower.can_iso[v]) system.pivot(v, v);
    for (unsigned v = 0; v < tower.V; ++v)
      if (tower.phi_iso[v] && system.live(v + 1, v)) system.pivot(v + 1, v);
  }
  return system.solve();
}

AbelianGroupStructure tc_of_class(const CuspPair& pair, unsigned r, std::uint64_t m_prime,
                                  const witt::FiniteField& field) {
  if (field.characteristic() != pair.p) throw InvalidArgument("tc_of_class: field characteristic differs from p");
  const TowerPair tower = towers(pair, r, m_prime);
  if (!(tower == derive_towers(pair, r, m_prime, tower.V)))
    throw IntegrityError("tc_of_class: tower tables disagree with the graded ring derivation at m' = " +
                         std::to_string(m_prime));
  const EqualizerGroups structural = equalizer_groups(tower, field);
  const EqualizerGroups direct = equalizer_groups(tower, field, {FillPolicy::zero, EliminationRoute::direct, 1});
  if (!(structural == direct))
    throw IntegrityError("tc_of_class: structural and direct elimination disagree at m' = " +
                         std::to_string(m_prime));
  if (!structural.tc_even.is_trivial())
    throw IntegrityError("tc_of_class: nonzero even-degree group " + structural.tc_even.to_string());
  const unsigned h = h_exponent(pair, r, m_prime);
  const auto expected = AbelianGroupStructure::elementary(pair.p, h, field.degree());
  if (!(structural.tc_odd == expected))
    throw IntegrityError("tc_of_class: got " + structural.tc_odd.to_string() + ", expected W_" + std::to_string(h) +
                         " = " + expected.to_string());
  return structural.tc_odd;
}

}  // namespace cuspk::tc
