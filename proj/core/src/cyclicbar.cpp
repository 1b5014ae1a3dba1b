#include "cuspk/cyclicbar.hpp"

#include <string>
#include <unordered_map>

#include "cuspk/errors.hpp"
#include "cuspk/parallel.hpp"

namespace cuspk::bar {

using algebra::AbelianGroupStructure;
using algebra::SparseIntegerMatrix;

std::size_t ChainComplex::total_dimension() const {
  std::size_t n = 0;
  for (const auto& b : basis) n += b.size();
  return n;
}

long ChainComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t n = 0; n < basis.size(); ++n)
    chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(basis[n].size());
  return chi;
}

namespace {

// A tuple (i_0, ..., i_n) of weight m is determined by its partial sums
// i_0 < i_0 + i_1 < ... < m - i_n, all in [0, m).
std::uint32_t encode(const Simplex& t) {
  std::uint32_t mask = 0, sum = 0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    sum += t[k];
    mask |= std::uint32_t{1} << sum;
  }
  return mask;
}

void compositions(unsigned rest, unsigned parts, Simplex& prefix, std::vector<Simplex>& out) {
  if (parts == 0) {
    if (rest == 0) out.push_back(prefix);
    return;
  }
  for (unsigned first = 1; first + (parts - 1) <= rest; ++first) {
    prefix.push_back(first);
    compositions(rest - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ChainComplex relative_complex(const CuspPair& pair, unsigned m, unsigned cap) {
  if (cap > kHardBarCap) throw ResourceError("cyclic bar cap may not exceed " + std::to_string(kHardBarCap));
  if (m < 1) throw InvalidArgument("relative_complex: weight must be positive");
  if (m > cap)
    throw ResourceError("relative_complex: weight " + std::to_string(m) + " exceeds cap " + std::to_string(cap));

  std::vector<bool> member(m + 1);
  for (unsigned n = 0; n <= m; ++n) member[n] = semigroup_member(pair, n);
  auto collapsed = [&](const Simplex& t) {
    for (auto i : t)
      if (!member[i]) return false;
    return true;
  };

  ChainComplex c;
  c.m = m;
  c.basis.resize(m + 1);
  std::unordered_map<std::uint32_t, std::uint32_t> index;
  for (unsigned n = 0; n <= m; ++n) {
    std::vector<Simplex> all;
    Simplex prefix;
    for (unsigned i0 = 0; i0 + n <= m; ++i0) {
      prefix.assign(1, i0);
      compositions(m - i0, n, prefix, all);
    }
    for (auto& t : all) {
      if (collapsed(t)) continue;
      index.emplace(encode(t), static_cast<std::uint32_t>(c.basis[n].size()));
      c.basis[n].push_back(std::move(t));
    }
  }

  c.boundary.reserve(m + 1);
  c.boundary.emplace_back(0, c.basis[0].size());
  for (unsigned n = 1; n <= m; ++n) {
    SparseIntegerMatrix d(c.basis[n - 1].size(), c.basis[n].size());
    Simplex face;
    for (std::size_t col = 0; col < c.basis[n].size(); ++col) {
      const Simplex& t = c.basis[n][col];
      for (unsigned j = 0; j <= n; ++j) {
        face.clear();
        if (j < n) {
          for (unsigned k = 0; k <= n; ++k) {
            if (k == j + 1) continue;
            face.push_back(k == j ? t[j] + t[j + 1] : t[k]);
          }
        } else {
          face.push_back(t[n] + t[0]);
          for (unsigned k = 1; k < n; ++k) face.push_back(t[k]);
        }
        auto it = index.find(encode(face));
        if (it == index.end()) continue;  // collapsed
        d.add(it->second, col, j % 2 == 0 ? 1 : -1);
      }
    }
    c.boundary.push_back(std::move(d));
  }
  for (unsigned n = 1; n < m; ++n)
    if (!c.boundary[n].product_is_zero(c.boundary[n + 1]))
      throw IntegrityError("relative_complex: d o d != 0 in degree " + std::to_string(n + 1));
  return c;
}

GradedGroups homology(const ChainComplex& complex) {
  GradedGroups out;
  const std::size_t top = complex.basis.size();
  for (std::size_t n = 0; n < top; ++n) {
    SparseIntegerMatrix d_in =
        n + 1 < top ? complex.boundary[n + 1] : SparseIntegerMatrix(complex.dimension(n), 0);
    AbelianGroupStructure h = algebra::homology_at(d_in, complex.boundary[n]);
    if (!h.is_trivial()) out.emplace(static_cast<int>(n), std::move(h));
  }
  return out;
}

GradedGroups homology(const CuspPair& pair, unsigned m, unsigned cap) {
  return homology(relative_complex(pair, m, cap));
}

GradedGroups predicted_homology(const CuspPair& pair, unsigned m) {
  if (m < 1) throw InvalidArgument("predicted_homology: weight must be positive");
  const int shift = 2 * static_cast<int>(ell(pair, m));
  const bool a_divides = m % pair.a == 0;
  const bool b_divides = m % pair.b == 0;
  GradedGroups out;
  if (!a_divides && !b_divides) {
    out.emplace(shift, AbelianGroupStructure::free(1));
    out.emplace(shift + 1, AbelianGroupStructure::free(1));
  } else if (a_divides && !b_divides) {
    out.emplace(shift + 1, AbelianGroupStructure::cyclic(pair.a));
  } else if (b_divides && !a_divides) {
    out.emplace(shift + 1, AbelianGroupStructure::cyclic(pair.b));
  }
  return out;
}

bool same_homology(const GradedGroups& lhs, const GradedGroups& rhs) {
  auto nontrivial = [](const GradedGroups& g) {
    GradedGroups out;
    for (const auto& [n, h] : g)
      if (!h.is_trivial()) out.emplace(n, h);
    return out;
  };
  return nontrivial(lhs) == nontrivial(rhs);
}

std::vector<HomologyReport> verify_bar(const CuspPair& pair, unsigned m_max, unsigned cap, unsigned jobs) {
  if (m_max > cap)
    throw ResourceError("verify_bar: m_max " + std::to_string(m_max) + " exceeds cap " + std::to_string(cap));
  std::vector<HomologyReport> reports(m_max);
  // Largest weights first so the long jobs start early.
  parallel_for(m_max, jobs, [&](std::size_t i) {
    const unsigned m = m_max - static_cast<unsigned>(i);
    auto& report = reports[m - 1];
    report.m = m;
    ChainComplex complex = relative_complex(pair, m, cap);
    report.basis_size = complex.total_dimension();
    report.groups = homology(complex);
    report.predicted = predicted_homology(pair, m);
    report.agree = same_homology(report.groups, report.predicted);
  });
  return reports;
}

}  // namespace cuspk::bar
