#include "cuspk/algebra/smith.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <queue>

namespace cuspk::algebra {

namespace {

struct Position {
  std::size_t row;
  std::size_t col;
};

// Smallest nonzero |entry| in the trailing block starting at (t, t).
std::optional<Position> smallest_entry(const IntegerMatrix& a, std::size_t t) {
  std::optional<Position> best;
  BigInt best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const BigInt& v = a(i, j);
      if (sgn(v) == 0) continue;
      BigInt mag = abs(v);
      if (!best || mag < best_abs) {
        best = Position{i, j};
        best_abs = std::move(mag);
        if (best_abs == 1) return best;
      }
    }
  return best;
}

// Core elimination shared by the transform and transform-free variants.
// `on_row` / `on_col` mirror each elementary operation into U / V.
template <class RowOp, class ColOp>
void diagonalize(IntegerMatrix& a, RowOp on_row, ColOp on_col) {
  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    while (true) {
      auto pivot = smallest_entry(a, t);
      if (!pivot) return;
      a.swap_rows(t, pivot->row);
      on_row([&](IntegerMatrix& u) { u.swap_rows(t, pivot->row); });
      a.swap_cols(t, pivot->col);
      on_col([&](IntegerMatrix& v) { v.swap_cols(t, pivot->col); });

      bool dirty = false;
      const BigInt p = a(t, t);
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (sgn(a(i, t)) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), p.get_mpz_t());
        BigInt f = -q;
        a.add_row_multiple(i, t, f);
        on_row([&](IntegerMatrix& u) { u.add_row_multiple(i, t, f); });
        if (sgn(a(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (sgn(a(t, j)) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), p.get_mpz_t());
        BigInt f = -q;
        a.add_col_multiple(j, t, f);
        on_col([&](IntegerMatrix& v) { v.add_col_multiple(j, t, f); });
        if (sgn(a(t, j)) != 0) dirty = true;
      }
      if (dirty) continue;

      // Pivot row and column are clear; enforce divisibility of the rest.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < a.rows() && !offender; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), p.get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) break;
      const std::size_t i = *offender;
      a.add_row_multiple(t, i, 1);
      on_row([&](IntegerMatrix& u) { u.add_row_multiple(t, i, 1); });
    }
    if (sgn(a(t, t)) < 0) {
      a.negate_row(t);
      on_row([&](IntegerMatrix& u) { u.negate_row(t); });
    }
  }
}

InvariantFactors summarize(const IntegerMatrix& d) {
  InvariantFactors out;
  const std::size_t limit = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < limit; ++i) {
    if (sgn(d(i, i)) == 0) continue;
    ++out.rank;
    if (d(i, i) > 1) out.nontrivial.push_back(abs(d(i, i)));
  }
  std::sort(out.nontrivial.begin(), out.nontrivial.end());
  return out;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
  SmithDecomposition out{m, IntegerMatrix::identity(m.rows()), IntegerMatrix::identity(m.cols())};
  diagonalize(
      out.diagonal, [&](auto&& op) { op(out.left); }, [&](auto&& op) { op(out.right); });
  return out;
}

InvariantFactors invariant_factors(const IntegerMatrix& m) {
  IntegerMatrix d = m;
  diagonalize(d, [](auto&&) {}, [](auto&&) {});
  return summarize(d);
}

namespace {

// Sparse vector with sorted coordinates. The matrix is processed as a list
// of its columns; unimodular operations between columns and coordinate
// permutations leave the invariant factors unchanged.
struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<BigInt> value;
  std::size_t size() const { return index.size(); }
};

// target -= factor * source
void axpy(SparseVector& target, const BigInt& factor, const SparseVector& source) {
  SparseVector out;
  out.index.reserve(target.size() + source.size());
  out.value.reserve(target.size() + source.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target.index[i] < source.index[j])) {
      out.index.push_back(target.index[i]);
      out.value.push_back(std::move(target.value[i]));
      ++i;
    } else if (i == target.size() || source.index[j] < target.index[i]) {
      out.index.push_back(source.index[j]);
      out.value.push_back(-factor * source.value[j]);
      ++j;
    } else {
      BigInt v = target.value[i] - factor * source.value[j];
      if (sgn(v) != 0) {
        out.index.push_back(target.index[i]);
        out.value.push_back(std::move(v));
      }
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

}  // namespace

InvariantFactors invariant_factors(const SparseIntegerMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<SparseVector> vecs(n);
  std::vector<std::vector<std::uint32_t>> occurrences(m.rows());
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& e : m.column(j)) {
      vecs[j].index.push_back(e.row);
      vecs[j].value.push_back(e.value);
      occurrences[e.row].push_back(static_cast<std::uint32_t>(j));
    }
  }
  std::vector<bool> alive(n, true);
  using HeapItem = std::pair<std::size_t, std::uint32_t>;  // (length, vector id)
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
  for (std::size_t j = 0; j < n; ++j) {
    if (vecs[j].size() == 0)
      alive[j] = false;
    else
      heap.emplace(vecs[j].size(), static_cast<std::uint32_t>(j));
  }

  auto holds = [&](std::uint32_t id, std::uint32_t coord, const BigInt** value) {
    const auto& v = vecs[id];
    auto it = std::lower_bound(v.index.begin(), v.index.end(), coord);
    if (it == v.index.end() || *it != coord) return false;
    *value = &v.value[static_cast<std::size_t>(it - v.index.begin())];
    return true;
  };

  InvariantFactors out;
  while (!heap.empty()) {
    auto [len, id] = heap.top();
    heap.pop();
    if (!alive[id] || vecs[id].size() != len) continue;
    const SparseVector& pivot_vec = vecs[id];

    std::optional<std::size_t> pick;
    std::size_t pick_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < pivot_vec.size(); ++k) {
      if (abs(pivot_vec.value[k]) != 1) continue;
      std::size_t cost = occurrences[pivot_vec.index[k]].size();
      if (cost < pick_cost) {
        pick_cost = cost;
        pick = k;
      }
    }
    if (!pick) continue;  // parked until an update hands it a unit entry

    const std::uint32_t coord = pivot_vec.index[*pick];
    const BigInt unit = pivot_vec.value[*pick];
    std::vector<std::uint32_t> hits;
    hits.swap(occurrences[coord]);
    for (std::uint32_t other : hits) {
      if (other == id || !alive[other]) continue;
      const BigInt* w = nullptr;
      if (!holds(other, coord, &w)) continue;
      BigInt factor = *w * unit;  // unit^{-1} == unit
      std::vector<std::uint32_t> old_index = vecs[other].index;
      axpy(vecs[other], factor, vecs[id]);
      // Register coordinates that newly appeared in `other`.
      for (auto c : vecs[other].index)
        if (!std::binary_search(old_index.begin(), old_index.end(), c)) occurrences[c].push_back(other);
      if (vecs[other].size() == 0) {
        alive[other] = false;
      } else {
        heap.emplace(vecs[other].size(), other);
      }
    }
    alive[id] = false;
    ++out.rank;
  }

  // Residual block: vectors with no unit entries left.
  std::vector<std::uint32_t> rest;
  std::vector<std::uint32_t> coords;
  for (std::size_t j = 0; j < n; ++j)
    if (alive[j]) {
      rest.push_back(static_cast<std::uint32_t>(j));
      coords.insert(coords.end(), vecs[j].index.begin(), vecs[j].index.end());
    }
  if (!rest.empty()) {
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    IntegerMatrix dense(coords.size(), rest.size());
    for (std::size_t c = 0; c < rest.size(); ++c) {
      const auto& v = vecs[rest[c]];
      for (std::size_t k = 0; k < v.size(); ++k) {
        auto r = static_cast<std::size_t>(std::lower_bound(coords.begin(), coords.end(), v.index[k]) -
                                          coords.begin());
        dense(r, c) = v.value[k];
      }
    }
    InvariantFactors tail = invariant_factors(dense);
    out.rank += tail.rank;
    out.nontrivial = std::move(tail.nontrivial);
  }
  return out;
}

}  // namespace cuspk::algebra
