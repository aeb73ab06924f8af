#ifndef CLOCKTHM_ALEXANDER_HPP
#define CLOCKTHM_ALEXANDER_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "error.hpp"
#include "laurent.hpp"
#include "states.hpp"
#include "weights.hpp"

namespace clockthm {

/// Product of the table entries at every marker's (sign, corner).
inline LaurentPoly state_weight(const LinkoidDiagram& d, const WeightTable& w, const ClockState& s) {
  check_state(d.universe(), s);
  LaurentPoly p(1);
  for (int c = 0; c < d.crossing_count(); ++c) p *= w.at(d.sign(c), s.corner(c));
  return p;
}

/// State sum over all clock states.
inline LaurentPoly mock_alexander(const LinkoidDiagram& d, const WeightTable& w) {
  LaurentPoly total;
  for_each_state(d.universe(), [&](const ClockState& s) {
    LaurentPoly p(1);
    for (int c = 0; c < d.crossing_count(); ++c) p *= w.at(d.sign(c), s.corner(c));
    total += p;
    return true;
  });
  return total;
}

template <class T>
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<T> cells;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size) : n(size), cells(size * size) {}
  T& operator()(std::size_t r, std::size_t c) { return cells[r * n + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return cells[r * n + c]; }
};

/// Rows are the unstarred regions in id order, columns the crossings. An
/// entry sums the weights of the corners where the region meets the crossing.
using WeightedIncidenceMatrix = SquareMatrix<LaurentPoly>;

inline WeightedIncidenceMatrix weighted_incidence(const LinkoidDiagram& d, const WeightTable& w) {
  const auto& u = d.universe();
  auto rows = u.unstarred_regions();
  WeightedIncidenceMatrix m(rows.size());
  std::vector<int> row_of(static_cast<std::size_t>(u.region_count()), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[static_cast<std::size_t>(rows[i])] = static_cast<int>(i);
  for (int c = 0; c < u.crossing_count(); ++c)
    for (int k = 0; k < 4; ++k) {
      int r = row_of[static_cast<std::size_t>(u.region_at(c, k))];
      if (r >= 0) m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) += w.at(d.sign(c), k);
    }
  return m;
}

namespace detail {

template <class T>
T permanent_expansion(const SquareMatrix<T>& m) {
  const std::size_t n = m.n;
  T total{};
  T one(1);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t, const T&)> rec = [&](std::size_t row, const T& acc) {
    if (row == n) {
      total += acc;
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || m(row, c) == T{}) continue;
      used[c] = true;
      rec(row + 1, acc * m(row, c));
      used[c] = false;
    }
  };
  rec(0, one);
  return total;
}

// Ryser: perm = sum over nonempty column sets S of (-1)^(n-|S|) prod_i
// sum_{j in S} a_ij, visiting S in Gray-code order.
template <class T>
T permanent_ryser(const SquareMatrix<T>& m) {
  const std::size_t n = m.n;
  if (n >= 63) throw InvalidArgument("matrix too large for Ryser's formula");
  std::vector<T> row_sum(n);
  T total{};
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    const std::uint64_t bit = std::uint64_t{1} << j;
    const bool adding = !(gray & bit);
    gray ^= bit;
    for (std::size_t i = 0; i < n; ++i) {
      if (adding) row_sum[i] += m(i, j);
      else row_sum[i] -= m(i, j);
    }
    T prod(1);
    for (std::size_t i = 0; i < n && !(prod == T{}); ++i) prod *= row_sum[i];
    const bool negative = (n - static_cast<std::size_t>(std::popcount(gray))) % 2 == 1;
    if (negative) total -= prod;
    else total += prod;
  }
  return total;
}

}  // namespace detail

inline constexpr std::size_t expansion_limit = 8;

/// Permanent: full expansion up to 8x8, Ryser's formula above.
template <class T>
T permanent(const SquareMatrix<T>& m) {
  if (m.n == 0) return T(1);
  return m.n <= expansion_limit ? detail::permanent_expansion(m) : detail::permanent_ryser(m);
}

inline LaurentPoly permanent_polynomial(const LinkoidDiagram& d, const WeightTable& w) {
  return permanent(weighted_incidence(d, w));
}

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt bareiss_determinant(SquareMatrix<BigInt> a) {
  const std::size_t n = a.n;
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Spanning trees of the edge-dual (regions joined across every arc, loops
/// dropped), by the Matrix-Tree theorem.
inline BigInt count_states_matrixtree(const Universe& u) {
  auto g = dual_graph(u);
  const auto v = static_cast<std::size_t>(g.vertex_count);
  if (v <= 1) return 1;
  SquareMatrix<BigInt> lap(v - 1);
  // vertex 0 is removed
  for (const auto& e : g.edges) {
    if (e.loop()) continue;
    auto a = static_cast<std::size_t>(e.a), b = static_cast<std::size_t>(e.b);
    if (a > 0) lap(a - 1, a - 1) += 1;
    if (b > 0) lap(b - 1, b - 1) += 1;
    if (a > 0 && b > 0) {
      lap(a - 1, b - 1) -= 1;
      lap(b - 1, a - 1) -= 1;
    }
  }
  return bareiss_determinant(std::move(lap));
}

/// Permanent of the region x crossing matrix of corner counts: the number of
/// clock states.
inline BigInt count_states_permanent(const Universe& u) {
  auto rows = u.unstarred_regions();
  SquareMatrix<BigInt> m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < u.crossing_count(); ++c)
      for (int k = 0; k < 4; ++k)
        if (u.region_at(c, k) == rows[i]) m(i, static_cast<std::size_t>(c)) += 1;
  return permanent(m);
}

}  // namespace clockthm

#endif  // CLOCKTHM_ALEXANDER_HPP
