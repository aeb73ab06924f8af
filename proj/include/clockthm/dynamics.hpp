#ifndef CLOCKTHM_DYNAMICS_HPP
#define CLOCKTHM_DYNAMICS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "diagram.hpp"
#include "error.hpp"
#include "states.hpp"

namespace clockthm {

inline constexpr std::size_t default_state_cap = 10000;

enum class Sense : std::int8_t { clockwise = -1, counterclockwise = 1 };

inline Sense opposite(Sense s) { return s == Sense::clockwise ? Sense::counterclockwise : Sense::clockwise; }
inline const char* to_string(Sense s) { return s == Sense::clockwise ? "cw" : "ccw"; }

struct Rotation {
  int crossing = 0;
  int from = 0;
  int to = 0;
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

/// A single move turns one marker inside its own region; a paired move turns
/// two markers at different crossings so that the two regions they serve
/// trade crossings. Every rotation is one corner step in the move's sense.
struct ClockMove {
  enum class Kind { single, paired };
  Kind kind = Kind::single;
  Sense sense = Sense::clockwise;
  bool at_head = false;  // single move across the head arc
  std::vector<Rotation> rotations;
  friend bool operator==(const ClockMove&, const ClockMove&) = default;
};

inline ClockMove reverse(const ClockMove& m) {
  ClockMove r = m;
  r.sense = opposite(m.sense);
  for (auto& rot : r.rotations) std::swap(rot.from, rot.to);
  return r;
}

/// All clock moves available at s, lowest crossing first.
inline std::vector<ClockMove> legal_moves(const Universe& u, const ClockState& s) {
  check_state(u, s);
  const int n = u.crossing_count();
  std::vector<ClockMove> out;
  for (int c1 = 0; c1 < n; ++c1) {
    const int k1 = s.corner(c1);
    const int a = u.region_at(c1, k1);
    for (Sense sense : {Sense::counterclockwise, Sense::clockwise}) {
      const int dk = static_cast<int>(sense);
      const int t1 = Universe::mod4(k1 + dk);
      if (u.region_at(c1, t1) == a) {
        // the slot passed over lies between the two corners
        const int slot = sense == Sense::counterclockwise ? t1 : k1;
        out.push_back({ClockMove::Kind::single, sense, u.edge_at(c1, slot) == u.head_edge(), {{c1, k1, t1}}});
      }
      for (int c2 = c1 + 1; c2 < n; ++c2) {
        const int k2 = s.corner(c2);
        const int b = u.region_at(c2, k2);
        const int t2 = Universe::mod4(k2 + dk);
        if (a != b && u.region_at(c1, t1) == b && u.region_at(c2, t2) == a)
          out.push_back({ClockMove::Kind::paired, sense, false, {{c1, k1, t1}, {c2, k2, t2}}});
      }
    }
  }
  return out;
}

inline std::vector<ClockMove> legal_moves(const Universe& u, const ClockState& s, Sense only) {
  auto all = legal_moves(u, s);
  std::erase_if(all, [&](const ClockMove& m) { return m.sense != only; });
  return all;
}

inline ClockState apply_unchecked(const ClockState& s, const ClockMove& m) {
  ClockState t = s;
  for (const auto& r : m.rotations) t.marker[static_cast<std::size_t>(r.crossing)] = static_cast<std::uint8_t>(r.to);
  return t;
}

/// Applies a legal move; anything not in legal_moves(u, s) is rejected.
inline ClockState apply_move(const Universe& u, const ClockState& s, const ClockMove& m) {
  auto moves = legal_moves(u, s);
  if (std::find(moves.begin(), moves.end(), m) == moves.end()) throw InvalidArgument("illegal clock move for state " + s.fingerprint());
  return apply_unchecked(s, m);
}

struct ExtremalOptions {
  std::optional<ClockState> start;
  std::optional<std::uint64_t> shuffle_seed;  // pick moves at random instead of lowest crossing first
  std::optional<std::size_t> step_limit;      // defaults to the number of states
};

namespace detail {

inline ClockState climb(const Universe& u, Sense toward, const ExtremalOptions& opt) {
  ClockState s = opt.start ? *opt.start : first_state(u);
  check_state(u, s);
  const std::size_t limit = opt.step_limit ? *opt.step_limit : count_states(u);
  std::optional<std::mt19937_64> rng;
  if (opt.shuffle_seed) rng.emplace(*opt.shuffle_seed);
  for (std::size_t steps = 0;; ++steps) {
    auto moves = legal_moves(u, s, toward);
    if (moves.empty()) return s;
    if (steps >= limit)
      throw TheoryDiscrepancy("monotone " + std::string(to_string(toward)) + " iteration exceeded " + std::to_string(limit) + " steps");
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(*rng);
    s = apply_unchecked(s, moves[pick]);
  }
}

}  // namespace detail

/// The state with no counterclockwise moves, reached by applying
/// counterclockwise moves until none is left.
inline ClockState clocked_state(const Universe& u, const ExtremalOptions& opt = {}) {
  return detail::climb(u, Sense::counterclockwise, opt);
}

/// The state with no clockwise moves.
inline ClockState counterclocked_state(const Universe& u, const ExtremalOptions& opt = {}) {
  return detail::climb(u, Sense::clockwise, opt);
}

// ------------------------------------------------------------ state graph

struct StateGraph {
  std::vector<ClockState> states;                 // canonical order
  std::vector<std::vector<int>> clockwise;         // targets of one clockwise move
  std::vector<std::vector<int>> counterclockwise;  // targets of one counterclockwise move
  std::unordered_map<ClockState, int, ClockStateHash> index;

  std::size_t size() const noexcept { return states.size(); }
  int index_of(const ClockState& s) const {
    auto it = index.find(s);
    if (it == index.end()) throw InvalidArgument("state " + s.fingerprint() + " not in graph");
    return it->second;
  }
};

inline StateGraph state_graph(const Universe& u, std::size_t cap = default_state_cap) {
  StateGraph g;
  g.states = enumerate_states(u, cap);
  const std::size_t n = g.states.size();
  for (std::size_t i = 0; i < n; ++i) g.index.emplace(g.states[i], static_cast<int>(i));
  g.clockwise.resize(n);
  g.counterclockwise.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& m : legal_moves(u, g.states[i])) {
      auto it = g.index.find(apply_unchecked(g.states[i], m));
      if (it == g.index.end()) throw TheoryDiscrepancy("clock move leaves the state set at " + g.states[i].fingerprint());
      (m.sense == Sense::clockwise ? g.clockwise : g.counterclockwise)[i].push_back(it->second);
    }
    for (auto* adj : {&g.clockwise[i], &g.counterclockwise[i]}) {
      std::sort(adj->begin(), adj->end());
      adj->erase(std::unique(adj->begin(), adj->end()), adj->end());
    }
  }
  return g;
}

namespace detail {

class BitRows {
 public:
  BitRows(std::size_t rows, std::size_t cols) : words_((cols + 63) / 64), bits_(rows * words_, 0) {}
  std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }
  void set(std::size_t r, std::size_t c) { row(r)[c / 64] |= std::uint64_t{1} << (c % 64); }
  bool test(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1u; }
  void or_into(std::size_t dst, std::size_t src) {
    auto* d = row(dst);
    const auto* s = row(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
  }
  std::size_t count(std::size_t r) const {
    std::size_t n = 0;
    const auto* p = row(r);
    for (std::size_t w = 0; w < words_; ++w) n += static_cast<std::size_t>(std::popcount(p[w]));
    return n;
  }
  std::size_t words() const noexcept { return words_; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

struct LatticeViolation {
  std::string kind;  // cycle, top, bottom, join, meet, reach, disconnected
  int a = -1;
  int b = -1;
};

struct LatticeReport {
  std::size_t state_count = 0;
  bool acyclic = true;
  bool connected = true;
  bool reachable_from_top = true;
  std::optional<int> top;
  std::optional<int> bottom;
  std::vector<std::pair<int, int>> hasse;  // covering clockwise edges
  std::vector<std::vector<int>> join;      // filled only up to table_cap states
  std::vector<std::vector<int>> meet;
  std::vector<LatticeViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

inline constexpr std::size_t lattice_table_cap = 2000;

/// Checks that the clockwise order (s2 < s1 when s2 is reached from s1 by
/// clockwise moves) is a lattice with the clocked state on top.
inline LatticeReport verify_lattice(const StateGraph& g) {
  LatticeReport rep;
  const std::size_t n = g.size();
  rep.state_count = n;
  if (n == 0) return rep;

  // undirected connectivity
  {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!q.empty()) {
      auto i = q.front();
      q.pop_front();
      for (const auto* adj : {&g.clockwise[i], &g.counterclockwise[i]})
        for (int j : *adj)
          if (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            ++reached;
            q.push_back(static_cast<std::size_t>(j));
          }
    }
    if (reached != n) {
      rep.connected = false;
      for (std::size_t i = 0; i < n; ++i)
        if (!seen[i]) {
          rep.violations.push_back({"disconnected", 0, static_cast<int>(i)});
          break;
        }
    }
  }

  // reverse topological order of the clockwise relation (sinks first)
  std::vector<int> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (int j : g.clockwise[i]) ++indeg[static_cast<std::size_t>(j)];
  std::vector<int> topo;
  std::deque<int> q;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) q.push_back(static_cast<int>(i));
  while (!q.empty()) {
    int i = q.front();
    q.pop_front();
    topo.push_back(i);
    for (int j : g.clockwise[static_cast<std::size_t>(i)])
      if (--indeg[static_cast<std::size_t>(j)] == 0) q.push_back(j);
  }
  if (topo.size() != n) {
    rep.acyclic = false;
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] > 0) {
        rep.violations.push_back({"cycle", static_cast<int>(i), -1});
        break;
      }
    return rep;
  }

  std::vector<int> tops, bottoms;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.counterclockwise[i].empty()) tops.push_back(static_cast<int>(i));
    if (g.clockwise[i].empty()) bottoms.push_back(static_cast<int>(i));
  }
  if (tops.size() == 1) rep.top = tops[0];
  else rep.violations.push_back({"top", tops.empty() ? -1 : tops[0], tops.size() > 1 ? tops[1] : -1});
  if (bottoms.size() == 1) rep.bottom = bottoms[0];
  else rep.violations.push_back({"bottom", bottoms.empty() ? -1 : bottoms[0], bottoms.size() > 1 ? bottoms[1] : -1});

  detail::BitRows down(n, n), up(n, n);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto i = static_cast<std::size_t>(*it);
    down.set(i, i);
    for (int j : g.clockwise[i]) down.or_into(i, static_cast<std::size_t>(j));
  }
  for (int i : topo) {
    auto ii = static_cast<std::size_t>(i);
    up.set(ii, ii);
    for (int j : g.counterclockwise[ii]) up.or_into(ii, static_cast<std::size_t>(j));
  }
  if (rep.top && down.count(static_cast<std::size_t>(*rep.top)) != n) {
    rep.reachable_from_top = false;
    for (std::size_t i = 0; i < n; ++i)
      if (!down.test(static_cast<std::size_t>(*rep.top), i)) {
        rep.violations.push_back({"reach", *rep.top, static_cast<int>(i)});
        break;
      }
  }

  // covering edges: j is covered by i unless another successor reaches j
  for (std::size_t i = 0; i < n; ++i)
    for (int j : g.clockwise[i]) {
      bool cover = true;
      for (int k : g.clockwise[i])
        if (k != j && down.test(static_cast<std::size_t>(k), static_cast<std::size_t>(j))) cover = false;
      if (cover) rep.hasse.emplace_back(static_cast<int>(i), j);
    }

  std::vector<std::size_t> up_count(n), down_count(n);
  for (std::size_t i = 0; i < n; ++i) {
    up_count[i] = up.count(i);
    down_count[i] = down.count(i);
  }
  const bool tables = n <= lattice_table_cap;
  if (tables) {
    rep.join.assign(n, std::vector<int>(n, -1));
    rep.meet.assign(n, std::vector<int>(n, -1));
  }
  const std::size_t words = up.words();
  std::vector<std::uint64_t> common(words);
  // least element of the intersection: the member whose own set has the
  // intersection's size
  auto extreme = [&](const detail::BitRows& rows, const std::vector<std::size_t>& sizes, std::size_t a, std::size_t b) {
    std::size_t size = 0;
    const auto* ra = rows.row(a);
    const auto* rb = rows.row(b);
    for (std::size_t w = 0; w < words; ++w) {
      common[w] = ra[w] & rb[w];
      size += static_cast<std::size_t>(std::popcount(common[w]));
    }
    for (std::size_t w = 0; w < words; ++w)
      for (std::uint64_t bits = common[w]; bits; bits &= bits - 1) {
        std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        if (sizes[j] == size) return static_cast<int>(j);
      }
    return -1;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      int j = extreme(up, up_count, a, b);
      int m = extreme(down, down_count, a, b);
      if (j < 0) rep.violations.push_back({"join", static_cast<int>(a), static_cast<int>(b)});
      if (m < 0) rep.violations.push_back({"meet", static_cast<int>(a), static_cast<int>(b)});
      if (tables) {
        rep.join[a][b] = rep.join[b][a] = j;
        rep.meet[a][b] = rep.meet[b][a] = m;
      }
    }
  return rep;
}

/// Graphviz Hasse diagram of the clockwise order, clocked state on top.
inline std::string to_dot(const StateGraph& g, const LatticeReport& rep) {
  std::string out = "digraph clock_lattice {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    out += "  s" + std::to_string(i) + " [label=\"s" + std::to_string(i) + "\\n" + g.states[i].fingerprint() + "\"";
    const int ii = static_cast<int>(i);
    if (rep.top == ii && rep.bottom == ii) out += ", style=filled, fillcolor=\"#d9d2e9\"";
    else if (rep.top == ii) out += ", style=filled, fillcolor=\"#cfe2f3\"";
    else if (rep.bottom == ii) out += ", style=filled, fillcolor=\"#f4cccc\"";
    out += "];\n";
  }
  for (auto [a, b] : rep.hasse) out += "  s" + std::to_string(a) + " -> s" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

// ------------------------------------------------------------- exchanges

struct ExchangeFactorization {
  Sense sense = Sense::clockwise;
  std::vector<ClockMove> moves;
  std::size_t explored = 0;
};

/// Sense of the exchange between two states: every site marker must turn one
/// step the same way. Empty when the sense is mixed.
inline std::optional<Sense> exchange_sense(const ClockState& s1, const ClockState& s2, const ExchangeDiff& diff) {
  std::optional<Sense> sense;
  for (int c : diff.sites) {
    int delta = Universe::mod4(s2.corner(c) - s1.corner(c));
    Sense here;
    if (delta == 1) here = Sense::counterclockwise;
    else if (delta == 3) here = Sense::clockwise;
    else return std::nullopt;
    if (sense && *sense != here) return std::nullopt;
    sense = here;
  }
  return sense;
}

/// Writes s1 -> s2 as clock moves of one sense, when their trails differ by
/// a single or double exchange of definite sense. The result is replayed
/// before returning.
inline ExchangeFactorization factorize_exchange(const Universe& u, const ClockState& s1, const ClockState& s2,
                                                std::size_t cap = default_state_cap) {
  ExchangeFactorization f;
  check_state(u, s1);
  check_state(u, s2);
  if (s1 == s2) return f;
  auto diff = exchange_diff(state_to_trail(u, s1), state_to_trail(u, s2));
  if (diff.size() == 0 || diff.size() > 2)
    throw InvalidArgument("states differ by " + std::to_string(diff.size()) + " smoothing sites, not a single or double exchange");
  auto sense = exchange_sense(s1, s2, diff);
  if (!sense) throw InvalidArgument("exchange has no definite sense");
  f.sense = *sense;

  std::unordered_map<ClockState, std::pair<ClockState, ClockMove>, ClockStateHash> parent;
  std::deque<ClockState> q{s1};
  parent.emplace(s1, std::pair{s1, ClockMove{}});
  bool found = false;
  while (!q.empty() && !found) {
    ClockState s = std::move(q.front());
    q.pop_front();
    for (const auto& m : legal_moves(u, s, *sense)) {
      ClockState t = apply_unchecked(s, m);
      if (parent.count(t)) continue;
      parent.emplace(t, std::pair{s, m});
      if (t == s2) {
        found = true;
        break;
      }
      if (parent.size() > cap) throw CapExceeded(cap, "exchange search frontier");
      q.push_back(std::move(t));
    }
  }
  f.explored = parent.size();
  if (!found)
    throw TheoryDiscrepancy("no monotone " + std::string(to_string(*sense)) + " path from " + s1.fingerprint() + " to " +
                            s2.fingerprint() + " (searched " + std::to_string(f.explored) + " states)");
  for (ClockState s = s2; s != s1;) {
    const auto& [prev, m] = parent.at(s);
    f.moves.push_back(m);
    s = prev;
  }
  std::reverse(f.moves.begin(), f.moves.end());
  ClockState replay = s1;
  for (const auto& m : f.moves) replay = apply_move(u, replay, m);
  if (replay != s2) throw TheoryDiscrepancy("replay of exchange factorization does not reach the target");
  return f;
}

// -------------------------------------------------------- removal lemma

struct RemovalCheck {
  int crossing = 0;
  int channel = 0;
  std::optional<ClockState> induced;  // empty when the markers do not form a state
  ClockState expected;                // clocked state of the smaller universe
  bool holds = false;
  std::string note;
};

/// Smooths crossing c along the marker of `clocked` and compares the
/// markers left behind with the clocked state of the smaller universe.
inline RemovalCheck removal_check(const Universe& u, const ClockState& clocked, int c) {
  RemovalCheck r;
  r.crossing = c;
  r.channel = clocked.corner(c) % 2;
  std::vector<int> kept;
  Universe small;
  try {
    small = u.smoothed(c, r.channel, &kept);
  } catch (const InvalidArgument& e) {
    r.note = e.what();
    return r;
  }
  ClockState induced;
  for (int k : kept) induced.marker.push_back(clocked.marker[static_cast<std::size_t>(k)]);
  r.expected = clocked_state(small);
  if (!is_state(small, induced)) {
    r.note = "induced markers are not a clock state";
    return r;
  }
  r.induced = induced;
  r.holds = induced == r.expected;
  if (!r.holds) r.note = "induced " + induced.fingerprint() + " but clocked is " + r.expected.fingerprint();
  return r;
}

inline std::vector<RemovalCheck> removal_lemma(const Universe& u) {
  std::vector<RemovalCheck> out;
  auto top = clocked_state(u);
  for (int c = 0; c < u.crossing_count(); ++c) out.push_back(removal_check(u, top, c));
  return out;
}

}  // namespace clockthm

#endif  // CLOCKTHM_DYNAMICS_HPP
