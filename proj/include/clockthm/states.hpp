#ifndef CLOCKTHM_STATES_HPP
#define CLOCKTHM_STATES_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "diagram.hpp"
#include "error.hpp"

namespace clockthm {

/// One marker per crossing: marker[c] is the corner index (0..3) carrying
/// the marker at crossing c. The region it serves is the region of that
/// corner, so the region -> crossing bijection is implicit.
struct ClockState {
  std::vector<std::uint8_t> marker;

  std::size_t size() const noexcept { return marker.size(); }
  int corner(int c) const { return marker.at(static_cast<std::size_t>(c)); }

  /// Corner digits, e.g. "2031".
  std::string fingerprint() const {
    std::string s;
    for (auto k : marker) s += static_cast<char>('0' + k);
    return s;
  }

  friend auto operator<=>(const ClockState&, const ClockState&) = default;
};

struct ClockStateHash {
  std::size_t operator()(const ClockState& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto k : s.marker) h = (h ^ k) * 1099511628211ull;
    return h;
  }
};

inline ClockState state_from_fingerprint(std::string_view digits) {
  ClockState s;
  for (char ch : digits) {
    if (ch < '0' || ch > '3') throw InvalidArgument("bad state fingerprint '" + std::string(digits) + "'");
    s.marker.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return s;
}

/// Throws InvalidArgument unless s is a clock state of u.
inline void check_state(const Universe& u, const ClockState& s) {
  if (static_cast<int>(s.size()) != u.crossing_count())
    throw InvalidArgument("state has " + std::to_string(s.size()) + " markers for " + std::to_string(u.crossing_count()) +
                          " crossings");
  std::vector<bool> used(static_cast<std::size_t>(u.region_count()), false);
  for (int c = 0; c < u.crossing_count(); ++c) {
    if (s.corner(c) > 3) throw InvalidArgument("corner index out of range at crossing " + std::to_string(c));
    int r = u.region_at(c, s.corner(c));
    if (r == u.starred_region()) throw InvalidArgument("marker of crossing " + std::to_string(c) + " lies in the starred region");
    if (used[static_cast<std::size_t>(r)]) throw InvalidArgument("region " + std::to_string(r) + " carries two markers");
    used[static_cast<std::size_t>(r)] = true;
  }
}

inline bool is_state(const Universe& u, const ClockState& s) {
  try {
    check_state(u, s);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

namespace detail {

// Backtracking over unstarred regions, fewest candidate corners first, with
// forward checking: after each assignment every open region must still have
// a free crossing. The visitor returns false to stop.
class StateSearch {
 public:
  explicit StateSearch(const Universe& u) : u_(u) {
    const int n = u.crossing_count();
    auto inc = incidence(u);
    for (int r : u.unstarred_regions()) order_.push_back(r);
    candidates_.resize(static_cast<std::size_t>(u.region_count()));
    for (int r : order_) candidates_[static_cast<std::size_t>(r)] = inc.by_region[static_cast<std::size_t>(r)];
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return candidates_[static_cast<std::size_t>(a)].size() < candidates_[static_cast<std::size_t>(b)].size();
    });
    used_.assign(static_cast<std::size_t>(n), false);
    current_.marker.assign(static_cast<std::size_t>(n), 0);
  }

  bool run(const std::function<bool(const ClockState&)>& visit) { return recurse(0, visit); }

 private:
  bool alive(std::size_t from) const {
    for (std::size_t i = from; i < order_.size(); ++i) {
      bool any = false;
      for (const auto& k : candidates_[static_cast<std::size_t>(order_[i])])
        if (!used_[static_cast<std::size_t>(k.crossing)]) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    return true;
  }

  bool recurse(std::size_t depth, const std::function<bool(const ClockState&)>& visit) {
    if (depth == order_.size()) return visit(current_);
    for (const auto& k : candidates_[static_cast<std::size_t>(order_[depth])]) {
      if (used_[static_cast<std::size_t>(k.crossing)]) continue;
      used_[static_cast<std::size_t>(k.crossing)] = true;
      current_.marker[static_cast<std::size_t>(k.crossing)] = static_cast<std::uint8_t>(k.index);
      bool go = !alive(depth + 1) || recurse(depth + 1, visit);
      used_[static_cast<std::size_t>(k.crossing)] = false;
      if (!go) return false;
    }
    return true;
  }

  const Universe& u_;
  std::vector<int> order_;
  std::vector<std::vector<Corner>> candidates_;
  std::vector<bool> used_;
  ClockState current_;
};

}  // namespace detail

/// Calls visit on every clock state (search order, not canonical order).
/// Stops early when visit returns false.
inline void for_each_state(const Universe& u, const std::function<bool(const ClockState&)>& visit) {
  detail::StateSearch(u).run(visit);
}

/// Number of states, stopping once it exceeds `limit`.
inline std::size_t count_states(const Universe& u, std::size_t limit = SIZE_MAX) {
  std::size_t n = 0;
  for_each_state(u, [&](const ClockState&) { return ++n <= limit; });
  return n;
}

/// Canonical key: for regions in id order, the (crossing, corner) serving it.
inline std::vector<Corner> canonical_key(const Universe& u, const ClockState& s) {
  std::vector<Corner> by_region(static_cast<std::size_t>(u.region_count()), Corner{-1, -1});
  for (int c = 0; c < u.crossing_count(); ++c)
    by_region[static_cast<std::size_t>(u.region_at(c, s.corner(c)))] = Corner{c, s.corner(c)};
  by_region.erase(by_region.begin() + u.starred_region());
  return by_region;
}

/// All clock states in canonical order (lexicographic by region id, then
/// crossing id, then corner). Throws CapExceeded beyond `cap` states.
inline std::vector<ClockState> enumerate_states(const Universe& u, std::size_t cap = SIZE_MAX) {
  std::vector<std::pair<std::vector<Corner>, ClockState>> keyed;
  for_each_state(u, [&](const ClockState& s) {
    if (keyed.size() == cap) throw CapExceeded(cap, "too many clock states");
    keyed.emplace_back(canonical_key(u, s), s);
    return true;
  });
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ClockState> out;
  out.reserve(keyed.size());
  for (auto& [k, s] : keyed) out.push_back(std::move(s));
  return out;
}

inline std::vector<ClockState> enumerate_states(const LinkoidDiagram& d, std::size_t cap = SIZE_MAX) {
  return enumerate_states(d.universe(), cap);
}

/// Some state of u (the first one found); u always has at least one.
inline ClockState first_state(const Universe& u) {
  std::optional<ClockState> found;
  for_each_state(u, [&](const ClockState& s) {
    found = s;
    return false;
  });
  if (!found) throw TheoryDiscrepancy("universe has no clock state");
  return *found;
}

// ------------------------------------------------------------- smoothings

/// Smoothing at one crossing, named by the corner pair it opens into one
/// region: channel 0 joins corners 0 and 2, channel 1 joins corners 1 and 3.
/// Strands then reconnect slots (t+1, t+2) and (t+3, t).
using Smoothing = std::vector<std::uint8_t>;

struct Trail {
  Smoothing channel;
  std::vector<int> walk;  // universe edges from tail to head
  friend bool operator==(const Trail&, const Trail&) = default;
};

/// A smoothing whose result is not one open arc: the open arc from the
/// tail plus the closed loops left over.
struct NotATrail {
  Smoothing channel;
  std::vector<int> open_walk;
  std::vector<std::vector<int>> closed_loops;
};

using SmoothingOutcome = std::variant<Trail, NotATrail>;

namespace detail {

inline int channel_partner(int slot, int channel) {
  const int t = channel;
  const int i = Universe::mod4(slot - t);
  // pairs (t+1, t+2) and (t+3, t)
  static constexpr int other[4] = {3, 2, 1, 0};
  return Universe::mod4(other[i] + t);
}

}  // namespace detail

inline SmoothingOutcome resolve_smoothing(const Universe& u, const Smoothing& channel) {
  const int n = u.crossing_count();
  if (static_cast<int>(channel.size()) != n)
    throw InvalidArgument("smoothing has " + std::to_string(channel.size()) + " entries for " + std::to_string(n) + " crossings");
  for (auto t : channel)
    if (t > 1) throw InvalidArgument("smoothing channel must be 0 or 1");
  std::vector<bool> seen(static_cast<std::size_t>(u.edge_count()), false);
  auto step = [&](int arrive) {
    int c = arrive / 4;
    return 4 * c + detail::channel_partner(arrive % 4, channel[static_cast<std::size_t>(c)]);
  };
  std::vector<int> walk;
  int d = u.tail_dart();
  while (true) {
    int e = u.edge_of_dart(d);
    walk.push_back(e);
    seen[static_cast<std::size_t>(e)] = true;
    int arrive = u.partner(d);
    if (arrive == u.head_dart()) break;
    d = step(arrive);
  }
  if (static_cast<int>(walk.size()) == u.edge_count()) return Trail{channel, std::move(walk)};
  NotATrail bad{channel, std::move(walk), {}};
  for (int e0 = 0; e0 < u.edge_count(); ++e0) {
    if (seen[static_cast<std::size_t>(e0)]) continue;
    std::vector<int> loop;
    int start = u.edge_darts(e0)[0];
    int dd = start;
    do {
      int e = u.edge_of_dart(dd);
      loop.push_back(e);
      seen[static_cast<std::size_t>(e)] = true;
      dd = step(u.partner(dd));
    } while (dd != start);
    bad.closed_loops.push_back(std::move(loop));
  }
  return bad;
}

/// Smooths every crossing in the direction of its marker. A marker whose
/// two corners lie in one region, or a result that is not a trail,
/// contradicts the theory and throws TheoryDiscrepancy.
inline Trail state_to_trail(const Universe& u, const ClockState& s) {
  check_state(u, s);
  Smoothing ch;
  for (int c = 0; c < u.crossing_count(); ++c) {
    int k = s.corner(c);
    if (u.region_at(c, k) == u.region_at(c, k + 2))
      throw TheoryDiscrepancy("smoothing at crossing " + std::to_string(c) + " does not join two distinct regions");
    ch.push_back(static_cast<std::uint8_t>(k % 2));
  }
  auto out = resolve_smoothing(u, ch);
  if (auto* bad = std::get_if<NotATrail>(&out))
    throw TheoryDiscrepancy("state " + s.fingerprint() + " smooths to " + std::to_string(bad->closed_loops.size()) +
                            " closed loop(s)");
  return std::get<Trail>(std::move(out));
}

inline void check_trail(const Universe& u, const Trail& t) {
  auto out = resolve_smoothing(u, t.channel);
  const auto* ok = std::get_if<Trail>(&out);
  if (!ok) throw InvalidArgument("smoothing leaves closed loops");
  if (ok->walk != t.walk) throw InvalidArgument("trail walk does not match its smoothing");
}

struct TreeEdge {
  int from = 0;  // child region
  int to = 0;    // parent region, one step closer to the root
  int crossing = 0;
  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

/// Spanning tree of the regions, rooted at the starred region, with edges
/// directed toward the root. Edges are listed by crossing id.
struct RootedTree {
  int root = 0;
  int vertex_count = 1;
  std::vector<TreeEdge> edges;
};

inline RootedTree trail_to_tree(const Universe& u, const Trail& t) {
  check_trail(u, t);
  const int n = u.crossing_count();
  const auto nv = static_cast<std::size_t>(u.region_count());
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, crossing)
  for (int c = 0; c < n; ++c) {
    int ch = t.channel[static_cast<std::size_t>(c)];
    int a = u.region_at(c, ch), b = u.region_at(c, ch + 2);
    if (a == b) throw TheoryDiscrepancy("trail smoothing at crossing " + std::to_string(c) + " joins a region to itself");
    adj[static_cast<std::size_t>(a)].push_back({b, c});
    adj[static_cast<std::size_t>(b)].push_back({a, c});
  }
  RootedTree tree;
  tree.root = u.starred_region();
  tree.vertex_count = u.region_count();
  std::vector<int> parent_crossing(nv, -1);
  std::vector<bool> seen(nv, false);
  std::deque<int> queue{tree.root};
  seen[static_cast<std::size_t>(tree.root)] = true;
  while (!queue.empty()) {
    int r = queue.front();
    queue.pop_front();
    for (auto [s, c] : adj[static_cast<std::size_t>(r)]) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      seen[static_cast<std::size_t>(s)] = true;
      tree.edges.push_back({s, r, c});
      queue.push_back(s);
    }
  }
  if (static_cast<int>(tree.edges.size()) != n)
    throw TheoryDiscrepancy("smoothing graph of a trail is not a spanning tree");
  std::sort(tree.edges.begin(), tree.edges.end(), [](const auto& a, const auto& b) { return a.crossing < b.crossing; });
  return tree;
}

/// Places each marker in the region its tree edge comes from.
inline ClockState trail_to_state(const Universe& u, const Trail& t) {
  auto tree = trail_to_tree(u, t);
  ClockState s;
  s.marker.assign(static_cast<std::size_t>(u.crossing_count()), 0);
  for (const auto& e : tree.edges) {
    int ch = t.channel[static_cast<std::size_t>(e.crossing)];
    int k = u.region_at(e.crossing, ch) == e.from ? ch : ch + 2;
    s.marker[static_cast<std::size_t>(e.crossing)] = static_cast<std::uint8_t>(k);
  }
  check_state(u, s);
  return s;
}

struct ExchangeDiff {
  std::vector<int> sites;  // ascending crossing ids
  bool empty() const noexcept { return sites.empty(); }
  std::size_t size() const noexcept { return sites.size(); }
};

inline ExchangeDiff exchange_diff(const Trail& a, const Trail& b) {
  if (a.channel.size() != b.channel.size()) throw InvalidArgument("trails belong to different diagrams");
  ExchangeDiff d;
  for (std::size_t c = 0; c < a.channel.size(); ++c)
    if (a.channel[c] != b.channel[c]) d.sites.push_back(static_cast<int>(c));
  return d;
}

/// Flips the smoothing at every site. The result is a Trail only if it is
/// still one open arc; otherwise a NotATrail carrying the loops.
inline SmoothingOutcome apply_resmoothing(const Universe& u, const Trail& t, const std::set<int>& sites) {
  if (sites.empty()) throw InvalidArgument("resmoothing needs at least one site");
  Smoothing ch = t.channel;
  for (int c : sites) {
    if (c < 0 || c >= static_cast<int>(ch.size())) throw InvalidArgument("unknown site " + std::to_string(c));
    ch[static_cast<std::size_t>(c)] ^= 1;
  }
  return resolve_smoothing(u, ch);
}

}  // namespace clockthm

#endif  // CLOCKTHM_STATES_HPP
