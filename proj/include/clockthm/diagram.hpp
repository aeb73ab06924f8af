#ifndef CLOCKTHM_DIAGRAM_HPP
#define CLOCKTHM_DIAGRAM_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "weights.hpp"

namespace clockthm {

/// Corner `index` of a crossing is the angle between slots index and index+1.
struct Corner {
  int crossing = 0;
  int index = 0;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Region {
  int id = 0;
  std::vector<Corner> corners;  // in tracing order
  bool has_tail = false;
  bool has_head = false;
  bool starred = false;
};

enum class LinkoidKind { knot_type, proper };

inline const char* to_string(LinkoidKind k) { return k == LinkoidKind::knot_type ? "knot-type" : "proper"; }

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace detail

/// The 4-valent plane map underlying a diagram (over/under forgotten), plus
/// its two endpoint vertices and a starred face.
///
/// Darts: 4c+i is slot i of crossing c; 4n is the tail dart, 4n+1 the head
/// dart. Each edge owns exactly two darts. The face of a dart is the face on
/// its left when walking away from its vertex.
class Universe {
 public:
  Universe() : Universe({}, 1, 0, 0, 0) {}

  /// slots[c][i] is the edge at slot i of crossing c (counterclockwise);
  /// star_dart names a dart whose face is the starred region.
  Universe(std::vector<std::array<int, 4>> slots, int edge_count, int tail_edge, int head_edge, int star_dart)
      : slots_(std::move(slots)), edge_count_(edge_count), tail_edge_(tail_edge), head_edge_(head_edge) {
    build_edges();
    check_connected();
    trace_faces();
    if (star_dart < 0 || star_dart >= dart_count())
      throw ValidationError(ValidationKind::unresolvable_star, "star dart out of range");
    starred_ = dart_face_[static_cast<std::size_t>(star_dart)];
    regions_[static_cast<std::size_t>(starred_)].starred = true;
  }

  int crossing_count() const noexcept { return static_cast<int>(slots_.size()); }
  int edge_count() const noexcept { return edge_count_; }
  int dart_count() const noexcept { return 4 * crossing_count() + 2; }
  int tail_dart() const noexcept { return 4 * crossing_count(); }
  int head_dart() const noexcept { return 4 * crossing_count() + 1; }
  int tail_edge() const noexcept { return tail_edge_; }
  int head_edge() const noexcept { return head_edge_; }
  bool is_endpoint_dart(int d) const noexcept { return d >= tail_dart(); }

  const std::vector<std::array<int, 4>>& slots() const noexcept { return slots_; }
  int edge_at(int c, int i) const { return slots_.at(static_cast<std::size_t>(c))[static_cast<std::size_t>(mod4(i))]; }
  int edge_of_dart(int d) const { return dart_edge_.at(static_cast<std::size_t>(d)); }
  const std::array<int, 2>& edge_darts(int e) const { return edge_darts_.at(static_cast<std::size_t>(e)); }
  int partner(int d) const {
    const auto& ds = edge_darts(edge_of_dart(d));
    return ds[0] == d ? ds[1] : ds[0];
  }

  const std::vector<Region>& regions() const noexcept { return regions_; }
  int region_count() const noexcept { return static_cast<int>(regions_.size()); }
  int face_of_dart(int d) const { return dart_face_.at(static_cast<std::size_t>(d)); }
  int region_at(int c, int k) const { return face_of_dart(4 * c + mod4(k)); }
  int region_at(Corner k) const { return region_at(k.crossing, k.index); }
  int starred_region() const noexcept { return starred_; }
  int tail_region() const { return face_of_dart(tail_dart()); }
  int head_region() const { return face_of_dart(head_dart()); }

  LinkoidKind kind() const { return tail_region() == head_region() ? LinkoidKind::knot_type : LinkoidKind::proper; }

  std::vector<int> unstarred_regions() const {
    std::vector<int> out;
    for (const auto& r : regions_)
      if (!r.starred) out.push_back(r.id);
    return out;
  }

  /// Smooths crossing c so that the corners channel and channel+2 join into
  /// one region (slots channel+1,channel+2 and channel+3,channel reconnect).
  /// Crossings above c shift down by one; crossing_map (if given) receives
  /// the old index of every new crossing. The star follows its region.
  Universe smoothed(int c, int channel, std::vector<int>* crossing_map = nullptr) const {
    const int n = crossing_count();
    if (c < 0 || c >= n) throw InvalidArgument("no crossing " + std::to_string(c));
    if (channel != 0 && channel != 1) throw InvalidArgument("channel must be 0 or 1");
    detail::UnionFind uf(static_cast<std::size_t>(edge_count_));
    const int t = channel;
    for (auto [i, j] : {std::pair{t + 1, t + 2}, std::pair{t + 3, t}}) {
      if (!uf.unite(edge_at(c, i), edge_at(c, j)))
        throw InvalidArgument("smoothing crossing " + std::to_string(c) + " leaves a free loop");
    }
    std::vector<int> new_edge(static_cast<std::size_t>(edge_count_), -1);
    int next = 0;
    for (int e = 0; e < edge_count_; ++e) {
      int r = uf.find(e);
      if (new_edge[static_cast<std::size_t>(r)] < 0) new_edge[static_cast<std::size_t>(r)] = next++;
      new_edge[static_cast<std::size_t>(e)] = new_edge[static_cast<std::size_t>(r)];
    }
    std::vector<std::array<int, 4>> slots;
    std::vector<int> kept;
    for (int k = 0; k < n; ++k) {
      if (k == c) continue;
      kept.push_back(k);
      std::array<int, 4> s{};
      for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = new_edge[static_cast<std::size_t>(edge_at(k, i))];
      slots.push_back(s);
    }
    auto map_dart = [&](int d) {
      if (d == tail_dart()) return 4 * (n - 1);
      if (d == head_dart()) return 4 * (n - 1) + 1;
      int k = d / 4;
      return 4 * (k > c ? k - 1 : k) + d % 4;
    };
    const int ra = region_at(c, t), rb = region_at(c, t + 2);
    std::set<int> star_faces{starred_};
    if (starred_ == ra || starred_ == rb) star_faces = {ra, rb};
    int anchor = -1;
    for (int d = 0; d < dart_count() && anchor < 0; ++d) {
      if (!is_endpoint_dart(d) && d / 4 == c) continue;
      if (star_faces.count(face_of_dart(d))) anchor = map_dart(d);
    }
    if (anchor < 0) throw InvalidArgument("starred region vanishes when smoothing crossing " + std::to_string(c));
    if (crossing_map) *crossing_map = kept;
    try {
      return Universe(std::move(slots), next, new_edge[static_cast<std::size_t>(tail_edge_)],
                      new_edge[static_cast<std::size_t>(head_edge_)], anchor);
    } catch (const ValidationError& e) {
      // a nugatory crossing smoothed the wrong way splits the map
      throw InvalidArgument("smoothing crossing " + std::to_string(c) + " breaks the universe: " + e.what());
    }
  }

  static int mod4(int i) noexcept { return ((i % 4) + 4) % 4; }

 private:
  void build_edges() {
    edge_darts_.assign(static_cast<std::size_t>(edge_count_), {-1, -1});
    dart_edge_.assign(static_cast<std::size_t>(dart_count()), -1);
    std::vector<int> seen(static_cast<std::size_t>(edge_count_), 0);
    auto add = [&](int d, int e) {
      if (e < 0 || e >= edge_count_)
        throw ValidationError(ValidationKind::arc_numbering, "edge " + std::to_string(e) + " out of range");
      auto& cnt = seen[static_cast<std::size_t>(e)];
      if (cnt == 2) throw ValidationError(ValidationKind::arc_multiplicity, "arc " + std::to_string(e) + " has more than two ends");
      edge_darts_[static_cast<std::size_t>(e)][static_cast<std::size_t>(cnt++)] = d;
      dart_edge_[static_cast<std::size_t>(d)] = e;
    };
    for (int c = 0; c < crossing_count(); ++c)
      for (int i = 0; i < 4; ++i) add(4 * c + i, edge_at(c, i));
    add(tail_dart(), tail_edge_);
    add(head_dart(), head_edge_);
    for (int e = 0; e < edge_count_; ++e)
      if (seen[static_cast<std::size_t>(e)] != 2)
        throw ValidationError(ValidationKind::arc_multiplicity, "arc " + std::to_string(e) + " has " +
                                                                    std::to_string(seen[static_cast<std::size_t>(e)]) + " ends");
  }

  // vertices: crossings 0..n-1, tail n, head n+1
  int vertex_of_dart(int d) const { return d < tail_dart() ? d / 4 : crossing_count() + (d - tail_dart()); }

  void check_connected() const {
    detail::UnionFind uf(static_cast<std::size_t>(crossing_count() + 2));
    int parts = crossing_count() + 2;
    for (const auto& ds : edge_darts_)
      if (uf.unite(vertex_of_dart(ds[0]), vertex_of_dart(ds[1]))) --parts;
    if (parts != 1) throw ValidationError(ValidationKind::disconnected, "underlying map has " + std::to_string(parts) + " components");
  }

  void trace_faces() {
    dart_face_.assign(static_cast<std::size_t>(dart_count()), -1);
    for (int d0 = 0; d0 < dart_count(); ++d0) {
      if (dart_face_[static_cast<std::size_t>(d0)] >= 0) continue;
      Region r;
      r.id = static_cast<int>(regions_.size());
      int d = d0;
      while (dart_face_[static_cast<std::size_t>(d)] < 0) {
        dart_face_[static_cast<std::size_t>(d)] = r.id;
        int e = partner(d);
        if (e == tail_dart()) {
          r.has_tail = true;
          d = e;
        } else if (e == head_dart()) {
          r.has_head = true;
          d = e;
        } else {
          Corner k{e / 4, mod4(e % 4 - 1)};
          r.corners.push_back(k);
          d = 4 * k.crossing + k.index;
        }
      }
      regions_.push_back(std::move(r));
    }
    const int want = crossing_count() + 1;
    if (region_count() != want)
      throw ValidationError(ValidationKind::non_spherical,
                            "face tracing gives " + std::to_string(region_count()) + " faces, expected " + std::to_string(want));
  }

  std::vector<std::array<int, 4>> slots_;
  int edge_count_;
  int tail_edge_;
  int head_edge_;
  std::vector<std::array<int, 2>> edge_darts_;
  std::vector<int> dart_edge_;
  std::vector<int> dart_face_;
  std::vector<Region> regions_;
  int starred_ = 0;
};

enum class Side { left, right };

struct StarPlacement {
  enum class Mode { tail, head, arc };
  Mode mode = Mode::tail;
  int arc = -1;
  Side side = Side::left;

  static StarPlacement at_tail() { return {}; }
  static StarPlacement at_head() { return {Mode::head, -1, Side::left}; }
  static StarPlacement beside(int arc, Side side) { return {Mode::arc, arc, side}; }

  std::string to_kdf() const {
    switch (mode) {
      case Mode::tail: return "star tail";
      case Mode::head: return "star head";
      case Mode::arc: return "star " + std::to_string(arc) + (side == Side::left ? " L" : " R");
    }
    return "star tail";
  }
  friend bool operator==(const StarPlacement&, const StarPlacement&) = default;
};

struct Crossing {
  int label = 0;                // id as written in the source
  std::array<int, 4> slots{};  // arcs, counterclockwise, slot 0 incoming under
  int sign = 0;
};

struct ClosedComponent {
  int first_arc = 0;
  int last_arc = 0;
};

/// Oriented starred 1-linkoid diagram. Arcs 0..head_arc form the open
/// component from tail to head; closed components cover the remaining arcs.
class LinkoidDiagram {
 public:
  LinkoidDiagram() : LinkoidDiagram("", {}, {}, StarPlacement{}) {}

  /// crossings[k].slots hold arc numbers; sign is recomputed.
  LinkoidDiagram(std::string name, std::vector<Crossing> crossings, std::vector<ClosedComponent> loops,
                 StarPlacement star, std::optional<WeightTable> weights = std::nullopt)
      : name_(std::move(name)), crossings_(std::move(crossings)), loops_(std::move(loops)), star_(star),
        weights_(std::move(weights)) {
    const int n = static_cast<int>(crossings_.size());
    arc_count_ = 2 * n + 1;
    check_numbering();
    orient();
    std::vector<std::array<int, 4>> slots;
    for (const auto& x : crossings_) slots.push_back(x.slots);
    universe_ = Universe(std::move(slots), arc_count_, 0, head_arc_, star_dart());
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
  int arc_count() const noexcept { return arc_count_; }
  int head_arc() const noexcept { return head_arc_; }
  const std::vector<ClosedComponent>& loops() const noexcept { return loops_; }
  const StarPlacement& star() const noexcept { return star_; }
  const std::optional<WeightTable>& weights() const noexcept { return weights_; }
  const Universe& universe() const noexcept { return universe_; }

  int sign(int c) const { return crossings_.at(static_cast<std::size_t>(c)).sign; }
  std::vector<int> signs() const {
    std::vector<int> out;
    for (const auto& x : crossings_) out.push_back(x.sign);
    return out;
  }
  LinkoidKind kind() const { return universe_.kind(); }

  /// Dart at which the arc leaves its start vertex, and the dart at its end.
  int arc_start_dart(int a) const { return arc_start_.at(static_cast<std::size_t>(a)); }
  int arc_end_dart(int a) const { return arc_end_.at(static_cast<std::size_t>(a)); }

  /// Regions to the left and right of an arc, in its direction.
  std::pair<int, int> arc_sides(int a) const {
    return {universe_.face_of_dart(arc_start_dart(a)), universe_.face_of_dart(arc_end_dart(a))};
  }

  std::string to_kdf() const {
    std::string out = "kdf 1\n";
    for (const auto& x : crossings_) {
      out += "x " + std::to_string(x.label);
      for (int a : x.slots) out += ' ' + std::to_string(a);
      out += '\n';
    }
    for (const auto& l : loops_) out += "loop " + std::to_string(l.first_arc) + ' ' + std::to_string(l.last_arc) + '\n';
    out += star_.to_kdf() + '\n';
    if (weights_) out += weights_->to_kdf();
    return out;
  }

 private:
  void check_numbering() {
    std::vector<int> count(static_cast<std::size_t>(arc_count_), 0);
    for (const auto& x : crossings_)
      for (int a : x.slots) {
        if (a < 0 || a >= arc_count_)
          throw ValidationError(ValidationKind::arc_numbering,
                                "arc " + std::to_string(a) + " outside 0.." + std::to_string(arc_count_ - 1) +
                                    " at crossing " + std::to_string(x.label));
        ++count[static_cast<std::size_t>(a)];
      }
    auto sorted = loops_;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first_arc < b.first_arc; });
    head_arc_ = arc_count_ - 1;
    if (!sorted.empty()) {
      head_arc_ = sorted.front().first_arc - 1;
      int expect = sorted.front().first_arc;
      for (const auto& l : sorted) {
        if (l.first_arc != expect || l.last_arc < l.first_arc)
          throw ValidationError(ValidationKind::arc_numbering, "closed components must cover consecutive arc ranges after the head arc");
        expect = l.last_arc + 1;
      }
      if (expect != arc_count_ || head_arc_ < 0)
        throw ValidationError(ValidationKind::arc_numbering, "closed components must end at arc " + std::to_string(arc_count_ - 1));
    }
    for (int a = 0; a < arc_count_; ++a) {
      int want = 2 - (a == 0 ? 1 : 0) - (a == head_arc_ ? 1 : 0);
      if (count[static_cast<std::size_t>(a)] != want)
        throw ValidationError(ValidationKind::arc_multiplicity, "arc " + std::to_string(a) + " appears " +
                                                                    std::to_string(count[static_cast<std::size_t>(a)]) +
                                                                    " times, expected " + std::to_string(want));
    }
  }

  std::vector<int> occurrences(int a) const {
    std::vector<int> out;
    for (int c = 0; c < crossing_count(); ++c)
      for (int i = 0; i < 4; ++i)
        if (crossings_[static_cast<std::size_t>(c)].slots[static_cast<std::size_t>(i)] == a) out.push_back(4 * c + i);
    return out;
  }

  // Walks arcs first..last (cyclically if closed) entering arc `first` at
  // dart `end`. Returns false on the first inconsistency.
  bool walk(int first, int last, int first_end, bool closed, std::vector<int>& start, std::vector<int>& end) const {
    int a = first;
    int e = first_end;
    const int len = last - first + 1;
    for (int step = 0; step < len; ++step) {
      end[static_cast<std::size_t>(a)] = e;
      if (closed && step == len - 1) break;
      int c = e / 4, i = e % 4;
      if (i == 2) return false;  // under strand must enter at slot 0
      int out = 4 * c + (i + 2) % 4;
      int succ = a + 1;
      if (crossings_[static_cast<std::size_t>(c)].slots[static_cast<std::size_t>((i + 2) % 4)] != succ) return false;
      start[static_cast<std::size_t>(succ)] = out;
      auto occ = occurrences(succ);
      if (succ == last && !closed) return true;
      int next_end = -1;
      for (int d : occ)
        if (d != out) next_end = d;
      if (next_end < 0) return false;
      a = succ;
      e = next_end;
    }
    if (!closed) return true;
    // close the cycle: arc `last` ends where `first` starts
    int c = e / 4, i = e % 4;
    if (i == 2) return false;
    int out = 4 * c + (i + 2) % 4;
    if (crossings_[static_cast<std::size_t>(c)].slots[static_cast<std::size_t>((i + 2) % 4)] != first) return false;
    if (start[static_cast<std::size_t>(first)] != out) return false;
    return true;
  }

  void orient() {
    const int n = crossing_count();
    arc_start_.assign(static_cast<std::size_t>(arc_count_), -1);
    arc_end_.assign(static_cast<std::size_t>(arc_count_), -1);
    const int tail = 4 * n, head = 4 * n + 1;
    arc_start_[0] = tail;
    if (head_arc_ == 0) {
      arc_end_[0] = head;
    } else {
      auto occ = occurrences(0);
      if (!walk(0, head_arc_, occ.at(0), false, arc_start_, arc_end_))
        throw ValidationError(ValidationKind::orientation, "open component does not follow slot rules from the tail");
      arc_end_[static_cast<std::size_t>(head_arc_)] = head;
    }
    for (const auto& l : loops_) {
      auto occ = occurrences(l.first_arc);
      bool ok = false;
      for (std::size_t pick = 0; pick < occ.size() && !ok; ++pick) {
        auto start = arc_start_, end = arc_end_;
        // when both directions fit, the first occurrence is where the arc leaves
        start[static_cast<std::size_t>(l.first_arc)] = occ[pick];
        if (walk(l.first_arc, l.last_arc, occ[1 - pick], true, start, end)) {
          arc_start_ = std::move(start);
          arc_end_ = std::move(end);
          ok = true;
        }
      }
      if (!ok)
        throw ValidationError(ValidationKind::orientation, "closed component " + std::to_string(l.first_arc) + ".." +
                                                               std::to_string(l.last_arc) + " does not follow slot rules");
    }
    for (int c = 0; c < n; ++c) {
      // positive iff the over strand leaves through slot 1
      auto& x = crossings_[static_cast<std::size_t>(c)];
      x.sign = arc_start_[static_cast<std::size_t>(x.slots[1])] == 4 * c + 1 ? 1 : -1;
    }
  }

  int star_dart() const {
    const int n = crossing_count();
    switch (star_.mode) {
      case StarPlacement::Mode::tail: return 4 * n;
      case StarPlacement::Mode::head: return 4 * n + 1;
      case StarPlacement::Mode::arc:
        if (star_.arc < 0 || star_.arc >= arc_count_)
          throw ValidationError(ValidationKind::unresolvable_star, "star names unknown arc " + std::to_string(star_.arc));
        return star_.side == Side::left ? arc_start_dart(star_.arc) : arc_end_dart(star_.arc);
    }
    return 4 * n;
  }

  std::string name_;
  std::vector<Crossing> crossings_;
  std::vector<ClosedComponent> loops_;
  StarPlacement star_;
  std::optional<WeightTable> weights_;
  int arc_count_ = 1;
  int head_arc_ = 0;
  std::vector<int> arc_start_;
  std::vector<int> arc_end_;
  Universe universe_;
};

// ---------------------------------------------------------------- parsing

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline int token_int(const Token& t, std::size_t line) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || p != t.text.data() + t.text.size())
    throw ParseError(line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  return v;
}

}  // namespace detail

/// Parses a KDF v1 document. Throws ParseError for malformed text and
/// ValidationError when the text is well formed but not a valid diagram.
inline LinkoidDiagram parse_kdf(std::string_view text, std::string name = "") {
  std::vector<Crossing> crossings;
  std::vector<ClosedComponent> loops;
  std::optional<StarPlacement> star;
  std::optional<std::array<LaurentPoly, 4>> wpos, wneg;
  std::set<int> labels;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = detail::tokenize(line);
    if (tok.empty()) continue;
    auto need = [&](std::size_t k) {
      if (tok.size() != k)
        throw ParseError(line_no, tok.front().column,
                         "'" + std::string(tok.front().text) + "' takes " + std::to_string(k - 1) + " fields, got " +
                             std::to_string(tok.size() - 1));
    };
    const std::string_view kw = tok[0].text;
    if (!header) {
      if (kw != "kdf") throw ParseError(line_no, tok[0].column, "document must start with 'kdf 1'");
      need(2);
      if (tok[1].text != "1") throw ParseError(line_no, tok[1].column, "unsupported KDF version '" + std::string(tok[1].text) + "'");
      header = true;
      continue;
    }
    if (kw == "x") {
      need(6);
      Crossing x;
      x.label = detail::token_int(tok[1], line_no);
      if (!labels.insert(x.label).second) throw ParseError(line_no, tok[1].column, "duplicate crossing id " + std::to_string(x.label));
      for (std::size_t i = 0; i < 4; ++i) x.slots[i] = detail::token_int(tok[i + 2], line_no);
      crossings.push_back(x);
    } else if (kw == "loop") {
      need(3);
      loops.push_back({detail::token_int(tok[1], line_no), detail::token_int(tok[2], line_no)});
    } else if (kw == "star") {
      if (star) throw ParseError(line_no, tok[0].column, "star given twice");
      if (tok.size() == 2 && tok[1].text == "tail") {
        star = StarPlacement::at_tail();
      } else if (tok.size() == 2 && tok[1].text == "head") {
        star = StarPlacement::at_head();
      } else if (tok.size() == 3) {
        int arc = detail::token_int(tok[1], line_no);
        if (tok[2].text != "L" && tok[2].text != "R") throw ParseError(line_no, tok[2].column, "star side must be L or R");
        star = StarPlacement::beside(arc, tok[2].text == "L" ? Side::left : Side::right);
      } else {
        throw ParseError(line_no, tok[0].column, "expected 'star tail', 'star head' or 'star <arc> <L|R>'");
      }
    } else if (kw == "weights") {
      need(6);
      if (tok[1].text != "+" && tok[1].text != "-") throw ParseError(line_no, tok[1].column, "weights sign must be + or -");
      auto& slot = tok[1].text == "+" ? wpos : wneg;
      if (slot) throw ParseError(line_no, tok[0].column, "weights " + std::string(tok[1].text) + " given twice");
      std::array<LaurentPoly, 4> row;
      for (std::size_t i = 0; i < 4; ++i) {
        try {
          row[i] = parse_weight_entry(tok[i + 2].text);
        } catch (const InvalidArgument& e) {
          throw ParseError(line_no, tok[i + 2].column, e.what());
        }
      }
      slot = row;
    } else {
      throw ParseError(line_no, tok[0].column, "unknown directive '" + std::string(kw) + "'");
    }
  }
  if (!header) throw ParseError(1, 1, "empty document, expected 'kdf 1'");
  if (wpos.has_value() != wneg.has_value()) throw ParseError(line_no, 1, "weight table needs both '+' and '-' lines");
  std::optional<WeightTable> weights;
  if (wpos) weights = WeightTable{*wpos, *wneg};
  return LinkoidDiagram(std::move(name), std::move(crossings), std::move(loops), star.value_or(StarPlacement{}),
                        std::move(weights));
}

// ---------------------------------------------------------- derived views

/// Region x crossing incidence. by_region lists every corner of each region
/// (the starred region included); by_crossing gives the region of each
/// corner of each crossing.
struct Incidence {
  std::vector<std::vector<Corner>> by_region;
  std::vector<std::array<int, 4>> by_crossing;
  std::vector<bool> starred;

  /// Number of corners at which region r meets crossing c.
  int multiplicity(int r, int c) const {
    int m = 0;
    for (int k : by_crossing.at(static_cast<std::size_t>(c)))
      if (k == r) ++m;
    return m;
  }
};

inline Incidence incidence(const Universe& u) {
  Incidence inc;
  inc.by_region.resize(static_cast<std::size_t>(u.region_count()));
  for (const auto& r : u.regions()) {
    auto corners = r.corners;
    std::sort(corners.begin(), corners.end());
    inc.by_region[static_cast<std::size_t>(r.id)] = std::move(corners);
    inc.starred.push_back(r.starred);
  }
  for (int c = 0; c < u.crossing_count(); ++c)
    inc.by_crossing.push_back({u.region_at(c, 0), u.region_at(c, 1), u.region_at(c, 2), u.region_at(c, 3)});
  return inc;
}

struct DualGraph {
  struct Edge {
    int arc = 0;  // universe edge it crosses
    int a = 0;
    int b = 0;
    bool loop() const { return a == b; }
  };
  /// The two region pairs a crossing's smoothings would merge: channel 0
  /// joins corners 0 and 2, channel 1 joins corners 1 and 3.
  struct Merge {
    int crossing = 0;
    std::array<std::pair<int, int>, 2> pairs{};
  };

  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<Merge> merges;

  std::size_t proper_edge_count() const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return !e.loop(); }));
  }
};

inline DualGraph dual_graph(const Universe& u) {
  DualGraph g;
  g.vertex_count = u.region_count();
  for (int e = 0; e < u.edge_count(); ++e) {
    const auto& ds = u.edge_darts(e);
    g.edges.push_back({e, u.face_of_dart(ds[0]), u.face_of_dart(ds[1])});
  }
  for (int c = 0; c < u.crossing_count(); ++c)
    g.merges.push_back({c, {std::pair{u.region_at(c, 0), u.region_at(c, 2)}, std::pair{u.region_at(c, 1), u.region_at(c, 3)}}});
  return g;
}

}  // namespace clockthm

#endif  // CLOCKTHM_DIAGRAM_HPP
