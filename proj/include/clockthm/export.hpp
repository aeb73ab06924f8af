#ifndef CLOCKTHM_EXPORT_HPP
#define CLOCKTHM_EXPORT_HPP

#include <json.hpp>

#include "alexander.hpp"
#include "diagram.hpp"
#include "dynamics.hpp"
#include "states.hpp"

// JSON views of the library values. Ids are the library's own indices:
// crossings in file order, regions in tracing order.
namespace clockthm {

using Json = nlohmann::ordered_json;

inline Json to_json(const Corner& k) { return Json::array({k.crossing, k.index}); }

inline Json to_json(const LinkoidDiagram& d) {
  const auto& u = d.universe();
  Json j;
  j["name"] = d.name();
  j["kind"] = to_string(d.kind());
  j["arcs"] = d.arc_count();
  j["head_arc"] = d.head_arc();
  Json crossings = Json::array();
  for (int c = 0; c < d.crossing_count(); ++c) {
    const auto& x = d.crossings()[static_cast<std::size_t>(c)];
    crossings.push_back({{"id", c}, {"label", x.label}, {"slots", x.slots}, {"sign", x.sign}});
  }
  j["crossings"] = crossings;
  Json loops = Json::array();
  for (const auto& l : d.loops()) loops.push_back({l.first_arc, l.last_arc});
  j["loops"] = loops;
  j["star"] = d.star().to_kdf().substr(5);
  j["starred_region"] = u.starred_region();
  j["tail_region"] = u.tail_region();
  j["head_region"] = u.head_region();
  Json regions = Json::array();
  auto inc = incidence(u);
  for (const auto& r : u.regions()) {
    Json corners = Json::array();
    for (const auto& k : inc.by_region[static_cast<std::size_t>(r.id)]) corners.push_back(to_json(k));
    regions.push_back({{"id", r.id}, {"starred", r.starred}, {"tail", r.has_tail}, {"head", r.has_head}, {"corners", corners}});
  }
  j["regions"] = regions;
  j["incidence"] = inc.by_crossing;
  return j;
}

inline Json to_json(const DualGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({{"arc", e.arc}, {"regions", {e.a, e.b}}, {"loop", e.loop()}});
  Json merges = Json::array();
  for (const auto& m : g.merges)
    merges.push_back({{"crossing", m.crossing},
                      {"channel0", {m.pairs[0].first, m.pairs[0].second}},
                      {"channel1", {m.pairs[1].first, m.pairs[1].second}}});
  return {{"vertices", g.vertex_count}, {"edges", edges}, {"merges", merges}};
}

inline Json to_json(const Universe& u, const ClockState& s) {
  Json markers = Json::array();
  std::vector<std::pair<int, int>> by_region;
  for (int c = 0; c < u.crossing_count(); ++c) by_region.emplace_back(u.region_at(c, s.corner(c)), c);
  std::sort(by_region.begin(), by_region.end());
  for (auto [r, c] : by_region) markers.push_back({{"region", r}, {"crossing", c}, {"corner", s.corner(c)}});
  return {{"fingerprint", s.fingerprint()}, {"markers", markers}};
}

inline Json to_json(const Trail& t) {
  Json sm = Json::array();
  for (std::size_t c = 0; c < t.channel.size(); ++c) {
    int ch = t.channel[c];
    sm.push_back({{"crossing", c}, {"channel", ch}, {"corners", {ch, ch + 2}}});
  }
  return {{"smoothing", sm}, {"walk", t.walk}};
}

inline Json to_json(const NotATrail& t) {
  return {{"channel", t.channel}, {"open_walk", t.open_walk}, {"closed_loops", t.closed_loops}};
}

inline Json to_json(const RootedTree& t) {
  Json edges = Json::array();
  for (const auto& e : t.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"crossing", e.crossing}});
  return {{"root", t.root}, {"vertices", t.vertex_count}, {"edges", edges}};
}

inline Json to_json(const ClockMove& m) {
  Json rot = Json::array();
  for (const auto& r : m.rotations) rot.push_back({{"crossing", r.crossing}, {"from", r.from}, {"to", r.to}});
  return {{"kind", m.kind == ClockMove::Kind::single ? "single" : "paired"},
          {"sense", to_string(m.sense)},
          {"at_head", m.at_head},
          {"rotations", rot}};
}

inline Json to_json(const LatticeReport& rep, bool tables = false) {
  Json j;
  j["states"] = rep.state_count;
  j["acyclic"] = rep.acyclic;
  j["connected"] = rep.connected;
  j["reachable_from_top"] = rep.reachable_from_top;
  j["top"] = rep.top ? Json(*rep.top) : Json(nullptr);
  j["bottom"] = rep.bottom ? Json(*rep.bottom) : Json(nullptr);
  j["hasse"] = rep.hasse;
  Json v = Json::array();
  for (const auto& x : rep.violations) v.push_back({{"kind", x.kind}, {"a", x.a}, {"b", x.b}});
  j["violations"] = v;
  if (tables) {
    j["join"] = rep.join;
    j["meet"] = rep.meet;
  }
  return j;
}

}  // namespace clockthm

#endif  // CLOCKTHM_EXPORT_HPP
