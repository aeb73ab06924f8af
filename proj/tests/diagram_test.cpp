#include <gtest/gtest.h>

#include <clockthm/corpus.hpp>
#include <clockthm/diagram.hpp>

using namespace clockthm;

namespace {

const char* curl_text = "kdf 1\nx 1 0 1 1 2\nstar tail\n";

std::vector<CorpusEntry> shipped() { return load_corpus(CLOCKTHM_CORPUS_DIR); }

// reverse the cyclic order of every crossing; slot 0 stays put
std::string mirror(const LinkoidDiagram& d) {
  std::string out = "kdf 1\n";
  for (std::size_t c = 0; c < d.crossings().size(); ++c) {
    const auto& s = d.crossings()[c].slots;
    out += "x " + std::to_string(c) + " " + std::to_string(s[0]) + " " + std::to_string(s[3]) + " " +
           std::to_string(s[2]) + " " + std::to_string(s[1]) + "\n";
  }
  return out + "star tail\n";
}

template <class F>
ValidationKind validation_kind(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no validation error";
  return ValidationKind::orientation;
}

}  // namespace

TEST(Parse, Curl) {
  auto d = parse_kdf(curl_text, "curl");
  EXPECT_EQ(d.crossing_count(), 1);
  EXPECT_EQ(d.arc_count(), 3);
  EXPECT_EQ(d.crossings()[0].label, 1);
  EXPECT_EQ(d.universe().region_count(), 2);
  EXPECT_EQ(d.universe().unstarred_regions().size(), 1u);
  EXPECT_EQ(d.kind(), LinkoidKind::knot_type);
}

TEST(Parse, Trivial) {
  auto d = parse_kdf("kdf 1\nstar tail\n");
  EXPECT_EQ(d.crossing_count(), 0);
  EXPECT_EQ(d.universe().region_count(), 1);
  EXPECT_TRUE(d.universe().regions()[0].starred);
  EXPECT_TRUE(incidence(d.universe()).by_crossing.empty());
}

TEST(Parse, CommentsAndDefaultStar) {
  auto d = parse_kdf("kdf 1\n# a comment\n\nx 0 0 1 1 2   # trailing\n");
  EXPECT_EQ(d.universe().starred_region(), d.universe().tail_region());
}

TEST(Parse, SyntaxErrorsCarryPosition) {
  try {
    parse_kdf("kdf 1\nx 0 0 1 q 2\nstar tail\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
  }
  try {
    parse_kdf("kdf 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(parse_kdf("kdf 1\nx 0 0 1 1 2\nx 0 0 1 1 2\n"), ParseError);
  EXPECT_THROW(parse_kdf("kdf 1\nx 0 0 1 1 2\nstar tail\nstar head\n"), ParseError);
  EXPECT_THROW(parse_kdf("kdf 1\nx 0 0 1 1 2\nweights + 1 1 1 1\n"), ParseError);
  EXPECT_THROW(parse_kdf("kdf 1\nx 0 0 1 1\n"), ParseError);
  EXPECT_THROW(parse_kdf("kdf 1\nfrob\n"), ParseError);
}

TEST(Parse, StructuralErrors) {
  EXPECT_EQ(validation_kind([] { parse_kdf("kdf 1\nx 0 0 1 1 1\n"); }), ValidationKind::arc_multiplicity);
  EXPECT_EQ(validation_kind([] { parse_kdf("kdf 1\nx 0 0 2 1 3\nx 1 1 3 2 4\n"); }), ValidationKind::non_spherical);
  EXPECT_EQ(validation_kind([] { parse_kdf("kdf 1\nx 0 0 1 1 2\nx 1 3 4 4 3\nloop 3 4\n"); }),
            ValidationKind::disconnected);
  EXPECT_EQ(validation_kind([] { parse_kdf("kdf 1\nx 0 0 1 1 2\nstar 7 L\n"); }), ValidationKind::unresolvable_star);
  EXPECT_EQ(validation_kind([] { parse_kdf("kdf 1\nx 0 0 2 1 3\nloop 5 5\n"); }), ValidationKind::arc_numbering);
}

TEST(Parse, KdfRoundTrip) {
  for (const auto& e : shipped()) {
    auto d = parse_kdf(e.source, e.name);
    auto again = parse_kdf(d.to_kdf(), e.name);
    EXPECT_EQ(again.to_kdf(), d.to_kdf()) << e.name;
    EXPECT_EQ(again.signs(), d.signs()) << e.name;
  }
}

TEST(Signs, CurlAndMirror) {
  auto curl = parse_kdf(curl_text);
  auto mirrored = parse_kdf("kdf 1\nx 1 0 2 1 1\nstar tail\n");
  EXPECT_EQ(curl.sign(0), -1);
  EXPECT_EQ(mirrored.sign(0), 1);
}

TEST(Signs, MirrorFlipsEverySign) {
  // loops of one or two all-over arcs have no forced orientation, so they are left out
  for (const auto& e : shipped()) {
    auto d = parse_kdf(e.source, e.name);
    if (!d.loops().empty()) continue;
    auto m = parse_kdf(mirror(d));
    ASSERT_EQ(m.crossing_count(), d.crossing_count());
    for (int c = 0; c < d.crossing_count(); ++c) EXPECT_EQ(m.sign(c), -d.sign(c)) << e.name << " crossing " << c;
    EXPECT_EQ(m.universe().region_count(), d.universe().region_count());
    EXPECT_EQ(m.kind(), d.kind()) << e.name;
  }
}

TEST(Signs, ProperTwoCrossing) {
  auto d = parse_kdf("kdf 1\nx 0 2 1 3 0\nx 1 1 4 2 3\n");
  // over strands 0 -> 1 and 3 -> 4 both leave through slot 1
  EXPECT_EQ(d.signs(), (std::vector<int>{1, 1}));
}

TEST(Faces, EulerCountAndCornerPartition) {
  for (const auto& e : shipped()) {
    auto d = parse_kdf(e.source, e.name);
    const auto& u = d.universe();
    const int n = u.crossing_count();
    EXPECT_EQ(u.region_count(), n + 1) << e.name;
    EXPECT_EQ(static_cast<int>(u.unstarred_regions().size()), n) << e.name;
    auto inc = incidence(u);
    std::set<std::pair<int, int>> seen;
    for (const auto& corners : inc.by_region)
      for (const auto& k : corners) EXPECT_TRUE(seen.insert({k.crossing, k.index}).second) << e.name;
    EXPECT_EQ(static_cast<int>(seen.size()), 4 * n) << e.name;
    int starred = 0;
    for (bool s : inc.starred) starred += s;
    EXPECT_EQ(starred, 1) << e.name;
  }
}

TEST(Faces, CurlIncidence) {
  auto d = parse_kdf(curl_text);
  const auto& u = d.universe();
  auto inc = incidence(u);
  int inner = u.unstarred_regions().at(0);
  EXPECT_GE(inc.multiplicity(inner, 0), 1);
  EXPECT_EQ(inc.multiplicity(inner, 0) + inc.multiplicity(u.starred_region(), 0), 4);
}

TEST(Faces, StarPlacements) {
  const char* fig = "kdf 1\nx 0 4 1 5 0\nx 1 1 4 2 3\nx 2 5 3 6 2\n";
  auto tail = parse_kdf(fig);
  auto head = parse_kdf(std::string(fig) + "star head\n");
  EXPECT_EQ(tail.universe().starred_region(), tail.universe().tail_region());
  EXPECT_EQ(head.universe().starred_region(), head.universe().head_region());
  EXPECT_EQ(tail.kind(), LinkoidKind::proper);
  for (int a = 0; a < tail.arc_count(); ++a) {
    auto [left, right] = tail.arc_sides(a);
    auto l = parse_kdf(std::string(fig) + "star " + std::to_string(a) + " L\n");
    auto r = parse_kdf(std::string(fig) + "star " + std::to_string(a) + " R\n");
    EXPECT_EQ(l.universe().starred_region(), left);
    EXPECT_EQ(r.universe().starred_region(), right);
  }
}

TEST(DualGraph, Curl) {
  auto g = dual_graph(parse_kdf(curl_text).universe());
  EXPECT_EQ(g.vertex_count, 2);
  EXPECT_EQ(g.edges.size(), 3u);
  EXPECT_EQ(g.proper_edge_count(), 1u);
  ASSERT_EQ(g.merges.size(), 1u);
  // one smoothing keeps the outer region on both sides
  const auto& p = g.merges[0].pairs;
  EXPECT_TRUE(p[0].first == p[0].second || p[1].first == p[1].second);
}

TEST(DualGraph, Trivial) {
  auto g = dual_graph(parse_kdf("kdf 1\n").universe());
  EXPECT_EQ(g.vertex_count, 1);
  EXPECT_EQ(g.proper_edge_count(), 0u);
}

TEST(DualGraph, EdgesSeparateRegions) {
  for (const auto& e : shipped()) {
    auto d = parse_kdf(e.source, e.name);
    const auto& u = d.universe();
    auto g = dual_graph(u);
    EXPECT_EQ(static_cast<int>(g.edges.size()), u.edge_count());
    detail::UnionFind uf(static_cast<std::size_t>(g.vertex_count));
    int parts = g.vertex_count;
    for (const auto& ed : g.edges) parts -= uf.unite(ed.a, ed.b);
    EXPECT_EQ(parts, 1) << e.name;
  }
}

TEST(Smoothing, Curl) {
  auto d = parse_kdf(curl_text);
  const auto& u = d.universe();
  EXPECT_THROW(u.smoothed(0, 0), InvalidArgument);
  auto v = u.smoothed(0, 1);
  EXPECT_EQ(v.crossing_count(), 0);
  EXPECT_EQ(v.region_count(), 1);
  EXPECT_THROW(u.smoothed(1, 0), InvalidArgument);
}

TEST(Smoothing, KeepsSphericalCount) {
  for (const auto& e : shipped()) {
    auto d = parse_kdf(e.source, e.name);
    const auto& u = d.universe();
    for (int c = 0; c < u.crossing_count(); ++c)
      for (int ch = 0; ch < 2; ++ch) {
        try {
          std::vector<int> map;
          auto v = u.smoothed(c, ch, &map);
          EXPECT_EQ(v.region_count(), u.crossing_count()) << e.name;
          EXPECT_EQ(static_cast<int>(map.size()), u.crossing_count() - 1);
        } catch (const InvalidArgument&) {
          // free loop or vanished star
        }
      }
  }
}
