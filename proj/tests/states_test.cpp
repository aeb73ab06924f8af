#include <gtest/gtest.h>

#include <clockthm/corpus.hpp>
#include <clockthm/states.hpp>

using namespace clockthm;

namespace {

const char* curl_text = "kdf 1\nx 1 0 1 1 2\nstar tail\n";
const char* proper2_text = "kdf 1\nx 0 2 1 3 0\nx 1 1 4 2 3\n";
const char* figure_text = "kdf 1\nx 0 4 1 5 0\nx 1 1 4 2 3\nx 2 5 3 6 2\n";

LinkoidDiagram corpus_diagram(const std::string& name) {
  for (const auto& e : load_corpus(CLOCKTHM_CORPUS_DIR))
    if (e.name == name) return parse_kdf(e.source, e.name);
  throw std::runtime_error("no corpus entry " + name);
}

// entries whose star sits in an endpoint region
std::vector<LinkoidDiagram> standard_corpus() {
  std::vector<LinkoidDiagram> out;
  for (const auto& e : load_corpus(CLOCKTHM_CORPUS_DIR)) {
    auto d = parse_kdf(e.source, e.name);
    const auto& u = d.universe();
    if (u.starred_region() == u.tail_region() || u.starred_region() == u.head_region()) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

TEST(Enumerate, SmallCases) {
  auto curl = parse_kdf(curl_text);
  auto states = enumerate_states(curl);
  ASSERT_EQ(states.size(), 1u);
  EXPECT_TRUE(is_state(curl.universe(), states[0]));

  auto trivial = parse_kdf("kdf 1\n");
  auto empty = enumerate_states(trivial);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_EQ(empty[0].size(), 0u);
}

TEST(Enumerate, TwoCrossingMatchesHandPermanent) {
  auto d = parse_kdf(proper2_text);
  const auto& u = d.universe();
  auto inc = incidence(u);
  auto rows = u.unstarred_regions();
  ASSERT_EQ(rows.size(), 2u);
  // 2x2 permanent over corner counts
  auto m = [&](int r, int c) { return inc.multiplicity(rows[static_cast<std::size_t>(r)], c); };
  std::size_t perm = static_cast<std::size_t>(m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0));
  EXPECT_EQ(count_states(u), perm);
  EXPECT_EQ(count_states(u), 3u);
}

TEST(Enumerate, CanonicalAndDistinct) {
  for (const auto& d : standard_corpus()) {
    const auto& u = d.universe();
    auto states = enumerate_states(u);
    EXPECT_EQ(states.size(), count_states(u)) << d.name();
    for (std::size_t i = 0; i < states.size(); ++i) {
      EXPECT_TRUE(is_state(u, states[i])) << d.name();
      if (i) {
        EXPECT_LT(canonical_key(u, states[i - 1]), canonical_key(u, states[i])) << d.name();
      }
    }
  }
}

TEST(Enumerate, CapIsEnforced) {
  auto d = corpus_diagram("large-8");
  EXPECT_THROW(enumerate_states(d.universe(), 10), CapExceeded);
  // stops one past the limit
  EXPECT_EQ(count_states(d.universe(), 10), 11u);
}

TEST(Enumerate, FingerprintRoundTrip) {
  auto d = parse_kdf(figure_text);
  for (const auto& s : enumerate_states(d)) EXPECT_EQ(state_from_fingerprint(s.fingerprint()), s);
  EXPECT_THROW(state_from_fingerprint("014"), InvalidArgument);
  EXPECT_FALSE(is_state(d.universe(), state_from_fingerprint("00")));
  EXPECT_FALSE(is_state(d.universe(), state_from_fingerprint("000")));
  EXPECT_THROW(check_state(d.universe(), state_from_fingerprint("0")), InvalidArgument);
}

TEST(Trails, Curl) {
  auto d = parse_kdf(curl_text);
  const auto& u = d.universe();
  auto s = enumerate_states(d).at(0);
  auto t = state_to_trail(u, s);
  EXPECT_EQ(t.walk.size(), 3u);
  EXPECT_EQ(t.walk.front(), u.tail_edge());
  EXPECT_EQ(t.walk.back(), u.head_edge());
  EXPECT_EQ(trail_to_state(u, t), s);
  auto tree = trail_to_tree(u, t);
  ASSERT_EQ(tree.edges.size(), 1u);
  EXPECT_EQ(tree.root, u.starred_region());
  EXPECT_EQ(tree.edges[0].from, u.unstarred_regions().at(0));
  EXPECT_EQ(tree.edges[0].to, u.starred_region());
  EXPECT_EQ(tree.edges[0].crossing, 0);
}

TEST(Trails, Trivial) {
  auto d = parse_kdf("kdf 1\n");
  const auto& u = d.universe();
  auto t = state_to_trail(u, ClockState{});
  EXPECT_EQ(t.walk, std::vector<int>{0});
  EXPECT_EQ(trail_to_state(u, t).size(), 0u);
  auto tree = trail_to_tree(u, t);
  EXPECT_EQ(tree.vertex_count, 1);
  EXPECT_TRUE(tree.edges.empty());
}

TEST(Trails, RoundTripAndTrees) {
  for (const auto& d : standard_corpus()) {
    const auto& u = d.universe();
    for (const auto& s : enumerate_states(d)) {
      auto t = state_to_trail(u, s);
      EXPECT_NO_THROW(check_trail(u, t));
      std::vector<int> seen(static_cast<std::size_t>(u.edge_count()), 0);
      for (int e : t.walk) ++seen[static_cast<std::size_t>(e)];
      EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; })) << d.name();
      EXPECT_EQ(trail_to_state(u, t), s) << d.name() << " " << s.fingerprint();

      auto tree = trail_to_tree(u, t);
      EXPECT_EQ(static_cast<int>(tree.edges.size()), u.crossing_count());
      std::map<int, int> parent;
      for (const auto& e : tree.edges) EXPECT_TRUE(parent.emplace(e.from, e.to).second) << "two parents";
      for (int r = 0; r < u.region_count(); ++r) {
        int v = r, steps = 0;
        while (v != tree.root && steps++ <= u.region_count()) v = parent.at(v);
        EXPECT_EQ(v, tree.root) << d.name();
      }
    }
  }
}

TEST(Trails, StarAwayFromEndpointsCanLeaveLoops) {
  auto d = corpus_diagram("figure1-star-arc");
  const auto& u = d.universe();
  std::size_t loops = 0;
  for (const auto& s : enumerate_states(d)) {
    Smoothing ch;
    for (int c = 0; c < u.crossing_count(); ++c) ch.push_back(static_cast<std::uint8_t>(s.corner(c) % 2));
    loops += std::holds_alternative<NotATrail>(resolve_smoothing(u, ch));
  }
  EXPECT_GT(loops, 0u);
}

TEST(Exchange, DiffOfItselfIsEmpty) {
  auto d = parse_kdf(figure_text);
  auto t = state_to_trail(d.universe(), enumerate_states(d).at(0));
  EXPECT_TRUE(exchange_diff(t, t).empty());
}

TEST(Exchange, ResmoothingIsAnInvolution) {
  for (const auto& d : standard_corpus()) {
    const auto& u = d.universe();
    for (const auto& s : enumerate_states(d)) {
      auto t = state_to_trail(u, s);
      for (int c = 0; c < u.crossing_count(); ++c) {
        auto once = apply_resmoothing(u, t, {c});
        Smoothing ch = std::visit([](const auto& x) { return x.channel; }, once);
        ch[static_cast<std::size_t>(c)] ^= 1;
        auto back = resolve_smoothing(u, ch);
        ASSERT_TRUE(std::holds_alternative<Trail>(back));
        EXPECT_EQ(std::get<Trail>(back), t);
      }
    }
  }
}

TEST(Exchange, KnotTypeSingleFlipMakesALoop) {
  for (const auto& name : {"knot-type-2", "knot-type-3", "curl"}) {
    auto d = corpus_diagram(name);
    ASSERT_EQ(d.kind(), LinkoidKind::knot_type);
    const auto& u = d.universe();
    for (const auto& s : enumerate_states(d)) {
      auto t = state_to_trail(u, s);
      for (int c = 0; c < u.crossing_count(); ++c) {
        auto out = apply_resmoothing(u, t, {c});
        ASSERT_TRUE(std::holds_alternative<NotATrail>(out)) << name;
        EXPECT_FALSE(std::get<NotATrail>(out).closed_loops.empty());
      }
    }
  }
}

TEST(Exchange, ProperSingleExchangeExists) {
  auto d = parse_kdf(figure_text);
  const auto& u = d.universe();
  auto t = state_to_trail(u, enumerate_states(d).at(0));
  bool found = false;
  for (int c = 0; c < u.crossing_count(); ++c) {
    auto out = apply_resmoothing(u, t, {c});
    if (const auto* t2 = std::get_if<Trail>(&out)) {
      found = true;
      EXPECT_NO_THROW(check_trail(u, *t2));
      EXPECT_EQ(exchange_diff(t, *t2).sites, std::vector<int>{c});
    }
  }
  EXPECT_TRUE(found);
  EXPECT_THROW(apply_resmoothing(u, t, {}), InvalidArgument);
  EXPECT_THROW(apply_resmoothing(u, t, {7}), InvalidArgument);
}
