#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "nweave/constructions.hpp"
#include "nweave/moves.hpp"
#include "nweave/ngraph.hpp"
#include "nweave/weave.hpp"

using namespace nweave;

namespace {

NGraph P(const std::string& s) { return parse_ngf(s); }

bool iso_any(const NGraph& a, const NGraph& b) {
  return are_isomorphic(a, b).isomorphic ||
         are_isomorphic(a, b, true).isomorphic;
}

bool same_weave(const NGraph& a, const NGraph& b) {
  auto x = weave_invariants(a), y = weave_invariants(b);
  auto s = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return x.euler == y.euler && x.components == y.components &&
         s(x.genus) == s(y.genus) && s(x.boundary) == s(y.boundary) &&
         x.boundary_circles == y.boundary_circles;
}

// one apply that round-trips back to g, over all sites of `rule` on h
bool some_site_restores(const NGraph& h, RuleId rule, const NGraph& g) {
  for (const auto& s : find_matches(h, rule)) {
    try {
      if (iso_any(apply_move(h, rule, s), g)) return true;
    } catch (const std::invalid_argument&) {
    }
  }
  return false;
}

const char* kCandyToy = R"(
ngraph n=3 base=disk
v 1 hex:1
v 2 hex:1
rot 1 = 1,2,3,4,5,6
rot 2 = 7,8,9,10,11,12
e 1 8 color=1
e 2 7 color=2
legs = 3,4,5,6,9,10,11,12
)";

const char* kFlopToy = R"(
ngraph n=3 base=disk
v 1 trivalent:1
v 2 trivalent:1
v 3 hex:1
rot 1 = 1,2,3
rot 2 = 4,5,6
rot 3 = 7,8,9,10,11,12
e 1 7 color=1
e 4 9 color=1
legs = 2,3,8,5,6,10,11,12
)";

const char* kCrossBigonToy = R"(
ngraph n=4 base=disk
v 1 cross:1,3
v 2 cross:1,3
rot 1 = 1,2,3,4
rot 2 = 5,6,7,8
e 1 7 color=1
e 2 6 color=3
legs = 3,4,8,5
)";

const char* kSlideToy = R"(
ngraph n=4 base=disk
v 1 trivalent:1
v 2 cross:1,3
rot 1 = 1,2,3
rot 2 = 4,5,6,7
e 1 4 color=1
legs = 2,3,5,6,7
)";

const char* kLongEdgeToy = R"(
ngraph n=3 base=disk
v 1 trivalent:1
v 2 hex:1
v 3 trivalent:2
rot 1 = 1,2,3
rot 2 = 4,5,6,7,8,9
rot 3 = 10,11,12
e 1 4 color=1
e 7 10 color=2
legs = 2,3,5,6,11,12,8,9
)";

const char* kTripodToy = R"(
ngraph n=3 base=disk
v 1 hex:1
v 2 trivalent:1
v 3 trivalent:1
v 4 trivalent:1
rot 1 = 1,2,3,4,5,6
rot 2 = 7,8,9
rot 3 = 10,11,12
rot 4 = 13,14,15
e 1 7 color=1
e 3 10 color=1
e 5 13 color=1
legs = 8,9,2,11,12,4,14,15,6
)";

// two triangles with an outer chord each, joined by one cut edge
const char* kDumbbell = R"(
ngraph n=2 base=sphere
v 1 trivalent:1
v 2 trivalent:1
v 3 trivalent:1
v 4 trivalent:1
v 5 trivalent:1
v 6 trivalent:1
rot 1 = 1,2,3
rot 2 = 4,5,6
rot 3 = 7,8,9
rot 4 = 11,12,13
rot 5 = 14,15,16
rot 6 = 17,18,19
e 2 6 color=1
e 5 9 color=1
e 8 3 color=1
e 4 7 color=1
e 12 16 color=1
e 15 19 color=1
e 18 13 color=1
e 14 17 color=1
e 1 11 color=1
)";

}  // namespace

TEST_CASE("rule names round trip") {
  for (RuleId r : {RuleId::I, RuleId::II, RuleId::III, RuleId::IV, RuleId::V,
                   RuleId::VI, RuleId::VIp, RuleId::S0, RuleId::S1, RuleId::S1p,
                   RuleId::S1pp, RuleId::CliffordSum, RuleId::BigonInv,
                   RuleId::TriangleInv})
    CHECK(rule_from_name(rule_name(r)) == r);
  CHECK(rule_from_name("VI'") == RuleId::VIp);
  CHECK(rule_from_name("S1''") == RuleId::S1pp);
  CHECK_THROWS_AS(rule_from_name("VII"), std::invalid_argument);
}

TEST_CASE("move I: candy pair to four strands and back") {
  NGraph g = P(kCandyToy);
  auto sites = find_matches(g, RuleId::I);
  std::vector<MatchSite> fwd;
  for (auto& s : sites)
    if (!s.reverse) fwd.push_back(s);
  REQUIRE(fwd.size() == 1);
  NGraph h = apply_move(g, RuleId::I, fwd[0]);
  CHECK(h.verts.size() == 1);  // only the hub remains
  CHECK(boundary_word(h) == boundary_word(g));
  CHECK(some_site_restores(h, RuleId::I, g));
}

TEST_CASE("move II: matches and round trip on the triangle graph") {
  NGraph g = triangle_graph(3);
  auto sites = find_matches(g, RuleId::II);
  CHECK(sites.size() == 3);
  for (auto& s : sites) CHECK_FALSE(s.reverse);
  NGraph h = apply_move(g, RuleId::II, sites[0]);
  CHECK(boundary_word(h) == boundary_word(g));
  CHECK(same_weave(h, g));
  CHECK(some_site_restores(h, RuleId::II, g));
}

TEST_CASE("move III: rotation has order three") {
  NGraph g = P(kFlopToy);
  auto sites = find_matches(g, RuleId::III);
  REQUIRE(sites.size() == 2);
  CHECK_FALSE(sites[0].reverse);
  CHECK(sites[1].reverse);

  NGraph h = g;
  for (int i = 0; i < 3; ++i) {
    auto ss = find_matches(h, RuleId::III);
    REQUIRE(!ss.empty());
    REQUIRE_FALSE(ss[0].reverse);
    h = apply_move(h, RuleId::III, ss[0]);
    CHECK(boundary_word(h) == boundary_word(g));
  }
  CHECK(iso_any(h, g));

  NGraph once = apply_move(g, RuleId::III, sites[0]);
  CHECK(some_site_restores(once, RuleId::III, g));
}

TEST_CASE("move IV: the two sides of the local model") {
  NGraph m0 = move4_model(0), m1 = move4_model(1);
  require_valid(m0);
  require_valid(m1);
  CHECK_FALSE(iso_any(m0, m1));
  auto sites = find_matches(m0, RuleId::IV);
  std::vector<MatchSite> fwd;
  for (auto& s : sites)
    if (!s.reverse) fwd.push_back(s);
  REQUIRE(fwd.size() == 1);
  NGraph h = apply_move(m0, RuleId::IV, fwd[0]);
  CHECK(boundary_word(h) == boundary_word(m0));
  CHECK(iso_any(h, m1));
  CHECK(some_site_restores(h, RuleId::IV, m0));
}

TEST_CASE("move V: crossing bigon to parallel strands and back") {
  NGraph g = P(kCrossBigonToy);
  auto sites = find_matches(g, RuleId::V);
  std::vector<MatchSite> fwd;
  for (auto& s : sites)
    if (!s.reverse) fwd.push_back(s);
  REQUIRE(fwd.size() == 1);
  NGraph h = apply_move(g, RuleId::V, fwd[0]);
  CHECK(h.verts.size() == 1);
  CHECK(boundary_word(h) == boundary_word(g));
  CHECK(some_site_restores(h, RuleId::V, g));
}

TEST_CASE("moves VI and VI': slide across a trivalent vertex") {
  NGraph g = P(kSlideToy);
  for (RuleId r : {RuleId::VI, RuleId::VIp}) {
    CAPTURE(rule_name(r));
    std::vector<MatchSite> fwd;
    for (auto& s : find_matches(g, r))
      if (!s.reverse) fwd.push_back(s);
    REQUIRE(fwd.size() == 1);
    NGraph h = apply_move(g, r, fwd[0]);
    CHECK(boundary_word(h) == boundary_word(g));
    CHECK(same_weave(h, g));
    CHECK(some_site_restores(h, r, g));
  }
}

TEST_CASE("surgery S0 raises the weave genus; collapsing the bigon undoes it") {
  NGraph g = named("clifford");
  CHECK(weave_invariants(g).genus == std::vector<int>{1});
  auto sites = find_matches(g, RuleId::S0);
  CHECK(sites.size() == 6);
  NGraph h = apply_move(g, RuleId::S0, sites[0]);
  auto wi = weave_invariants(h);
  CHECK(wi.components == 1);
  CHECK(wi.genus == std::vector<int>{2});
  auto inv = find_matches(h, RuleId::BigonInv);
  REQUIRE(inv.size() == 1);
  CHECK(iso_any(apply_move(h, RuleId::BigonInv, inv[0]), g));
}

TEST_CASE("clifford sum at a vertex; collapsing the triangle undoes it") {
  NGraph g = named("clifford");
  auto sites = find_matches(g, RuleId::CliffordSum);
  CHECK(sites.size() == 4);
  NGraph h = apply_move(g, RuleId::CliffordSum, sites[0]);
  CHECK(h.verts.size() == 6);
  auto wi = weave_invariants(h);
  CHECK(wi.components == 1);
  CHECK(wi.genus == std::vector<int>{2});
  CHECK(some_site_restores(h, RuleId::TriangleInv, g));
}

TEST_CASE("surgery S1 on a sphere edge lowers the genus") {
  NGraph g = named("clifford");
  auto sites = find_matches(g, RuleId::S1);
  CHECK(sites.size() == 6);
  NGraph h = apply_move(g, RuleId::S1, sites[0]);
  auto wi = weave_invariants(h);
  CHECK(wi.components == 1);
  CHECK(wi.genus == std::vector<int>{0});
}

TEST_CASE("surgery S1 across a cut edge splits the graph") {
  NGraph g = P(kDumbbell);
  auto br = detect_bridge(g);
  REQUIRE(br.has_bridge);
  CHECK(br.edge == 1);
  MatchSite pick;
  bool found = false;
  for (auto& s : find_matches(g, RuleId::S1))
    if (std::find(s.bound.begin(), s.bound.end(), 2) != s.bound.end()) {
      pick = s;
      found = true;
    }
  REQUIRE(found);
  NGraph h = apply_move(g, RuleId::S1, pick);
  CHECK(dart_components(h).size() == 2);
  CHECK(h.nests.size() == 1);
  // the two pieces share a region, so their double covers stay connected;
  // the surgery turns the genus-2 weave into a torus
  CHECK(weave_invariants(g).genus == std::vector<int>{2});
  auto wi = weave_invariants(h);
  CHECK(wi.components == 1);
  CHECK(wi.genus == std::vector<int>{1});
}

TEST_CASE("long-edge surgery S1' reduces through the hexagonal chain") {
  NGraph g = P(kLongEdgeToy);
  auto sites = find_matches(g, RuleId::S1p);
  CHECK(sites.size() == 2);
  NGraph h = apply_move(g, RuleId::S1p, sites[0]);
  CHECK(boundary_word(h) == boundary_word(g));
  int hexes = 0, tris = 0;
  for (auto& [vid, v] : h.verts) {
    hexes += v.kind == VKind::Hex;
    tris += v.kind == VKind::Trivalent;
  }
  CHECK(hexes == 2);
  CHECK(tris == 0);
}

TEST_CASE("tripod surgery S1'' at a hexagonal vertex") {
  NGraph g = P(kTripodToy);
  auto sites = find_matches(g, RuleId::S1pp);
  REQUIRE(sites.size() == 1);
  NGraph h = apply_move(g, RuleId::S1pp, sites[0]);
  CHECK(boundary_word(h) == boundary_word(g));
}

TEST_CASE("push_through emits the vertex on the far side") {
  NGraph g = P(kLongEdgeToy);
  auto pr = push_through(g, 1);
  require_valid(pr.g);
  CHECK(pr.g.vert(pr.g.vertex_of(pr.out_dart)).kind == VKind::Trivalent);
  CHECK(pr.g.vert(pr.g.vertex_of(pr.out_dart)).c1 == 2);
  CHECK_THROWS_AS(push_through(g, 4), std::invalid_argument);
}

TEST_CASE("every site of every isotopy move applies cleanly") {
  std::vector<NGraph> corpus = {named("clifford"),
                                named("barbell"),
                                named("two-triangle-3graph"),
                                ladder(1),
                                triangle_graph(3),
                                P(kCandyToy),
                                P(kFlopToy),
                                P(kCrossBigonToy),
                                P(kSlideToy),
                                P(kLongEdgeToy),
                                P(kTripodToy)};
  for (size_t gi = 0; gi < corpus.size(); ++gi) {
    const NGraph& g = corpus[gi];
    bool disk = g.base.kind == BaseKind::Disk;
    auto bw = disk ? boundary_word(g) : std::vector<int>{};
    for (RuleId r : {RuleId::I, RuleId::II, RuleId::III, RuleId::IV, RuleId::V,
                     RuleId::VI, RuleId::VIp}) {
      auto sites = find_matches(g, r);
      for (size_t i = 0; i < sites.size() && i < 10; ++i) {
        CAPTURE(gi);
        CAPTURE(rule_name(r));
        CAPTURE(i);
        NGraph h = apply_move(g, r, sites[i]);
        if (disk) CHECK(boundary_word(h) == bw);
        CHECK(same_weave(h, g));
      }
    }
    for (RuleId r : {RuleId::S0, RuleId::S1, RuleId::S1p, RuleId::S1pp,
                     RuleId::CliffordSum, RuleId::BigonInv, RuleId::TriangleInv}) {
      auto sites = find_matches(g, r);
      for (size_t i = 0; i < sites.size() && i < 6; ++i) {
        CAPTURE(gi);
        CAPTURE(rule_name(r));
        CAPTURE(i);
        NGraph h = apply_move(g, r, sites[i]);
        if (disk) CHECK(boundary_word(h) == bw);
      }
    }
  }
}

TEST_CASE("a stale site is rejected") {
  NGraph g = named("clifford");
  auto sites = find_matches(g, RuleId::S0);
  NGraph h = apply_move(g, RuleId::S0, sites[0]);
  CHECK_THROWS_AS(apply_move(h, RuleId::S0, sites[0]), std::invalid_argument);
  CHECK_THROWS_AS(apply_move(g, RuleId::S1, sites[0]), std::invalid_argument);
}

TEST_CASE("stabilization adds a sheet without changing the weave euler") {
  NGraph g = named("clifford");
  NGraph s = stabilize(g);
  CHECK(s.n == 3);
  CHECK(s.verts.size() == 7);  // 4 old + ladybug pair + one halo circle
  CHECK(weave_invariants(s).euler == weave_invariants(g).euler);
  CHECK_THROWS_AS(stabilize(triangle_graph(3)), std::invalid_argument);
}

TEST_CASE("connect sum of two clifford graphs") {
  NGraph g = named("clifford");
  NGraph cs = connect_sum(g, 1, g, 1);
  auto wi = weave_invariants(cs);
  CHECK(wi.components == 1);
  CHECK(wi.genus == std::vector<int>{2});
  CHECK(dart_components(cs).size() == 1);

  NGraph s = stabilize(g);  // vertex 5 is the new color-2 trivalent
  CHECK_THROWS_AS(connect_sum(s, 5, s, 1), std::invalid_argument);
  CHECK_THROWS_AS(connect_sum(g, 1, triangle_graph(3), 1),
                  std::invalid_argument);
}

TEST_CASE("bridge detection") {
  CHECK_FALSE(detect_bridge(named("clifford")).has_bridge);
  auto br = detect_bridge(named("barbell"));
  CHECK(br.has_bridge);
  CHECK(br.edge == 3);
  CHECK_THROWS_AS(detect_bridge(named("two-triangle-3graph")),
                  std::invalid_argument);
}

TEST_CASE("freeness of disk 2-graphs") {
  NGraph tripod = P(R"(
ngraph n=2 base=disk
v 1 trivalent:1
rot 1 = 1,2,3
legs = 1,2,3
)");
  CHECK(is_free(tripod) == Freeness::Free);

  NGraph looped = P(R"(
ngraph n=2 base=disk
v 1 trivalent:1
rot 1 = 1,2,3
e 1 2 color=1
legs = 3
)");
  CHECK(is_free(looped) == Freeness::NotFree);

  NGraph chords = P(R"(
ngraph n=2 base=disk
v 1 bend:1
v 2 bend:1
rot 1 = 1,2
rot 2 = 3,4
legs = 1,3,4,2
)");
  CHECK(is_free(chords) == Freeness::Inapplicable);

  NGraph empty;
  empty.base = {BaseKind::Disk, 0};
  CHECK(is_free(empty) == Freeness::Free);

  CHECK(is_free(named("two-triangle-3graph")) == Freeness::Inapplicable);
}
