#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "nweave/constructions.hpp"
#include "nweave/weave.hpp"

using namespace nweave;

static Triangulation tetra() {
  return Triangulation{{{{1, 2, 3}}, {{1, 3, 4}}, {{1, 4, 2}}, {{2, 4, 3}}}};
}

static int count_kind(const NGraph& g, VKind k) {
  int c = 0;
  for (auto& [vid, v] : g.verts)
    if (v.kind == k) ++c;
  return c;
}

// replace the edge through dart d by two edges meeting at a bend vertex
static NGraph subdivide(const NGraph& g0, int d) {
  NGraph g = g0;
  int d2 = g.alpha(d), c = g.color(d);
  int a = g.fresh_dart_id(), b = a + 1;
  Vertex v;
  v.kind = VKind::Bend;
  v.c1 = c;
  v.rot = {a, b};
  g.verts[g.fresh_vertex_id()] = v;
  g.alpha_[d] = a;
  g.alpha_[a] = d;
  g.alpha_[d2] = b;
  g.alpha_[b] = d2;
  g.ecolor_[a] = g.ecolor_[b] = c;
  g.reindex();
  return g;
}

static std::vector<NGraph> corpus() {
  std::vector<NGraph> out;
  out.push_back(named("clifford"));
  out.push_back(named("barbell"));
  out.push_back(named("standard-torus-2graph"));
  out.push_back(named("homology-counterexample"));
  out.push_back(named("two-triangle-3graph"));
  for (int n = 1; n <= 3; ++n) out.push_back(ladder(n));
  for (int N = 2; N <= 5; ++N) out.push_back(triangle_graph(N));
  out.push_back(triangulated(3, tetra()));
  out.push_back(concentric({1}, 2));
  out.push_back(concentric({1, 2, 1}, 3));
  return out;
}

TEST_CASE("euler characteristic matches the branched cover formula") {
  for (const NGraph& g : corpus()) {
    auto inv = weave_invariants(g);
    int base_chi = g.base.kind == BaseKind::Disk ? 1 : g.base.closed_euler();
    CHECK(inv.euler == g.n * base_chi - count_kind(g, VKind::Trivalent));
  }
}

TEST_CASE("local monodromy: branch points at trivalent vertices only") {
  NGraph g = triangle_graph(4);  // has trivalent, hexagonal and crossing vertices
  WeaveSurface w = build_weave_surface(g);
  std::map<int, int> lifts;  // base vertex -> number of lifted vertices
  for (int lv = 0; lv < w.nverts; ++lv) ++lifts[w.cvert_base[lv]];
  for (auto& [vid, v] : g.verts) {
    if (v.kind == VKind::Trivalent) CHECK(lifts[vid] == g.n - 1);
    if (v.kind == VKind::Hex) CHECK(lifts[vid] == g.n);
    if (v.kind == VKind::Cross) CHECK(lifts[vid] == g.n);
  }
}

TEST_CASE("clifford weave is a torus") {
  auto inv = weave_invariants(named("clifford"));
  CHECK(inv.components == 1);
  CHECK(inv.euler == 0);
  CHECK(inv.boundary_circles == 0);
  CHECK(inv.genus == std::vector<int>{1});
}

TEST_CASE("ladder weaves are three spheres") {
  for (int n = 1; n <= 3; ++n) {
    auto inv = weave_invariants(ladder(n));
    CHECK(inv.components == 3);
    CHECK(inv.boundary_circles == 0);
    CHECK(inv.genus == std::vector<int>{0, 0, 0});
  }
}

TEST_CASE("tetrahedral 3-triangulation weave is closed of genus four") {
  auto inv = weave_invariants(triangulated(3, tetra()));
  CHECK(inv.components == 1);
  CHECK(inv.euler == -6);
  CHECK(inv.boundary_circles == 0);
  CHECK(inv.genus == std::vector<int>{4});
}

TEST_CASE("triangle graph weaves") {
  // boundary circles come from the cycles of the boundary monodromy
  auto i3 = weave_invariants(triangle_graph(3));
  CHECK(i3.components == 1);
  CHECK(i3.euler == 0);
  CHECK(i3.boundary_circles == 2);
  CHECK(i3.genus == std::vector<int>{0});
  auto i4 = weave_invariants(triangle_graph(4));
  CHECK(i4.boundary_circles == 2);
  CHECK(i4.genus == std::vector<int>{1});
  auto i5 = weave_invariants(triangle_graph(5));
  CHECK(i5.boundary_circles == 3);
  CHECK(i5.genus == std::vector<int>{2});
}

TEST_CASE("two adjacent triangles: thrice-punctured genus-one weave") {
  auto inv = weave_invariants(named("two-triangle-3graph"));
  CHECK(inv.components == 1);
  CHECK(inv.euler == -3);
  CHECK(inv.boundary_circles == 3);
  CHECK(inv.genus == std::vector<int>{1});
  CHECK(inv.b1 == 4);
}

TEST_CASE("lifted edge cycle on the clifford weave is essential") {
  NGraph g = named("clifford");
  WeaveSurface w = build_weave_surface(g);
  auto c = lift_cycle(w, parse_cycle_spec(g, "e1"));
  CHECK(c.steps.size() == 2);
  CHECK(chain_h1_rank(w, {cycle_chain(w, c)}) == 1);
}

TEST_CASE("two-triangle cycles give a homology basis") {
  NGraph g = named("two-triangle-3graph");
  WeaveSurface w = build_weave_surface(g);
  std::vector<std::vector<long long>> chains;
  for (const char* s : {"Y(v2)", "Y(v7)", "e2", "e11"})
    chains.push_back(cycle_chain(w, lift_cycle(w, parse_cycle_spec(g, s))));
  CHECK(chain_h1_rank(w, chains) == 4);
}

TEST_CASE("long straight pass through both hexagonal vertices") {
  NGraph g = named("two-triangle-3graph");
  WeaveSurface w = build_weave_surface(g);
  auto c = lift_cycle(w, parse_cycle_spec(g, "path(e8,v2,e5,v7,e24)"));
  CHECK(c.steps.size() == 6);
  CHECK(chain_h1_rank(w, {cycle_chain(w, c)}) == 1);
}

TEST_CASE("invalid cycle specifications are rejected") {
  NGraph g = named("two-triangle-3graph");
  WeaveSurface w = build_weave_surface(g);
  // a single arm stopping at a hexagonal vertex
  CHECK_THROWS_AS(lift_cycle(w, parse_cycle_spec(g, "e3")), std::invalid_argument);
  // two rays of a hexagonal vertex that are not opposite
  CHECK_THROWS_AS(lift_cycle(w, parse_cycle_spec(g, "tree(e3,e5)")),
                  std::invalid_argument);
  // disconnected pair of edges
  CHECK_THROWS_AS(lift_cycle(w, parse_cycle_spec(g, "tree(e2,e11)")),
                  std::invalid_argument);
  // a leg reaching the boundary
  CHECK_THROWS_AS(lift_cycle(w, parse_cycle_spec(g, "e1")), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_spec(g, "Y(v1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_spec(g, "e999"), std::invalid_argument);
}

TEST_CASE("intersection numbers: two-triangle quiver") {
  NGraph g = named("two-triangle-3graph");
  std::vector<CycleSpec> specs;
  for (const char* s : {"Y(v2)", "Y(v7)", "e2", "e11"})
    specs.push_back(parse_cycle_spec(g, s));
  Quiver q = intersection_quiver(g, specs);
  REQUIRE(q.nverts == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(q.eps[i][j] == -q.eps[j][i]);
  // each Y-cycle meets each bridge edge cycle exactly once
  CHECK(std::abs(q.eps[0][2]) == 1);
  CHECK(std::abs(q.eps[0][3]) == 1);
  CHECK(std::abs(q.eps[1][2]) == 1);
  CHECK(std::abs(q.eps[1][3]) == 1);
  // the two Y-cycles are disjoint, as are the two bridges
  CHECK(q.eps[0][1] == 0);
  CHECK(q.eps[2][3] == 0);
  CHECK(q.arrows.size() == 4);
}

TEST_CASE("intersection numbers on the clifford torus") {
  NGraph g = named("clifford");
  WeaveSurface w = build_weave_surface(g);
  auto e1 = lift_cycle(w, parse_cycle_spec(g, "e1"));
  auto e7 = lift_cycle(w, parse_cycle_spec(g, "e7"));
  auto e11 = lift_cycle(w, parse_cycle_spec(g, "e11"));
  CHECK(std::abs(signed_intersection(w, e1, e7)) == 1);
  CHECK(signed_intersection(w, e1, e7) == -signed_intersection(w, e7, e1));
  // e1 = v1v2 and e11 = v3v4 share no vertex
  CHECK(signed_intersection(w, e1, e11) == 0);
}

TEST_CASE("intersection pairing unchanged by bend subdivision") {
  NGraph g = named("clifford");
  WeaveSurface w = build_weave_surface(g);
  auto a0 = lift_cycle(w, parse_cycle_spec(g, "e1"));
  auto b0 = lift_cycle(w, parse_cycle_spec(g, "e7"));
  int before = signed_intersection(w, a0, b0);
  NGraph h = subdivide(g, 1);
  require_valid(h);
  WeaveSurface wh = build_weave_surface(h);
  auto a1 = lift_cycle(wh, parse_cycle_spec(h, "tree(e1,e2)"));
  auto b1 = lift_cycle(wh, parse_cycle_spec(h, "e7"));
  CHECK(signed_intersection(wh, a1, b1) == before);
}

TEST_CASE("distinctness is enforced in intersection_quiver") {
  NGraph g = named("clifford");
  std::vector<CycleSpec> specs{parse_cycle_spec(g, "e1"), parse_cycle_spec(g, "e2")};
  // e1 and e2 name the two darts of the same edge
  CHECK_THROWS_AS(intersection_quiver(g, specs), std::invalid_argument);
}

TEST_CASE("restricted complex is a chain complex") {
  for (const NGraph& g :
       {triangulated(3, tetra()), named("two-triangle-3graph"),
        named("homology-counterexample"), triangle_graph(3)}) {
    auto d1 = comb_d1(g);
    auto d2 = comb_d2(g);
    REQUIRE(!d2.empty());
    for (size_t i = 0; i < d1.size(); ++i)
      for (size_t j = 0; j < d2[0].size(); ++j) {
        long long s = 0;
        for (size_t k = 0; k < d2.size(); ++k) s += d1[i][k] * d2[k][j];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("restricted homology of the tetrahedral triangulation") {
  auto h = comb_homology_h1(triangulated(3, tetra()));
  CHECK(h.h1_complex == 8);  // 3 * faces - 4
  CHECK(h.h1_weave == 8);
}

TEST_CASE("restricted homology can miss weave homology") {
  auto h = comb_homology_h1(named("homology-counterexample"));
  CHECK(h.h1_complex == 1);
  CHECK(h.h1_weave == 2);
}

TEST_CASE("restricted homology agrees on triangulation graphs") {
  for (const NGraph& g : {triangle_graph(3), named("two-triangle-3graph")}) {
    auto h = comb_homology_h1(g);
    CHECK(h.h1_complex == h.h1_weave);
  }
  auto h2 = comb_homology_h1(named("two-triangle-3graph"));
  CHECK(h2.h1_complex == 4);
}

TEST_CASE("restricted homology rejects degenerate inputs") {
  CHECK_THROWS_AS(comb_homology_h1(named("clifford")), std::invalid_argument);
  NGraph g = named("clifford");
  g.n = 3;  // a 3-graph with no hexagonal vertex
  CHECK_THROWS_AS(comb_homology_h1(g), std::invalid_argument);
}

TEST_CASE("integer rank") {
  CHECK(int_rank({}) == 0);
  CHECK(int_rank({{0, 0}, {0, 0}}) == 0);
  CHECK(int_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(int_rank({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == 3);
}
