#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nweave/ngraph.hpp"

using namespace nweave;

static NGraph circle_graph() {
  // one color-1 circle marked by a single bend vertex
  return parse_ngf(
      "ngraph n=2 base=sphere\n"
      "v 1 bend:1\n"
      "rot 1 = 1,2\n"
      "e 1 2 color=1\n");
}

static std::string tetra_ngf() {
  return "ngraph n=2 base=sphere\n"
         "v 1 trivalent:1\nv 2 trivalent:1\nv 3 trivalent:1\nv 4 trivalent:1\n"
         "rot 1 = 1,7,6\n"
         "rot 2 = 3,9,2\n"
         "rot 3 = 5,11,4\n"
         "rot 4 = 12,8,10\n"
         "e 1 2 color=1\ne 3 4 color=1\ne 5 6 color=1\n"
         "e 7 8 color=1\ne 9 10 color=1\ne 11 12 color=1\n";
}

TEST_CASE("empty graph on sphere is valid with one face") {
  NGraph g = parse_ngf("ngraph n=3 base=sphere\n");
  CHECK(validate(g).ok);
  CHECK(faces(g).size() == 1);
}

TEST_CASE("single circle has two faces") {
  NGraph g = circle_graph();
  CHECK(validate(g).ok);
  CHECK(faces(g).size() == 2);
}

TEST_CASE("hexagonal interlacing violation is reported") {
  // hexagonal vertex whose edges do not alternate colors 1,2
  NGraph g = parse_ngf(
      "ngraph n=3 base=sphere\n"
      "v 1 hex:1\n"
      "v 2 bend:1\nv 3 bend:1\nv 4 bend:2\n"
      "rot 1 = 1,2,3,4,5,6\n"
      "rot 2 = 7,8\nrot 3 = 9,10\nrot 4 = 11,12\n"
      "e 1 7 color=1\ne 2 8 color=1\ne 3 11 color=2\n"
      "e 4 9 color=1\ne 5 12 color=2\ne 6 10 color=2\n");
  auto r = validate(g);
  CHECK_FALSE(r.ok);
  bool found = false;
  for (auto& v : r.violations) found = found || v.rule == "interlacing";
  CHECK(found);
}

TEST_CASE("three nested circles give four faces") {
  NGraph g = parse_ngf(
      "ngraph n=3 base=sphere\n"
      "v 1 bend:1\nv 2 bend:2\nv 3 bend:1\n"
      "rot 1 = 1,2\nrot 2 = 3,4\nrot 3 = 5,6\n"
      "e 1 2 color=1\ne 3 4 color=2\ne 5 6 color=1\n"
      "nest 3 in 2\n"
      "nest 5 in 4\n");
  CHECK(validate(g).ok);
  CHECK(faces(g).size() == 4);
}

TEST_CASE("disconnected graph without nests is invalid") {
  NGraph g = parse_ngf(
      "ngraph n=2 base=sphere\n"
      "v 1 bend:1\nv 2 bend:1\n"
      "rot 1 = 1,2\nrot 2 = 3,4\n"
      "e 1 2 color=1\ne 3 4 color=1\n");
  auto r = validate(g);
  CHECK_FALSE(r.ok);
  CHECK(r.violations[0].rule == "nesting");
}

TEST_CASE("tetrahedral 2-graph: valid, four faces") {
  NGraph g = parse_ngf(tetra_ngf());
  CHECK(validate(g).ok);
  CHECK(faces(g).size() == 4);
}

TEST_CASE("tripod on disk: legs, boundary word, euler") {
  NGraph g = parse_ngf(
      "ngraph n=2 base=disk\n"
      "v 1 trivalent:1\n"
      "rot 1 = 1,2,3\n"
      "legs = 1,2,3\n");
  CHECK(validate(g).ok);
  CHECK(boundary_word(g) == std::vector<int>{1, 1, 1});
  CHECK(faces(g).size() == 3);
  NGraph s = parse_ngf(tetra_ngf());
  CHECK_THROWS_AS(boundary_word(s), ValidationError);
}

TEST_CASE("NGF round trip is stable and isomorphic") {
  for (const std::string& text : {tetra_ngf(), std::string("ngraph n=2 base=disk\n"
                                                           "v 1 trivalent:1\n"
                                                           "rot 1 = 1,2,3\n"
                                                           "legs = 1,2,3\n")}) {
    NGraph g = parse_ngf(text);
    std::string p1 = print_ngf(g);
    NGraph h = parse_ngf(p1);
    CHECK(print_ngf(h) == p1);
    CHECK(are_isomorphic(g, h).isomorphic);
  }
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_ngf("ngraph n=2 base=torus\n"), ParseError);
  CHECK_THROWS_AS(parse_ngf("ngraph n=2 base=sphere\nv 1 trivalent:1\nrot 1 = 1,2,3\n"),
                  ParseError);  // unpaired darts, no legs
  CHECK_THROWS_AS(parse_ngf("ngraph n=2 base=sphere\nbogus\n"), ParseError);
}

TEST_CASE("isomorphism: relabeled tetrahedron, mirror, and a non-example") {
  NGraph g = parse_ngf(tetra_ngf());
  // relabel darts by +20 and vertices by +10, permute statement order
  NGraph h = parse_ngf(
      "ngraph n=2 base=sphere\n"
      "v 14 trivalent:1\nv 11 trivalent:1\nv 12 trivalent:1\nv 13 trivalent:1\n"
      "rot 12 = 23,29,22\n"
      "rot 11 = 21,27,26\n"
      "rot 13 = 25,31,24\n"
      "rot 14 = 32,28,30\n"
      "e 21 22 color=1\ne 23 24 color=1\ne 25 26 color=1\n"
      "e 27 28 color=1\ne 29 30 color=1\ne 31 32 color=1\n");
  auto iso = are_isomorphic(g, h);
  CHECK(iso.isomorphic);
  CHECK(iso.witness.size() == 12);

  // mirror: reverse all rotations
  NGraph m = g;
  for (auto& [vid, v] : m.verts) std::reverse(v.rot.begin(), v.rot.end());
  m.reindex();
  CHECK(are_isomorphic(g, m, true).isomorphic);

  CHECK_FALSE(are_isomorphic(g, circle_graph()).isomorphic);
}

TEST_CASE("bend smoothing is invisible to isomorphism") {
  NGraph g = parse_ngf(tetra_ngf());
  // subdivide edge 1-2 with two bends
  NGraph h = parse_ngf(
      "ngraph n=2 base=sphere\n"
      "v 1 trivalent:1\nv 2 trivalent:1\nv 3 trivalent:1\nv 4 trivalent:1\n"
      "v 5 bend:1\nv 6 bend:1\n"
      "rot 1 = 1,7,6\n"
      "rot 2 = 3,9,2\n"
      "rot 3 = 5,11,4\n"
      "rot 4 = 12,8,10\n"
      "rot 5 = 13,14\nrot 6 = 15,16\n"
      "e 1 13 color=1\ne 14 15 color=1\ne 16 2 color=1\n"
      "e 3 4 color=1\ne 5 6 color=1\n"
      "e 7 8 color=1\ne 9 10 color=1\ne 11 12 color=1\n");
  CHECK(validate(h).ok);
  CHECK(are_isomorphic(g, h).isomorphic);
}

// Random valid 2-graphs grown from a circle by planarity-preserving local
// insertions: (a) replace an edge by a two-vertex bigon gadget, (b) drop a
// nested circle into a face. Euler/validate must hold by construction.
static NGraph random_graph(std::mt19937_64& rng, int steps) {
  NGraph g = circle_graph();
  for (int i = 0; i < steps; ++i) {
    auto darts = g.all_darts();
    std::uniform_int_distribution<size_t> pick(0, darts.size() - 1);
    if (rng() % 4 == 0) {
      int anchor = darts[pick(rng)];
      int v = g.fresh_vertex_id();
      int d = g.fresh_dart_id();
      g.verts[v] = Vertex{VKind::Bend, 1, 0, {d, d + 1}};
      g.alpha_[d] = d + 1;
      g.alpha_[d + 1] = d;
      g.ecolor_[d] = g.ecolor_[d + 1] = 1;
      g.nests.push_back({d, anchor});
      g.reindex();
    } else {
      int a = darts[pick(rng)];
      int b = g.alpha(a);
      int v = g.fresh_vertex_id(), w = v + 1;
      int d = g.fresh_dart_id();
      int p1 = d, p2 = d + 1, p3 = d + 2, q1 = d + 3, q2 = d + 4, q3 = d + 5;
      g.verts[v] = Vertex{VKind::Trivalent, 1, 0, {p1, p2, p3}};
      g.verts[w] = Vertex{VKind::Trivalent, 1, 0, {q1, q3, q2}};
      g.alpha_[a] = p1;
      g.alpha_[p1] = a;
      g.alpha_[b] = q1;
      g.alpha_[q1] = b;
      g.alpha_[p2] = q2;
      g.alpha_[q2] = p2;
      g.alpha_[p3] = q3;
      g.alpha_[q3] = p3;
      for (int x : {p1, p2, p3, q1, q2, q3}) g.ecolor_[x] = 1;
      g.reindex();
    }
  }
  return g;
}

TEST_CASE("fuzz: random valid graphs satisfy the euler check") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 60; ++i) {
    NGraph g = random_graph(rng, 1 + (int)(rng() % 8));
    auto r = validate(g);
    if (!r.ok) {
      CAPTURE(print_ngf(g));
      CAPTURE(r.violations[0].rule);
      CAPTURE(r.violations[0].detail);
    }
    CHECK(r.ok);
  }
}

TEST_CASE("isomorphism is an equivalence relation on a generated corpus") {
  std::mt19937_64 rng(777);
  std::vector<NGraph> corpus;
  for (int i = 0; i < 55; ++i) corpus.push_back(random_graph(rng, 1 + (int)(rng() % 5)));
  std::vector<std::string> keys;
  for (auto& g : corpus) {
    CHECK(are_isomorphic(g, g).isomorphic);  // reflexive
    keys.push_back(canonical_key(g));
  }
  // symmetric + transitive: iso coincides with key equality on sampled pairs
  std::uniform_int_distribution<size_t> pick(0, corpus.size() - 1);
  for (int t = 0; t < 200; ++t) {
    size_t i = pick(rng), j = pick(rng);
    bool ij = are_isomorphic(corpus[i], corpus[j]).isomorphic;
    bool ji = are_isomorphic(corpus[j], corpus[i]).isomorphic;
    CHECK(ij == ji);
    CHECK(ij == (keys[i] == keys[j]));
  }
}

TEST_CASE("boundary word length equals number of legs") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 10; ++t) {
    // tripod trees on a disk with random bend subdivisions
    NGraph g = parse_ngf(
        "ngraph n=2 base=disk\n"
        "v 1 trivalent:1\n"
        "rot 1 = 1,2,3\n"
        "legs = 1,2,3\n");
    CHECK(boundary_word(g).size() == g.legs.size());
    (void)rng;
  }
}
