#pragma once
// Local rewrite rules on N-graphs: the surface isotopy moves, the surgery
// moves, stabilization, connect sum, and the bridge/freeness tests.

#include <string>
#include <vector>

#include "nweave/ngraph.hpp"

namespace nweave {

enum class RuleId {
  I,        // candy twist: hexagonal pair with a doubled edge <-> four strands
  II,       // push-through: trivalent vertex through a hexagonal vertex
  III,      // flop: two trivalent vertices rotate one step around a hexagon
  IV,       // a third sheet triple point slides through a hexagonal vertex
  V,        // crossing bigon of two distant strands <-> parallel strands
  VI,       // distant strand slides across a trivalent vertex
  VIp,      // mirror image of VI (drawn separately in the calculus)
  S0,       // 0-surgery: add a bigon along an edge
  S1,       // 1-surgery: remove a monochromatic edge between trivalent vertices
  S1p,      // 1-surgery along a long edge (reduced to S1 by push-throughs)
  S1pp,     // 1-surgery along a trivalent tripod at a hexagonal vertex
  CliffordSum,  // substitute a trivalent vertex by a triangle
  BigonInv,     // collapse a bigon between two trivalent vertices
  TriangleInv,  // collapse a trivalent triangle back to one vertex
};

RuleId rule_from_name(const std::string& name);
std::string rule_name(RuleId r);

struct MatchSite {
  RuleId rule{};
  bool reverse = false;   // matched the right-hand side of an unoriented rule
  bool mirrored = false;  // matched the reflected pattern
  int color = 0;          // instantiated base color i
  int color2 = 0;         // second color j for distant-color rules
  std::vector<int> verts;  // matched vertices, removed by apply_move
  std::vector<int> bound;  // matched interface darts, one per pattern leg
};

// All embeddings of the rule pattern (both sides for the unoriented isotopy
// moves, both reflections), deduplicated, ordered by smallest matched dart.
std::vector<MatchSite> find_matches(const NGraph& g, RuleId rule);

// Rewrites at a site from find_matches. Throws std::invalid_argument if the
// site has gone stale. The result validates and has the same boundary word.
NGraph apply_move(const NGraph& g, RuleId rule, const MatchSite& site);

struct PushResult {
  NGraph g;
  int out_dart;  // dart at the emitted trivalent vertex, leaving the patch
};

// One push-through step: a1 is a dart at a trivalent vertex whose edge enters
// a hexagonal vertex. Applies the forward push-through rule there.
PushResult push_through(const NGraph& g, int a1);

// The local model of rule IV on a disk 4-graph; side is 0 or 1.
NGraph move4_model(int side);

// Sphere operation: encloses g in one wing of a two-vertex color-N ladybug
// and surrounds the pair with descending halo circles colored N-1, ..., 1.
NGraph stabilize(const NGraph& g);

// Kiss two same-color trivalent vertices of disjoint sphere graphs: both are
// deleted and their leg triples joined across one sphere.
NGraph connect_sum(const NGraph& g1, int v1, const NGraph& g2, int v2);

struct BridgeResult {
  bool has_bridge = false;
  int edge = -1;  // smaller dart of a cut edge
};

// Cut-edge test for 2-graphs (the strand picture reduces to graph theory).
BridgeResult detect_bridge(const NGraph& g);

enum class Freeness { Free, NotFree, Inapplicable };

// A 2-graph on a disk is free iff no face closure avoids the boundary. Only
// valid when the quotient of the complement by its boundary arcs is simply
// connected; other inputs report Inapplicable rather than a guess.
Freeness is_free(const NGraph& g);

}  // namespace nweave
