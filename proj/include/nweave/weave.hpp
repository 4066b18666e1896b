#pragma once
// The weave surface of an N-graph: the N-fold cover of the base surface
// branched over the trivalent vertices, built as a combinatorial map whose
// darts are (dart of g, sheet) pairs. Sheets are z-order labels 1..N, locally
// constant on corners; crossing an edge of color c swaps labels c and c+1.

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nweave/ngraph.hpp"

namespace nweave {

struct WeaveSurface {
  int n = 0;
  NGraph g;  // the underlying graph (hub attached when the base is a disk)

  // cover darts are encoded as index(dart) * n + (sheet - 1), where the sheet
  // labels the level of the cover in the corner to the left of the dart
  std::vector<int> darts;  // sorted darts of g
  std::unordered_map<int, int> dindex;
  std::vector<int> csigma, csigma_inv, calpha;
  std::vector<int> cvert;       // cover dart -> lifted vertex
  std::vector<int> corbit;      // cover dart -> face boundary walk
  std::vector<int> cface;       // cover dart -> cover face (walks merged
                                // along nests; such a face may be an annulus)
  std::vector<int> ccomp;       // cover dart -> connected component
  std::vector<int> cvert_base;  // lifted vertex -> base vertex id
  int nverts = 0, norbits = 0, nfaces = 0, ncomps = 0;

  int cd(int dart, int sheet) const { return dindex.at(dart) * n + sheet - 1; }
  int base_dart(int c) const { return darts[c / n]; }
  int sheet(int c) const { return c % n + 1; }
  int num_cover_darts() const { return static_cast<int>(csigma.size()); }
  bool is_hub_lift(int lifted_vertex) const {
    return g.hub >= 0 && cvert_base[lifted_vertex] == g.hub;
  }
};

WeaveSurface build_weave_surface(const NGraph& g);

struct WeaveInvariants {
  int euler = 0;  // of the weave, with the boundary-circle caps removed
  int components = 0;
  std::vector<int> genus;     // per component
  std::vector<int> boundary;  // boundary circles per component
  int boundary_circles = 0;
  int b1 = 0;  // first Betti number of the weave
};

WeaveInvariants weave_invariants(const WeaveSurface& w);
WeaveInvariants weave_invariants(const NGraph& g);

// A 1-cycle specification: a tree of edges of g with leaves at trivalent
// vertices, passing straight through crossing vertices, and meeting each
// hexagonal vertex either at two opposite rays or at the three rays of one
// color (a Y-branch).
struct CycleSpec {
  std::vector<int> edges;  // one dart per edge of the tree
};

// text syntax: e<dart> | Y(v<id>) | path(item,...) | tree(item,...)
// where items are e/v tokens; v tokens name straight-pass waypoints.
CycleSpec parse_cycle_spec(const NGraph& g, const std::string& text);

struct LiftedCycle {
  std::vector<int> steps;  // cover darts in walk order; each step traverses
                           // its edge away from the dart's vertex
};

LiftedCycle lift_cycle(const WeaveSurface& w, const CycleSpec& spec);

// signed crossing count after pushing b off the 1-skeleton to its left
int signed_intersection(const WeaveSurface& w, const LiftedCycle& a,
                        const LiftedCycle& b);

// the walk as a 1-chain over cover edges (oriented from the smaller dart)
std::vector<long long> cycle_chain(const WeaveSurface& w, const LiftedCycle& c);

// rank of the span of the chains in H_1 of the weave (boundary punctures
// respected: cells touching hub lifts are excluded from the complex)
int chain_h1_rank(const WeaveSurface& w,
                  const std::vector<std::vector<long long>>& chains);

struct Quiver {
  int nverts = 0;
  std::vector<std::vector<int>> eps;          // skew matrix of signed counts
  std::map<std::pair<int, int>, int> arrows;  // (i,j) -> multiplicity of i->j
};

Quiver intersection_quiver(const NGraph& g, const std::vector<CycleSpec>& specs);

struct CombHomology {
  int h1_complex = 0;  // rank of H1 of the bicolored face/edge complex
  int h1_weave = 0;    // first Betti number of the weave surface
};

// The degree-one homology of the restricted complex built from the two
// monochromatic subgraphs of a 3-graph: degree two is spanned by the faces of
// each subgraph, degree one by all edges, and the boundary of an edge lift is
// supported on the lifted hexagonal vertices.
CombHomology comb_homology_h1(const NGraph& g);

// differentials of the restricted complex (columns = generators)
std::vector<std::vector<long long>> comb_d1(const NGraph& g);
std::vector<std::vector<long long>> comb_d2(const NGraph& g);

// exact integer matrix rank (fraction-free elimination)
int int_rank(std::vector<std::vector<long long>> m);

}  // namespace nweave
