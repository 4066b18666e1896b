#pragma once
// Generators for the N-graph families used as the test corpus and CLI inputs.

#include <array>
#include <string>
#include <vector>

#include "nweave/ngraph.hpp"
#include "nweave/weave.hpp"

namespace nweave {

// half-twist color pattern: 1, 21, 321, ..., (N-1)...1
std::vector<int> delta_word(int N);

// 3-graph on the sphere built from the circular bipartite ladder with 2n rungs
// (4n hexagonal vertices, 2n square faces plus two polar faces downstairs)
NGraph ladder(int n);

// |word| nested circles on the sphere, circle j colored word[j]; n sheets
NGraph concentric(const std::vector<int>& word, int n);

// local N-graph of a single N-triangle, on a disk; (N choose 2) color-1
// trivalent vertices, hexagonal vertices per the lattice collision rule;
// boundary word per side is delta_word(N)
NGraph triangle_graph(int N);

// abstract triangulation: triangles as oriented corner triples; two triangles
// sharing an edge must traverse it in opposite directions
struct Triangulation {
  std::vector<std::array<int, 3>> tris;
};

// glue local models along matching boundary patterns; sphere if closed, disk
// otherwise. For N >= 4 the triangle adjacency graph must be 2-colorable
// (mirrored local models are used on one color class so the boundary
// patterns match pointwise).
NGraph triangulated(int N, const Triangulation& T);

// 3-graph from a bipartite cubic embedded graph (given as a 2-graph whose
// vertices are all trivalent): every vertex becomes a hexagonal vertex and
// every edge a parallel two-colored pair. Errors if not cubic or not bipartite.
NGraph bicubic_to_weave(const NGraph& B);

// circular bipartite ladder with 2n rungs, as an embedded cubic 2-graph
NGraph ladder_bipartite(int n);

// cube 1-skeleton as an embedded cubic 2-graph
NGraph cube_skeleton();

// Caterpillar 3-graph on the disk: a chain of s+t+2 hexagonal vertices whose
// blue rays carry trivalent leaves (two at each end of the chain, one in the
// middle), with a short partner edge hanging off every leaf but one. The
// boundary word is the positive braid whose closure the family is named
// after. `cycles` holds the blue Y-tree through the whole chain first, then
// the partner edges (one sign flipped, carried by the last one); `quiver` is
// their intersection quiver, a star.
struct ThurstonGraph {
  NGraph g;
  std::vector<CycleSpec> cycles;
  Quiver quiver;
};
ThurstonGraph thurston_graph(int s, int t);

// hard-coded graphs: clifford, two-triangle-3graph, homology-counterexample,
// barbell, standard-torus-2graph, thurston-1-1
NGraph named(const std::string& name);

}  // namespace nweave
