#pragma once
// Internal rewrite core shared by the move and mutation engines: a rule side
// as an abstract patch, and the splice that installs one in a graph.

#include <map>
#include <utility>
#include <vector>

#include "nweave/ngraph.hpp"

namespace nweave::detail {

// A rule side as an abstract patch: private dart ids, internal pairings, and
// an ordered interface. Replacement legs that pair each other inside `alpha`
// are arcs (plain strands with no vertex).
struct Frag {
  struct FV {
    VKind kind;
    int c1 = 0, c2 = 0;
    std::vector<int> rot;
  };
  std::vector<FV> verts;
  std::map<int, int> alpha;  // symmetric
  std::map<int, int> color;  // every dart
  std::vector<int> legs;
};

void fedge(Frag& f, int a, int b);

// the two sides of the trivalent-through-hexagonal push: a trivalent vertex of
// color x next to an (x, xp) hexagonal vertex, and the pushed-through picture
// with two hexagonal vertices sharing a doubled edge pair plus a trivalent
// vertex of color xp
Frag ii_lhs_frag(int x, int xp);
Frag ii_rhs_frag(int x, int xp);

// the two sides of the candy twist: a bigon between two hexagonal vertices
// against four parallel strands
Frag candy_frag(int x, int xp);
Frag strands4_frag(int x, int xp);

// k-th rotation successor
int sp(const NGraph& g, int d, int k);

// the other color at a hexagonal vertex
int hex_mate(const Vertex& v, int x);

// Deletes `kill`, instantiates `repl` with fresh ids (rotations reversed when
// mirrored), and rewires the interface: position k of `bound` (a dart at a
// killed vertex, or for vertex-free patterns any dart whose alpha partner is
// the attachment point) is connected to replacement leg k. Strands are traced
// through leg-to-leg attachments and through replacement arcs, so splices and
// insertions into already-adjacent legs come out right. `dart_out`, when
// given, receives the patch-dart to fresh-dart map.
NGraph rewrite(const NGraph& g, const std::vector<int>& kill,
               const std::vector<int>& bound, const Frag& repl, bool mirrored,
               std::vector<int>* leg_out = nullptr,
               const std::pair<int, int>* split_hint = nullptr,
               std::map<int, int>* dart_out = nullptr);

}  // namespace nweave::detail
