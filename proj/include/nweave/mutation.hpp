#pragma once
// Mutation of a weave along a 1-cycle: the graph rewrite, transport of other
// registered cycles through it, abstract quiver mutation, and the iterated
// mutation drive on the caterpillar family.

#include <vector>

#include "nweave/ngraph.hpp"
#include "nweave/weave.hpp"

namespace nweave {

struct MutateResult {
  NGraph g;
  CycleSpec cycle;                     // the mutated cycle, transported
  std::vector<CycleSpec> registered;   // transports of the inputs, same order
};

// Mutate g along `cycle`, which must be a short monochromatic edge between two
// trivalent vertices, a long edge, or an embedded Y-tree. Long and branched
// cycles are first contracted by pushing their trivalent leaves through the
// neighboring hexagonal vertices, the resulting short edge is flipped, and the
// pushes whose sites survived are undone again in reverse order. Registered
// cycles are carried through every intermediate rewrite; one that meets the
// modified region in a configuration outside the transport tables raises
// std::invalid_argument("transport undefined: ...").
MutateResult mutate(const NGraph& g, const CycleSpec& cycle,
                    const std::vector<CycleSpec>& registered = {});

// standard quiver mutation at vertex k: reverse arrows at k, compose paths
// through k, cancel opposite pairs
Quiver quiver_mutate(const Quiver& q, int k);

// Iterated mutation on thurston_graph(s, t): each round mutates at the Y-tree
// cycle and then at every partner edge except the sign-flipped one, carrying
// all cycles along. After every step the drive checks that the Y-tree cycle is
// still an embedded tree, that the partner cycles are again short
// monochromatic edges, and that the intersection quiver of the transported
// cycles equals the abstract quiver mutation result (up to one global arrow
// reversal, fixed at the first step). A failed check throws with the step
// index.
struct DriveStep {
  int step = 0;        // 1-based
  int mutated_at = 0;  // 1-based cycle index
  NGraph g;
  std::vector<CycleSpec> cycles;
  Quiver geometric, algebraic;
  bool reversed = false;  // geometric == algebraic with all arrows reversed
};

std::vector<DriveStep> mutation_drive(int s, int t, int rounds);

}  // namespace nweave
