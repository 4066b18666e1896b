#pragma once
// Combinatorial model of N-graphs on a sphere, disk, or closed oriented
// surface: colored embedded graphs with trivalent, hexagonal, crossing and
// bend vertices, stored as a rotation system over darts.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nweave {

enum class BaseKind { Sphere, Disk, Genus };

struct Base {
  BaseKind kind = BaseKind::Sphere;
  int genus = 0;  // only for BaseKind::Genus
  bool operator==(const Base&) const = default;
  // Euler characteristic of the closed model surface (disk is handled as a
  // sphere with a hub vertex standing in for the boundary circle).
  int closed_euler() const { return kind == BaseKind::Genus ? 2 - 2 * genus : 2; }
  std::string str() const;
};

enum class VKind { Trivalent, Hex, Cross, Bend, Hub };

struct Vertex {
  VKind kind = VKind::Trivalent;
  // Trivalent/Bend: c1 is the color. Hex: colors (c1, c1+1). Cross: (c1, c2)
  // with |c1-c2| >= 2. Hub: no colors.
  int c1 = 0, c2 = 0;
  std::vector<int> rot;  // incident darts in counterclockwise order
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string rule;     // short rule identifier
  std::string subject;  // offending vertex/edge/face
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// N-graph as a closed combinatorial map. Disks are stored with one extra Hub
// vertex whose rotation is the reversed cyclic order of the boundary legs, so
// the edge pairing alpha is a total fixed-point-free involution on all darts.
struct NGraph {
  int n = 2;  // number of sheets; edge colors range over 1..n-1
  Base base;
  std::map<int, Vertex> verts;            // vertex id -> vertex
  std::unordered_map<int, int> alpha_;    // dart -> opposite dart
  std::unordered_map<int, int> ecolor_;   // dart -> edge color
  std::vector<int> legs;                  // boundary darts in cyclic order (disk)
  int hub = -1;                           // hub vertex id (disk), else -1
  // Nesting of disconnected components: the face orbit through .first (inside a
  // nested component) is the same complement region as the one through .second.
  std::vector<std::pair<int, int>> nests;

  // --- indexing (rebuild after structural edits) ---
  void reindex();
  int vertex_of(int d) const { return at_where(d).first; }
  int slot_of(int d) const { return at_where(d).second; }
  const Vertex& vert(int v) const { return verts.at(v); }
  bool has_dart(int d) const { return where_.count(d) != 0; }
  int alpha(int d) const;
  int color(int d) const;
  int sigma(int d) const;      // next dart counterclockwise around its vertex
  int sigma_inv(int d) const;
  // next dart of the face orbit containing d
  int face_next(int d) const { return sigma(alpha(d)); }
  int num_darts() const { return static_cast<int>(where_.size()); }
  int fresh_vertex_id() const;
  int fresh_dart_id() const;
  std::vector<int> all_darts() const;  // sorted

  bool is_hub_dart(int d) const { return hub >= 0 && vertex_of(d) == hub; }

 private:
  std::unordered_map<int, std::pair<int, int>> where_;  // dart -> (vertex, slot)
  const std::pair<int, int>& at_where(int d) const;
};

// --- NGF text format ---
// header:  ngraph n=<N> base=<sphere|disk|genus:g>
// vertex:  v <id> <trivalent:c|hex:i|cross:i,j|bend:c>
// rotation: rot <id> = <dart>,<dart>,...      (counterclockwise)
// edge:    e <dartA> <dartB> color=<c>
// legs:    legs = <dart>,...                  (cyclic, disk only)
// '#' starts a comment; one statement per line; ASCII.
// Boundary legs carry no edge line; their color is inferred from the vertex:
// the vertex color at trivalent/bend vertices, and at hexagonal/crossing
// vertices from the color alternation (anchored by any incident real edge,
// falling back to "even rotation slot = first color").
NGraph parse_ngf(const std::string& text);
NGraph load_ngf(const std::string& path);
std::string print_ngf(const NGraph& g);  // canonical: sorted ids, no comments

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

// Pair the boundary legs of a disk graph with fresh darts at a new hub vertex
// (no-op unless base is a disk with legs). Leg darts must already have colors
// in ecolor_. Called automatically by parse_ngf; needed when building disks
// programmatically.
void attach_hub(NGraph& g);

// connected components of the dart set under rotation and pairing, sorted
std::vector<std::vector<int>> dart_components(const NGraph& g);

// --- core operations ---
ValidationReport validate(const NGraph& g);
void require_valid(const NGraph& g);  // throws ValidationError

// Orbits of d -> sigma(alpha(d)), one per boundary walk.
std::vector<std::vector<int>> face_orbits(const NGraph& g);

// Faces of the closed model map: face orbits merged along `nests`, so each face
// is one complement region (possibly several boundary walks, concatenated).
// For disks the hub darts appear inside boundary faces.
std::vector<std::vector<int>> faces(const NGraph& g);

// dart -> index into faces(g)
std::unordered_map<int, int> face_of_dart(const NGraph& g);

// Colors of the boundary legs in cyclic order. Requires base = disk.
std::vector<int> boundary_word(const NGraph& g);

// Remove all bend (degree-2) vertices by splicing their two edges together.
NGraph smooth_bends(const NGraph& g);

struct IsoResult {
  bool isomorphic = false;
  std::map<int, int> witness;  // dart of g1 -> dart of g2
};

// Color-, kind-, and rotation-preserving dart bijection; cyclic leg
// correspondence for disks. mirror=true checks against the orientation
// reversal of g2. Bends are smoothed on both sides first.
IsoResult are_isomorphic(const NGraph& g1, const NGraph& g2, bool mirror = false);

// Canonical encoding (after bend smoothing); equal keys <=> isomorphic.
std::string canonical_key(const NGraph& g, bool mirror = false);

}  // namespace nweave
