#include "nweave/weave.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

namespace nweave {

namespace {

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

int tau(int c, int s) { return s == c ? c + 1 : s == c + 1 ? c : s; }

// number the classes of a cover-dart labeling by first appearance
int renumber(std::vector<int>& lbl) {
  std::unordered_map<int, int> seen;
  for (int& x : lbl) {
    auto [it, fresh] = seen.emplace(x, static_cast<int>(seen.size()));
    x = it->second;
  }
  return static_cast<int>(seen.size());
}

}  // namespace

WeaveSurface build_weave_surface(const NGraph& g0) {
  require_valid(g0);
  WeaveSurface w;
  w.g = g0;
  w.n = g0.n;
  w.darts = w.g.all_darts();
  for (size_t i = 0; i < w.darts.size(); ++i) w.dindex[w.darts[i]] = static_cast<int>(i);
  int m = static_cast<int>(w.darts.size()) * w.n;
  w.csigma.resize(m);
  w.csigma_inv.resize(m);
  w.calpha.resize(m);
  for (int d : w.darts) {
    int sd = w.g.sigma(d), ad = w.g.alpha(d);
    for (int s = 1; s <= w.n; ++s) {
      w.csigma[w.cd(d, s)] = w.cd(sd, tau(w.g.color(sd), s));
      w.calpha[w.cd(d, s)] = w.cd(ad, tau(w.g.color(d), s));
    }
  }
  for (int c = 0; c < m; ++c) w.csigma_inv[w.csigma[c]] = c;

  // lifted vertices: orbits of csigma
  w.cvert.assign(m, -1);
  for (int c = 0; c < m; ++c) {
    if (w.cvert[c] >= 0) continue;
    int id = w.nverts++;
    for (int x = c; w.cvert[x] < 0; x = w.csigma[x]) w.cvert[x] = id;
    w.cvert_base.push_back(w.g.vertex_of(w.base_dart(c)));
  }

  // cover faces: orbits of sigma(alpha(.)), merged along nests sheet by sheet
  DSU fd(m);
  for (int c = 0; c < m; ++c) fd.unite(c, w.csigma[w.calpha[c]]);
  w.corbit.resize(m);
  for (int c = 0; c < m; ++c) w.corbit[c] = fd.find(c);
  w.norbits = renumber(w.corbit);
  for (auto& [a, b] : w.g.nests)
    for (int s = 1; s <= w.n; ++s) fd.unite(w.cd(a, s), w.cd(b, s));
  w.cface.resize(m);
  for (int c = 0; c < m; ++c) w.cface[c] = fd.find(c);
  w.nfaces = renumber(w.cface);

  // connected components of the cover
  DSU cc(m);
  for (int c = 0; c < m; ++c) {
    cc.unite(c, w.csigma[c]);
    cc.unite(c, w.calpha[c]);
  }
  for (auto& [a, b] : w.g.nests)
    for (int s = 1; s <= w.n; ++s) cc.unite(w.cd(a, s), w.cd(b, s));
  w.ccomp.resize(m);
  for (int c = 0; c < m; ++c) w.ccomp[c] = cc.find(c);
  w.ncomps = renumber(w.ccomp);
  return w;
}

WeaveInvariants weave_invariants(const WeaveSurface& w) {
  int m = w.num_cover_darts();
  std::vector<int> V(w.ncomps, 0), E(w.ncomps, 0), F(w.ncomps, 0), B(w.ncomps, 0);
  std::vector<int> W(w.ncomps, 0);  // face boundary walks; a face merged from
                                    // k walks is a sphere with k holes
  std::vector<int> vseen(w.nverts, 0), fseen(w.nfaces, 0), oseen(w.norbits, 0);
  for (int c = 0; c < m; ++c) {
    int k = w.ccomp[c];
    if (!vseen[w.cvert[c]]++) {
      ++V[k];
      if (w.is_hub_lift(w.cvert[c])) ++B[k];
    }
    if (!fseen[w.cface[c]]++) ++F[k];
    if (!oseen[w.corbit[c]]++) ++W[k];
    if (c < w.calpha[c]) ++E[k];
  }
  WeaveInvariants inv;
  inv.components = w.ncomps;
  for (int k = 0; k < w.ncomps; ++k) {
    int chi_closed = V[k] - E[k] + 2 * F[k] - W[k];
    int chi = chi_closed - B[k];  // remove a capping disk per boundary circle
    int twog = 2 - chi - B[k];
    if (twog < 0 || twog % 2)
      throw std::logic_error("weave component has non-integral genus");
    inv.genus.push_back(twog / 2);
    inv.boundary.push_back(B[k]);
    inv.euler += chi;
    inv.boundary_circles += B[k];
    inv.b1 += B[k] > 0 ? 1 - chi : 2 - chi;
  }
  return inv;
}

WeaveInvariants weave_invariants(const NGraph& g) {
  return weave_invariants(build_weave_surface(g));
}

// ---------- cycle specifications ----------

namespace {

// split "a,b,c" at top-level commas
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

void parse_item(const NGraph& g, const std::string& raw, std::vector<int>& edges) {
  std::string t;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw std::invalid_argument("empty cycle item");
  auto num = [&](const std::string& s, size_t from, size_t to) {
    int v = 0;
    if (from >= to) throw std::invalid_argument("bad cycle item: " + raw);
    for (size_t i = from; i < to; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("bad cycle item: " + raw);
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  if (t[0] == 'e') {
    int d = num(t, 1, t.size());
    if (!g.has_dart(d)) throw std::invalid_argument("no such dart: " + t);
    edges.push_back(d);
  } else if (t[0] == 'v') {
    int v = num(t, 1, t.size());
    if (!g.verts.count(v)) throw std::invalid_argument("no such vertex: " + t);
    // waypoint only; the straight pass is implied by the surrounding edges
  } else if (t.rfind("Y(v", 0) == 0 && t.back() == ')') {
    int v = num(t, 3, t.size() - 1);
    auto it = g.verts.find(v);
    if (it == g.verts.end()) throw std::invalid_argument("no such vertex: " + t);
    if (it->second.kind != VKind::Hex)
      throw std::invalid_argument("Y-branch requires a hexagonal vertex: " + t);
    for (int d : it->second.rot)
      if (g.color(d) == it->second.c1) edges.push_back(d);
  } else if ((t.rfind("path(", 0) == 0 || t.rfind("tree(", 0) == 0) && t.back() == ')') {
    for (auto& part : split_args(t.substr(5, t.size() - 6))) parse_item(g, part, edges);
  } else {
    throw std::invalid_argument("bad cycle item: " + raw);
  }
}

}  // namespace

CycleSpec parse_cycle_spec(const NGraph& g, const std::string& text) {
  CycleSpec spec;
  parse_item(g, text, spec.edges);
  return spec;
}

LiftedCycle lift_cycle(const WeaveSurface& w, const CycleSpec& spec) {
  const NGraph& g = w.g;
  // normalize the edge set
  std::set<int> keys;
  for (int d : spec.edges) {
    int k = std::min(d, g.alpha(d));
    if (!keys.insert(k).second)
      throw std::invalid_argument("duplicate edge in cycle specification");
  }
  if (keys.empty()) throw std::invalid_argument("empty cycle specification");

  // incidence of the tree at each vertex
  std::map<int, std::vector<int>> inc;  // vertex -> incident tree darts
  for (int k : keys) {
    inc[g.vertex_of(k)].push_back(k);
    inc[g.vertex_of(g.alpha(k))].push_back(g.alpha(k));
  }
  // connected and acyclic
  if (keys.size() != inc.size() - 1)
    throw std::invalid_argument("cycle specification must be a tree");
  {
    std::set<int> seen;
    std::vector<int> stack{inc.begin()->first};
    seen.insert(stack[0]);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int d : inc.at(v)) {
        int u = g.vertex_of(g.alpha(d));
        if (seen.insert(u).second) stack.push_back(u);
      }
    }
    if (seen.size() != inc.size())
      throw std::invalid_argument("cycle specification must be a tree");
  }
  for (auto& [v, ds] : inc) {
    const Vertex& vv = g.vert(v);
    int deg = static_cast<int>(ds.size());
    auto slot_gap = [&](int a, int b) {
      int n = static_cast<int>(vv.rot.size());
      return ((g.slot_of(a) - g.slot_of(b)) % n + n) % n;
    };
    switch (vv.kind) {
      case VKind::Trivalent:
        if (deg != 1)
          throw std::invalid_argument(
              "tree meets a trivalent vertex with degree other than one");
        break;
      case VKind::Bend:
        if (deg != 2) throw std::invalid_argument("tree ends at a bend vertex");
        break;
      case VKind::Cross:
        if (deg != 2 || slot_gap(ds[0], ds[1]) != 2)
          throw std::invalid_argument("tree must pass straight through a crossing vertex");
        break;
      case VKind::Hex:
        if (deg == 2 && slot_gap(ds[0], ds[1]) == 3) break;  // straight pass
        if (deg == 3 && g.color(ds[0]) == g.color(ds[1]) &&
            g.color(ds[1]) == g.color(ds[2]))
          break;  // Y-branch into one color
        throw std::invalid_argument(
            "tree passes through a hexagonal vertex not at opposite rays");
      case VKind::Hub:
        throw std::invalid_argument("tree reaches the boundary");
    }
  }

  // the lift keeps the upper of the two crossing sheets on its left:
  // each tree edge contributes both of its darts at sheet color+1
  std::set<int> steps;
  for (int k : keys) {
    int c = g.color(k);
    steps.insert(w.cd(k, c + 1));
    steps.insert(w.cd(g.alpha(k), c + 1));
  }
  std::map<int, std::vector<int>> out;  // lifted vertex -> departing steps
  for (int s : steps) out[w.cvert[s]].push_back(s);

  LiftedCycle cyc;
  std::set<int> used;
  int s0 = *steps.begin();
  cyc.steps.push_back(s0);
  used.insert(s0);
  while (true) {
    int v = w.cvert[w.calpha[cyc.steps.back()]];
    int next = -1;
    auto it = out.find(v);
    if (it != out.end())
      for (int s : it->second)
        if (!used.count(s)) {
          next = s;
          break;
        }
    if (next < 0) break;
    cyc.steps.push_back(next);
    used.insert(next);
  }
  if (w.cvert[w.calpha[cyc.steps.back()]] != w.cvert[s0])
    throw std::invalid_argument("cycle specification is not closed on the surface");
  if (used.size() != steps.size())
    throw std::invalid_argument("cycle specification does not close into a single curve");
  return cyc;
}

int signed_intersection(const WeaveSurface& w, const LiftedCycle& a,
                        const LiftedCycle& b) {
  // weight +1 where a arrives at a lifted vertex, -1 where it departs
  std::unordered_map<int, int> weight;
  size_t la = a.steps.size();
  for (size_t k = 0; k < la; ++k) {
    weight[w.calpha[a.steps[k]]] += 1;
    weight[a.steps[(k + 1) % la]] -= 1;
  }
  // push b to its left; around each lifted vertex the pushed arc sweeps the
  // darts clockwise from its departure back to its arrival
  long long sum = 0;
  size_t lb = b.steps.size();
  for (size_t k = 0; k < lb; ++k) {
    int p = w.calpha[b.steps[k]];
    int q = b.steps[(k + 1) % lb];
    for (int d = w.csigma[q]; d != p; d = w.csigma[d]) {
      auto it = weight.find(d);
      if (it != weight.end()) sum += it->second;
    }
  }
  return static_cast<int>(sum);
}

std::vector<long long> cycle_chain(const WeaveSurface& w, const LiftedCycle& c) {
  std::vector<long long> chain(w.num_cover_darts(), 0);
  for (int s : c.steps) {
    int a = w.calpha[s];
    if (s < a)
      chain[s] += 1;
    else
      chain[a] -= 1;
  }
  return chain;
}

int chain_h1_rank(const WeaveSurface& w,
                  const std::vector<std::vector<long long>>& chains) {
  if (!w.g.nests.empty())
    throw std::invalid_argument("homology ranks need a complex with disk faces");
  // boundaries of the cover faces, skipping faces that touch a hub lift
  // (those are removed with the boundary-circle caps)
  std::vector<char> skip(w.nfaces, 0);
  if (w.g.hub >= 0)
    for (int c = 0; c < w.num_cover_darts(); ++c)
      if (w.is_hub_lift(w.cvert[c])) skip[w.cface[c]] = 1;
  std::vector<std::vector<long long>> bnd(w.nfaces,
                                          std::vector<long long>());
  for (int f = 0; f < w.nfaces; ++f)
    if (!skip[f]) bnd[f].assign(w.num_cover_darts(), 0);
  for (int c = 0; c < w.num_cover_darts(); ++c) {
    int f = w.cface[c];
    if (skip[f]) continue;
    int a = w.calpha[c];
    if (c < a)
      bnd[f][c] += 1;
    else
      bnd[f][a] -= 1;
  }
  std::vector<std::vector<long long>> basis;
  for (int f = 0; f < w.nfaces; ++f)
    if (!skip[f]) basis.push_back(std::move(bnd[f]));
  int rb = int_rank(basis);
  for (auto& ch : chains) basis.push_back(ch);
  return int_rank(basis) - rb;
}

Quiver intersection_quiver(const NGraph& g, const std::vector<CycleSpec>& specs) {
  WeaveSurface w = build_weave_surface(g);
  std::set<std::set<int>> distinct;
  std::vector<LiftedCycle> lifts;
  for (auto& sp : specs) {
    std::set<int> key;
    for (int d : sp.edges) key.insert(std::min(d, g.alpha(d)));
    if (!distinct.insert(key).second)
      throw std::invalid_argument("cycle specifications must be pairwise distinct");
    lifts.push_back(lift_cycle(w, sp));
  }
  Quiver q;
  q.nverts = static_cast<int>(specs.size());
  q.eps.assign(q.nverts, std::vector<int>(q.nverts, 0));
  for (int i = 0; i < q.nverts; ++i)
    for (int j = 0; j < q.nverts; ++j) {
      if (i == j) continue;
      q.eps[i][j] = signed_intersection(w, lifts[i], lifts[j]);
      if (q.eps[i][j] > 0) q.arrows[{i, j}] = q.eps[i][j];
    }
  return q;
}

// ---------- restricted bicolored complex ----------

namespace {

// compact edges only: the boundary legs of a disk are unbounded in the
// planar picture and carry no generator
std::vector<int> edge_keys(const NGraph& g) {
  std::vector<int> keys;
  for (int d : g.all_darts())
    if (d < g.alpha(d) && !g.is_hub_dart(d) && !g.is_hub_dart(g.alpha(d)))
      keys.push_back(d);
  return keys;
}

// faces of the one-color subgraph: orbits of the submap face traversal.
// returns dart -> face id for darts of that color, and the face count.
struct SubFaces {
  std::unordered_map<int, int> face_of;
  int count = 0;
};

int sub_next(const NGraph& g, int color, int d) {
  int x = g.sigma(g.alpha(d));
  while (g.color(x) != color) x = g.sigma(x);
  return x;
}

SubFaces sub_faces(const NGraph& g, int color) {
  std::vector<int> cds;
  for (int d : g.all_darts())
    if (g.color(d) == color) cds.push_back(d);
  if (cds.empty())
    throw std::invalid_argument("monochromatic subgraph is empty");
  // the subgraph must be connected for its faces to be well defined from the
  // rotation system alone
  {
    std::set<int> seen{cds[0]};
    std::vector<int> stack{cds[0]};
    while (!stack.empty()) {
      int d = stack.back();
      stack.pop_back();
      int v = g.vertex_of(d);
      for (int y : g.vert(v).rot)
        if (g.color(y) == color && seen.insert(y).second) stack.push_back(y);
      int a = g.alpha(d);
      if (seen.insert(a).second) stack.push_back(a);
    }
    if (seen.size() != cds.size())
      throw std::invalid_argument("monochromatic subgraph is disconnected");
  }
  SubFaces sf;
  for (int d : cds) {
    if (sf.face_of.count(d)) continue;
    int id = sf.count++;
    for (int x = d; !sf.face_of.count(x); x = sub_next(g, color, x))
      sf.face_of[x] = id;
  }
  return sf;
}

// the face of the color subgraph whose interior contains the given edge of
// the other color
int containing_face(const NGraph& g, int color, const SubFaces& sf, int edge_dart) {
  std::set<int> seen_darts;
  std::vector<int> stack{edge_dart, g.alpha(edge_dart)};
  while (!stack.empty()) {
    int d = stack.back();  // a dart arriving at vertex_of(d)
    stack.pop_back();
    if (!seen_darts.insert(d).second) continue;
    int v = g.vertex_of(d);
    bool has_color = false;
    for (int y : g.vert(v).rot)
      if (g.color(y) == color) has_color = true;
    if (has_color) {
      // the corner holding d belongs to the face orbit of the first
      // same-color dart counterclockwise from d
      int x = g.sigma(d);
      while (g.color(x) != color) x = g.sigma(x);
      return sf.face_of.at(x);
    }
    for (int y : g.vert(v).rot)
      if (y != d) stack.push_back(g.alpha(y));
  }
  throw std::logic_error("edge is not enclosed by the other color");
}

void check_three_graph(const NGraph& g) {
  if (g.n != 3)
    throw std::invalid_argument("the restricted complex requires a 3-graph");
}

}  // namespace

std::vector<std::vector<long long>> comb_d1(const NGraph& g) {
  check_three_graph(g);
  WeaveSurface w = build_weave_surface(g);
  // rows: lifted hexagonal points; edge lifts have no boundary elsewhere
  std::unordered_map<int, int> row;
  for (int lv = 0; lv < w.nverts; ++lv)
    if (w.g.vert(w.cvert_base[lv]).kind == VKind::Hex)
      row.emplace(lv, static_cast<int>(row.size()));
  auto keys = edge_keys(w.g);
  std::vector<std::vector<long long>> d1(row.size(),
                                         std::vector<long long>(keys.size(), 0));
  for (size_t j = 0; j < keys.size(); ++j) {
    int c = w.g.color(keys[j]);
    for (int d : {keys[j], w.g.alpha(keys[j])}) {
      // lower sheet left of the dart, minus lower sheet right of it
      for (auto [cdart, sgn] : {std::pair{w.cd(d, c), 1},
                                std::pair{w.cd(w.g.sigma_inv(d), c), -1}}) {
        auto it = row.find(w.cvert[cdart]);
        if (it != row.end()) d1[it->second][j] += sgn;
      }
    }
  }
  return d1;
}

std::vector<std::vector<long long>> comb_d2(const NGraph& g) {
  check_three_graph(g);
  auto keys = edge_keys(g);
  std::unordered_map<int, int> eix;
  for (size_t j = 0; j < keys.size(); ++j) {
    eix[keys[j]] = static_cast<int>(j);
    eix[g.alpha(keys[j])] = static_cast<int>(j);
  }
  SubFaces sub[2] = {sub_faces(g, 1), sub_faces(g, 2)};
  std::vector<std::vector<long long>> cols;
  for (int color : {1, 2}) {
    const SubFaces& sf = sub[color - 1];
    // unbounded faces (those reaching the boundary legs) carry no generator
    std::vector<char> unbounded(sf.count, 0);
    for (auto& [d, f] : sf.face_of)
      if (g.is_hub_dart(d)) unbounded[f] = 1;
    std::vector<std::vector<long long>> fc(sf.count,
                                           std::vector<long long>(keys.size(), 0));
    // boundary edges, once per traversal
    for (auto& [d, f] : sf.face_of)
      if (!unbounded[f]) fc[f][eix.at(d)] += 1;
    // interior edges of the opposite color
    for (int k : keys)
      if (g.color(k) != color) {
        int f = containing_face(g, color, sf, k);
        if (!unbounded[f]) fc[f][eix.at(k)] -= 1;
      }
    for (auto& col : fc) cols.push_back(std::move(col));
  }
  // transpose: rows = edges, columns = faces
  std::vector<std::vector<long long>> d2(keys.size(),
                                         std::vector<long long>(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < keys.size(); ++i) d2[i][j] = cols[j][i];
  return d2;
}

CombHomology comb_homology_h1(const NGraph& g) {
  check_three_graph(g);
  if (dart_components(g).size() != 1)
    throw std::invalid_argument("the restricted complex requires a connected graph");
  bool has_hex = false;
  for (auto& [vid, v] : g.verts) has_hex = has_hex || v.kind == VKind::Hex;
  if (!has_hex)
    throw std::invalid_argument("the restricted complex requires a hexagonal vertex");
  auto d1 = comb_d1(g);
  auto d2 = comb_d2(g);
  int edges = d1.empty() ? static_cast<int>(d2.size())
                         : static_cast<int>(d1[0].size());
  CombHomology h;
  h.h1_complex = (edges - int_rank(d1)) - int_rank(d2);
  h.h1_weave = weave_invariants(g).b1;
  return h;
}

// fraction-free Gaussian elimination; intermediate entries are minors of the
// input so they stay integral
int int_rank(std::vector<std::vector<long long>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
  const __int128 limit = static_cast<__int128>(1) << 120;
  __int128 prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
        if (a[i][j] > limit || a[i][j] < -limit)
          throw std::logic_error("integer rank overflow");
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace nweave
