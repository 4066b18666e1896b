#include "nweave/constructions.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

namespace nweave {

std::vector<int> delta_word(int N) {
  std::vector<int> w;
  for (int j = 1; j <= N - 1; ++j)
    for (int c = j; c >= 1; --c) w.push_back(c);
  return w;
}

// ---------- ladder bipartite graph and cube skeleton ----------

NGraph ladder_bipartite(int n) {
  if (n < 1) throw std::invalid_argument("ladder needs n >= 1");
  NGraph g;
  g.n = 2;
  g.base = {BaseKind::Sphere, 0};
  int m = 2 * n;  // vertices per rail
  // outer rail u_i: darts 6i+1 (to u_{i+1}), 6i+2 (rung), 6i+3 (to u_{i-1})
  // inner rail w_i: darts 6i+4 (rung), 6i+5 (to w_{i+1}), 6i+6 (to w_{i-1})
  for (int i = 0; i < m; ++i) {
    int s = 6 * i;
    g.verts[i + 1] = Vertex{VKind::Trivalent, 1, 0, {s + 1, s + 2, s + 3}};
    g.verts[m + i + 1] = Vertex{VKind::Trivalent, 1, 0, {s + 4, s + 5, s + 6}};
  }
  auto pair = [&](int a, int b) {
    g.alpha_[a] = b;
    g.alpha_[b] = a;
    g.ecolor_[a] = g.ecolor_[b] = 1;
  };
  for (int i = 0; i < m; ++i) {
    int j = (i + 1) % m;
    pair(6 * i + 1, 6 * j + 3);
    pair(6 * i + 5, 6 * j + 6);
    pair(6 * i + 2, 6 * i + 4);
  }
  g.reindex();
  return g;
}

NGraph cube_skeleton() {
  NGraph g;
  g.n = 2;
  g.base = {BaseKind::Sphere, 0};
  // outer square a_0..a_3 (CCW), inner square b_0..b_3, spokes a_i - b_i
  // a_i: darts 6i+1 (to a_{i+1}), 6i+2 (spoke), 6i+3 (to a_{i-1})
  // b_i: darts 6i+4 (spoke), 6i+5 (to b_{i+1}), 6i+6 (to b_{i-1})
  for (int i = 0; i < 4; ++i) {
    int s = 6 * i;
    g.verts[i + 1] = Vertex{VKind::Trivalent, 1, 0, {s + 1, s + 2, s + 3}};
    g.verts[i + 5] = Vertex{VKind::Trivalent, 1, 0, {s + 4, s + 5, s + 6}};
  }
  auto pair = [&](int a, int b) {
    g.alpha_[a] = b;
    g.alpha_[b] = a;
    g.ecolor_[a] = g.ecolor_[b] = 1;
  };
  for (int i = 0; i < 4; ++i) {
    int j = (i + 1) % 4;
    pair(6 * i + 1, 6 * j + 3);
    pair(6 * i + 5, 6 * j + 6);
    pair(6 * i + 2, 6 * i + 4);
  }
  g.reindex();
  return g;
}

// ---------- bicubic doubling ----------

NGraph bicubic_to_weave(const NGraph& B) {
  for (auto& [vid, v] : B.verts) {
    if (v.kind != VKind::Trivalent || v.rot.size() != 3)
      throw std::invalid_argument("input graph is not cubic");
  }
  // 2-color the vertices; fail on odd cycles
  std::map<int, int> side;
  for (auto& [vid, v] : B.verts) {
    if (side.count(vid)) continue;
    std::queue<int> q;
    side[vid] = 0;
    q.push(vid);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int d : B.verts.at(u).rot) {
        int w = B.vertex_of(B.alpha(d));
        if (!side.count(w)) {
          side[w] = 1 - side[u];
          q.push(w);
        } else if (side[w] == side[u]) {
          throw std::invalid_argument("input graph is not bipartite");
        }
      }
    }
  }
  NGraph g;
  g.n = 3;
  g.base = B.base;
  // new dart ids: dart d of B -> pair (2k+1, 2k+2) by sorted rank k
  auto darts = B.all_darts();
  std::map<int, int> rank;
  for (int i = 0; i < (int)darts.size(); ++i) rank[darts[i]] = i;
  auto blue = [&](int d) { return 2 * rank.at(d) + 1; };
  auto red = [&](int d) { return 2 * rank.at(d) + 2; };
  for (auto& [vid, v] : B.verts) {
    Vertex h;
    h.kind = VKind::Hex;
    h.c1 = 1;
    h.c2 = 2;
    for (int d : v.rot) {
      if (side[vid] == 0) {
        h.rot.push_back(blue(d));
        h.rot.push_back(red(d));
      } else {
        h.rot.push_back(red(d));
        h.rot.push_back(blue(d));
      }
    }
    g.verts[vid] = std::move(h);
  }
  for (int d : darts) {
    int e = B.alpha(d);
    g.alpha_[blue(d)] = blue(e);
    g.alpha_[red(d)] = red(e);
    g.ecolor_[blue(d)] = 1;
    g.ecolor_[red(d)] = 2;
  }
  g.reindex();
  return g;
}

NGraph ladder(int n) { return bicubic_to_weave(ladder_bipartite(n)); }

// ---------- concentric circles ----------

NGraph concentric(const std::vector<int>& word, int n) {
  NGraph g;
  g.n = n;
  g.base = {BaseKind::Sphere, 0};
  for (int j = 0; j < (int)word.size(); ++j) {
    if (word[j] < 1 || word[j] > n - 1)
      throw std::invalid_argument("concentric word color out of range");
    g.verts[j + 1] = Vertex{VKind::Bend, word[j], 0, {2 * j + 1, 2 * j + 2}};
    g.alpha_[2 * j + 1] = 2 * j + 2;
    g.alpha_[2 * j + 2] = 2 * j + 1;
    g.ecolor_[2 * j + 1] = g.ecolor_[2 * j + 2] = word[j];
    if (j > 0) g.nests.push_back({2 * j + 1, 2 * j});  // circle j inside circle j-1
  }
  g.reindex();
  return g;
}

// ---------- triangle local model ----------

namespace {

struct LocalModel {
  NGraph g;                                // disk graph, hub not attached
  std::array<std::vector<int>, 3> sides;   // leg darts per side, boundary order
};

// The local model is built by a top-down sweep that grows the graph one
// horizontal row at a time. The sweep state is the ordered list of strands
// crossing the current frontier line; a row starts by splitting the unique
// deepest-color strand at a hexagonal vertex whose two highest-color edges
// run horizontally out to the sides, crossing every strand in the way
// (always at color distance >= 2), and ends with a row of trivalent color-1
// vertices. Each row appends one descending run c, c-1, ..., 1 to both side
// boundaries and rewrites the frontier word accordingly.
constexpr int kVert = 0, kDiagL = 1, kDiagR = 2;

struct Strand {
  int dart;   // dangling dart at the frontier
  int color;
  int role;   // vertical, or diagonal heading down-left / down-right
};

struct Sweep {
  NGraph g;
  std::vector<Strand> F;
  std::vector<int> left_legs, right_legs;
  int next_dart = 1, next_vid = 1;

  int mk(int color) {
    int d = next_dart++;
    g.ecolor_[d] = color;
    return d;
  }
  void put(VKind k, int c1, int c2, std::vector<int> rot) {
    g.verts[next_vid++] = Vertex{k, c1, c2, std::move(rot)};
  }
  void tie(int a, int b) {
    g.alpha_[a] = b;
    g.alpha_[b] = a;
  }
  static void need(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("triangle sweep: ") + what);
  }

  // transverse crossing of the strands at positions i, i+1
  void cross(int i) {
    Strand a = F[i], b = F[i + 1];
    need(std::abs(a.color - b.color) >= 2, "adjacent colors forced to cross");
    int ne = mk(b.color), nw = mk(a.color), sw = mk(b.color), se = mk(a.color);
    put(VKind::Cross, std::min(a.color, b.color), std::max(a.color, b.color),
        {ne, nw, sw, se});
    tie(a.dart, nw);
    tie(b.dart, ne);
    F[i] = {sw, b.color, b.role};
    F[i + 1] = {se, a.color, a.role};
  }
  void move_to(int i, int j) {
    while (i > j) cross(--i);
    while (i < j) cross(i++);
  }
  // a horizontal strand at position i leaves through the side boundary
  void exit_left(int i) {
    while (i > 0) cross(--i);
    left_legs.push_back(F[0].dart);
    F.erase(F.begin());
  }
  void exit_right(int i) {
    while (i + 1 < (int)F.size()) cross(i++);
    right_legs.push_back(F.back().dart);
    F.pop_back();
  }

  // hexagonal vertex splitting the lone color-c strand; two color-(c+1)
  // edges run out horizontally to both sides
  void hex_start(int i) {
    int c = F[i].color, d = c + 1;
    int dn = mk(c), dw = mk(d), dsw = mk(c), ds = mk(d), dse = mk(c), de = mk(d);
    put(VKind::Hex, c, d, {de, dn, dw, dsw, ds, dse});
    tie(F[i].dart, dn);
    F[i] = {dsw, c, kDiagL};
    F.insert(F.begin() + i + 1, {Strand{ds, d, kVert}, Strand{dse, c, kDiagR}});
    F.insert(F.begin() + i, Strand{dw, d, kVert});
    exit_left(i);
    F.insert(F.begin() + i + 3, Strand{de, d, kVert});
    exit_right(i + 3);
  }
  // a down-left diagonal of color c+1 meets the vertical color-c strand at t
  void hex_ext_left(int t) {
    int c = F[t].color, d = c + 1;
    int dne = mk(d), dn = mk(c), dw = mk(d), dsw = mk(c), ds = mk(d), dse = mk(c);
    put(VKind::Hex, c, d, {dne, dn, dw, dsw, ds, dse});
    tie(F[t].dart, dn);
    tie(F[t + 1].dart, dne);
    F[t] = {dsw, c, kDiagL};
    F[t + 1] = {ds, d, kVert};
    F.insert(F.begin() + t + 2, Strand{dse, c, kDiagR});
    F.insert(F.begin() + t, Strand{dw, d, kVert});
    exit_left(t);
  }
  void hex_ext_right(int t) {
    int c = F[t].color, d = c + 1;
    int de = mk(d), dn = mk(c), dnw = mk(d), dsw = mk(c), ds = mk(d), dse = mk(c);
    put(VKind::Hex, c, d, {de, dn, dnw, dsw, ds, dse});
    tie(F[t].dart, dn);
    tie(F[t - 1].dart, dnw);
    F[t - 1] = {dsw, c, kDiagL};
    F[t] = {ds, d, kVert};
    F.insert(F.begin() + t + 1, Strand{dse, c, kDiagR});
    F.insert(F.begin() + t + 2, Strand{de, d, kVert});
    exit_right(t + 2);
  }
  // two converging diagonals of color c+1 meet the vertical color-c strand
  void hex_int(int t) {
    int c = F[t].color, d = c + 1;
    int dne = mk(d), dn = mk(c), dnw = mk(d), dsw = mk(c), ds = mk(d), dse = mk(c);
    put(VKind::Hex, c, d, {dne, dn, dnw, dsw, ds, dse});
    tie(F[t - 1].dart, dnw);
    tie(F[t].dart, dn);
    tie(F[t + 1].dart, dne);
    F[t - 1] = {dsw, c, kDiagL};
    F[t] = {ds, d, kVert};
    F[t + 1] = {dse, c, kDiagR};
  }
  void tri_ext_left() {
    int dne = mk(1), dw = mk(1), ds = mk(1);
    put(VKind::Trivalent, 1, 0, {dne, dw, ds});
    tie(F[0].dart, dne);
    left_legs.push_back(dw);
    F[0] = {ds, 1, kVert};
  }
  void tri_ext_right() {
    int de = mk(1), dnw = mk(1), ds = mk(1);
    put(VKind::Trivalent, 1, 0, {de, dnw, ds});
    tie(F.back().dart, dnw);
    right_legs.push_back(de);
    F.back() = {ds, 1, kVert};
  }
  void tri_int(int t) {
    int dne = mk(1), dnw = mk(1), ds = mk(1);
    put(VKind::Trivalent, 1, 0, {dne, dnw, ds});
    tie(F[t].dart, dnw);
    tie(F[t + 1].dart, dne);
    F[t] = {ds, 1, kVert};
    F.erase(F.begin() + t + 1);
  }

  std::vector<int> diags(int color) {
    std::vector<int> out;
    for (int i = 0; i < (int)F.size(); ++i)
      if (F[i].role != kVert && F[i].color == color) out.push_back(i);
    return out;
  }

  // grow the model of size N by one row into the model of size N+1
  void row(int N) {
    int i = (N - 1) * (N - 2) / 2;
    need(F[i].color == N - 1 && F[i].role == kVert, "row start off target");
    hex_start(i);
    for (int l = 2; l <= N - 1; ++l) {
      int c = N - l, d = c + 1;
      {
        auto D = diags(d);
        need((int)D.size() == 2 * l - 2, "wrong diagonal count");
        need(F[D.front()].role == kDiagL && F[D.back()].role == kDiagR,
             "diagonal pattern broken");
        int p = D.front();
        int t = p - 1;
        while (t >= 0 && F[t].color != c) --t;
        need(t >= 0 && F[t].role == kVert, "no vertical for the left hexagon");
        move_to(p, t + 1);
        hex_ext_left(t);
      }
      for (int k = 0; k < l - 2; ++k) {
        auto D = diags(d);
        int p1 = D[0], p2 = D[1];
        need(F[p1].role == kDiagR && F[p2].role == kDiagL,
             "diagonals fail to converge in pairs");
        int t = -1, cnt = 0;
        for (int j = p1 + 1; j < p2; ++j)
          if (F[j].color == c) t = j, ++cnt;
        need(cnt == 1 && F[t].role == kVert, "collision target not unique");
        move_to(p1, t - 1);
        move_to(p2, t + 1);
        hex_int(t);
      }
      {
        auto D = diags(d);
        need(D.size() == 1 && F[D[0]].role == kDiagR, "stray diagonal");
        int p = D[0];
        int t = p + 1;
        while (t < (int)F.size() && F[t].color != c) ++t;
        need(t < (int)F.size() && F[t].role == kVert,
             "no vertical for the right hexagon");
        move_to(p, t - 1);
        hex_ext_right(t);
      }
    }
    need(F[0].role == kDiagL && F[0].color == 1, "trivalent row misaligned");
    tri_ext_left();
    for (int k = 0; k < N - 2; ++k) {
      auto D = diags(1);
      int p1 = D[0], p2 = D[1];
      need(F[p1].role == kDiagR && F[p2].role == kDiagL,
           "color-1 diagonals fail to converge");
      move_to(p2, p1 + 1);
      tri_int(p1);
    }
    {
      auto D = diags(1);
      need(D.size() == 1 && D[0] == (int)F.size() - 1 &&
               F[D[0]].role == kDiagR,
           "trivalent row misaligned at the right");
      tri_ext_right();
    }
    auto w = delta_word(N + 1);
    need(F.size() == w.size(), "frontier has the wrong length");
    for (size_t j = 0; j < w.size(); ++j)
      need(F[j].color == w[j] && F[j].role == kVert, "frontier word is off");
  }
};

LocalModel triangle_local(int N) {
  Sweep s;
  s.g.n = N;
  s.g.base = {BaseKind::Disk, 0};
  int de = s.mk(1), dw = s.mk(1), ds = s.mk(1);
  s.put(VKind::Trivalent, 1, 0, {de, dw, ds});
  s.F = {Strand{ds, 1, kVert}};
  s.left_legs = {dw};
  s.right_legs = {de};
  for (int k = 2; k <= N - 1; ++k) s.row(k);
  LocalModel lm;
  lm.g = std::move(s.g);
  lm.sides[0] = s.left_legs;
  for (auto& st : s.F) lm.sides[1].push_back(st.dart);
  lm.sides[2] = std::vector<int>(s.right_legs.rbegin(), s.right_legs.rend());
  for (int sd = 0; sd < 3; ++sd)
    for (int d : lm.sides[sd]) lm.g.legs.push_back(d);
  lm.g.reindex();
  return lm;
}

LocalModel mirror_local(const LocalModel& in) {
  LocalModel lm = in;
  for (auto& [vid, v] : lm.g.verts) std::reverse(v.rot.begin(), v.rot.end());
  std::reverse(lm.g.legs.begin(), lm.g.legs.end());
  std::array<std::vector<int>, 3> ns;
  for (int s = 0; s < 3; ++s) {
    ns[s] = lm.sides[2 - s];
    std::reverse(ns[s].begin(), ns[s].end());
  }
  lm.sides = ns;
  lm.g.reindex();
  return lm;
}

}  // namespace

NGraph triangle_graph(int N) {
  if (N < 2) throw std::invalid_argument("triangle_graph needs N >= 2");
  NGraph g = triangle_local(N).g;
  attach_hub(g);
  return g;
}

NGraph triangulated(int N, const Triangulation& T) {
  if (N < 2) throw std::invalid_argument("triangulated needs N >= 2");
  if (T.tris.empty()) throw std::invalid_argument("empty triangulation");
  int nt = (int)T.tris.size();
  // directed side (a,b) -> (triangle, side index)
  std::map<std::pair<int, int>, std::pair<int, int>> dir_side;
  for (int t = 0; t < nt; ++t)
    for (int s = 0; s < 3; ++s) {
      auto key = std::make_pair(T.tris[t][s], T.tris[t][(s + 1) % 3]);
      if (dir_side.count(key))
        throw std::invalid_argument("directed edge used twice; orient triangles consistently");
      dir_side[key] = {t, s};
    }
  auto partner = [&](int t, int s) -> std::pair<int, int> {
    auto key = std::make_pair(T.tris[t][(s + 1) % 3], T.tris[t][s]);
    auto it = dir_side.find(key);
    return it == dir_side.end() ? std::make_pair(-1, -1) : it->second;
  };
  LocalModel base = triangle_local(N);
  LocalModel mirrored = mirror_local(base);
  // The side boundary patterns are not symmetric under reversal once N >= 4,
  // so each triangle gets a configuration: a reflection choice and a cyclic
  // rotation deciding which model side faces which triangle side. A glued
  // pair of sides must carry mutually reversed color patterns; find a
  // consistent assignment by backtracking.
  auto side_word = [&](int m, int r, int s) {
    const LocalModel& lm = m ? mirrored : base;
    std::vector<int> w;
    for (int d : lm.sides[(s + r) % 3]) w.push_back(lm.g.ecolor_.at(d));
    return w;
  };
  std::array<std::array<std::vector<int>, 3>, 6> cfg_words;
  for (int cfg = 0; cfg < 6; ++cfg)
    for (int s = 0; s < 3; ++s) cfg_words[cfg][s] = side_word(cfg / 3, cfg % 3, s);
  std::vector<int> cfg(nt, -1);
  auto compatible = [&](int t, int c) {
    for (int s = 0; s < 3; ++s) {
      auto [t2, s2] = partner(t, s);
      if (t2 < 0 || cfg[t2] < 0) continue;
      auto w = cfg_words[c][s];
      auto w2 = cfg_words[cfg[t2]][s2];
      std::reverse(w2.begin(), w2.end());
      if (w != w2) return false;
    }
    return true;
  };
  std::function<bool(int)> assign = [&](int t) {
    if (t == nt) return true;
    for (int c = 0; c < 6; ++c) {
      if (!compatible(t, c)) continue;
      cfg[t] = c;
      if (assign(t + 1)) return true;
      cfg[t] = -1;
    }
    return false;
  };
  if (!assign(0))
    throw std::invalid_argument(
        "no orientation assignment makes the boundary patterns match");
  int voff = base.g.fresh_vertex_id();
  int doff = base.g.fresh_dart_id();
  NGraph g;
  g.n = N;
  std::vector<std::array<std::vector<int>, 3>> sides(nt);
  for (int t = 0; t < nt; ++t) {
    const LocalModel& lm = (cfg[t] / 3) ? mirrored : base;
    for (auto& [vid, v] : lm.g.verts) {
      Vertex nv = v;
      for (int& d : nv.rot) d += t * doff;
      g.verts[vid + t * voff] = std::move(nv);
    }
    for (auto& [a, b] : lm.g.alpha_) g.alpha_[a + t * doff] = b + t * doff;
    for (auto& [d, c] : lm.g.ecolor_) g.ecolor_[d + t * doff] = c;
    for (int s = 0; s < 3; ++s) {
      sides[t][s] = lm.sides[(s + cfg[t] % 3) % 3];
      for (int& d : sides[t][s]) d += t * doff;
    }
  }
  g.reindex();
  // glue shared sides: opposite traversal directions, so pair i with M-1-i
  std::set<std::pair<int, int>> glued;
  for (int t = 0; t < nt; ++t)
    for (int s = 0; s < 3; ++s) {
      auto [t2, s2] = partner(t, s);
      if (t2 < 0 || glued.count({t, s})) continue;
      glued.insert({t, s});
      glued.insert({t2, s2});
      auto& la = sides[t][s];
      auto& lb = sides[t2][s2];
      int M = (int)la.size();
      for (int i = 0; i < M; ++i) {
        int a = la[i], b = lb[M - 1 - i];
        if (g.ecolor_.at(a) != g.ecolor_.at(b))
          throw std::logic_error("boundary patterns do not match during gluing");
        g.alpha_[a] = b;
        g.alpha_[b] = a;
      }
    }
  // leftover boundary: walk unglued sides around the patch
  std::vector<std::pair<int, int>> boundary_sides;
  for (int t = 0; t < nt; ++t)
    for (int s = 0; s < 3; ++s)
      if (!glued.count({t, s})) boundary_sides.push_back({t, s});
  if (boundary_sides.empty()) {
    g.base = {BaseKind::Sphere, 0};
  } else {
    g.base = {BaseKind::Disk, 0};
    auto next_side = [&](std::pair<int, int> ts) {
      auto cand = std::make_pair(ts.first, (ts.second + 1) % 3);
      while (glued.count(cand)) {
        auto [t2, s2] = partner(cand.first, cand.second);
        cand = {t2, (s2 + 1) % 3};
      }
      return cand;
    };
    std::set<std::pair<int, int>> seen;
    auto cur = boundary_sides[0];
    while (!seen.count(cur)) {
      seen.insert(cur);
      for (int d : sides[cur.first][cur.second]) g.legs.push_back(d);
      cur = next_side(cur);
    }
    if (seen.size() != boundary_sides.size())
      throw std::invalid_argument("triangulation boundary is not a single circle");
    attach_hub(g);
  }
  g.reindex();
  return g;
}

// ---------- caterpillar family ----------

ThurstonGraph thurston_graph(int s, int t) {
  if (s < 1 || t < 1) throw std::invalid_argument("thurston_graph needs s,t >= 1");
  const int n = s + t + 2;  // chain length
  const int L = n + 2;      // leaves: two per end hex, one per middle hex
  NGraph g;
  g.n = 3;
  g.base = {BaseKind::Disk, 0};
  int nd = 1;
  // hex k (1..n): rotation [b0, r0, b1, r1, b2, r2]; blue rays at even slots
  // carry the tree edges, red rays are boundary legs
  std::vector<std::array<int, 6>> hd(n + 1);
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j < 6; ++j) hd[k][j] = nd++;
  // leaf i hangs from hex leafhex[i]; every leaf but `freepos` has a partner
  std::vector<int> leafhex = {1, 1};
  for (int k = 2; k <= n - 1; ++k) leafhex.push_back(k);
  leafhex.push_back(n);
  leafhex.push_back(n);
  const int freepos = t + 1;      // leaf index == hex index for middle leaves
  const int special = L - 1;      // partner edge with the flipped sign
  std::vector<std::array<int, 3>> td(L), sd(L);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < 3; ++j) td[i][j] = nd++;
    if (i != freepos)
      for (int j = 0; j < 3; ++j) sd[i][j] = nd++;
  }
  auto link = [&](int a, int b) {
    g.alpha_[a] = b;
    g.alpha_[b] = a;
  };
  for (int k = 1; k <= n; ++k) {
    g.verts[k] = Vertex{VKind::Hex, 1, 2,
                        {hd[k][0], hd[k][1], hd[k][2], hd[k][3], hd[k][4], hd[k][5]}};
    for (int j = 0; j < 6; ++j) g.ecolor_[hd[k][j]] = (j % 2 == 0) ? 1 : 2;
  }
  // blue-ray roles per hex; middle hexes put the leaf after the chain pair
  // except at the free hex, where it sits between them (this is what makes the
  // boundary word come out as the braid)
  std::map<std::pair<int, char>, int> port;  // (hex, role) -> dart
  for (int k = 1; k <= n; ++k) {
    int b0 = hd[k][0], b1 = hd[k][2], b2 = hd[k][4];
    if (k == 1) {
      port[{k, 'r'}] = b0;  // chain, toward hex 2
      port[{k, 'a'}] = b1;
      port[{k, 'b'}] = b2;
    } else if (k == n) {
      port[{k, 'l'}] = b0;  // chain, toward hex n-1
      port[{k, 'a'}] = b1;
      port[{k, 'b'}] = b2;
    } else if (k == freepos) {
      port[{k, 'l'}] = b0;
      port[{k, 'f'}] = b1;
      port[{k, 'r'}] = b2;
    } else {
      port[{k, 'l'}] = b0;
      port[{k, 'r'}] = b1;
      port[{k, 'f'}] = b2;
    }
  }
  std::vector<int> chain;  // one dart per chain edge
  for (int k = 1; k < n; ++k) {
    int a = port[{k, 'r'}], b = port[{k + 1, 'l'}];
    link(a, b);
    chain.push_back(a);
  }
  std::vector<int> leafport(L);
  leafport[0] = port[{1, 'a'}];
  leafport[1] = port[{1, 'b'}];
  for (int k = 2; k <= n - 1; ++k) leafport[k] = port[{k, 'f'}];
  leafport[L - 2] = port[{n, 'a'}];
  leafport[L - 1] = port[{n, 'b'}];
  std::vector<int> partner(L, -1);  // partner-edge dart per leaf
  for (int i = 0; i < L; ++i) {
    link(td[i][0], leafport[i]);
    for (int j = 0; j < 3; ++j) g.ecolor_[td[i][j]] = 1;
    g.verts[100 + i] = Vertex{VKind::Trivalent, 1, 0, {td[i][0], td[i][1], td[i][2]}};
    if (i == freepos) continue;
    // the partner edge leaves slot 1 of the leaf, except on the special leaf
    // where it leaves slot 2, flipping its intersection sign with the Y-tree
    int toS = (i == special) ? td[i][2] : td[i][1];
    g.verts[200 + i] = Vertex{VKind::Trivalent, 1, 0, {sd[i][0], sd[i][1], sd[i][2]}};
    for (int j = 0; j < 3; ++j) g.ecolor_[sd[i][j]] = 1;
    link(toS, sd[i][0]);
    partner[i] = toS;
  }
  g.reindex();
  // boundary legs in face order around the tree
  int start = hd[1][1], d = start;
  do {
    if (!g.alpha_.count(d)) {
      g.legs.push_back(d);
      d = g.sigma(d);
    } else {
      d = g.sigma(g.alpha_[d]);
    }
  } while (d != start);
  attach_hub(g);
  g.reindex();
  require_valid(g);

  ThurstonGraph out;
  CycleSpec ytree;
  for (int c : chain) ytree.edges.push_back(c);
  for (int i = 0; i < L; ++i) ytree.edges.push_back(td[i][0]);
  out.cycles.push_back(ytree);
  for (int i = 0; i < L; ++i)
    if (partner[i] >= 0) out.cycles.push_back(CycleSpec{{partner[i]}});
  out.quiver = intersection_quiver(g, out.cycles);
  out.g = std::move(g);
  return out;
}

// ---------- named graphs ----------

#ifndef NWEAVE_DATA_DIR
#define NWEAVE_DATA_DIR "data"
#endif

NGraph named(const std::string& name) {
  if (name == "two-triangle-3graph")
    return triangulated(3, Triangulation{{{{1, 2, 3}}, {{2, 1, 4}}}});
  for (const char* known : {"clifford", "homology-counterexample", "barbell",
                            "standard-torus-2graph"}) {
    if (name == known)
      return load_ngf(std::string(NWEAVE_DATA_DIR) + "/" + name + ".ngf");
  }
  throw std::invalid_argument("unknown named graph '" + name + "'");
}

}  // namespace nweave
