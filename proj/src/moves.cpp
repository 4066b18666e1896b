#include "nweave/moves.hpp"

#include "patch.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nweave {

using detail::Frag;
using detail::fedge;
using detail::hex_mate;
using detail::ii_lhs_frag;
using detail::ii_rhs_frag;
using detail::candy_frag;
using detail::strands4_frag;
using detail::rewrite;
using detail::sp;

namespace {

// ---------- fragments ----------

// same patch with the two trivalent vertices rotated one step around the
// hexagonal vertex; ccw for the forward reading, cw for the reverse one
Frag iii_rhs_frag(int x, int xp, bool cw) {
  Frag f;
  int m = std::min(x, xp);
  f.verts.push_back({VKind::Hex, m, m + 1, {0, 1, 2, 3, 4, 5}});
  f.verts.push_back({VKind::Trivalent, x, 0, {6, 7, 8}});
  f.verts.push_back({VKind::Trivalent, x, 0, {9, 10, 11}});
  int cols[12] = {x, xp, x, xp, x, xp, x, x, x, x, x, x};
  for (int d = 0; d < 12; ++d) f.color[d] = cols[d];
  if (!cw) {
    fedge(f, 6, 2);
    fedge(f, 9, 4);
    f.legs = {7, 8, 3, 10, 11, 5, 0, 1};
  } else {
    fedge(f, 6, 4);
    fedge(f, 9, 0);
    f.legs = {7, 8, 5, 10, 11, 1, 2, 3};
  }
  return f;
}

Frag v_lhs_frag(int ci, int cj) {
  Frag f;
  f.verts.push_back({VKind::Cross, ci, cj, {0, 1, 2, 3}});
  f.verts.push_back({VKind::Cross, ci, cj, {4, 5, 6, 7}});
  int cols[8] = {ci, cj, ci, cj, ci, cj, ci, cj};
  for (int d = 0; d < 8; ++d) f.color[d] = cols[d];
  fedge(f, 0, 6);
  fedge(f, 1, 5);
  f.legs = {2, 3, 7, 4};
  return f;
}

Frag v_rhs_frag(int ci, int cj) {
  Frag f;
  f.legs = {0, 1, 2, 3};
  fedge(f, 0, 3);
  fedge(f, 1, 2);
  f.color = {{0, ci}, {1, cj}, {2, cj}, {3, ci}};
  return f;
}

Frag vi_lhs_frag(int x, int j) {
  Frag f;
  f.verts.push_back({VKind::Trivalent, x, 0, {0, 1, 2}});
  f.verts.push_back({VKind::Cross, x, j, {3, 4, 5, 6}});
  int cols[7] = {x, x, x, x, j, x, j};
  for (int d = 0; d < 7; ++d) f.color[d] = cols[d];
  fedge(f, 0, 3);
  f.legs = {1, 2, 4, 5, 6};
  return f;
}

Frag vi_rhs_frag(int x, int j) {
  Frag f;
  f.verts.push_back({VKind::Cross, x, j, {0, 1, 2, 3}});
  f.verts.push_back({VKind::Cross, x, j, {4, 5, 6, 7}});
  f.verts.push_back({VKind::Trivalent, x, 0, {8, 9, 10}});
  int cols[11] = {x, j, x, j, x, j, x, j, x, x, x};
  for (int d = 0; d < 11; ++d) f.color[d] = cols[d];
  fedge(f, 3, 5);   // the distant strand between the crossings
  fedge(f, 2, 8);   // crossing A - T'
  fedge(f, 6, 10);  // crossing B - T'
  f.legs = {4, 0, 1, 9, 7};
  return f;
}

Frag s0_frag(int c) {
  Frag f;
  f.verts.push_back({VKind::Trivalent, c, 0, {0, 1, 2}});
  f.verts.push_back({VKind::Trivalent, c, 0, {3, 4, 5}});
  for (int d = 0; d < 6; ++d) f.color[d] = c;
  fedge(f, 2, 4);
  fedge(f, 1, 5);
  f.legs = {0, 3};
  return f;
}

Frag splice2_frag(int c) {
  Frag f;
  f.legs = {0, 1, 2, 3};
  fedge(f, 0, 1);
  fedge(f, 2, 3);
  for (int d = 0; d < 4; ++d) f.color[d] = c;
  return f;
}

Frag triangle_frag(int c) {
  Frag f;
  f.verts.push_back({VKind::Trivalent, c, 0, {0, 1, 2}});
  f.verts.push_back({VKind::Trivalent, c, 0, {3, 4, 5}});
  f.verts.push_back({VKind::Trivalent, c, 0, {6, 7, 8}});
  for (int d = 0; d < 9; ++d) f.color[d] = c;
  fedge(f, 1, 5);
  fedge(f, 4, 8);
  fedge(f, 7, 2);
  f.legs = {0, 3, 6};
  return f;
}

Frag trivalent_frag(int c) {
  Frag f;
  f.verts.push_back({VKind::Trivalent, c, 0, {0, 1, 2}});
  for (int d = 0; d < 3; ++d) f.color[d] = c;
  // the triangle collapse reads its interface clockwise around the triangle,
  // so the middle legs swap to keep the rotation counterclockwise
  f.legs = {0, 2, 1};
  return f;
}

Frag arc_frag(int c) {
  Frag f;
  f.legs = {0, 1};
  fedge(f, 0, 1);
  f.color = {{0, c}, {1, c}};
  return f;
}

Frag kiss_frag(int c) {
  Frag f;
  f.legs = {0, 1, 2, 3, 4, 5};
  fedge(f, 0, 3);
  fedge(f, 1, 4);
  fedge(f, 2, 5);
  for (int d = 0; d < 6; ++d) f.color[d] = c;
  return f;
}

// ---------- matchers ----------

VKind kind_at(const NGraph& g, int d) { return g.vert(g.vertex_of(d)).kind; }

// the matched fragment must be embedded: a leg may leave the patch or attach
// to another leg, never to an interior dart of a matched vertex
bool embedded(const NGraph& g, const std::vector<int>& verts,
              const std::vector<int>& bound) {
  std::set<int> vs(verts.begin(), verts.end());
  std::set<int> bs(bound.begin(), bound.end());
  if (bs.size() != bound.size()) return false;
  for (int b : bound) {
    int t = g.alpha(b);
    if (vs.count(g.vertex_of(t)) && !bs.count(t)) return false;
  }
  return true;
}


// True when applying a vertex-free replacement at `bound` would pinch a free
// loop off the diagram: some strand runs only through replacement arcs and
// leg-to-leg attachments, never reaching an ambient dart.
bool closes_loop(const NGraph& g, const std::vector<int>& bound,
                 const Frag& repl) {
  const int K = static_cast<int>(bound.size());
  std::map<int, int> bp;
  for (int k = 0; k < K; ++k) bp[bound[k]] = k;
  std::vector<int> arc(K, -1), link(K, -1);
  for (int k = 0; k < K; ++k) {
    auto ia = repl.alpha.find(repl.legs[k]);
    if (ia != repl.alpha.end())
      for (int j = 0; j < K; ++j)
        if (repl.legs[j] == ia->second) arc[k] = j;
    auto il = bp.find(g.alpha(bound[k]));
    if (il != bp.end()) link[k] = il->second;
  }
  // arc and link edges each have degree <= 1, so components are paths or
  // cycles; a cycle is exactly a strand with no ambient end
  std::vector<char> vis(K, 0);
  for (int k = 0; k < K; ++k) {
    if (vis[k]) continue;
    std::vector<int> comp = {k};
    vis[k] = 1;
    for (size_t i = 0; i < comp.size(); ++i)
      for (int nb : {arc[comp[i]], link[comp[i]]})
        if (nb >= 0 && !vis[nb]) {
          vis[nb] = 1;
          comp.push_back(nb);
        }
    bool cycle = true;
    for (int c : comp)
      if (arc[c] < 0 || link[c] < 0) cycle = false;
    if (cycle) return true;
  }
  return false;
}

void match_I(const NGraph& g, std::vector<MatchSite>& out) {
  auto darts = g.all_darts();
  // forward: bigon between two hexagonal vertices
  for (int u : darts) {
    if (kind_at(g, u) != VKind::Hex) continue;
    int v = g.face_next(u);
    if (v <= u) continue;
    if (kind_at(g, v) != VKind::Hex) continue;
    if (g.vertex_of(v) == g.vertex_of(u)) continue;
    if (g.alpha(g.sigma_inv(u)) != v) continue;
    MatchSite s;
    s.rule = RuleId::I;
    s.color = g.color(g.sigma(u));
    s.color2 = g.color(u);
    s.verts = {g.vertex_of(u), g.vertex_of(v)};
    s.bound = {sp(g, u, 1), sp(g, u, 2), sp(g, u, 3), sp(g, u, 4),
               sp(g, v, 1), sp(g, v, 2), sp(g, v, 3), sp(g, v, 4)};
    if (!embedded(g, s.verts, s.bound)) continue;
    if (closes_loop(g, s.bound, strands4_frag(s.color, s.color2))) continue;
    out.push_back(s);
  }
  // reverse: four parallel strands with alternating adjacent colors
  if (g.num_darts() == 0) return;
  auto fid = face_of_dart(g);
  std::map<int, std::vector<int>> above;  // face -> darts b with face(alpha b)
  for (int d : darts) above[fid.at(g.alpha(d))].push_back(d);
  for (int b1 : darts) {
    int x = g.color(b1);
    for (int b2 : above[fid.at(b1)]) {
      if (std::abs(g.color(b2) - x) != 1) continue;
      for (int b3 : above[fid.at(b2)]) {
        if (g.color(b3) != x) continue;
        for (int b4 : above[fid.at(b3)]) {
          if (g.color(b4) != g.color(b2)) continue;
          std::set<int> edges;
          for (int b : {b1, b2, b3, b4}) edges.insert(std::min(b, g.alpha(b)));
          if (edges.size() != 4) continue;
          if (b1 >= g.alpha(b4)) continue;  // the reversed chain reinserts
                                            // the same patch
          MatchSite s;
          s.rule = RuleId::I;
          s.reverse = true;
          s.color = x;
          s.color2 = g.color(b2);
          s.bound = {g.alpha(b1), g.alpha(b2), g.alpha(b3), g.alpha(b4),
                     b4, b3, b2, b1};
          out.push_back(s);
        }
      }
    }
  }
}

void match_II(const NGraph& g, std::vector<MatchSite>& out) {
  auto darts = g.all_darts();
  for (int a1 : darts) {
    int T = g.vertex_of(a1);
    if (g.vert(T).kind != VKind::Trivalent) continue;
    int h1 = g.alpha(a1);
    int H = g.vertex_of(h1);
    if (g.vert(H).kind != VKind::Hex) continue;
    MatchSite s;
    s.rule = RuleId::II;
    s.color = g.vert(T).c1;
    s.color2 = hex_mate(g.vert(H), s.color);
    s.verts = {T, H};
    s.bound = {sp(g, a1, 1), sp(g, a1, 2), sp(g, h1, 1), sp(g, h1, 2),
               sp(g, h1, 3), sp(g, h1, 4), sp(g, h1, 5)};
    if (embedded(g, s.verts, s.bound)) out.push_back(s);
  }
  // reverse: the pushed-through patch, in either reflection
  for (int P : darts) {
    int Tp = g.vertex_of(P);
    if (g.vert(Tp).kind != VKind::Trivalent) continue;
    for (int mir = 0; mir < 2; ++mir) {
      auto nx = [&](int d) { return mir ? g.sigma_inv(d) : g.sigma(d); };
      auto nxk = [&](int d, int k) {
        while (k--) d = nx(d);
        return d;
      };
      int M = g.alpha(nx(P)), N = g.alpha(nxk(P, 2));
      int A = g.vertex_of(M), B = g.vertex_of(N);
      if (g.vert(A).kind != VKind::Hex || g.vert(B).kind != VKind::Hex) continue;
      if (A == B) continue;
      // the doubled edge between the two hexagonal vertices
      if (g.alpha(nxk(M, 4)) != nxk(N, 2)) continue;
      if (g.alpha(nxk(M, 5)) != nx(N)) continue;
      MatchSite s;
      s.rule = RuleId::II;
      s.reverse = true;
      s.mirrored = mir;
      s.color2 = g.vert(Tp).c1;
      s.color = hex_mate(g.vert(A), s.color2);
      s.verts = {Tp, A, B};
      s.bound = {nxk(M, 3), nxk(N, 3), nxk(N, 4), nxk(N, 5),
                 P, nx(M), nxk(M, 2)};
      if (embedded(g, s.verts, s.bound)) out.push_back(s);
    }
  }
}

void match_III(const NGraph& g, std::vector<MatchSite>& out) {
  for (auto& [H, hv] : g.verts) {
    if (hv.kind != VKind::Hex) continue;
    for (int r : hv.rot) {
      int a1 = g.alpha(r);
      int T1 = g.vertex_of(a1);
      if (g.vert(T1).kind != VKind::Trivalent) continue;
      int h3 = sp(g, r, 2);
      int b1 = g.alpha(h3);
      int T2 = g.vertex_of(b1);
      if (g.vert(T2).kind != VKind::Trivalent || T1 == T2) continue;
      MatchSite s;
      s.rule = RuleId::III;
      s.color = g.color(r);
      s.color2 = hex_mate(hv, s.color);
      s.verts = {T1, T2, H};
      s.bound = {sp(g, a1, 1), sp(g, a1, 2), sp(g, r, 1), sp(g, b1, 1),
                 sp(g, b1, 2), sp(g, r, 3), sp(g, r, 4), sp(g, r, 5)};
      if (!embedded(g, s.verts, s.bound)) continue;
      out.push_back(s);          // rotate counterclockwise
      s.reverse = true;          // same image read as the rotated side:
      out.push_back(s);          // applying it rotates clockwise
    }
  }
}

void match_V(const NGraph& g, std::vector<MatchSite>& out) {
  auto darts = g.all_darts();
  for (int u : darts) {
    if (kind_at(g, u) != VKind::Cross) continue;
    int v = g.face_next(u);
    if (v <= u) continue;
    if (kind_at(g, v) != VKind::Cross) continue;
    if (g.face_next(v) != u) continue;
    if (g.vertex_of(v) == g.vertex_of(u)) continue;
    MatchSite s;
    s.rule = RuleId::V;
    s.color = g.color(g.sigma(u));
    s.color2 = g.color(u);
    s.verts = {g.vertex_of(u), g.vertex_of(v)};
    s.bound = {sp(g, u, 1), sp(g, u, 2), sp(g, v, 1), sp(g, v, 2)};
    if (!embedded(g, s.verts, s.bound)) continue;
    if (closes_loop(g, s.bound, v_rhs_frag(s.color, s.color2))) continue;
    out.push_back(s);
  }
  if (g.num_darts() == 0) return;
  auto fid = face_of_dart(g);
  for (int b1 : darts) {
    for (int b2 : darts) {
      if (std::abs(g.color(b1) - g.color(b2)) < 2) continue;
      if (fid.at(b1) != fid.at(g.alpha(b2))) continue;
      if (std::min(b1, g.alpha(b1)) == std::min(b2, g.alpha(b2))) continue;
      MatchSite s;
      s.rule = RuleId::V;
      s.reverse = true;
      s.color = g.color(b1);
      s.color2 = g.color(b2);
      s.bound = {g.alpha(b1), g.alpha(b2), b2, b1};
      out.push_back(s);
    }
  }
}

void match_VI(const NGraph& g, bool mirror, std::vector<MatchSite>& out) {
  RuleId id = mirror ? RuleId::VIp : RuleId::VI;
  auto darts = g.all_darts();
  auto nx = [&](int d) { return mirror ? g.sigma_inv(d) : g.sigma(d); };
  auto nxk = [&](int d, int k) {
    while (k--) d = nx(d);
    return d;
  };
  for (int a1 : darts) {
    int T = g.vertex_of(a1);
    if (g.vert(T).kind != VKind::Trivalent) continue;
    int x1 = g.alpha(a1);
    int X = g.vertex_of(x1);
    if (g.vert(X).kind != VKind::Cross) continue;
    MatchSite s;
    s.rule = id;
    s.mirrored = mirror;
    s.color = g.vert(T).c1;
    s.color2 = g.color(nx(x1));
    s.verts = {T, X};
    s.bound = {nx(a1), nxk(a1, 2), nx(x1), nxk(x1, 2), nxk(x1, 3)};
    if (embedded(g, s.verts, s.bound)) out.push_back(s);
  }
  for (int P : darts) {
    int Tp = g.vertex_of(P);
    if (g.vert(Tp).kind != VKind::Trivalent) continue;
    int N = g.alpha(nx(P)), M = g.alpha(nxk(P, 2));
    int X2 = g.vertex_of(N), X1 = g.vertex_of(M);
    if (g.vert(X1).kind != VKind::Cross || g.vert(X2).kind != VKind::Cross)
      continue;
    if (X1 == X2) continue;
    // the distant strand running between the two crossings
    if (g.alpha(nx(M)) != nxk(N, 3)) continue;
    MatchSite s;
    s.rule = id;
    s.reverse = true;
    s.mirrored = mirror;
    s.color = g.vert(Tp).c1;
    s.color2 = g.color(nx(M));
    s.verts = {Tp, X1, X2};
    s.bound = {nxk(N, 2), nxk(M, 2), nxk(M, 3), P, nx(N)};
    if (embedded(g, s.verts, s.bound)) out.push_back(s);
  }
}

// ---------- rule IV from a line arrangement ----------

// The patch of rule IV is traced from four affine planes near a triple point:
// three of them meet at the origin and the fourth passes just above (side 0)
// or just below (side 1). Integer data keeps every comparison exact.
Frag arrangement_frag(int side) {
  const long long c = side == 0 ? 6 : -6;
  const long long A[4] = {0, 1, 1, 2}, B[4] = {0, 0, 1, -1}, C[4] = {0, 0, 0, c};
  struct Line {
    int p, q;
    long long a, b, cc;
  };
  std::vector<Line> lines;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q)
      lines.push_back({p, q, A[p] - A[q], B[p] - B[q], C[p] - C[q]});

  std::map<std::pair<long long, long long>, std::set<int>> ptlines;
  for (int i = 0; i < static_cast<int>(lines.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(lines.size()); ++j) {
      long long det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
      if (det == 0) continue;
      long long xn = -lines[i].cc * lines[j].b + lines[j].cc * lines[i].b;
      long long yn = -lines[i].a * lines[j].cc + lines[j].a * lines[i].cc;
      if (xn % det || yn % det) throw std::logic_error("arrangement: non-integral point");
      auto& s = ptlines[{xn / det, yn / det}];
      s.insert(i);
      s.insert(j);
    }

  std::vector<std::pair<long long, long long>> pts;
  std::map<std::pair<long long, long long>, int> pid;
  for (auto& [p, ls] : ptlines) {
    pid[p] = static_cast<int>(pts.size());
    pts.push_back(p);
  }

  // plane values at doubled coordinates, for exact midpoint comparisons
  auto val = [&](int k, long long x2, long long y2) {
    return A[k] * x2 + B[k] * y2 + 2 * C[k];
  };
  auto seg_color = [&](const Line& L, long long x2, long long y2) {
    long long vm = val(L.p, x2, y2);
    int below = 0;
    for (int k = 0; k < 4; ++k)
      if (k != L.p && k != L.q && val(k, x2, y2) < vm) ++below;
    return 1 + below;
  };

  struct Dart {
    int pt;
    long long dx, dy;
    int color;
    bool ray;
  };
  std::vector<Dart> ds;
  Frag f;
  for (auto& L : lines) {
    std::vector<int> on;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
      if (L.a * pts[i].first + L.b * pts[i].second + L.cc == 0) on.push_back(i);
    long long dx = L.b, dy = -L.a;
    std::sort(on.begin(), on.end(), [&](int i, int j) {
      return pts[i].first * dx + pts[i].second * dy <
             pts[j].first * dx + pts[j].second * dy;
    });
    for (int s = 0; s + 1 < static_cast<int>(on.size()); ++s) {
      int i = on[s], j = on[s + 1];
      int col = seg_color(L, pts[i].first + pts[j].first,
                          pts[i].second + pts[j].second);
      int da = static_cast<int>(ds.size());
      ds.push_back({i, dx, dy, col, false});
      ds.push_back({j, -dx, -dy, col, false});
      fedge(f, da, da + 1);
    }
    for (int end = 0; end < 2; ++end) {
      int i = end ? on.back() : on.front();
      long long rx = end ? dx : -dx, ry = end ? dy : -dy;
      int col = seg_color(L, 2 * pts[i].first + 1000 * rx,
                          2 * pts[i].second + 1000 * ry);
      ds.push_back({i, rx, ry, col, true});
    }
  }
  for (int d = 0; d < static_cast<int>(ds.size()); ++d) f.color[d] = ds[d].color;

  auto angle_less = [](long long ax, long long ay, long long bx, long long by) {
    auto half = [](long long x, long long y) {
      return (y < 0 || (y == 0 && x < 0)) ? 1 : 0;
    };
    int ha = half(ax, ay), hb = half(bx, by);
    if (ha != hb) return ha < hb;
    return ax * by - ay * bx > 0;
  };

  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    std::vector<int> rot;
    for (int d = 0; d < static_cast<int>(ds.size()); ++d)
      if (ds[d].pt == i) rot.push_back(d);
    std::sort(rot.begin(), rot.end(), [&](int a, int b) {
      return angle_less(ds[a].dx, ds[a].dy, ds[b].dx, ds[b].dy);
    });
    Frag::FV fv;
    if (rot.size() == 6) {
      fv.kind = VKind::Hex;
      int m = ds[rot[0]].color;
      for (int d : rot) m = std::min(m, ds[d].color);
      fv.c1 = m;
      fv.c2 = m + 1;
    } else {
      fv.kind = VKind::Cross;
      fv.c1 = ds[rot[0]].color;
      fv.c2 = ds[rot[1]].color;
    }
    fv.rot = rot;
    f.verts.push_back(fv);
  }

  for (int d = 0; d < static_cast<int>(ds.size()); ++d)
    if (ds[d].ray) f.legs.push_back(d);
  std::sort(f.legs.begin(), f.legs.end(), [&](int a, int b) {
    return angle_less(ds[a].dx, ds[a].dy, ds[b].dx, ds[b].dy);
  });
  return f;
}

const Frag& iv_frag(int side) {
  static const Frag f0 = arrangement_frag(0);
  static const Frag f1 = arrangement_frag(1);
  return side == 0 ? f0 : f1;
}

Frag shift_colors(Frag f, int delta) {
  if (delta == 0) return f;
  for (auto& [d, c] : f.color) c += delta;
  for (auto& v : f.verts) {
    v.c1 += delta;
    if (v.kind != VKind::Trivalent && v.kind != VKind::Bend) v.c2 += delta;
  }
  return f;
}

// embeds a whole fragment, colors shifted by cshift, reflected when mirrored
bool try_embed(const NGraph& g, const Frag& pat, bool mir, int cshift,
               int anchor_gd, std::vector<int>& vimg, std::map<int, int>& dm) {
  std::map<int, int> owner, slot;
  for (int t = 0; t < static_cast<int>(pat.verts.size()); ++t)
    for (int s = 0; s < static_cast<int>(pat.verts[t].rot.size()); ++s) {
      owner[pat.verts[t].rot[s]] = t;
      slot[pat.verts[t].rot[s]] = s;
    }
  vimg.assign(pat.verts.size(), -1);
  dm.clear();
  std::set<int> gverts;
  std::vector<std::pair<int, int>> work = {{pat.verts[0].rot[0], anchor_gd}};
  while (!work.empty()) {
    auto [fd, gd] = work.back();
    work.pop_back();
    auto it = dm.find(fd);
    if (it != dm.end()) {
      if (it->second != gd) return false;
      continue;
    }
    int fv = owner.at(fd);
    int gv = g.vertex_of(gd);
    const auto& pv = pat.verts[fv];
    const auto& hv = g.vert(gv);
    if (vimg[fv] >= 0 || gverts.count(gv)) return false;
    if (hv.kind != pv.kind || hv.rot.size() != pv.rot.size()) return false;
    vimg[fv] = gv;
    gverts.insert(gv);
    int deg = static_cast<int>(pv.rot.size());
    int i0 = slot.at(fd), j0 = g.slot_of(gd);
    for (int t = 0; t < deg; ++t) {
      int fdt = pv.rot[(i0 + t) % deg];
      int gdt = hv.rot[((j0 + (mir ? -t : t)) % deg + deg) % deg];
      dm[fdt] = gdt;
      if (g.color(gdt) != pat.color.at(fdt) + cshift) return false;
      auto ia = pat.alpha.find(fdt);
      if (ia != pat.alpha.end()) work.push_back({ia->second, g.alpha(gdt)});
    }
  }
  return true;
}

void match_IV(const NGraph& g, std::vector<MatchSite>& out) {
  if (g.n < 4) return;
  auto darts = g.all_darts();
  std::set<std::vector<int>> seen;
  for (int side = 0; side < 2; ++side) {
    const Frag& pat = iv_frag(side);
    for (int mir = 0; mir < 2; ++mir) {
      for (int base = 1; base + 2 <= g.n - 1; ++base) {
        for (int gd : darts) {
          if (kind_at(g, gd) != pat.verts[0].kind) continue;
          std::vector<int> vimg;
          std::map<int, int> dm;
          if (!try_embed(g, pat, mir, base - 1, gd, vimg, dm)) continue;
          MatchSite s;
          s.rule = RuleId::IV;
          s.reverse = side == 1;
          s.mirrored = mir;
          s.color = base;
          s.verts = vimg;
          for (int fd : pat.legs) s.bound.push_back(dm.at(fd));
          if (!embedded(g, s.verts, s.bound)) continue;
          std::vector<int> key = vimg;
          std::sort(key.begin(), key.end());
          if (!seen.insert(key).second) continue;
          out.push_back(s);
        }
      }
    }
  }
}

void match_S0(const NGraph& g, std::vector<MatchSite>& out) {
  for (int u : g.all_darts()) {
    if (u > g.alpha(u)) continue;
    MatchSite s;
    s.rule = RuleId::S0;
    s.color = g.color(u);
    s.bound = {g.alpha(u), u};
    out.push_back(s);
  }
}

void match_S1(const NGraph& g, std::vector<MatchSite>& out) {
  for (int u : g.all_darts()) {
    int v = g.alpha(u);
    if (u > v) continue;
    int T1 = g.vertex_of(u), T2 = g.vertex_of(v);
    if (T1 == T2) continue;
    if (g.vert(T1).kind != VKind::Trivalent || g.vert(T2).kind != VKind::Trivalent)
      continue;
    MatchSite s;
    s.rule = RuleId::S1;
    s.color = g.color(u);
    s.verts = {T1, T2};
    s.bound = {sp(g, u, 1), sp(g, u, 2), sp(g, v, 1), sp(g, v, 2)};
    if (!embedded(g, s.verts, s.bound)) continue;
    if (closes_loop(g, s.bound, splice2_frag(s.color))) continue;
    out.push_back(s);
  }
}

// straight chain of hexagonal passes from a trivalent vertex; empty if the
// dart does not start a long edge ending at another trivalent vertex
std::vector<int> long_edge_verts(const NGraph& g, int a1) {
  int T1 = g.vertex_of(a1);
  if (g.vert(T1).kind != VKind::Trivalent) return {};
  std::vector<int> chain = {T1};
  std::set<int> seen = {T1};
  int d = g.alpha(a1);
  while (g.vert(g.vertex_of(d)).kind == VKind::Hex) {
    int H = g.vertex_of(d);
    if (seen.count(H)) return {};
    seen.insert(H);
    chain.push_back(H);
    d = g.alpha(sp(g, d, 3));
  }
  int T2 = g.vertex_of(d);
  if (g.vert(T2).kind != VKind::Trivalent || seen.count(T2)) return {};
  if (chain.size() < 2) return {};  // a short edge is plain S1
  chain.push_back(T2);
  return chain;
}

void match_S1p(const NGraph& g, std::vector<MatchSite>& out) {
  for (int a1 : g.all_darts()) {
    auto chain = long_edge_verts(g, a1);
    if (chain.empty()) continue;
    MatchSite s;
    s.rule = RuleId::S1p;
    s.color = g.color(a1);
    s.verts = chain;
    s.bound = {a1};
    out.push_back(s);
  }
}

void match_S1pp(const NGraph& g, std::vector<MatchSite>& out) {
  for (auto& [H, hv] : g.verts) {
    if (hv.kind != VKind::Hex) continue;
    for (int p = 0; p < 2; ++p) {
      std::array<int, 3> rays = {hv.rot[p], hv.rot[p + 2], hv.rot[p + 4]};
      std::array<int, 3> tv{};
      bool ok = true;
      for (int i = 0; i < 3; ++i) {
        tv[i] = g.vertex_of(g.alpha(rays[i]));
        if (g.vert(tv[i]).kind != VKind::Trivalent) ok = false;
      }
      if (!ok || tv[0] == tv[1] || tv[0] == tv[2] || tv[1] == tv[2]) continue;
      int h1 = *std::min_element(rays.begin(), rays.end());
      int k = static_cast<int>(std::find(rays.begin(), rays.end(), h1) -
                               rays.begin());
      MatchSite s;
      s.rule = RuleId::S1pp;
      s.color = g.color(h1);
      s.verts = {tv[k], tv[(k + 1) % 3], tv[(k + 2) % 3], H};
      s.bound = {h1};
      out.push_back(s);
    }
  }
}

void match_CliffordSum(const NGraph& g, std::vector<MatchSite>& out) {
  for (auto& [T, tv] : g.verts) {
    if (tv.kind != VKind::Trivalent) continue;
    MatchSite s;
    s.rule = RuleId::CliffordSum;
    s.color = tv.c1;
    s.verts = {T};
    s.bound = tv.rot;
    if (embedded(g, s.verts, s.bound)) out.push_back(s);
  }
}

void match_BigonInv(const NGraph& g, std::vector<MatchSite>& out) {
  for (int u : g.all_darts()) {
    int v = g.face_next(u);
    if (v <= u || g.face_next(v) != u) continue;
    int U1 = g.vertex_of(u), U2 = g.vertex_of(v);
    if (U1 == U2) continue;
    if (g.vert(U1).kind != VKind::Trivalent || g.vert(U2).kind != VKind::Trivalent)
      continue;
    auto third = [&](int vert, int d1, int d2) {
      for (int d : g.vert(vert).rot)
        if (d != d1 && d != d2) return d;
      return -1;
    };
    int w1 = third(U1, u, g.alpha(v));
    int w2 = third(U2, v, g.alpha(u));
    MatchSite s;
    s.rule = RuleId::BigonInv;
    s.color = g.color(u);
    s.verts = {U1, U2};
    s.bound = {w1, w2};
    if (!embedded(g, s.verts, s.bound)) continue;
    if (closes_loop(g, s.bound, arc_frag(s.color))) continue;
    out.push_back(s);
  }
}

void match_TriangleInv(const NGraph& g, std::vector<MatchSite>& out) {
  for (int p : g.all_darts()) {
    int q = g.face_next(p), r = g.face_next(q);
    if (q == p || r == p || g.face_next(r) != p) continue;
    if (p != std::min({p, q, r})) continue;
    int U1 = g.vertex_of(p), U2 = g.vertex_of(q), U3 = g.vertex_of(r);
    if (U1 == U2 || U1 == U3 || U2 == U3) continue;
    bool tri = true;
    for (int v : {U1, U2, U3})
      if (g.vert(v).kind != VKind::Trivalent) tri = false;
    if (!tri) continue;
    auto third = [&](int vert, int d1, int d2) {
      for (int d : g.vert(vert).rot)
        if (d != d1 && d != d2) return d;
      return -1;
    };
    MatchSite s;
    s.rule = RuleId::TriangleInv;
    s.color = g.color(p);
    s.verts = {U1, U2, U3};
    s.bound = {third(U1, p, g.alpha(r)), third(U2, q, g.alpha(p)),
               third(U3, r, g.alpha(q))};
    if (embedded(g, s.verts, s.bound)) out.push_back(s);
  }
}

Frag replacement_frag(const MatchSite& s) {
  switch (s.rule) {
    case RuleId::I:
      return s.reverse ? candy_frag(s.color, s.color2)
                       : strands4_frag(s.color, s.color2);
    case RuleId::II:
      return s.reverse ? ii_lhs_frag(s.color, s.color2)
                       : ii_rhs_frag(s.color, s.color2);
    case RuleId::III:
      return iii_rhs_frag(s.color, s.color2, s.reverse);
    case RuleId::IV:
      return shift_colors(iv_frag(s.reverse ? 0 : 1), s.color - 1);
    case RuleId::V:
      return s.reverse ? v_lhs_frag(s.color, s.color2)
                       : v_rhs_frag(s.color, s.color2);
    case RuleId::VI:
    case RuleId::VIp:
      return s.reverse ? vi_lhs_frag(s.color, s.color2)
                       : vi_rhs_frag(s.color, s.color2);
    case RuleId::S0:
      return s0_frag(s.color);
    case RuleId::S1:
      return splice2_frag(s.color);
    case RuleId::CliffordSum:
      return triangle_frag(s.color);
    case RuleId::BigonInv:
      return arc_frag(s.color);
    case RuleId::TriangleInv:
      return trivalent_frag(s.color);
    default:
      throw std::logic_error("composite rule has no single replacement");
  }
}

NGraph s1_along(NGraph h, int a1) {
  // push the trivalent vertex down the chain, then cut the short edge
  while (true) {
    int d = h.alpha(a1);
    if (h.vert(h.vertex_of(d)).kind != VKind::Hex) break;
    auto pr = push_through(h, a1);
    h = std::move(pr.g);
    a1 = pr.out_dart;
  }
  int u = a1, v = h.alpha(u);
  int T1 = h.vertex_of(u), T2 = h.vertex_of(v);
  if (h.vert(T1).kind != VKind::Trivalent || h.vert(T2).kind != VKind::Trivalent)
    throw std::invalid_argument("stale site");
  std::vector<int> bound = {sp(h, u, 1), sp(h, u, 2), sp(h, v, 1), sp(h, v, 2)};
  std::pair<int, int> hint = {h.alpha(bound[1]), h.alpha(bound[3])};
  return rewrite(h, {T1, T2}, bound, splice2_frag(h.color(u)), false, nullptr,
                 &hint);
}

}  // namespace

// ---------- public interface ----------

std::vector<MatchSite> find_matches(const NGraph& g, RuleId rule) {
  std::vector<MatchSite> out;
  switch (rule) {
    case RuleId::I: match_I(g, out); break;
    case RuleId::II: match_II(g, out); break;
    case RuleId::III: match_III(g, out); break;
    case RuleId::IV: match_IV(g, out); break;
    case RuleId::V: match_V(g, out); break;
    case RuleId::VI: match_VI(g, false, out); break;
    case RuleId::VIp: match_VI(g, true, out); break;
    case RuleId::S0: match_S0(g, out); break;
    case RuleId::S1: match_S1(g, out); break;
    case RuleId::S1p: match_S1p(g, out); break;
    case RuleId::S1pp: match_S1pp(g, out); break;
    case RuleId::CliffordSum: match_CliffordSum(g, out); break;
    case RuleId::BigonInv: match_BigonInv(g, out); break;
    case RuleId::TriangleInv: match_TriangleInv(g, out); break;
  }
  auto key = [](const MatchSite& s) {
    int lo = s.bound.empty() ? 0 : *std::min_element(s.bound.begin(), s.bound.end());
    return std::make_tuple(lo, s.bound, s.verts, s.reverse, s.mirrored);
  };
  std::sort(out.begin(), out.end(),
            [&](const MatchSite& a, const MatchSite& b) { return key(a) < key(b); });
  return out;
}

static bool same_site(const MatchSite& a, const MatchSite& b) {
  return a.rule == b.rule && a.reverse == b.reverse && a.mirrored == b.mirrored &&
         a.color == b.color && a.color2 == b.color2 && a.verts == b.verts &&
         a.bound == b.bound;
}

NGraph apply_move(const NGraph& g, RuleId rule, const MatchSite& site) {
  bool live = false;
  for (const auto& s : find_matches(g, rule))
    if (same_site(s, site)) live = true;
  if (!live) throw std::invalid_argument("stale site");
  switch (rule) {
    case RuleId::S1p:
      return s1_along(g, site.bound[0]);
    case RuleId::S1pp: {
      int h1 = site.bound[0];
      int w2 = g.alpha(sp(g, h1, 2));  // kept dart at the second vertex
      auto pr = push_through(g, g.alpha(h1));
      return s1_along(std::move(pr.g), w2);
    }
    case RuleId::S1: {
      std::pair<int, int> hint = {g.alpha(site.bound[1]), g.alpha(site.bound[3])};
      return rewrite(g, site.verts, site.bound, replacement_frag(site),
                     site.mirrored, nullptr, &hint);
    }
    default:
      return rewrite(g, site.verts, site.bound, replacement_frag(site),
                     site.mirrored);
  }
}

PushResult push_through(const NGraph& g, int a1) {
  int T = g.vertex_of(a1);
  if (g.vert(T).kind != VKind::Trivalent)
    throw std::invalid_argument("push_through needs a trivalent tail");
  int h1 = g.alpha(a1);
  int H = g.vertex_of(h1);
  if (g.vert(H).kind != VKind::Hex)
    throw std::invalid_argument("push_through needs a hexagonal head");
  int x = g.vert(T).c1, xp = hex_mate(g.vert(H), x);
  std::vector<int> bound = {sp(g, a1, 1), sp(g, a1, 2), sp(g, h1, 1),
                            sp(g, h1, 2), sp(g, h1, 3), sp(g, h1, 4),
                            sp(g, h1, 5)};
  std::vector<int> legd;
  NGraph h = rewrite(g, {T, H}, bound, ii_rhs_frag(x, xp), false, &legd);
  return {std::move(h), legd[4]};
}

NGraph move4_model(int side) {
  const Frag& f = iv_frag(side ? 1 : 0);
  NGraph g;
  g.n = 4;
  g.base = {BaseKind::Disk, 0};
  for (int t = 0; t < static_cast<int>(f.verts.size()); ++t) {
    Vertex v;
    v.kind = f.verts[t].kind;
    v.c1 = f.verts[t].c1;
    v.c2 = f.verts[t].c2;
    for (int d : f.verts[t].rot) v.rot.push_back(d + 1);
    g.verts[t + 1] = v;
  }
  for (auto& [a, b] : f.alpha) g.alpha_[a + 1] = b + 1;
  for (auto& [d, c] : f.color) g.ecolor_[d + 1] = c;
  for (int d : f.legs) g.legs.push_back(d + 1);
  g.reindex();
  attach_hub(g);
  require_valid(g);
  return g;
}

NGraph stabilize(const NGraph& g) {
  if (g.base.kind != BaseKind::Sphere)
    throw std::invalid_argument("stabilize needs a sphere graph");
  NGraph h = g;
  int N = h.n;
  h.n = N + 1;
  int vid = h.fresh_vertex_id();
  int d = h.fresh_dart_id();
  int b1 = d, p1 = d + 1, p2 = d + 2, b2 = d + 3, q1 = d + 4, q2 = d + 5;
  h.verts[vid] = {VKind::Trivalent, N, 0, {b1, p1, p2}};
  h.verts[vid + 1] = {VKind::Trivalent, N, 0, {b2, q1, q2}};
  for (auto [a, b] : {std::pair{b1, b2}, {p1, p2}, {q1, q2}}) {
    h.alpha_[a] = b;
    h.alpha_[b] = a;
    h.ecolor_[a] = h.ecolor_[b] = N;
  }
  if (!g.verts.empty()) {
    int rep = g.all_darts().front();
    h.nests.push_back({rep, p2});  // the old graph sits inside one wing
  }
  int inner = b1;
  d += 6;
  int bvid = vid + 2;
  for (int c = N - 1; c >= 1; --c) {
    int u1 = d, u2 = d + 1;
    d += 2;
    h.verts[bvid++] = {VKind::Bend, c, 0, {u1, u2}};
    h.alpha_[u1] = u2;
    h.alpha_[u2] = u1;
    h.ecolor_[u1] = h.ecolor_[u2] = c;
    h.nests.push_back({inner, u2});
    inner = u1;
  }
  h.reindex();
  require_valid(h);
  return h;
}

NGraph connect_sum(const NGraph& g1, int v1, const NGraph& g2, int v2) {
  if (g1.base.kind != BaseKind::Sphere || g2.base.kind != BaseKind::Sphere)
    throw std::invalid_argument("connect_sum needs sphere graphs");
  if (g1.n != g2.n)
    throw std::invalid_argument("connect_sum needs equal sheet counts");
  const Vertex& a = g1.vert(v1);
  const Vertex& b = g2.vert(v2);
  if (a.kind != VKind::Trivalent || b.kind != VKind::Trivalent || a.c1 != b.c1)
    throw std::invalid_argument(
        "connect_sum needs trivalent vertices of equal color");
  NGraph h = g1;
  int voff = h.fresh_vertex_id();
  int doff = h.fresh_dart_id();
  for (auto& [vid, v] : g2.verts) {
    Vertex w = v;
    for (int& dd : w.rot) dd += doff;
    h.verts[vid + voff] = std::move(w);
  }
  for (auto& [x, y] : g2.alpha_) h.alpha_[x + doff] = y + doff;
  for (auto& [x, c] : g2.ecolor_) h.ecolor_[x + doff] = c;
  for (auto& [x, y] : g2.nests) h.nests.push_back({x + doff, y + doff});
  h.reindex();
  std::vector<int> bound = {a.rot[0], a.rot[1], a.rot[2],
                            b.rot[0] + doff, b.rot[2] + doff, b.rot[1] + doff};
  return rewrite(h, {v1, v2 + voff}, bound, kiss_frag(a.c1), false);
}

BridgeResult detect_bridge(const NGraph& g) {
  if (g.n != 2)
    throw std::invalid_argument("bridge detection needs a 2-graph");
  struct E {
    int u, v, dart;
  };
  std::vector<E> edges;
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (edge, other)
  for (int d : g.all_darts()) {
    int e = g.alpha(d);
    if (d > e) continue;
    if (g.is_hub_dart(d) || g.is_hub_dart(e)) continue;
    int u = g.vertex_of(d), v = g.vertex_of(e);
    if (u == v) continue;  // a loop is never a cut edge
    int id = static_cast<int>(edges.size());
    edges.push_back({u, v, d});
    adj[u].push_back({id, v});
    adj[v].push_back({id, u});
  }
  std::map<int, int> disc, low;
  int timer = 0;
  BridgeResult best;
  std::function<void(int, int)> dfs = [&](int u, int pe) {
    disc[u] = low[u] = ++timer;
    for (auto [id, w] : adj[u]) {
      if (id == pe) continue;
      if (disc.count(w)) {
        low[u] = std::min(low[u], disc[w]);
      } else {
        dfs(w, id);
        low[u] = std::min(low[u], low[w]);
        if (low[w] > disc[u]) {
          if (!best.has_bridge || edges[id].dart < best.edge) {
            best.has_bridge = true;
            best.edge = edges[id].dart;
          }
        }
      }
    }
  };
  for (auto& [v, _] : adj)
    if (!disc.count(v)) dfs(v, -1);
  return best;
}

Freeness is_free(const NGraph& g) {
  if (g.n != 2 || g.base.kind != BaseKind::Disk) return Freeness::Inapplicable;
  bool any_real = false;
  for (auto& [vid, v] : g.verts)
    if (vid != g.hub && !v.rot.empty()) any_real = true;
  if (!any_real) return Freeness::Free;
  auto orbs = face_orbits(g);
  auto fid = face_of_dart(g);
  std::map<int, int> runs, walks;
  for (auto& orb : orbs) {
    int r = 0;
    int m = static_cast<int>(orb.size());
    for (int i = 0; i < m; ++i) {
      bool here = g.is_hub_dart(orb[i]);
      bool prev = g.is_hub_dart(orb[(i + m - 1) % m]);
      if (here && !prev) ++r;
    }
    if (r == 0 && g.is_hub_dart(orb[0])) r = 1;  // all-hub walk
    int f = fid.at(orb[0]);
    runs[f] += r;
    walks[f] += 1;
  }
  int interior = 0;
  for (auto& [f, r] : runs) {
    if (walks[f] > 1) return Freeness::Inapplicable;  // region not a disk
    if (r == 0) ++interior;
    else if (r != 1) return Freeness::Inapplicable;  // boundary met twice
  }
  return interior == 0 ? Freeness::Free : Freeness::NotFree;
}

RuleId rule_from_name(const std::string& name) {
  static const std::map<std::string, RuleId> m = {
      {"I", RuleId::I},           {"II", RuleId::II},
      {"III", RuleId::III},       {"IV", RuleId::IV},
      {"V", RuleId::V},           {"VI", RuleId::VI},
      {"VI'", RuleId::VIp},       {"VIp", RuleId::VIp},
      {"S0", RuleId::S0},         {"S1", RuleId::S1},
      {"S1'", RuleId::S1p},       {"S1p", RuleId::S1p},
      {"S1''", RuleId::S1pp},     {"S1pp", RuleId::S1pp},
      {"CliffordSum", RuleId::CliffordSum},
      {"Bigon-1", RuleId::BigonInv},
      {"BigonInv", RuleId::BigonInv},
      {"Triangle-1", RuleId::TriangleInv},
      {"TriangleInv", RuleId::TriangleInv},
  };
  auto it = m.find(name);
  if (it == m.end()) throw std::invalid_argument("unknown rule '" + name + "'");
  return it->second;
}

std::string rule_name(RuleId r) {
  switch (r) {
    case RuleId::I: return "I";
    case RuleId::II: return "II";
    case RuleId::III: return "III";
    case RuleId::IV: return "IV";
    case RuleId::V: return "V";
    case RuleId::VI: return "VI";
    case RuleId::VIp: return "VI'";
    case RuleId::S0: return "S0";
    case RuleId::S1: return "S1";
    case RuleId::S1p: return "S1'";
    case RuleId::S1pp: return "S1''";
    case RuleId::CliffordSum: return "CliffordSum";
    case RuleId::BigonInv: return "Bigon-1";
    case RuleId::TriangleInv: return "Triangle-1";
  }
  return "?";
}

}  // namespace nweave
