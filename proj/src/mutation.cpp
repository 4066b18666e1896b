#include "nweave/mutation.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nweave/constructions.hpp"
#include "patch.hpp"

namespace nweave {

using detail::Frag;
using detail::fedge;
using detail::hex_mate;
using detail::ii_lhs_frag;
using detail::ii_rhs_frag;
using detail::strands4_frag;
using detail::rewrite;
using detail::sp;

namespace {

bool mut_trace() {
  static bool t = std::getenv("NW_MUT_TRACE") != nullptr;
  return t;
}

[[noreturn]] void undefined(const std::string& why) {
  throw std::invalid_argument("transport undefined: " + why);
}

// a cycle carried through rewrites, as unordered dart pairs
struct TCyc {
  std::set<std::pair<int, int>> e;
};

std::pair<int, int> norm(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

TCyc track(const NGraph& g, const CycleSpec& s) {
  TCyc t;
  for (int d : s.edges) t.e.insert(norm(d, g.alpha(d)));
  return t;
}

CycleSpec untrack(const TCyc& t) {
  CycleSpec s;
  for (auto& [a, b] : t.e) s.edges.push_back(a);
  return s;
}

void checked_insert(TCyc& c, int a, int b) {
  if (!c.e.insert(norm(a, b)).second)
    undefined("transported cycle would traverse an edge twice");
}

// ---------- push (trivalent vertex through a hexagonal one) ----------

// After the push the patch darts are: hexA 0..5, hexB 6..11, T' 12..14, with
// internal edges 3-7, 4-6 (the doubled pair), 5-12, 11-13. The seven boundary
// positions of the removed star, in rotation order, reattach to patch darts
// {2, 8, 9, 10, 14, 0, 1}.
struct PushRec {
  std::array<int, 15> nd{};  // patch dart -> graph dart
  int x = 0, xp = 0;
  bool mir = false;  // site is the reflected patch
};

// reflected walk around a vertex when mir is set
int spm(const NGraph& g, int d, int k, bool mir) {
  while (k--) d = mir ? g.sigma_inv(d) : g.sigma(d);
  return d;
}

NGraph do_push(const NGraph& g, int a1, std::vector<TCyc*>& cycs, PushRec* rec,
               bool mir = false) {
  int T = g.vertex_of(a1);
  int h1 = g.alpha(a1);
  int H = g.vertex_of(h1);
  if (g.vert(T).kind != VKind::Trivalent || g.vert(H).kind != VKind::Hex)
    undefined("cycle leaf cannot be pushed through its neighbor");
  int x = g.vert(T).c1, xp = hex_mate(g.vert(H), x);
  std::vector<int> bound = {spm(g, a1, 1, mir), spm(g, a1, 2, mir),
                            spm(g, h1, 1, mir), spm(g, h1, 2, mir),
                            spm(g, h1, 3, mir), spm(g, h1, 4, mir),
                            spm(g, h1, 5, mir)};
  std::array<int, 7> target;
  std::map<int, int> posof;
  for (int k = 0; k < 7; ++k) {
    target[k] = g.alpha(bound[k]);
    posof[bound[k]] = k;
  }
  std::set<int> dead;
  for (int d : g.vert(T).rot) dead.insert(d);
  for (int d : g.vert(H).rot) dead.insert(d);

  std::map<int, int> dm;
  NGraph h = rewrite(g, {T, H}, bound, ii_rhs_frag(x, xp), mir, nullptr, nullptr, &dm);
  std::array<int, 15> nd;
  for (int i = 0; i < 15; ++i) nd[i] = dm.at(i);
  if (rec) {
    rec->nd = nd;
    rec->x = x;
    rec->xp = xp;
    rec->mir = mir;
  }

  auto pushed_edge = norm(a1, h1);
  for (TCyc* cp : cycs) {
    TCyc out;
    bool pushed = false;
    std::set<int> P;
    for (auto& [a, b] : cp->e) {
      bool da = dead.count(a), db = dead.count(b);
      if (!da && !db) {
        out.e.insert({a, b});
        continue;
      }
      if (std::pair<int, int>(a, b) == pushed_edge) {
        pushed = true;
        continue;
      }
      if (da && db) undefined("cycle edge joins two removed rays");
      int dd = da ? a : b;
      auto it = posof.find(dd);
      if (it == posof.end()) undefined("cycle edge at an unexpected removed ray");
      P.insert(it->second);
    }
    if (pushed) {
      if (P.count(4) && !P.count(3) && !P.count(5)) {
        // straight pass through the hexagonal vertex: the chain shortens
        checked_insert(out, nd[14], target[4]);
        P.erase(4);
      } else if (P.count(3) && P.count(5)) {
        // Y-branch at the hexagonal vertex dissolves into two straight passes
        checked_insert(out, target[3], nd[10]);
        checked_insert(out, nd[3], nd[7]);
        checked_insert(out, nd[0], target[5]);
        P.erase(3);
        P.erase(5);
      } else {
        undefined("cycle contains the pushed edge in an unsupported pattern");
      }
    }
    if (P.count(0)) {
      // leaf edge at the pushed trivalent vertex grows into a long edge
      checked_insert(out, target[0], nd[2]);
      checked_insert(out, nd[5], nd[12]);
      P.erase(0);
    }
    if (P.count(1)) {
      checked_insert(out, target[1], nd[8]);
      checked_insert(out, nd[11], nd[13]);
      P.erase(1);
    }
    if (P.count(2) || P.count(5)) {
      // straight pass not involving the pushed edge gains a Y-branch with a
      // leaf at the new trivalent vertex
      if (!(P.count(2) && P.count(5))) undefined("cycle meets the hexagonal star asymmetrically");
      checked_insert(out, target[2], nd[9]);
      checked_insert(out, nd[11], nd[13]);
      checked_insert(out, nd[7], nd[3]);
      checked_insert(out, nd[0], target[5]);
      P.erase(2);
      P.erase(5);
    }
    if (P.count(3) || P.count(6)) {
      if (!(P.count(3) && P.count(6))) undefined("cycle meets the hexagonal star asymmetrically");
      checked_insert(out, target[3], nd[10]);
      checked_insert(out, nd[7], nd[3]);
      checked_insert(out, nd[5], nd[12]);
      checked_insert(out, nd[1], target[6]);
      P.erase(3);
      P.erase(6);
    }
    if (!P.empty()) undefined("cycle meets the hexagonal star in an unsupported pattern");
    *cp = std::move(out);
  }
  return h;
}

// ---------- candy twist collapse (bigon between two hexagonal vertices) ----------

// Anchored at a hex dart u whose bigon partner edge pair is {u, alpha(u)} and
// {sigma_inv(u), face_next(u)}. Cycles may only cross the bigon along its two
// interior strands (a straight pass through both vertices using one of the
// two doubled edges); each such pass merges into a single edge.
std::vector<int> find_candy_sites(const NGraph& g) {
  std::vector<int> out;
  for (int u : g.all_darts()) {
    if (g.vert(g.vertex_of(u)).kind != VKind::Hex) continue;
    int v = g.face_next(u);
    if (g.vert(g.vertex_of(v)).kind != VKind::Hex) continue;
    if (g.vertex_of(v) == g.vertex_of(u)) continue;
    if (g.alpha(g.sigma_inv(u)) != v) continue;
    out.push_back(u);
  }
  return out;
}

NGraph do_candy(const NGraph& g, int u, std::vector<TCyc*>& cycs) {
  int v = g.face_next(u);
  int A = g.vertex_of(u), B = g.vertex_of(v);
  int x = g.color(g.sigma(u)), xp = g.color(u);
  std::vector<int> bound = {sp(g, u, 1), sp(g, u, 2), sp(g, u, 3), sp(g, u, 4),
                            sp(g, v, 1), sp(g, v, 2), sp(g, v, 3), sp(g, v, 4)};
  std::array<int, 8> target;
  std::map<int, int> posof;
  for (int k = 0; k < 8; ++k) {
    target[k] = g.alpha(bound[k]);
    posof[bound[k]] = k;
  }
  std::set<int> dead;
  for (int d : g.vert(A).rot) dead.insert(d);
  for (int d : g.vert(B).rot) dead.insert(d);
  auto e1 = norm(u, g.alpha(u)), e2 = norm(g.sigma_inv(u), v);

  struct Pass {
    TCyc* c;
    int ta, tb;
  };
  std::vector<Pass> passes;
  for (TCyc* cp : cycs) {
    TCyc out;
    std::set<int> P;
    bool b1 = false, b2 = false;
    for (auto& [a, b] : cp->e) {
      bool da = dead.count(a), db = dead.count(b);
      if (!da && !db) {
        out.e.insert({a, b});
        continue;
      }
      if (std::pair<int, int>(a, b) == e1) {
        b1 = true;
        continue;
      }
      if (std::pair<int, int>(a, b) == e2) {
        b2 = true;
        continue;
      }
      if (da && db) undefined("cycle edge joins two removed rays of a bigon");
      int dd = da ? a : b;
      auto it = posof.find(dd);
      if (it == posof.end()) undefined("cycle edge at an unexpected bigon ray");
      P.insert(it->second);
    }
    if (b2 && P.count(1) && P.count(6)) {
      if (dead.count(target[1]) || dead.count(target[6]))
        undefined("bigon strand closes onto the patch");
      passes.push_back({cp, target[1], target[6]});
      b2 = false;
      P.erase(1);
      P.erase(6);
    }
    if (b1 && P.count(2) && P.count(5)) {
      if (dead.count(target[2]) || dead.count(target[5]))
        undefined("bigon strand closes onto the patch");
      passes.push_back({cp, target[2], target[5]});
      b1 = false;
      P.erase(2);
      P.erase(5);
    }
    if (b1 || b2 || !P.empty())
      undefined("cycle meets the bigon in an unsupported pattern");
    *cp = std::move(out);
  }

  NGraph h = rewrite(g, {A, B}, bound, strands4_frag(x, xp), false, nullptr, nullptr, nullptr);
  for (auto& p : passes) {
    if (h.alpha(p.ta) != p.tb) undefined("bigon strand did not merge cleanly");
    checked_insert(*p.c, p.ta, p.tb);
  }
  return h;
}

// ---------- reverse push ----------

// Scan for pushed-through patterns: a trivalent vertex whose first two rays
// lead into two hexagonal vertices joined by a doubled edge pair, anchored so
// the patch darts line up with ii_rhs_frag.
std::vector<PushRec> find_unpush_sites(const NGraph& g) {
  std::vector<PushRec> out;
  for (const auto& [vt, vx] : g.verts) {
    if (vx.kind != VKind::Trivalent) continue;
    for (int mir = 0; mir < 2; ++mir) {
      for (int rsh = 0; rsh < 3; ++rsh) {
        int st = mir ? 2 : 1;  // rot direction of the (possibly reflected) patch
        int d12 = vx.rot[rsh];
        int d13 = vx.rot[(rsh + st) % 3], d14 = vx.rot[(rsh + 2 * st) % 3];
        int a12 = g.alpha(d12), a13 = g.alpha(d13);
        int VA = g.vertex_of(a12), VB = g.vertex_of(a13);
        if (VA == VB || g.vert(VA).kind != VKind::Hex || g.vert(VB).kind != VKind::Hex)
          continue;
        PushRec r;
        const auto& ra = g.vert(VA).rot;
        int sa = g.slot_of(a12);
        for (int j = 0; j < 6; ++j)
          r.nd[j] = ra[(sa + (mir ? 6 - (1 + j) % 6 : 1 + j)) % 6];
        const auto& rb = g.vert(VB).rot;
        int sb = g.slot_of(a13);
        for (int j = 0; j < 6; ++j)
          r.nd[6 + j] = rb[(sb + (mir ? 6 - (1 + j) % 6 : 1 + j)) % 6];
        r.nd[12] = d12;
        r.nd[13] = d13;
        r.nd[14] = d14;
        if (g.alpha(r.nd[3]) != r.nd[7] || g.alpha(r.nd[4]) != r.nd[6]) continue;
        r.xp = vx.c1;
        r.x = g.color(r.nd[0]);
        if (hex_mate(g.vert(VA), r.x) != r.xp) continue;
        r.mir = mir;
        out.push_back(r);
      }
    }
  }
  return out;
}

NGraph do_unpush(const NGraph& g, const PushRec& r, std::vector<TCyc*>& cycs) {
  const auto& nd = r.nd;
  std::array<int, 7> s = {nd[2], nd[8], nd[9], nd[10], nd[14], nd[0], nd[1]};
  std::array<int, 7> target;
  std::map<int, int> posof;
  for (int k = 0; k < 7; ++k) {
    target[k] = g.alpha(s[k]);
    posof[s[k]] = k;
  }
  std::set<int> dead(nd.begin(), nd.end());
  int VA = g.vertex_of(nd[0]), VB = g.vertex_of(nd[6]), VT = g.vertex_of(nd[12]);
  std::map<int, int> dm;
  NGraph h = rewrite(g, {VA, VB, VT}, std::vector<int>(s.begin(), s.end()),
                     ii_lhs_frag(r.x, r.xp), r.mir, nullptr, nullptr, &dm);
  // restored patch: trivalent 0..2, hexagonal 3..8, internal edge 0-3;
  // boundary positions reattach to {1, 2, 4, 5, 6, 7, 8}
  auto internal_key = [&](int a, int b) { return norm(nd[a], nd[b]); };
  auto k37 = internal_key(3, 7), k46 = internal_key(4, 6), k512 = internal_key(5, 12),
       k1113 = internal_key(11, 13);

  for (TCyc* cp : cycs) {
    TCyc out;
    std::set<int> P;
    bool i37 = false, i46 = false, i512 = false, i1113 = false;
    for (auto& [a, b] : cp->e) {
      bool da = dead.count(a), db = dead.count(b);
      if (!da && !db) {
        out.e.insert({a, b});
        continue;
      }
      auto key = norm(a, b);
      if (key == k37) { i37 = true; continue; }
      if (key == k46) { i46 = true; continue; }
      if (key == k512) { i512 = true; continue; }
      if (key == k1113) { i1113 = true; continue; }
      if (da && db) undefined("cycle edge joins two removed rays");
      int dd = da ? a : b;
      auto it = posof.find(dd);
      if (it == posof.end()) undefined("cycle edge at an unexpected removed ray");
      P.insert(it->second);
    }
    if (i46) undefined("cycle uses the inner doubled edge");
    if (P.count(4)) {
      checked_insert(out, dm.at(0), dm.at(3));
      checked_insert(out, dm.at(6), target[4]);
      P.erase(4);
    }
    if (P.count(3) && P.count(5) && i37) {
      checked_insert(out, dm.at(0), dm.at(3));
      checked_insert(out, dm.at(5), target[3]);
      checked_insert(out, dm.at(7), target[5]);
      P.erase(3);
      P.erase(5);
      i37 = false;
    }
    if (P.count(2) && P.count(5) && i37 && i1113) {
      checked_insert(out, dm.at(4), target[2]);
      checked_insert(out, dm.at(7), target[5]);
      P.erase(2);
      P.erase(5);
      i37 = i1113 = false;
    }
    if (P.count(3) && P.count(6) && i37 && i512) {
      checked_insert(out, dm.at(5), target[3]);
      checked_insert(out, dm.at(8), target[6]);
      P.erase(3);
      P.erase(6);
      i37 = i512 = false;
    }
    if (P.count(0) && i512) {
      checked_insert(out, dm.at(1), target[0]);
      P.erase(0);
      i512 = false;
    }
    if (P.count(1) && i1113) {
      checked_insert(out, dm.at(2), target[1]);
      P.erase(1);
      i1113 = false;
    }
    if (!P.empty() || i37 || i512 || i1113)
      undefined("cycle meets the reverse-push site in an unsupported pattern");
    *cp = std::move(out);
  }
  return h;
}

// ---------- flip of a short monochromatic edge ----------

Frag flip_frag(int c) {
  Frag f;
  f.verts.push_back({VKind::Trivalent, c, 0, {0, 1, 2}});
  f.verts.push_back({VKind::Trivalent, c, 0, {3, 4, 5}});
  for (int d = 0; d < 6; ++d) f.color[d] = c;
  fedge(f, 0, 3);
  f.legs = {5, 1, 2, 4};
  return f;
}

NGraph do_flip(const NGraph& g, int u, std::vector<TCyc*>& cycs) {
  int v = g.alpha(u);
  int T1 = g.vertex_of(u), T2 = g.vertex_of(v);
  if (T1 == T2) undefined("flip edge is a loop");
  int c = g.color(u);
  std::vector<int> bound = {sp(g, u, 1), sp(g, u, 2), sp(g, v, 1), sp(g, v, 2)};
  std::array<int, 4> target;
  std::map<int, int> posof;
  for (int k = 0; k < 4; ++k) {
    target[k] = g.alpha(bound[k]);
    posof[bound[k]] = k;
  }
  std::set<int> dead;
  for (int d : g.vert(T1).rot) dead.insert(d);
  for (int d : g.vert(T2).rot) dead.insert(d);
  static const int lf[4] = {5, 1, 2, 4};
  std::map<int, int> dm;
  NGraph h = rewrite(g, {T1, T2}, bound, flip_frag(c), false, nullptr, nullptr, &dm);
  auto flip_edge = norm(u, v);
  for (TCyc* cp : cycs) {
    TCyc out;
    for (auto& [a, b] : cp->e) {
      bool da = dead.count(a), db = dead.count(b);
      if (!da && !db) {
        out.e.insert({a, b});
        continue;
      }
      if (norm(a, b) == flip_edge) {
        checked_insert(out, dm.at(0), dm.at(3));
        continue;
      }
      auto ia = posof.find(a), ib = posof.find(b);
      if (da && db) {
        if (ia == posof.end() || ib == posof.end())
          undefined("cycle edge at an unexpected removed ray");
        checked_insert(out, dm.at(lf[ia->second]), dm.at(lf[ib->second]));
        continue;
      }
      int live = da ? b : a;
      auto it = da ? ia : ib;
      if (it == posof.end()) undefined("cycle edge at an unexpected removed ray");
      checked_insert(out, dm.at(lf[it->second]), live);
    }
    *cp = std::move(out);
  }
  return h;
}

// ---------- shape helpers ----------

bool short_mono(const NGraph& g, const TCyc& c) {
  if (c.e.size() != 1) return false;
  auto [a, b] = *c.e.begin();
  const Vertex &va = g.vert(g.vertex_of(a)), &vb = g.vert(g.vertex_of(b));
  return va.kind == VKind::Trivalent && vb.kind == VKind::Trivalent &&
         va.c1 == vb.c1 && va.c1 == g.color(a);
}

bool has_y_branch(const NGraph& g, const TCyc& c) {
  std::map<int, int> deg;
  for (auto& [a, b] : c.e) {
    ++deg[g.vertex_of(a)];
    ++deg[g.vertex_of(b)];
  }
  for (auto& [v, d] : deg)
    if (d == 3 && g.vert(v).kind == VKind::Hex) return true;
  return false;
}

void validate_spec(const WeaveSurface& w, const CycleSpec& c, const char* what) {
  try {
    lift_cycle(w, c);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(what) + " invalid: " + e.what());
  }
}

}  // namespace

// ---------- public interface ----------

MutateResult mutate(const NGraph& g, const CycleSpec& cycle,
                    const std::vector<CycleSpec>& registered) {
  WeaveSurface w = build_weave_surface(g);
  validate_spec(w, cycle, "cycle spec");
  for (const auto& r : registered) validate_spec(w, r, "registered cycle spec");

  TCyc mc = track(g, cycle);
  std::vector<TCyc> rc;
  rc.reserve(registered.size());
  for (const auto& r : registered) rc.push_back(track(g, r));
  std::vector<TCyc*> all = {&mc};
  for (auto& t : rc) all.push_back(&t);

  int budget = 64 * static_cast<int>(all.size() + 1);
  // contract a cycle to a short edge by pushing trivalent leaves inward
  auto contract = [&](NGraph& h, TCyc& c) {
    while (!short_mono(h, c)) {
      std::vector<int> picks;
      for (auto& [a, b] : c.e) {
        for (int d : {a, b}) {
          if (h.vert(h.vertex_of(d)).kind != VKind::Trivalent) continue;
          if (h.vert(h.vertex_of(h.alpha(d))).kind != VKind::Hex) continue;
          picks.push_back(d);
        }
      }
      if (picks.empty()) undefined("cycle cannot be contracted to a short edge");
      if (--budget < 0) undefined("cycle contraction does not settle");
      std::sort(picks.begin(), picks.end());
      // a leaf whose hexagonal neighbor hosts a branch of another cycle has
      // no transport; some other leaf of the same cycle usually does
      bool done = false;
      std::string first_err;
      for (size_t i = 0; i < picks.size() && !done; ++i) {
        std::vector<TCyc> save;
        save.reserve(all.size());
        for (TCyc* t : all) save.push_back(*t);
        try {
          h = do_push(h, picks[i], all, nullptr);
          done = true;
          if (mut_trace()) {
            fprintf(stderr, "push @%d sizes:", picks[i]);
            for (TCyc* tc : all) fprintf(stderr, " %zu", tc->e.size());
            fprintf(stderr, "\n");
          }
        } catch (const std::invalid_argument& e) {
          if (first_err.empty()) first_err = e.what();
          for (size_t k = 0; k < all.size(); ++k) *all[k] = save[k];
        }
      }
      if (!done) throw std::invalid_argument(first_err);
    }
  };
  auto total = [&] {
    size_t c = 0;
    for (TCyc* t : all) c += t->e.size();
    return c;
  };
  // undo pushed-through patterns wherever the carried cycles allow it without
  // getting longer (the contraction sites themselves rarely survive, but
  // equivalent reverse sites do)
  auto simplify = [&](NGraph& h) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const PushRec& r : find_unpush_sites(h)) {
        std::vector<TCyc> save;
        save.reserve(all.size());
        for (TCyc* t : all) save.push_back(*t);
        size_t before = total();
        try {
          NGraph h2 = do_unpush(h, r, all);
          if (total() <= before) {
            if (mut_trace()) {
              fprintf(stderr, "unpush @%d->%d sizes:", r.nd[0], r.nd[12]);
              for (TCyc* tc : all) fprintf(stderr, " %zu", tc->e.size());
              fprintf(stderr, "\n");
            }
            h = std::move(h2);
            progress = true;
            break;
          }
        } catch (const std::invalid_argument&) {
        }
        for (size_t i = 0; i < all.size(); ++i) *all[i] = save[i];
      }
    }
  };

  NGraph h = g;
  contract(h, mc);
  // flip the short edge
  h = do_flip(h, mc.e.begin()->first, all);
  simplify(h);

  MutateResult out;
  out.cycle = untrack(mc);
  for (auto& t : rc) out.registered.push_back(untrack(t));
  out.g = std::move(h);
  return out;
}

Quiver quiver_mutate(const Quiver& q, int k) {
  if (k < 0 || k >= q.nverts) throw std::invalid_argument("quiver vertex out of range");
  Quiver r;
  r.nverts = q.nverts;
  r.eps.assign(q.nverts, std::vector<int>(q.nverts, 0));
  for (int i = 0; i < q.nverts; ++i)
    for (int j = 0; j < q.nverts; ++j) {
      if (i == k || j == k)
        r.eps[i][j] = -q.eps[i][j];
      else
        r.eps[i][j] = q.eps[i][j] +
                      (std::abs(q.eps[i][k]) * q.eps[k][j] +
                       q.eps[i][k] * std::abs(q.eps[k][j])) / 2;
    }
  for (int i = 0; i < q.nverts; ++i)
    for (int j = 0; j < q.nverts; ++j)
      if (r.eps[i][j] > 0) r.arrows[{i, j}] = r.eps[i][j];
  return r;
}

namespace {

bool eps_equal(const Quiver& a, const Quiver& b, bool reversed) {
  if (a.nverts != b.nverts) return false;
  for (int i = 0; i < a.nverts; ++i)
    for (int j = 0; j < a.nverts; ++j)
      if (a.eps[i][j] != (reversed ? -b.eps[i][j] : b.eps[i][j])) return false;
  return true;
}

}  // namespace

std::vector<DriveStep> mutation_drive(int s, int t, int rounds) {
  if (rounds < 1) throw std::invalid_argument("drive needs rounds >= 1");
  ThurstonGraph td = thurston_graph(s, t);
  NGraph g = std::move(td.g);
  std::vector<CycleSpec> cycles = std::move(td.cycles);
  Quiver alg = std::move(td.quiver);
  const int m = static_cast<int>(cycles.size());
  std::vector<DriveStep> steps;
  int rev = -1;  // -1 until the orientation convention is pinned
  int stepno = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("mutation drive failed at step " +
                             std::to_string(stepno) + ": " + why);
  };
  for (int r = 0; r < rounds; ++r) {
    for (int k = 0; k < m - 1; ++k) {
      ++stepno;
      std::vector<CycleSpec> others;
      for (int j = 0; j < m; ++j)
        if (j != k) others.push_back(cycles[j]);
      MutateResult mr;
      try {
        mr = mutate(g, cycles[k], others);
      } catch (const std::exception& e) {
        fail(e.what());
      }
      g = std::move(mr.g);
      cycles[k] = mr.cycle;
      for (int j = 0, p = 0; j < m; ++j)
        if (j != k) cycles[j] = mr.registered[p++];
      alg = quiver_mutate(alg, k);
      Quiver geo;
      try {
        geo = intersection_quiver(g, cycles);
      } catch (const std::exception& e) {
        fail(std::string("transported cycles no longer lift: ") + e.what());
      }
      TCyc y = track(g, cycles[0]);
      if (!(short_mono(g, y) || has_y_branch(g, y)))
        fail("the tree cycle is neither a Y-tree nor a short edge");
      for (int j = 1; j + 1 < m; ++j)
        if (!short_mono(g, track(g, cycles[j])))
          fail("partner cycle " + std::to_string(j + 1) +
               " is not a short monochromatic edge");
      if (rev < 0) {
        if (eps_equal(geo, alg, false))
          rev = 0;
        else if (eps_equal(geo, alg, true))
          rev = 1;
        else
          fail("intersection quiver matches neither orientation of the mutated quiver");
      } else if (!eps_equal(geo, alg, rev == 1)) {
        fail("intersection quiver deviates from the mutated quiver");
      }
      steps.push_back(DriveStep{stepno, k + 1, g, cycles, geo, alg, rev == 1});
    }
  }
  return steps;
}

}  // namespace nweave
