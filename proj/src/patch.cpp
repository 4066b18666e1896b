#include "patch.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace nweave::detail {

void fedge(Frag& f, int a, int b) {
  f.alpha[a] = b;
  f.alpha[b] = a;
}

int sp(const NGraph& g, int d, int k) {
  while (k--) d = g.sigma(d);
  return d;
}

int hex_mate(const Vertex& v, int x) { return v.c1 == x ? v.c1 + 1 : v.c1; }

Frag candy_frag(int x, int xp) {
  Frag f;
  int m = std::min(x, xp);
  f.verts.push_back({VKind::Hex, m, m + 1, {0, 1, 2, 3, 4, 5}});
  f.verts.push_back({VKind::Hex, m, m + 1, {6, 7, 8, 9, 10, 11}});
  int cols[12] = {x, xp, x, xp, x, xp, xp, x, xp, x, xp, x};
  for (int d = 0; d < 12; ++d) f.color[d] = cols[d];
  fedge(f, 0, 7);
  fedge(f, 1, 6);
  f.legs = {2, 3, 4, 5, 8, 9, 10, 11};
  return f;
}

Frag strands4_frag(int x, int xp) {
  Frag f;
  f.legs = {0, 1, 2, 3, 4, 5, 6, 7};
  fedge(f, 0, 7);
  fedge(f, 1, 6);
  fedge(f, 2, 5);
  fedge(f, 3, 4);
  int cols[8] = {x, xp, x, xp, xp, x, xp, x};
  for (int d = 0; d < 8; ++d) f.color[d] = cols[d];
  return f;
}

Frag ii_lhs_frag(int x, int xp) {
  Frag f;
  int m = std::min(x, xp);
  f.verts.push_back({VKind::Trivalent, x, 0, {0, 1, 2}});
  f.verts.push_back({VKind::Hex, m, m + 1, {3, 4, 5, 6, 7, 8}});
  int cols[9] = {x, x, x, x, xp, x, xp, x, xp};
  for (int d = 0; d < 9; ++d) f.color[d] = cols[d];
  fedge(f, 0, 3);
  f.legs = {1, 2, 4, 5, 6, 7, 8};
  return f;
}

Frag ii_rhs_frag(int x, int xp) {
  Frag f;
  int m = std::min(x, xp);
  f.verts.push_back({VKind::Hex, m, m + 1, {0, 1, 2, 3, 4, 5}});
  f.verts.push_back({VKind::Hex, m, m + 1, {6, 7, 8, 9, 10, 11}});
  f.verts.push_back({VKind::Trivalent, xp, 0, {12, 13, 14}});
  int cols[15] = {x, xp, x, xp, x, xp, x, xp, x, xp, x, xp, xp, xp, xp};
  for (int d = 0; d < 15; ++d) f.color[d] = cols[d];
  fedge(f, 3, 7);    // hexA - hexB, the doubled pair
  fedge(f, 4, 6);    // hexA - hexB
  fedge(f, 5, 12);   // hexA - T'
  fedge(f, 11, 13);  // hexB - T'
  f.legs = {2, 8, 9, 10, 14, 0, 1};
  return f;
}

NGraph rewrite(const NGraph& g, const std::vector<int>& kill,
               const std::vector<int>& bound, const Frag& repl, bool mirrored,
               std::vector<int>* leg_out, const std::pair<int, int>* split_hint,
               std::map<int, int>* dart_out) {
  const int K = static_cast<int>(bound.size());
  if (static_cast<int>(repl.legs.size()) != K)
    throw std::logic_error("rewrite: interface arity mismatch");
  std::vector<int> target(K);
  for (int k = 0; k < K; ++k) target[k] = g.alpha(bound[k]);
  std::set<int> dead;
  for (int v : kill)
    for (int d : g.vert(v).rot) dead.insert(d);
  std::map<int, int> boundpos;
  for (int k = 0; k < K; ++k) boundpos[bound[k]] = k;

  NGraph h = g;

  // nest representatives living on killed darts move elsewhere in their region
  bool nest_hit = false;
  for (auto& nn : h.nests)
    nest_hit = nest_hit || dead.count(nn.first) || dead.count(nn.second);
  if (nest_hit) {
    auto orbs = face_orbits(g);
    auto remap = [&](int d) {
      for (auto& orb : orbs) {
        if (std::find(orb.begin(), orb.end(), d) == orb.end()) continue;
        for (int e : orb)
          if (!dead.count(e)) return e;
        throw std::invalid_argument("rewrite would swallow a nested region");
      }
      return d;
    };
    for (auto& nn : h.nests) {
      if (dead.count(nn.first)) nn.first = remap(nn.first);
      if (dead.count(nn.second)) nn.second = remap(nn.second);
    }
  }

  for (int v : kill) h.verts.erase(v);
  for (int d : dead) {
    h.alpha_.erase(d);
    h.ecolor_.erase(d);
  }

  int vbase = h.fresh_vertex_id();
  int nd = g.fresh_dart_id();
  std::map<int, int> dm;
  auto newdart = [&](int fd) {
    auto it = dm.find(fd);
    if (it != dm.end()) return it->second;
    return dm[fd] = nd++;
  };
  for (int t = 0; t < static_cast<int>(repl.verts.size()); ++t) {
    const auto& fv = repl.verts[t];
    Vertex nv;
    nv.kind = fv.kind;
    nv.c1 = fv.c1;
    nv.c2 = fv.c2;
    std::vector<int> rot = fv.rot;
    if (mirrored) std::reverse(rot.begin(), rot.end());
    for (int fd : rot) nv.rot.push_back(newdart(fd));
    h.verts[vbase + t] = std::move(nv);
  }
  for (auto& [fd, c] : repl.color)
    if (dm.count(fd)) h.ecolor_[dm[fd]] = c;
  for (auto& [fd, fe] : repl.alpha)
    if (dm.count(fd) && dm.count(fe)) h.alpha_[dm[fd]] = dm[fe];

  // interface wiring: each position has an inner end (fresh dart, or an arc
  // to another position) and an outer end (ambient dart, or a link to the
  // position its leg was attached to)
  std::vector<int> freshd(K, -1), arcto(K, -1), outlink(K, -1), outterm(K, -1);
  for (int k = 0; k < K; ++k) {
    int fd = repl.legs[k];
    auto it = repl.alpha.find(fd);
    if (it != repl.alpha.end() && !dm.count(fd)) {
      for (int j = 0; j < K; ++j)
        if (repl.legs[j] == it->second) arcto[k] = j;
      if (arcto[k] < 0) throw std::logic_error("rewrite: dangling arc");
    } else {
      freshd[k] = dm.at(fd);
    }
    int t = target[k];
    if (dead.count(t)) {
      auto bp = boundpos.find(t);
      if (bp == boundpos.end()) throw std::invalid_argument("stale site");
      outlink[k] = bp->second;
    } else {
      outterm[k] = t;
    }
  }
  std::vector<char> used(K, 0), touched(K, 0);
  for (int k = 0; k < K; ++k) {
    for (int side = 0; side < 2; ++side) {
      int a = (side == 0 ? freshd[k] : outterm[k]);
      if (a < 0 || (used[k] & (1 << side))) continue;
      used[k] |= static_cast<char>(1 << side);
      touched[k] = 1;
      int ck = k, cs = 1 - side, guard = 0;
      while (true) {
        if (++guard > 2 * K + 4) throw std::invalid_argument("stale site");
        touched[ck] = 1;
        int b = (cs == 0 ? freshd[ck] : outterm[ck]);
        if (b >= 0) {
          used[ck] |= static_cast<char>(1 << cs);
          h.alpha_[a] = b;
          h.alpha_[b] = a;
          break;
        }
        int j = (cs == 0 ? arcto[ck] : outlink[ck]);
        ck = j;
        cs = 1 - cs;
      }
    }
  }
  for (int k = 0; k < K; ++k)
    if (!touched[k] && freshd[k] < 0 && outterm[k] < 0)
      throw std::invalid_argument("rewrite would split off a closed strand");

  h.reindex();
  // boundary legs are whatever the hub darts now pair with
  if (h.hub >= 0) {
    const auto& hr = h.vert(h.hub).rot;
    h.legs.clear();
    for (auto it = hr.rbegin(); it != hr.rend(); ++it)
      h.legs.push_back(h.alpha(*it));
  }
  if (leg_out) *leg_out = freshd;
  if (dart_out) *dart_out = dm;

  // nesting bookkeeping: drop nests made redundant by new connections, add
  // the hinted one when a splice disconnects the graph
  auto comps = dart_components(h);
  if (comps.size() <= 1) {
    h.nests.clear();
  } else {
    std::unordered_map<int, int> comp_of;
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
      for (int d : comps[i]) comp_of[d] = i;
    std::vector<int> par(comps.size());
    for (int i = 0; i < static_cast<int>(par.size()); ++i) par[i] = i;
    std::function<int(int)> find = [&](int x) {
      return par[x] == x ? x : par[x] = find(par[x]);
    };
    std::vector<std::pair<int, int>> kept;
    auto add = [&](std::pair<int, int> nn) {
      auto ia = comp_of.find(nn.first), ib = comp_of.find(nn.second);
      if (ia == comp_of.end() || ib == comp_of.end()) return;
      int a = find(ia->second), b = find(ib->second);
      if (a == b) return;
      par[a] = b;
      kept.push_back(nn);
    };
    for (auto& nn : h.nests) add(nn);
    if (kept.size() + 1 < comps.size() && split_hint) add(*split_hint);
    if (kept.size() + 1 != comps.size())
      throw std::invalid_argument(
          "rewrite changes the nesting pattern in an unsupported way");
    h.nests = kept;
  }
  require_valid(h);
  return h;
}

}  // namespace nweave::detail
