#include "nweave/ngraph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace nweave {

std::string Base::str() const {
  switch (kind) {
    case BaseKind::Sphere: return "sphere";
    case BaseKind::Disk: return "disk";
    case BaseKind::Genus: return "genus:" + std::to_string(genus);
  }
  return "?";
}

// ---------- indexing ----------

void NGraph::reindex() {
  where_.clear();
  for (auto& [vid, v] : verts) {
    for (int s = 0; s < (int)v.rot.size(); ++s) {
      int d = v.rot[s];
      if (where_.count(d))
        throw ValidationError("dart " + std::to_string(d) + " appears in two rotations");
      where_[d] = {vid, s};
    }
  }
  for (auto& [a, b] : alpha_) {
    if (!where_.count(a) || !where_.count(b))
      throw ValidationError("edge references unknown dart " +
                            std::to_string(where_.count(a) ? b : a));
  }
}

const std::pair<int, int>& NGraph::at_where(int d) const {
  auto it = where_.find(d);
  if (it == where_.end())
    throw ValidationError("unknown dart " + std::to_string(d));
  return it->second;
}

int NGraph::alpha(int d) const {
  auto it = alpha_.find(d);
  if (it == alpha_.end())
    throw ValidationError("dart " + std::to_string(d) + " is unpaired");
  return it->second;
}

int NGraph::color(int d) const {
  auto it = ecolor_.find(d);
  if (it == ecolor_.end())
    throw ValidationError("dart " + std::to_string(d) + " has no color");
  return it->second;
}

int NGraph::sigma(int d) const {
  auto [vid, s] = at_where(d);
  const auto& r = verts.at(vid).rot;
  return r[(s + 1) % r.size()];
}

int NGraph::sigma_inv(int d) const {
  auto [vid, s] = at_where(d);
  const auto& r = verts.at(vid).rot;
  return r[(s + (int)r.size() - 1) % r.size()];
}

int NGraph::fresh_vertex_id() const {
  return verts.empty() ? 1 : verts.rbegin()->first + 1;
}

int NGraph::fresh_dart_id() const {
  int m = 0;
  for (auto& [d, w] : where_) m = std::max(m, d);
  return m + 1;
}

std::vector<int> NGraph::all_darts() const {
  std::vector<int> ds;
  ds.reserve(where_.size());
  for (auto& [d, w] : where_) ds.push_back(d);
  std::sort(ds.begin(), ds.end());
  return ds;
}

// ---------- hub attachment ----------

void attach_hub(NGraph& g) {
  if (g.base.kind != BaseKind::Disk || g.legs.empty()) return;
  g.reindex();
  int hv = g.fresh_vertex_id();
  int nd = g.fresh_dart_id();
  Vertex hubv;
  hubv.kind = VKind::Hub;
  for (int i = (int)g.legs.size() - 1; i >= 0; --i) {
    int leg = g.legs[i];
    int hd = nd++;
    hubv.rot.push_back(hd);
    g.alpha_[leg] = hd;
    g.alpha_[hd] = leg;
    g.ecolor_[hd] = g.ecolor_.at(leg);
  }
  g.verts[hv] = std::move(hubv);
  g.hub = hv;
  g.reindex();
}

// ---------- NGF parsing ----------

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::vector<int> parse_int_list(const std::string& s, int line) {
  std::vector<int> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      cur = trim(cur);
      if (cur.empty()) throw ParseError(line, "empty entry in list");
      try {
        out.push_back(std::stoi(cur));
      } catch (...) {
        throw ParseError(line, "bad integer '" + cur + "'");
      }
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

int parse_int(const std::string& s, int line) {
  try {
    size_t pos;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw ParseError(line, "bad integer '" + s + "'");
    return v;
  } catch (ParseError&) {
    throw;
  } catch (...) {
    throw ParseError(line, "bad integer '" + s + "'");
  }
}

Vertex parse_kind(const std::string& spec, int line) {
  Vertex v;
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError(line, "bad vertex kind '" + spec + "'");
  std::string name = spec.substr(0, colon), args = spec.substr(colon + 1);
  if (name == "trivalent") {
    v.kind = VKind::Trivalent;
    v.c1 = parse_int(args, line);
  } else if (name == "hex") {
    v.kind = VKind::Hex;
    v.c1 = parse_int(args, line);
    v.c2 = v.c1 + 1;
  } else if (name == "bend") {
    v.kind = VKind::Bend;
    v.c1 = parse_int(args, line);
  } else if (name == "cross") {
    auto parts = parse_int_list(args, line);
    if (parts.size() != 2) throw ParseError(line, "cross needs two colors");
    v.kind = VKind::Cross;
    v.c1 = parts[0];
    v.c2 = parts[1];
  } else {
    throw ParseError(line, "unknown vertex kind '" + name + "'");
  }
  return v;
}

}  // namespace

// Color of a dart at its vertex when no edge line gives it (boundary legs):
// monochromatic vertices force their color; hex/cross alternate, anchored by
// any incident dart with a known edge color, defaulting to even slot = first.
static int infer_slot_color(const NGraph& g, int vid, int slot) {
  const Vertex& v = g.verts.at(vid);
  if (v.kind == VKind::Trivalent || v.kind == VKind::Bend) return v.c1;
  if (v.kind == VKind::Hex || v.kind == VKind::Cross) {
    int parity0 = 0;  // parity of slots carrying color c1
    for (int s = 0; s < (int)v.rot.size(); ++s) {
      auto it = g.ecolor_.find(v.rot[s]);
      if (it != g.ecolor_.end()) {
        parity0 = (it->second == v.c1) ? (s % 2) : 1 - (s % 2);
        break;
      }
    }
    return (slot % 2 == parity0) ? v.c1 : v.c2;
  }
  throw ValidationError("cannot infer color at hub");
}

NGraph parse_ngf(const std::string& text) {
  NGraph g;
  bool have_header = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::vector<std::tuple<int, int, int, int>> edges;  // (a,b,color,line)
  std::vector<std::pair<std::vector<int>, int>> legs_lines;
  std::vector<std::tuple<int, int, int>> nest_lines;
  std::map<int, int> rot_line;  // vertex -> line of its rot statement
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto tok = split_ws(line);
    if (!have_header) {
      if (tok.size() != 3 || tok[0] != "ngraph" || tok[1].rfind("n=", 0) != 0 ||
          tok[2].rfind("base=", 0) != 0)
        throw ParseError(lineno, "expected header 'ngraph n=<N> base=<...>'");
      g.n = parse_int(tok[1].substr(2), lineno);
      std::string b = tok[2].substr(5);
      if (b == "sphere")
        g.base = {BaseKind::Sphere, 0};
      else if (b == "disk")
        g.base = {BaseKind::Disk, 0};
      else if (b.rfind("genus:", 0) == 0)
        g.base = {BaseKind::Genus, parse_int(b.substr(6), lineno)};
      else
        throw ParseError(lineno, "unknown base '" + b + "'");
      have_header = true;
      continue;
    }
    if (tok[0] == "v") {
      if (tok.size() != 3) throw ParseError(lineno, "expected 'v <id> <kind>'");
      int id = parse_int(tok[1], lineno);
      if (g.verts.count(id)) throw ParseError(lineno, "duplicate vertex " + tok[1]);
      g.verts[id] = parse_kind(tok[2], lineno);
    } else if (tok[0] == "rot") {
      auto eq = line.find('=');
      if (tok.size() < 3 || eq == std::string::npos)
        throw ParseError(lineno, "expected 'rot <id> = <darts>'");
      int id = parse_int(tok[1], lineno);
      if (!g.verts.count(id)) throw ParseError(lineno, "rot for unknown vertex " + tok[1]);
      if (!g.verts[id].rot.empty()) throw ParseError(lineno, "duplicate rot for vertex " + tok[1]);
      g.verts[id].rot = parse_int_list(line.substr(eq + 1), lineno);
      rot_line[id] = lineno;
    } else if (tok[0] == "e") {
      if (tok.size() != 4 || tok[3].rfind("color=", 0) != 0)
        throw ParseError(lineno, "expected 'e <dartA> <dartB> color=<c>'");
      edges.emplace_back(parse_int(tok[1], lineno), parse_int(tok[2], lineno),
                         parse_int(tok[3].substr(6), lineno), lineno);
    } else if (tok[0] == "legs") {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(lineno, "expected 'legs = <darts>'");
      legs_lines.push_back({parse_int_list(line.substr(eq + 1), lineno), lineno});
    } else if (tok[0] == "nest") {
      if (tok.size() != 4 || tok[2] != "in")
        throw ParseError(lineno, "expected 'nest <dartA> in <dartB>'");
      nest_lines.emplace_back(parse_int(tok[1], lineno), parse_int(tok[3], lineno), lineno);
    } else {
      throw ParseError(lineno, "unknown statement '" + tok[0] + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  try {
    g.reindex();
  } catch (const ValidationError& e) {
    throw ParseError(lineno, e.what());
  }
  for (auto [a, b, c, ln] : edges) {
    if (!g.has_dart(a) || !g.has_dart(b))
      throw ParseError(ln, "edge references unknown dart");
    if (a == b) throw ParseError(ln, "edge pairs a dart with itself");
    if (g.alpha_.count(a) || g.alpha_.count(b)) throw ParseError(ln, "dart paired twice");
    g.alpha_[a] = b;
    g.alpha_[b] = a;
    g.ecolor_[a] = c;
    g.ecolor_[b] = c;
  }
  if (legs_lines.size() > 1) throw ParseError(legs_lines[1].second, "duplicate legs line");
  if (!legs_lines.empty()) {
    if (g.base.kind != BaseKind::Disk)
      throw ParseError(legs_lines[0].second, "legs on non-disk base");
    g.legs = legs_lines[0].first;
    for (int d : g.legs) {
      if (!g.has_dart(d)) throw ParseError(legs_lines[0].second, "unknown leg dart");
      if (g.alpha_.count(d)) throw ParseError(legs_lines[0].second, "leg dart is paired");
      g.ecolor_[d] = infer_slot_color(g, g.vertex_of(d), g.slot_of(d));
    }
  }
  std::set<int> legset(g.legs.begin(), g.legs.end());
  for (int d : g.all_darts())
    if (!g.alpha_.count(d) && !legset.count(d))
      throw ParseError(lineno, "dart " + std::to_string(d) +
                                   " is neither paired nor a boundary leg");
  for (auto [a, b, ln] : nest_lines) {
    if (!g.has_dart(a) || !g.has_dart(b)) throw ParseError(ln, "nest references unknown dart");
    g.nests.push_back({a, b});
  }
  attach_hub(g);
  return g;
}

NGraph load_ngf(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_ngf(ss.str());
}

std::string print_ngf(const NGraph& g) {
  std::ostringstream out;
  out << "ngraph n=" << g.n << " base=" << g.base.str() << "\n";
  auto is_hub_v = [&](int vid) { return vid == g.hub; };
  for (auto& [vid, v] : g.verts) {
    if (is_hub_v(vid)) continue;
    out << "v " << vid << " ";
    switch (v.kind) {
      case VKind::Trivalent: out << "trivalent:" << v.c1; break;
      case VKind::Hex: out << "hex:" << v.c1; break;
      case VKind::Cross: out << "cross:" << v.c1 << "," << v.c2; break;
      case VKind::Bend: out << "bend:" << v.c1; break;
      case VKind::Hub: break;
    }
    out << "\n";
  }
  for (auto& [vid, v] : g.verts) {
    if (is_hub_v(vid)) continue;
    out << "rot " << vid << " =";
    for (size_t i = 0; i < v.rot.size(); ++i) out << (i ? "," : " ") << v.rot[i];
    out << "\n";
  }
  std::set<std::pair<int, int>> printed;
  std::vector<std::tuple<int, int, int>> elines;
  for (auto& [a, b] : g.alpha_) {
    if (a > b) continue;
    if (g.hub >= 0 && (g.is_hub_dart(a) || g.is_hub_dart(b))) continue;
    elines.emplace_back(a, b, g.ecolor_.at(a));
  }
  std::sort(elines.begin(), elines.end());
  for (auto& [a, b, c] : elines) out << "e " << a << " " << b << " color=" << c << "\n";
  if (!g.legs.empty()) {
    out << "legs =";
    for (size_t i = 0; i < g.legs.size(); ++i) out << (i ? "," : " ") << g.legs[i];
    out << "\n";
  }
  auto ns = g.nests;
  std::sort(ns.begin(), ns.end());
  for (auto& [a, b] : ns) out << "nest " << a << " in " << b << "\n";
  return out.str();
}

// ---------- faces ----------

std::vector<std::vector<int>> face_orbits(const NGraph& g) {
  std::vector<std::vector<int>> orbits;
  std::set<int> seen;
  for (int d0 : g.all_darts()) {
    if (seen.count(d0)) continue;
    std::vector<int> orb;
    int d = d0;
    do {
      orb.push_back(d);
      seen.insert(d);
      d = g.face_next(d);
    } while (d != d0);
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

namespace {
struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};
}  // namespace

std::vector<std::vector<int>> faces(const NGraph& g) {
  auto orbits = face_orbits(g);
  if (orbits.empty()) return {{}};
  std::unordered_map<int, int> orb_of;
  for (int i = 0; i < (int)orbits.size(); ++i)
    for (int d : orbits[i]) orb_of[d] = i;
  DSU dsu((int)orbits.size());
  for (auto& [a, b] : g.nests) dsu.unite(orb_of.at(a), orb_of.at(b));
  std::map<int, std::vector<int>> merged;
  for (int i = 0; i < (int)orbits.size(); ++i) {
    auto& f = merged[dsu.find(i)];
    f.insert(f.end(), orbits[i].begin(), orbits[i].end());
  }
  std::vector<std::vector<int>> out;
  for (auto& [k, f] : merged) out.push_back(std::move(f));
  return out;
}

std::unordered_map<int, int> face_of_dart(const NGraph& g) {
  std::unordered_map<int, int> out;
  auto fs = faces(g);
  for (int i = 0; i < (int)fs.size(); ++i)
    for (int d : fs[i]) out[d] = i;
  return out;
}

// ---------- validation ----------

// connected components of the dart set under sigma and alpha
std::vector<std::vector<int>> dart_components(const NGraph& g) {
  std::vector<std::vector<int>> comps;
  std::set<int> seen;
  for (int d0 : g.all_darts()) {
    if (seen.count(d0)) continue;
    std::vector<int> comp, stack{d0};
    seen.insert(d0);
    while (!stack.empty()) {
      int d = stack.back();
      stack.pop_back();
      comp.push_back(d);
      for (int e : {g.sigma(d), g.alpha(d)})
        if (!seen.count(e)) {
          seen.insert(e);
          stack.push_back(e);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

ValidationReport validate(const NGraph& g) {
  ValidationReport r;
  auto bad = [&](std::string rule, std::string subject, std::string detail) {
    r.ok = false;
    r.violations.push_back({std::move(rule), std::move(subject), std::move(detail)});
  };
  if (g.n < 2) bad("sheet-count", "graph", "n must be >= 2");
  bool structural_ok = true;

  for (auto& [vid, v] : g.verts) {
    std::string subj = "vertex " + std::to_string(vid);
    if (v.rot.empty()) {
      bad("isolated-vertex", subj, "vertex has no incident darts");
      continue;
    }
    int deg = (int)v.rot.size();
    std::vector<int> cols;
    bool colors_known = true;
    for (int d : v.rot) {
      auto it = g.ecolor_.find(d);
      if (it == g.ecolor_.end()) {
        colors_known = false;
        break;
      }
      cols.push_back(it->second);
    }
    switch (v.kind) {
      case VKind::Trivalent:
        if (deg != 3) bad("degree", subj, "trivalent vertex must have 3 darts");
        if (v.c1 < 1 || v.c1 > g.n - 1) bad("color-range", subj, "vertex color out of range");
        if (colors_known)
          for (int c : cols)
            if (c != v.c1) {
              bad("monochromatic", subj, "trivalent vertex has an off-color edge");
              break;
            }
        break;
      case VKind::Bend:
        if (deg != 2) bad("degree", subj, "bend vertex must have 2 darts");
        if (v.c1 < 1 || v.c1 > g.n - 1) bad("color-range", subj, "vertex color out of range");
        if (colors_known)
          for (int c : cols)
            if (c != v.c1) {
              bad("monochromatic", subj, "bend vertex has an off-color edge");
              break;
            }
        break;
      case VKind::Hex: {
        if (deg != 6) bad("degree", subj, "hexagonal vertex must have 6 darts");
        if (v.c1 < 1 || v.c1 + 1 > g.n - 1) bad("color-range", subj, "hex colors out of range");
        if (colors_known && deg == 6) {
          bool ok01 = true, ok10 = true;
          for (int s = 0; s < 6; ++s) {
            if (cols[s] != (s % 2 ? v.c2 : v.c1)) ok01 = false;
            if (cols[s] != (s % 2 ? v.c1 : v.c2)) ok10 = false;
          }
          if (!ok01 && !ok10)
            bad("interlacing", subj, "hexagonal edge colors must alternate i, i+1");
        }
        break;
      }
      case VKind::Cross: {
        if (deg != 4) bad("degree", subj, "crossing vertex must have 4 darts");
        if (v.c1 < 1 || v.c1 > g.n - 1 || v.c2 < 1 || v.c2 > g.n - 1)
          bad("color-range", subj, "crossing colors out of range");
        if (std::abs(v.c1 - v.c2) < 2)
          bad("adjacent-cross", subj, "crossing colors must differ by at least 2");
        if (colors_known && deg == 4) {
          bool ok01 = true, ok10 = true;
          for (int s = 0; s < 4; ++s) {
            if (cols[s] != (s % 2 ? v.c2 : v.c1)) ok01 = false;
            if (cols[s] != (s % 2 ? v.c1 : v.c2)) ok10 = false;
          }
          if (!ok01 && !ok10)
            bad("interlacing", subj, "crossing edge colors must alternate");
        }
        break;
      }
      case VKind::Hub:
        if (vid != g.hub) bad("hub", subj, "stray hub vertex");
        break;
    }
  }

  for (int d : g.all_darts()) {
    auto it = g.alpha_.find(d);
    if (it == g.alpha_.end()) {
      bad("unpaired-dart", "dart " + std::to_string(d), "dart is neither paired nor a leg");
      structural_ok = false;
      continue;
    }
    int b = it->second;
    if (b == d) {
      bad("unpaired-dart", "dart " + std::to_string(d), "dart paired with itself");
      structural_ok = false;
    } else if (g.alpha_.at(b) != d) {
      bad("unpaired-dart", "dart " + std::to_string(d), "pairing is not an involution");
      structural_ok = false;
    }
    auto ca = g.ecolor_.find(d), cb = g.ecolor_.find(b);
    if (ca == g.ecolor_.end() || cb == g.ecolor_.end()) {
      bad("edge-color", "dart " + std::to_string(d), "missing edge color");
    } else {
      if (ca->second != cb->second)
        bad("edge-color", "edge " + std::to_string(d) + "-" + std::to_string(b),
            "darts of one edge carry different colors");
      if (ca->second < 1 || ca->second > g.n - 1)
        bad("color-range", "dart " + std::to_string(d), "edge color out of range");
    }
  }

  if (!g.legs.empty() && g.base.kind != BaseKind::Disk)
    bad("legs-base", "graph", "boundary legs on a closed base");

  if (structural_ok && g.num_darts() > 0) {
    auto comps = dart_components(g);
    int c = (int)comps.size();
    if (c > 1) {
      if ((int)g.nests.size() != c - 1)
        bad("nesting", "graph",
            "disconnected graph needs exactly (components-1) nest statements");
      std::unordered_map<int, int> comp_of;
      for (int i = 0; i < c; ++i)
        for (int d : comps[i]) comp_of[d] = i;
      DSU dsu(c);
      for (auto& [a, b] : g.nests) dsu.unite(comp_of.at(a), comp_of.at(b));
      std::set<int> roots;
      for (int i = 0; i < c; ++i) roots.insert(dsu.find(i));
      if (roots.size() != 1) bad("nesting", "graph", "nest statements do not connect all components");
      if (g.base.kind == BaseKind::Genus && g.base.genus != 0)
        bad("nesting", "graph", "disconnected graphs supported only on sphere/disk");
    } else if (!g.nests.empty()) {
      bad("nesting", "graph", "nest statements on a connected graph");
    }
    if (r.ok) {
      int V = 0;
      for (auto& [vid, v] : g.verts)
        if (!v.rot.empty()) ++V;
      int E = g.num_darts() / 2;
      int F = (int)faces(g).size();
      int expect = (c == 1) ? g.base.closed_euler() : c + 1;
      if (V - E + F != expect)
        bad("euler", "graph",
            "V-E+F = " + std::to_string(V - E + F) + ", expected " + std::to_string(expect) +
                " for base " + g.base.str());
    }
  }
  return r;
}

void require_valid(const NGraph& g) {
  auto r = validate(g);
  if (!r.ok) {
    std::string msg = "invalid N-graph:";
    for (auto& v : r.violations) msg += " [" + v.rule + " @ " + v.subject + ": " + v.detail + "]";
    throw ValidationError(msg);
  }
}

// ---------- boundary word ----------

std::vector<int> boundary_word(const NGraph& g) {
  if (g.base.kind != BaseKind::Disk)
    throw ValidationError("boundary_word requires a disk base");
  std::vector<int> w;
  w.reserve(g.legs.size());
  for (int d : g.legs) w.push_back(g.color(d));
  return w;
}

// ---------- bend smoothing ----------

NGraph smooth_bends(const NGraph& g) {
  NGraph h = g;
  h.reindex();
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = h.verts.begin(); it != h.verts.end(); ++it) {
      auto& [vid, v] = *it;
      if (v.kind != VKind::Bend || v.rot.size() != 2) continue;
      int d1 = v.rot[0], d2 = v.rot[1];
      int a = h.alpha(d1), b = h.alpha(d2);
      if (a == d2) continue;  // lone circle: keep one bend as its marker
      // keep one bend on a bare boundary-to-boundary arc
      if (h.is_hub_dart(a) && h.is_hub_dart(b)) continue;
      h.alpha_[a] = b;
      h.alpha_[b] = a;
      h.alpha_.erase(d1);
      h.alpha_.erase(d2);
      h.ecolor_.erase(d1);
      h.ecolor_.erase(d2);
      // the face through d1 also contains b = alpha(d2), and vice versa
      for (auto& [na, nb] : h.nests) {
        if (na == d1) na = b; else if (na == d2) na = a;
        if (nb == d1) nb = b; else if (nb == d2) nb = a;
      }
      // a removed leg dart hands its boundary attachment to the graph-side
      // dart of the spliced edge
      for (int& leg : h.legs)
        if (leg == d1 || leg == d2) leg = (leg == d1) ? b : a;
      h.verts.erase(it);
      h.reindex();
      changed = true;
      break;
    }
  }
  return h;
}

// ---------- canonical form / isomorphism ----------

namespace {

int kind_code(const Vertex& v) {
  return (int)v.kind * 10000 + v.c1 * 100 + v.c2;
}

struct CompCanon {
  std::vector<long long> enc;
  std::unordered_map<int, int> label;  // dart -> canonical label (0-based)
  std::vector<int> order;              // label -> dart
};

// BFS labeling from one root; neighbors explored as (rotation step, pairing).
CompCanon encode_from(const NGraph& g, int root, bool mirror) {
  CompCanon c;
  auto next = [&](int d) { return mirror ? g.sigma_inv(d) : g.sigma(d); };
  c.label[root] = 0;
  c.order.push_back(root);
  for (size_t i = 0; i < c.order.size(); ++i) {
    int d = c.order[i];
    for (int e : {next(d), g.alpha(d)})
      if (!c.label.count(e)) {
        c.label[e] = (int)c.order.size();
        c.order.push_back(e);
      }
  }
  c.enc.reserve(c.order.size() * 4);
  for (int d : c.order) {
    c.enc.push_back(c.label.at(next(d)));
    c.enc.push_back(c.label.at(g.alpha(d)));
    c.enc.push_back(g.color(d));
    c.enc.push_back(kind_code(g.verts.at(g.vertex_of(d))));
  }
  return c;
}

CompCanon best_canon(const NGraph& g, const std::vector<int>& comp, bool mirror) {
  CompCanon best;
  for (int root : comp) {
    CompCanon c = encode_from(g, root, mirror);
    if (best.enc.empty() || c.enc < best.enc) best = std::move(c);
  }
  return best;
}

struct GraphCanon {
  std::vector<long long> enc;
  std::vector<CompCanon> comps;  // in sorted order
};

GraphCanon graph_canon(const NGraph& g0, bool mirror) {
  NGraph g = smooth_bends(g0);
  GraphCanon gc;
  gc.enc = {g.n, (long long)g.base.kind, g.base.genus};
  auto comps = dart_components(g);
  std::vector<CompCanon> cc;
  for (auto& comp : comps) cc.push_back(best_canon(g, comp, mirror));
  std::vector<int> idx(cc.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return cc[a].enc < cc[b].enc; });
  std::unordered_map<int, int> comp_rank;  // original comp index -> sorted rank
  for (int r = 0; r < (int)idx.size(); ++r) comp_rank[idx[r]] = r;
  std::unordered_map<int, int> comp_of;
  for (int i = 0; i < (int)comps.size(); ++i)
    for (int d : comps[i]) comp_of[d] = i;
  gc.enc.push_back((long long)comps.size());
  for (int r = 0; r < (int)idx.size(); ++r) {
    auto& c = cc[idx[r]];
    gc.enc.push_back((long long)c.order.size());
    gc.enc.insert(gc.enc.end(), c.enc.begin(), c.enc.end());
  }
  // nesting: identify each side by (component rank, min canonical label on its
  // face orbit, traced with the orientation used for the labeling)
  auto face_id = [&](int d) -> std::pair<long long, long long> {
    int ci = comp_of.at(d);
    auto& c = cc[ci];
    // trace the face with the orientation used for the labeling
    auto fnext = [&](int x) {
      return mirror ? g.sigma_inv(g.alpha(x)) : g.face_next(x);
    };
    long long mn = c.label.at(d);
    int x = fnext(d);
    while (x != d) {
      mn = std::min(mn, (long long)c.label.at(x));
      x = fnext(x);
    }
    return {comp_rank.at(ci), mn};
  };
  std::vector<std::array<long long, 4>> nest_enc;
  for (auto& [a, b] : g.nests) {
    auto fa = face_id(a), fb = face_id(b);
    nest_enc.push_back({fa.first, fa.second, fb.first, fb.second});
  }
  std::sort(nest_enc.begin(), nest_enc.end());
  for (auto& ne : nest_enc) gc.enc.insert(gc.enc.end(), ne.begin(), ne.end());
  for (int r : idx) gc.comps.push_back(std::move(cc[r]));
  return gc;
}

}  // namespace

std::string canonical_key(const NGraph& g, bool mirror) {
  auto gc = graph_canon(g, mirror);
  std::ostringstream out;
  for (auto v : gc.enc) out << v << ",";
  return out.str();
}

IsoResult are_isomorphic(const NGraph& g1, const NGraph& g2, bool mirror) {
  auto c1 = graph_canon(g1, false);
  auto c2 = graph_canon(g2, mirror);
  IsoResult res;
  if (c1.enc != c2.enc) return res;
  res.isomorphic = true;
  for (size_t i = 0; i < c1.comps.size(); ++i)
    for (size_t l = 0; l < c1.comps[i].order.size(); ++l)
      res.witness[c1.comps[i].order[l]] = c2.comps[i].order[l];
  return res;
}

}  // namespace nweave
