#pragma once

// A* maze router over the track lattice. The first attempt confines wires
// to the rule's preferred layers at the rule width; if that search fails
// the net is retried with default widths on all layers, where preference
// turns into a soft cost penalty. Cost = lateral steps + via penalty per
// layer change (+ non-preferred penalty per step in the fallback).

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "salsy/grid.hpp"
#include "salsy/layout.hpp"

namespace salsy {

struct RouteRule {
  std::vector<int> preferred_layers;  // empty = all routing layers
  Dbu width = 0;                      // 0 = per-layer default width
  int via_cut_count = 1;
  int priority = 0;
  long long via_penalty = 2;      // in track units
  long long nonpref_penalty = 10; // per lateral step off preferred layers
};

struct RouteResult {
  bool ok = false;
  bool fallback_used = false;
  long long cost = 0;
  std::string error;
};

namespace route_detail {

struct Node {
  int layer, xi, yi;
  bool operator==(const Node&) const = default;
  bool operator<(const Node& o) const {
    return std::tie(layer, xi, yi) < std::tie(o.layer, o.xi, o.yi);
  }
};

struct SearchSpec {
  std::vector<char> lateral_ok;      // by layer index (1-based)
  std::vector<char> preferred;       // cost-free layers
  std::vector<Dbu> width;            // probe width by layer
  long long via_penalty = 2;
  long long nonpref_penalty = 0;     // 0 in the constrained attempt
};

inline const ViaDef* pick_via(const Technology& tech, int bottom, int min_cuts) {
  const ViaDef* best = nullptr;
  for (const auto& v : tech.vias) {
    if (v.bottom != bottom || v.cut_count() < min_cuts) continue;
    if (!best || v.cut_count() < best->cut_count() ||
        (v.cut_count() == best->cut_count() && v.name < best->name))
      best = &v;
  }
  return best;
}

// Grid nodes covered by a pin's pad rects on its layer.
inline std::vector<Node> pin_nodes(const RouteGrid& grid, const Layout& L,
                                   const NetPin& pin) {
  int layer = 0;
  std::vector<Node> out;
  const auto& xs = grid.xs();
  const auto& ys = grid.ys();
  for (const auto& r : net_pin_shapes(L, pin, &layer)) {
    auto x0 = std::lower_bound(xs.begin(), xs.end(), r.lx);
    auto y0 = std::lower_bound(ys.begin(), ys.end(), r.ly);
    for (auto xi = x0; xi != xs.end() && *xi <= r.hx; ++xi)
      for (auto yi = y0; yi != ys.end() && *yi <= r.hy; ++yi)
        out.push_back({layer, static_cast<int>(xi - xs.begin()),
                       static_cast<int>(yi - ys.begin())});
  }
  return out;
}

struct PathStep {
  Node node;
  bool via_from_below = false;
};

// Deterministic A* from a source set to a target set.
inline bool astar(const RouteGrid& grid, const SearchSpec& spec, int net,
                  const std::vector<Node>& sources, const std::set<Node>& targets,
                  std::vector<Node>* path_out, long long* cost_out) {
  if (sources.empty() || targets.empty()) return false;
  int L = grid.tech().num_routing();
  int X = static_cast<int>(grid.xs().size());
  int Y = static_cast<int>(grid.ys().size());
  auto id = [&](const Node& n) { return (n.layer - 1) * X * Y + n.xi * Y + n.yi; };
  const long long kInf = (1LL << 62);
  std::vector<long long> dist(static_cast<size_t>(L) * X * Y, kInf);
  std::vector<int> from(static_cast<size_t>(L) * X * Y, -1);

  auto h = [&](const Node& n) {
    long long best = kInf;
    for (const auto& t : targets)
      best = std::min<long long>(best, std::abs(n.xi - t.xi) + std::abs(n.yi - t.yi));
    return best;
  };

  using QE = std::tuple<long long, long long, int>;  // f, g, id
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  std::vector<Node> node_of(static_cast<size_t>(L) * X * Y);
  auto push = [&](const Node& n, long long g, int parent) {
    int i = id(n);
    if (g >= dist[i]) return;
    dist[i] = g;
    from[i] = parent;
    node_of[i] = n;
    pq.push({g + h(n), g, i});
  };
  for (const auto& s : sources) push(s, 0, -1);

  int goal = -1;
  while (!pq.empty()) {
    auto [f, g, i] = pq.top();
    (void)f;
    pq.pop();
    if (g != dist[i]) continue;
    Node n = node_of[i];
    if (targets.count(n)) {
      goal = i;
      break;
    }
    bool horiz = grid.horizontal(n.layer);
    // Lateral moves along the layer direction.
    if (spec.lateral_ok[n.layer]) {
      long long step = 1 + (spec.preferred[n.layer] ? 0 : spec.nonpref_penalty);
      for (int d : {-1, 1}) {
        Node m = n;
        int& run = horiz ? m.xi : m.yi;
        run += d;
        if (run < 0 || run >= (horiz ? X : Y)) continue;
        int track = horiz ? n.yi : n.xi;
        Dbu a = horiz ? grid.xs()[std::min(n.xi, m.xi)] : grid.ys()[std::min(n.yi, m.yi)];
        Dbu b = horiz ? grid.xs()[std::max(n.xi, m.xi)] : grid.ys()[std::max(n.yi, m.yi)];
        if (grid.wire_blocked(n.layer, track, a, b, spec.width[n.layer], net)) continue;
        push(m, g + step, i);
      }
    }
    // Vias to the adjacent layers.
    for (int d : {-1, 1}) {
      int other = n.layer + d;
      if (other < 1 || other > L) continue;
      int bottom = std::min(n.layer, other);
      const ViaDef* vd = pick_via(grid.tech(), bottom, 1);
      if (!vd) continue;
      Point at{grid.xs()[n.xi], grid.ys()[n.yi]};
      bool blocked = false;
      for (const auto& r : vd->bottom_rects)
        blocked |= grid.pad_blocked(bottom, {r.lx + at.x, r.ly + at.y, r.hx + at.x,
                                             r.hy + at.y},
                                    net);
      for (const auto& r : vd->top_rects)
        blocked |= grid.pad_blocked(bottom + 1, {r.lx + at.x, r.ly + at.y,
                                                 r.hx + at.x, r.hy + at.y},
                                    net);
      if (blocked) continue;
      push({other, n.xi, n.yi}, g + spec.via_penalty, i);
    }
  }
  if (goal < 0) return false;
  std::vector<Node> rev;
  for (int i = goal; i >= 0; i = from[i]) rev.push_back(node_of[i]);
  std::reverse(rev.begin(), rev.end());
  *path_out = rev;
  *cost_out = dist[goal];
  return true;
}

// Turn a node path into segments and vias appended to the net.
inline void commit_path(const RouteGrid& grid, const Technology& tech,
                        const std::vector<Node>& path, const SearchSpec& spec,
                        int min_cuts, Net& net) {
  auto coord = [&](const Node& n) -> Point {
    return {grid.xs()[n.xi], grid.ys()[n.yi]};
  };
  size_t i = 0;
  while (i + 1 < path.size()) {
    if (path[i + 1].layer != path[i].layer) {
      int bottom = std::min(path[i].layer, path[i + 1].layer);
      const ViaDef* vd = pick_via(tech, bottom, min_cuts);
      if (!vd || vd->cut_count() < min_cuts) vd = pick_via(tech, bottom, 1);
      ViaInstance vi;
      for (size_t v = 0; v < tech.vias.size(); ++v)
        if (&tech.vias[v] == vd) vi.via_def = static_cast<int>(v);
      vi.at = coord(path[i]);
      net.vias.push_back(vi);
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < path.size() && path[j + 1].layer == path[i].layer) ++j;
    WireSegment s;
    s.layer = path[i].layer;
    s.a = coord(path[i]);
    s.b = coord(path[j]);
    s.width = spec.width[s.layer];
    if (!(s.a == s.b)) net.route.push_back(s);
    i = j;
  }
}

}  // namespace route_detail

// Route one net under a rule. On failure with the constrained spec the
// search is retried with defaults (fallback_used = true); if that fails
// too the grid and layout are left untouched and an error is reported.
inline RouteResult route_net(RouteGrid& grid, Layout& L, int net_index,
                             const RouteRule& rule) {
  using namespace route_detail;
  Net& net = L.nets[net_index];
  RouteResult res;
  if (net.pins.size() < 2) {
    res.error = "net '" + net.name + "' has fewer than 2 pins";
    return res;
  }
  const Technology& tech = *L.tech;
  int Lcount = tech.num_routing();

  // Validate the rule width against every preferred layer.
  for (int pl : rule.preferred_layers) {
    const Layer& lay = tech.layer(pl);
    if (rule.width > 0 && (rule.width < lay.min_width || rule.width > lay.max_width)) {
      res.error = "rule width " + std::to_string(rule.width) +
                  " outside bounds of layer " + lay.name;
      return res;
    }
  }

  auto make_spec = [&](bool fallback) {
    SearchSpec spec;
    spec.lateral_ok.assign(Lcount + 1, 0);
    spec.preferred.assign(Lcount + 1, 0);
    spec.width.assign(Lcount + 1, 0);
    bool restrict = !fallback && !rule.preferred_layers.empty();
    for (int l = 1; l <= Lcount; ++l) {
      bool pref = rule.preferred_layers.empty() ||
                  std::count(rule.preferred_layers.begin(),
                             rule.preferred_layers.end(), l) > 0;
      spec.preferred[l] = pref;
      spec.lateral_ok[l] = restrict ? pref : 1;
      const Layer& lay = tech.layer(l);
      Dbu w = (!fallback && rule.width > 0) ? rule.width : lay.default_width;
      spec.width[l] = std::clamp(w, lay.min_width, lay.max_width);
    }
    spec.via_penalty = rule.via_penalty;
    spec.nonpref_penalty = fallback ? rule.nonpref_penalty : 0;
    return spec;
  };

  // Rip up the existing route; restore it if anything fails.
  Net saved = net;
  grid.remove_net_geometry(net_index);
  net.route.clear();
  net.vias.clear();

  auto attempt = [&](bool fallback) -> bool {
    SearchSpec spec = make_spec(fallback);
    std::set<Node> tree;
    for (const auto& n : pin_nodes(grid, L, net.pins[0])) tree.insert(n);
    if (tree.empty()) return false;
    long long total = 0;
    for (size_t pi = 1; pi < net.pins.size(); ++pi) {
      auto sources = pin_nodes(grid, L, net.pins[pi]);
      if (sources.empty()) return false;
      bool already = false;
      for (const auto& s : sources) already |= tree.count(s) > 0;
      if (already) {
        for (const auto& s : sources) tree.insert(s);
        continue;
      }
      std::vector<Node> path;
      long long cost = 0;
      if (!astar(grid, spec, net_index, sources, tree, &path, &cost)) return false;
      commit_path(grid, tech, path, spec, fallback ? 1 : rule.via_cut_count, net);
      total += cost;
      for (const auto& n : path) tree.insert(n);
      for (const auto& s : sources) tree.insert(s);
    }
    res.cost = total;
    return true;
  };

  bool constrained_ok = attempt(false);
  if (!constrained_ok) {
    net.route.clear();
    net.vias.clear();
    if (attempt(true)) {
      res.fallback_used = true;
    } else {
      net = saved;  // untouched layout, grid restored below
      grid.add_net_geometry(L, net_index);
      res.error = "unroutable net '" + net.name + "'";
      return res;
    }
  }
  grid.add_net_geometry(L, net_index);
  res.ok = true;
  return res;
}

// Widen a routed net in place. Each segment is clamped to
// min(old*factor, cap, layer max width) and kept at its old width where
// the clamp falls below it or spacing does not permit the new width.
struct WidenReport {
  int widened = 0;
  int kept = 0;          // spacing conflicts
  bool cap_below = false;  // cap under the current width somewhere
  Dbu final_width = 0;     // widest resulting segment
};

inline WidenReport widen_net(RouteGrid& grid, Layout& L, int net_index,
                             double factor, Dbu cap) {
  Net& net = L.nets[net_index];
  WidenReport rep;
  grid.remove_net_geometry(net_index);
  for (auto& s : net.route) {
    const Layer& lay = L.tech->layer(s.layer);
    Dbu want = std::min<Dbu>(
        {static_cast<Dbu>(std::llround(s.width * factor)), cap, lay.max_width});
    if (want < s.width) {
      rep.cap_below = true;
      want = s.width;
    }
    if (want == s.width) {
      rep.final_width = std::max(rep.final_width, s.width);
      continue;
    }
    WireSegment wide = s;
    wide.width = want;
    bool horiz = s.horizontal();
    int track = grid.nearest_track(s.layer, horiz ? s.a.y : s.a.x);
    Dbu a = horiz ? std::min(s.a.x, s.b.x) : std::min(s.a.y, s.b.y);
    Dbu b = horiz ? std::max(s.a.x, s.b.x) : std::max(s.a.y, s.b.y);
    if (grid.wire_blocked(s.layer, track, a, b, want, net_index)) {
      ++rep.kept;
    } else {
      s.width = want;
      ++rep.widened;
    }
    rep.final_width = std::max(rep.final_width, s.width);
  }
  grid.add_net_geometry(L, net_index);
  return rep;
}

// Replace single-cut vias between `bottom` and the next layer with the
// largest multi-cut definition that keeps spacing clean; hemmed-in vias
// are skipped.
struct MulticutReport {
  int converted = 0;
  int skipped = 0;
};

inline MulticutReport insert_multicut_vias(RouteGrid& grid, Layout& L, int bottom) {
  using route_detail::Node;
  MulticutReport rep;
  const Technology& tech = *L.tech;

  // Candidate defs for the pair, largest first, name as the tiebreak.
  std::vector<int> candidates;
  for (size_t i = 0; i < tech.vias.size(); ++i)
    if (tech.vias[i].bottom == bottom && tech.vias[i].cut_count() > 1)
      candidates.push_back(static_cast<int>(i));
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (tech.vias[a].cut_count() != tech.vias[b].cut_count())
      return tech.vias[a].cut_count() > tech.vias[b].cut_count();
    return tech.vias[a].name < tech.vias[b].name;
  });
  if (candidates.empty()) return rep;

  // All existing cut geometry between the pair, for cut-to-cut spacing.
  Dbu cut_spacing = tech.cuts.empty() ? 0 : tech.cuts[bottom - 1].min_spacing;
  auto cut_rects_of = [&](const ViaInstance& v) {
    std::vector<Rect> out;
    const ViaDef& vd = tech.vias[v.via_def];
    for (const auto& r : vd.cut_rects)
      out.push_back({r.lx + v.at.x, r.ly + v.at.y, r.hx + v.at.x, r.hy + v.at.y});
    return out;
  };

  for (size_t ni = 0; ni < L.nets.size(); ++ni) {
    Net& net = L.nets[ni];
    for (auto& v : net.vias) {
      const ViaDef& cur = tech.vias[v.via_def];
      if (cur.bottom != bottom || cur.cut_count() != 1) continue;
      int chosen = -1;
      for (int cand : candidates) {
        const ViaDef& vd = tech.vias[cand];
        bool blocked = false;
        for (const auto& r : vd.bottom_rects)
          blocked |= grid.pad_blocked(bottom,
                                      {r.lx + v.at.x, r.ly + v.at.y, r.hx + v.at.x,
                                       r.hy + v.at.y},
                                      static_cast<int>(ni));
        for (const auto& r : vd.top_rects)
          blocked |= grid.pad_blocked(bottom + 1,
                                      {r.lx + v.at.x, r.ly + v.at.y, r.hx + v.at.x,
                                       r.hy + v.at.y},
                                      static_cast<int>(ni));
        if (!blocked) {
          // Cut-to-cut spacing against other vias of the same pair.
          for (size_t nj = 0; nj < L.nets.size() && !blocked; ++nj) {
            if (nj == ni) continue;
            for (const auto& other : L.nets[nj].vias) {
              if (tech.vias[other.via_def].bottom != bottom) continue;
              for (const auto& cr : cut_rects_of(other))
                for (const auto& r : vd.cut_rects) {
                  Rect mine{r.lx + v.at.x, r.ly + v.at.y, r.hx + v.at.x,
                            r.hy + v.at.y};
                  if (within_spacing(mine, cr, cut_spacing)) blocked = true;
                }
            }
          }
        }
        if (!blocked) {
          chosen = cand;
          break;
        }
      }
      if (chosen < 0) {
        ++rep.skipped;
        continue;
      }
      grid.remove_net_geometry(static_cast<int>(ni));
      v.via_def = chosen;
      grid.add_net_geometry(L, static_cast<int>(ni));
      ++rep.converted;
    }
  }
  return rep;
}

}  // namespace salsy
