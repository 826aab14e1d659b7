#pragma once

// Design-quality proxies: cell area, a leakage+dynamic power model, an
// Elmore-based timing model with clocked path boundaries, and DRC-lite
// (width, spacing, track and legality checks).

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "salsy/config.hpp"
#include "salsy/geom_index.hpp"
#include "salsy/layout.hpp"

namespace salsy {

// Functional + buffer footprint; fillers excluded.
inline Area cell_area(const Layout& L) {
  Area total = 0;
  for (const auto& inst : L.instances) {
    if (!inst.placed) continue;
    const CellMaster& m = L.master_of(inst);
    if (m.cls == MasterClass::Filler) continue;
    total += m.width * m.height;
  }
  return total;
}

namespace quality_detail {

// Wire capacitance in fF; width scales capacitance, narrows resistance.
inline double segment_cap(const Layout& L, const WireSegment& s) {
  const Layer& lay = L.tech->layer(s.layer);
  double scale = static_cast<double>(s.width) / lay.default_width;
  return s.length() * lay.unit_c * scale;
}
inline double segment_res(const Layout& L, const WireSegment& s) {
  const Layer& lay = L.tech->layer(s.layer);
  double scale = static_cast<double>(lay.default_width) / s.width;
  return s.length() * lay.unit_r * scale;
}

inline double net_wire_cap(const Layout& L, const Net& net) {
  if (net.routed()) {
    double c = 0;
    for (const auto& s : net.route) c += segment_cap(L, s);
    return c;
  }
  // Unrouted fallback: half-perimeter wirelength at M2 unit capacitance.
  if (net.pins.size() < 2) return 0.0;
  Rect bb;
  bool first = true;
  for (const auto& p : net.pins) {
    int layer = 0;
    for (const auto& r : net_pin_shapes(L, p, &layer)) {
      bb = first ? r : bb.bbox_with(r);
      first = false;
    }
  }
  Dbu hpwl = bb.width() + bb.height();
  return hpwl * L.tech->layer(std::min(2, L.tech->num_routing())).unit_c;
}

inline double net_sink_cap(const Layout& L, const Net& net) {
  double c = 0;
  for (const auto& p : net.pins) {
    if (p.is_io) continue;
    const auto& m = L.master_of(L.instances[p.inst]);
    if (m.pins[p.pin].dir == PinDir::Input) c += m.input_cap_ff;
  }
  return c;
}

}  // namespace quality_detail

// Leakage of every placed instance plus an activity-weighted CV^2f term
// per net. Units: fF, volts, GHz -> microwatts.
inline double power_proxy(const Layout& L, const ScoreConfig& cfg) {
  double leak = 0;
  for (const auto& inst : L.instances)
    if (inst.placed) leak += L.master_of(inst).leakage_uw;
  double f_ghz = 1000.0 / cfg.clock_period_ps;
  double dyn = 0;
  for (const auto& net : L.nets) {
    double c = quality_detail::net_wire_cap(L, net) + quality_detail::net_sink_cap(L, net);
    dyn += cfg.activity * c * cfg.vdd * cfg.vdd * f_ghz;
  }
  return leak + dyn;
}

// ---------------------------------------------------------------------------
// Timing proxy.

struct TimingResult {
  double wns_ps = 0;
  double tns_ps = 0;
  int endpoints = 0;
};

struct TimingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace quality_detail {

struct RcNode {
  Point at;
  int layer = 0;
  double cap = 0;
  std::vector<std::pair<int, double>> edges;  // (node, resistance)
};

// Elmore delay from the driver pin to every sink pin of one routed net.
// Electrical nodes are segment endpoints, via points and pin crossings;
// segments are split where taps land on them.
inline std::map<int, double> elmore_delays(const Layout& L, const Net& net,
                                           int driver_pin_index) {
  std::map<std::pair<int, std::pair<Dbu, Dbu>>, int> key_to_node;
  std::vector<RcNode> nodes;
  auto node_at = [&](int layer, Point p) {
    auto key = std::make_pair(layer, std::make_pair(p.x, p.y));
    auto it = key_to_node.find(key);
    if (it != key_to_node.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    nodes.push_back({p, layer, 0.0, {}});
    key_to_node[key] = id;
    return id;
  };

  // Pin nodes sit at the pad center (a routing-track crossing).
  std::vector<int> pin_node(net.pins.size(), -1);
  std::vector<Point> taps;
  std::vector<int> tap_layer;
  for (size_t i = 0; i < net.pins.size(); ++i) {
    int layer = 0;
    auto shapes = net_pin_shapes(L, net.pins[i], &layer);
    if (shapes.empty()) continue;
    Point c = shapes[0].center();
    pin_node[i] = node_at(layer, c);
    taps.push_back(c);
    tap_layer.push_back(layer);
  }
  for (const auto& v : net.vias) {
    const ViaDef& vd = L.tech->vias[v.via_def];
    int a = node_at(vd.bottom, v.at);
    int b = node_at(vd.top, v.at);
    double r = L.tech->via_r_ohm / std::max(1, vd.cut_count());
    nodes[a].edges.push_back({b, r});
    nodes[b].edges.push_back({a, r});
    taps.push_back(v.at);
    tap_layer.push_back(vd.bottom);
    taps.push_back(v.at);
    tap_layer.push_back(vd.top);
  }
  for (const auto& s : net.route) {
    // Split at every tap strictly inside the segment.
    std::vector<Point> pts{s.a, s.b};
    for (size_t t = 0; t < taps.size(); ++t) {
      if (tap_layer[t] != s.layer) continue;
      Point p = taps[t];
      bool on = s.horizontal()
                    ? (p.y == s.a.y && p.x > std::min(s.a.x, s.b.x) &&
                       p.x < std::max(s.a.x, s.b.x))
                    : (p.x == s.a.x && p.y > std::min(s.a.y, s.b.y) &&
                       p.y < std::max(s.a.y, s.b.y));
      if (on) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
      return std::make_pair(a.x, a.y) < std::make_pair(b.x, b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
      WireSegment sub{s.layer, pts[k], pts[k + 1], s.width};
      int a = node_at(s.layer, pts[k]);
      int b = node_at(s.layer, pts[k + 1]);
      double r = segment_res(L, sub);
      double c = segment_cap(L, sub);
      nodes[a].edges.push_back({b, r});
      nodes[b].edges.push_back({a, r});
      nodes[a].cap += c / 2;
      nodes[b].cap += c / 2;
    }
  }
  // Sink pin loads.
  for (size_t i = 0; i < net.pins.size(); ++i) {
    const auto& p = net.pins[i];
    if (p.is_io || pin_node[i] < 0) continue;
    const auto& m = L.master_of(L.instances[p.inst]);
    if (m.pins[p.pin].dir == PinDir::Input) nodes[pin_node[i]].cap += m.input_cap_ff;
  }

  std::map<int, double> out;
  if (driver_pin_index < 0 || pin_node[driver_pin_index] < 0) {
    for (size_t i = 0; i < net.pins.size(); ++i) out[static_cast<int>(i)] = 0.0;
    return out;
  }
  int root = pin_node[driver_pin_index];

  // BFS spanning tree from the driver.
  std::vector<int> parent(nodes.size(), -2);
  std::vector<double> parent_r(nodes.size(), 0.0);
  std::vector<int> order;
  parent[root] = -1;
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    order.push_back(u);
    for (auto [v, r] : nodes[u].edges)
      if (parent[v] == -2) {
        parent[v] = u;
        parent_r[v] = r;
        q.push(v);
      }
  }
  // Downstream capacitance, then Elmore accumulation.
  std::vector<double> down(nodes.size(), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) down[*it] += nodes[*it].cap;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0) down[parent[*it]] += down[*it];
  std::vector<double> delay(nodes.size(), 0.0);
  for (int u : order)
    if (parent[u] >= 0)
      delay[u] = delay[parent[u]] + parent_r[u] * down[u] / 1000.0;  // ohm*fF -> ps

  for (size_t i = 0; i < net.pins.size(); ++i) {
    int n = pin_node[i];
    out[static_cast<int>(i)] = (n >= 0 && parent[n] != -2) ? delay[n] : 0.0;
  }
  return out;
}

}  // namespace quality_detail

// Per-stage delay = intrinsic + slope * total load + Elmore wire delay.
// Clocked cells cut paths; endpoints are flop D pins and output IO pads.
inline TimingResult timing_proxy(const Layout& L, const ScoreConfig& cfg) {
  struct NetInfo {
    int driver_pin = -1;  // index into net.pins
    int driver_inst = -1; // -1 for IO-driven nets
  };
  std::vector<NetInfo> info(L.nets.size());
  for (size_t ni = 0; ni < L.nets.size(); ++ni) {
    const Net& net = L.nets[ni];
    for (size_t pi = 0; pi < net.pins.size(); ++pi) {
      const auto& p = net.pins[pi];
      bool drives = p.is_io ? (L.io_pins[p.io].dir == PinDir::Input)
                            : (L.master_of(L.instances[p.inst]).pins[p.pin].dir ==
                               PinDir::Output);
      if (drives) {
        info[ni].driver_pin = static_cast<int>(pi);
        if (!p.is_io) info[ni].driver_inst = p.inst;
      }
    }
  }

  // Combinational dependency counts: a comb cell's output waits on all of
  // its signal inputs.
  std::vector<int> waiting(L.instances.size(), 0);
  std::vector<std::vector<int>> inst_out_nets(L.instances.size());
  for (size_t ni = 0; ni < L.nets.size(); ++ni) {
    const Net& net = L.nets[ni];
    for (const auto& p : net.pins) {
      if (p.is_io) continue;
      const auto& m = L.master_of(L.instances[p.inst]);
      const auto& mp = m.pins[p.pin];
      if (mp.dir == PinDir::Output)
        inst_out_nets[p.inst].push_back(static_cast<int>(ni));
      else if (!m.sequential() && mp.use == PinUse::Signal &&
               info[ni].driver_pin >= 0)
        ++waiting[p.inst];
    }
  }

  std::vector<double> inst_input_arrival(L.instances.size(), 0.0);
  std::vector<double> endpoint_arrivals;
  std::vector<char> net_done(L.nets.size(), 0);
  std::queue<int> ready;

  auto launch_net = [&](int ni, double t0) {
    const Net& net = L.nets[ni];
    const NetInfo& nf = info[ni];
    double load = quality_detail::net_wire_cap(L, net) +
                  quality_detail::net_sink_cap(L, net);
    double drive = 0.0;
    if (nf.driver_inst >= 0) {
      const auto& m = L.master_of(L.instances[nf.driver_inst]);
      drive = m.intrinsic_delay_ps + m.drive_slope_ps_per_ff * load;
    }
    auto wire = quality_detail::elmore_delays(L, net, nf.driver_pin);
    for (size_t pi = 0; pi < net.pins.size(); ++pi) {
      if (static_cast<int>(pi) == nf.driver_pin) continue;
      const auto& p = net.pins[pi];
      double at = t0 + drive + wire[static_cast<int>(pi)];
      if (p.is_io) {
        if (L.io_pins[p.io].dir == PinDir::Output) endpoint_arrivals.push_back(at);
        continue;
      }
      const auto& m = L.master_of(L.instances[p.inst]);
      const auto& mp = m.pins[p.pin];
      if (mp.use == PinUse::Clock) continue;  // ideal clock, no propagation
      if (m.sequential()) {
        endpoint_arrivals.push_back(at);  // flop D pin
        continue;
      }
      inst_input_arrival[p.inst] = std::max(inst_input_arrival[p.inst], at);
      if (--waiting[p.inst] == 0) ready.push(p.inst);
    }
    net_done[ni] = 1;
  };

  // Sources: IO-driven nets and flop Q outputs launch at t=0.
  for (size_t ni = 0; ni < L.nets.size(); ++ni) {
    if (info[ni].driver_pin < 0) {
      net_done[ni] = 1;  // driverless net: ignored for timing
      continue;
    }
    if (info[ni].driver_inst < 0)
      launch_net(static_cast<int>(ni), 0.0);
    else if (L.master_of(L.instances[info[ni].driver_inst]).sequential())
      launch_net(static_cast<int>(ni), 0.0);
  }
  // Comb cells with no driven signal inputs are ready immediately.
  for (size_t i = 0; i < L.instances.size(); ++i) {
    if (waiting[i] == 0 && !inst_out_nets[i].empty() &&
        !L.master_of(L.instances[i]).sequential())
      ready.push(static_cast<int>(i));
  }

  std::vector<char> inst_done(L.instances.size(), 0);
  while (!ready.empty()) {
    int u = ready.front();
    ready.pop();
    if (inst_done[u]) continue;
    inst_done[u] = 1;
    for (int ni : inst_out_nets[u])
      if (!net_done[ni]) launch_net(ni, inst_input_arrival[u]);
  }

  for (size_t ni = 0; ni < L.nets.size(); ++ni)
    if (!net_done[ni]) {
      // Trace one cycle for the diagnostic.
      std::string cyc;
      const Net& net = L.nets[ni];
      if (info[ni].driver_inst >= 0) cyc = L.instances[info[ni].driver_inst].name;
      throw TimingError("combinational cycle through net '" + net.name + "'" +
                        (cyc.empty() ? "" : " driven by '" + cyc + "'"));
    }

  TimingResult res;
  res.endpoints = static_cast<int>(endpoint_arrivals.size());
  res.wns_ps = cfg.clock_period_ps;
  res.tns_ps = 0;
  for (double at : endpoint_arrivals) {
    double slack = cfg.clock_period_ps - at;
    res.wns_ps = std::min(res.wns_ps, slack);
    if (slack < 0) res.tns_ps += slack;
  }
  return res;
}

// ---------------------------------------------------------------------------
// DRC-lite.

struct DrcViolation {
  enum class Kind { MinWidth, MaxWidth, Spacing, OffTrack, Placement, Dangling };
  Kind kind;
  std::string subject;  // net or instance name
  std::string other;
  int layer = 0;
  std::string detail;
};

inline std::vector<DrcViolation> drc_lite(const Layout& L) {
  std::vector<DrcViolation> out;
  const Technology& tech = *L.tech;

  for (const auto& net : L.nets) {
    for (const auto& s : net.route) {
      const Layer& lay = tech.layer(s.layer);
      if (s.width < lay.min_width)
        out.push_back({DrcViolation::Kind::MinWidth, net.name, "", s.layer,
                       "width " + std::to_string(s.width)});
      if (s.width > lay.max_width)
        out.push_back({DrcViolation::Kind::MaxWidth, net.name, "", s.layer,
                       "width " + std::to_string(s.width)});
      bool horiz = s.horizontal();
      bool zero = s.a == s.b;
      Dbu fixed = horiz ? s.a.y : s.a.x;
      Dbu origin = horiz ? L.die.ly : L.die.lx;
      bool on_grid = (fixed - origin - lay.pitch / 2) % lay.pitch == 0;
      bool dir_ok = zero || (horiz == (lay.dir == LayerDir::Horizontal));
      if (!on_grid || !dir_ok)
        out.push_back({DrcViolation::Kind::OffTrack, net.name, "", s.layer, ""});
    }
    if (net.routed() && !net_is_connected(L, net))
      out.push_back({DrcViolation::Kind::Dangling, net.name, "", 0, ""});
  }

  // Same-layer spacing between different nets (sweep by x).
  GeometryIndex gi = collect_geometry(L, true);
  for (const Layer& lay : tech.routing) {
    auto items = gi.layer(lay.index);
    std::sort(items.begin(), items.end(),
              [](const GeomItem& a, const GeomItem& b) { return a.r.lx < b.r.lx; });
    for (size_t i = 0; i < items.size(); ++i) {
      for (size_t j = i + 1; j < items.size(); ++j) {
        if (items[j].r.lx - items[i].r.hx >= lay.min_spacing) break;
        const auto& a = items[i];
        const auto& b = items[j];
        bool a_pin = a.src == GeomSrc::InstPin || a.src == GeomSrc::IoPad;
        bool b_pin = b.src == GeomSrc::InstPin || b.src == GeomSrc::IoPad;
        if (a.net == b.net && a.net >= 0) continue;
        if (a.net < 0 && b.net < 0) continue;       // two unconnected pads
        if (a_pin && b_pin && (a.net < 0 || b.net < 0)) continue;
        if (!within_spacing(a.r, b.r, lay.min_spacing)) continue;
        auto net_name = [&](const GeomItem& g) {
          return g.net >= 0 ? L.nets[g.net].name : std::string("<pin>");
        };
        out.push_back({DrcViolation::Kind::Spacing, net_name(a), net_name(b),
                       lay.index, ""});
      }
    }
  }

  for (const auto& v : check_legal_placement(L))
    out.push_back({DrcViolation::Kind::Placement, v.a, v.b, 0, v.detail});
  return out;
}

}  // namespace salsy
