#pragma once

// In-memory model of a placed-and-routed design. The layout is a plain
// value type: checkpointing a pass is a copy, rollback is assignment.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "salsy/geometry.hpp"
#include "salsy/tech.hpp"

namespace salsy {

enum class Orient { N, FN, S, FS };

inline const char* orient_name(Orient o) {
  switch (o) {
    case Orient::N: return "N";
    case Orient::FN: return "FN";
    case Orient::S: return "S";
    case Orient::FS: return "FS";
  }
  return "N";
}

inline Orient orient_from(const std::string& s) {
  if (s == "N") return Orient::N;
  if (s == "FN") return Orient::FN;
  if (s == "S") return Orient::S;
  if (s == "FS") return Orient::FS;
  throw std::runtime_error("unknown orientation '" + s + "'");
}

// Flip over the Y axis; footprint is preserved, pin x offsets mirror.
inline Orient flip_y(Orient o) {
  switch (o) {
    case Orient::N: return Orient::FN;
    case Orient::FN: return Orient::N;
    case Orient::S: return Orient::FS;
    case Orient::FS: return Orient::S;
  }
  return o;
}

// Master-local rect -> die coordinates for a cell of size w x h placed at
// origin with the given orientation (lower-left origin convention).
inline Rect place_rect(const Rect& r, Dbu w, Dbu h, Point origin, Orient o) {
  Rect t;
  switch (o) {
    case Orient::N: t = r; break;
    case Orient::FN: t = {w - r.hx, r.ly, w - r.lx, r.hy}; break;
    case Orient::S: t = {w - r.hx, h - r.hy, w - r.lx, h - r.ly}; break;
    case Orient::FS: t = {r.lx, h - r.hy, r.hx, h - r.ly}; break;
  }
  return {t.lx + origin.x, t.ly + origin.y, t.hx + origin.x, t.hy + origin.y};
}

struct Instance {
  std::string name;
  int master = -1;  // index into Technology::masters
  bool placed = false;
  Point origin;
  Orient orient = Orient::N;
  bool fixed = false;
  bool connected = false;  // derived: any pin attached to a net
};

struct WireSegment {
  int layer = 1;  // routing layer index
  Point a, b;     // axis-aligned, centerline on a routing track
  Dbu width = 0;

  bool horizontal() const { return a.y == b.y; }
  Dbu length() const { return manhattan(a, b); }
  Rect rect() const {
    Dbu half = width / 2;
    Dbu lx = std::min(a.x, b.x), hx = std::max(a.x, b.x);
    Dbu ly = std::min(a.y, b.y), hy = std::max(a.y, b.y);
    if (horizontal()) return {lx, ly - half, hx, hy + half};
    return {lx - half, ly, hx + half, hy};
  }
};

struct ViaInstance {
  int via_def = -1;  // index into Technology::vias
  Point at;
};

struct NetPin {
  bool is_io = false;
  int inst = -1;  // instance index when !is_io
  int pin = -1;   // master pin index
  int io = -1;    // io pin index when is_io
  bool operator==(const NetPin&) const = default;
};

enum class NetKind { Signal, Clock };

struct Net {
  std::string name;
  NetKind kind = NetKind::Signal;
  bool is_asset = false;
  std::vector<NetPin> pins;
  std::vector<WireSegment> route;
  std::vector<ViaInstance> vias;

  bool routed() const { return !route.empty() || !vias.empty(); }
};

enum class IoSide { Left, Right, Bottom, Top };

struct IoPin {
  std::string name;
  PinDir dir = PinDir::Input;
  int layer = 2;
  Point at;          // pad center
  Rect shape;        // pad rect in die coordinates
  IoSide side = IoSide::Bottom;
};

struct Row {
  std::string name;
  Point origin;
  int site_count = 0;
  Dbu site_width = 0;
  Orient orient = Orient::N;  // N or FS; fixes legal cell orientations

  Dbu x_end() const { return origin.x + site_width * site_count; }
};

// Asset lists are kept as root names. Buffer-split derivatives of a net
// keep the root as the prefix before the first "__b" marker so metric
// totals track the original asset identity.
inline std::string asset_root(const std::string& net_name) {
  auto pos = net_name.find("__b");
  return pos == std::string::npos ? net_name : net_name.substr(0, pos);
}

struct AssetSet {
  std::set<std::string> cell_assets;
  std::set<std::string> net_assets;  // root names

  bool empty() const { return cell_assets.empty() && net_assets.empty(); }
};

struct Layout {
  std::string design = "design";
  TechnologyPtr tech;
  Rect die;
  std::vector<Row> rows;
  std::vector<Instance> instances;
  std::vector<Net> nets;
  std::vector<IoPin> io_pins;

  const CellMaster& master_of(const Instance& inst) const {
    return tech->masters.at(inst.master);
  }

  int find_instance(const std::string& n) const {
    for (size_t i = 0; i < instances.size(); ++i)
      if (instances[i].name == n) return static_cast<int>(i);
    return -1;
  }
  int find_net(const std::string& n) const {
    for (size_t i = 0; i < nets.size(); ++i)
      if (nets[i].name == n) return static_cast<int>(i);
    return -1;
  }
  int find_io(const std::string& n) const {
    for (size_t i = 0; i < io_pins.size(); ++i)
      if (io_pins[i].name == n) return static_cast<int>(i);
    return -1;
  }

  Rect core_area() const {
    Rect core;
    bool first = true;
    for (const auto& r : rows) {
      Rect rr{r.origin.x, r.origin.y, r.x_end(), r.origin.y + tech->site.height};
      core = first ? rr : core.bbox_with(rr);
      first = false;
    }
    return core;
  }

  // Recompute Instance::connected from net membership.
  void refresh_connectivity() {
    for (auto& inst : instances) inst.connected = false;
    for (const auto& net : nets)
      for (const auto& p : net.pins)
        if (!p.is_io && p.inst >= 0) instances[p.inst].connected = true;
  }
};

// Orientation-adjusted bounding box; identical for all four orientations.
inline Rect instance_footprint(const Layout& layout, const Instance& inst) {
  if (!inst.placed) throw std::runtime_error("unplaced instance '" + inst.name + "'");
  const auto& m = layout.master_of(inst);
  return {inst.origin.x, inst.origin.y, inst.origin.x + m.width,
          inst.origin.y + m.height};
}

// Die-coordinate shapes of one master pin of a placed instance.
inline std::vector<Rect> instance_pin_shapes(const Layout& layout,
                                             const Instance& inst, int pin) {
  const auto& m = layout.master_of(inst);
  const auto& mp = m.pins.at(pin);
  std::vector<Rect> out;
  out.reserve(mp.shapes.size());
  for (const auto& s : mp.shapes)
    out.push_back(place_rect(s, m.width, m.height, inst.origin, inst.orient));
  return out;
}

// All M-layer metal of an instance (union of its pin ports), grouped as a
// flat list tagged by layer.
struct LayerRect {
  int layer = 1;
  Rect rect;
};

inline std::vector<LayerRect> instance_metal(const Layout& layout,
                                             const Instance& inst) {
  std::vector<LayerRect> out;
  const auto& m = layout.master_of(inst);
  for (const auto& mp : m.pins)
    for (const auto& s : mp.shapes)
      out.push_back({mp.layer,
                     place_rect(s, m.width, m.height, inst.origin, inst.orient)});
  return out;
}

// Via metal: bottom rects on via.bottom, top rects on via.top, cuts between.
inline void via_metal(const Technology& tech, const ViaInstance& v,
                      std::vector<LayerRect>& out) {
  const auto& def = tech.vias.at(v.via_def);
  for (const auto& r : def.bottom_rects)
    out.push_back({def.bottom, {r.lx + v.at.x, r.ly + v.at.y, r.hx + v.at.x,
                                r.hy + v.at.y}});
  for (const auto& r : def.top_rects)
    out.push_back({def.top, {r.lx + v.at.x, r.ly + v.at.y, r.hx + v.at.x,
                             r.hy + v.at.y}});
}

struct PlacementViolation {
  enum class Kind { OffSite, OffRow, Overlap, Orientation, OutsideDie, Unplaced };
  Kind kind;
  std::string a;  // instance name
  std::string b;  // second instance for overlaps
  std::string detail;
};

inline const Row* row_at(const Layout& layout, Dbu y) {
  for (const auto& r : layout.rows)
    if (r.origin.y == y) return &r;
  return nullptr;
}

// Site alignment, row containment, orientation parity and pairwise overlap.
// Violations are data, not errors.
inline std::vector<PlacementViolation> check_legal_placement(const Layout& layout) {
  std::vector<PlacementViolation> out;
  struct Placed {
    const Instance* inst;
    Rect fp;
  };
  std::map<Dbu, std::vector<Placed>> by_row_y;

  for (const auto& inst : layout.instances) {
    if (!inst.placed) {
      out.push_back({PlacementViolation::Kind::Unplaced, inst.name, "", "unplaced"});
      continue;
    }
    const auto& m = layout.master_of(inst);
    Rect fp{inst.origin.x, inst.origin.y, inst.origin.x + m.width,
            inst.origin.y + m.height};
    const Row* row = row_at(layout, inst.origin.y);
    if (!row) {
      out.push_back({PlacementViolation::Kind::OffRow, inst.name, "",
                     "no row at y=" + std::to_string(inst.origin.y)});
      continue;
    }
    if ((inst.origin.x - row->origin.x) % row->site_width != 0 ||
        inst.origin.x < row->origin.x || fp.hx > row->x_end()) {
      out.push_back({PlacementViolation::Kind::OffSite, inst.name, "",
                     "x=" + std::to_string(inst.origin.x)});
    }
    bool upright = (row->orient == Orient::N);
    bool ok_orient = upright
                         ? (inst.orient == Orient::N || inst.orient == Orient::FN)
                         : (inst.orient == Orient::FS || inst.orient == Orient::S);
    if (!ok_orient)
      out.push_back({PlacementViolation::Kind::Orientation, inst.name, "",
                     orient_name(inst.orient)});
    if (!layout.die.contains(Point{fp.lx, fp.ly}) ||
        !layout.die.contains_closed(Point{fp.hx, fp.hy}))
      out.push_back({PlacementViolation::Kind::OutsideDie, inst.name, "", ""});
    by_row_y[inst.origin.y].push_back({&inst, fp});
  }

  for (auto& [y, cells] : by_row_y) {
    std::sort(cells.begin(), cells.end(), [](const Placed& a, const Placed& b) {
      return a.fp.lx != b.fp.lx ? a.fp.lx < b.fp.lx : a.inst->name < b.inst->name;
    });
    for (size_t i = 0; i + 1 < cells.size(); ++i) {
      // A cell can only overlap later-starting cells; check until clear.
      for (size_t j = i + 1; j < cells.size(); ++j) {
        if (cells[j].fp.lx >= cells[i].fp.hx) break;
        out.push_back({PlacementViolation::Kind::Overlap, cells[i].inst->name,
                       cells[j].inst->name, ""});
      }
    }
  }
  return out;
}

inline double utilization(const Layout& layout) {
  Area total = 0;
  for (const auto& inst : layout.instances) {
    if (!inst.placed) continue;
    const auto& m = layout.master_of(inst);
    total += m.width * m.height;
  }
  Area core = layout.core_area().area();
  return core > 0 ? static_cast<double>(total) / static_cast<double>(core) : 0.0;
}

// ---------------------------------------------------------------------------
// Wire-graph connectivity: the union of route segments, vias and pin shapes
// must form one component touching every pin of the net.

namespace detail {
struct Dsu {
  std::vector<int> p;
  explicit Dsu(size_t n) : p(n) {
    for (size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};
}  // namespace detail

inline std::vector<Rect> net_pin_shapes(const Layout& layout, const NetPin& p,
                                        int* layer_out) {
  if (p.is_io) {
    const auto& io = layout.io_pins.at(p.io);
    if (layer_out) *layer_out = io.layer;
    return {io.shape};
  }
  const auto& inst = layout.instances.at(p.inst);
  const auto& mp = layout.master_of(inst).pins.at(p.pin);
  if (layer_out) *layer_out = mp.layer;
  return instance_pin_shapes(layout, inst, p.pin);
}

inline bool net_is_connected(const Layout& layout, const Net& net) {
  if (net.pins.size() <= 1) return true;
  struct Shape {
    int layer;
    Rect r;
    int pin;  // pin index or -1
    int via;  // via index or -1 (shape is the cut body linking two layers)
  };
  std::vector<Shape> shapes;
  for (size_t i = 0; i < net.pins.size(); ++i) {
    int layer = 0;
    for (const auto& r : net_pin_shapes(layout, net.pins[i], &layer))
      shapes.push_back({layer, r, static_cast<int>(i), -1});
  }
  for (const auto& s : net.route) shapes.push_back({s.layer, s.rect(), -1, -1});
  for (size_t v = 0; v < net.vias.size(); ++v) {
    std::vector<LayerRect> lr;
    via_metal(*layout.tech, net.vias[v], lr);
    for (const auto& x : lr)
      shapes.push_back({x.layer, x.rect, -1, static_cast<int>(v)});
  }
  if (shapes.empty()) return false;

  detail::Dsu dsu(shapes.size());
  for (size_t i = 0; i < shapes.size(); ++i)
    for (size_t j = i + 1; j < shapes.size(); ++j) {
      bool same_layer = shapes[i].layer == shapes[j].layer;
      bool same_via = shapes[i].via >= 0 && shapes[i].via == shapes[j].via;
      if (same_via ||
          (same_layer && shapes[i].r.touches(shapes[j].r)))
        dsu.unite(static_cast<int>(i), static_cast<int>(j));
    }
  // One component holding everything; every pin contributed a shape, so a
  // single component implies every pin is reached.
  int root = dsu.find(0);
  for (size_t i = 1; i < shapes.size(); ++i)
    if (dsu.find(static_cast<int>(i)) != root) return false;
  return true;
}

}  // namespace salsy
