#pragma once

// Track-based occupancy model. Tracks form one lattice across all layers
// (all horizontal layers must share a pitch, likewise vertical ones).
// Occupancy is geometric: a probe conflicts with any foreign rect closer
// than the layer's min spacing, so whatever the grid admits is DRC-clean
// by construction.

#include <algorithm>
#include <vector>

#include "salsy/geom_index.hpp"
#include "salsy/layout.hpp"

namespace salsy {

class RouteGrid {
 public:
  RouteGrid(TechnologyPtr tech, Rect die) : tech_(std::move(tech)), die_(die) {
    Dbu ph = 0, pv = 0;
    for (const Layer& l : tech_->routing) {
      Dbu& p = (l.dir == LayerDir::Horizontal) ? ph : pv;
      if (p == 0) p = l.pitch;
      if (p != l.pitch)
        throw std::runtime_error("router requires one pitch per direction");
    }
    if (ph == 0 || pv == 0)
      throw std::runtime_error("router needs both wire directions in the stack");
    for (Dbu x = die_.lx + pv / 2; x < die_.hx; x += pv) xs_.push_back(x);
    for (Dbu y = die_.ly + ph / 2; y < die_.hy; y += ph) ys_.push_back(y);
    int layers = tech_->num_routing();
    items_.assign(layers, {});
    for (int l = 0; l < layers; ++l)
      items_[l].assign(track_count(l + 1), {});
  }

  const std::vector<Dbu>& xs() const { return xs_; }
  const std::vector<Dbu>& ys() const { return ys_; }
  const Rect& die() const { return die_; }
  const Technology& tech() const { return *tech_; }

  bool horizontal(int layer) const {
    return tech_->layer(layer).dir == LayerDir::Horizontal;
  }
  // Horizontal layers have one track per y coordinate and vice versa.
  int track_count(int layer) const {
    return static_cast<int>(horizontal(layer) ? ys_.size() : xs_.size());
  }

  int x_index(Dbu x) const { return lattice_index(xs_, x); }
  int y_index(Dbu y) const { return lattice_index(ys_, y); }

  void clear() {
    for (auto& layer : items_)
      for (auto& track : layer) track.clear();
  }

  void rebuild(const Layout& L) {
    clear();
    GeometryIndex gi = collect_geometry(L, true);
    for (int l = 1; l <= tech_->num_routing(); ++l)
      for (const auto& item : gi.layer(l)) register_item(l, item);
  }

  void add_net_geometry(const Layout& L, int net) {
    const Net& n = L.nets[net];
    for (const auto& s : n.route)
      register_item(s.layer, {s.rect(), net, GeomSrc::Wire});
    for (const auto& v : n.vias) {
      std::vector<LayerRect> pads;
      via_metal(*L.tech, v, pads);
      for (const auto& p : pads)
        register_item(p.layer, {p.rect, net, GeomSrc::ViaPad});
    }
  }

  void remove_net_geometry(int net) {
    for (auto& layer : items_)
      for (auto& track : layer)
        track.erase(std::remove_if(track.begin(), track.end(),
                                   [&](const GeomItem& it) {
                                     return it.net == net &&
                                            (it.src == GeomSrc::Wire ||
                                             it.src == GeomSrc::ViaPad);
                                   }),
                    track.end());
  }

  // Would a wire of `width` centered on `track`, spanning [a, b] along it,
  // sit closer than min spacing to any geometry of another net?
  bool wire_blocked(int layer, int track, Dbu a, Dbu b, Dbu width, int net) const {
    const Layer& lay = tech_->layer(layer);
    Dbu c = track_coord(layer, track);
    Rect probe = horizontal(layer) ? Rect{a, c - width / 2, b, c + width / 2}
                                   : Rect{c - width / 2, a, c + width / 2, b};
    return rect_blocked(layer, track, probe, net);
  }

  // Would `pad` (die coordinates, on `layer`) violate spacing?
  bool pad_blocked(int layer, const Rect& pad, int net) const {
    Dbu c = horizontal(layer) ? pad.center().y : pad.center().x;
    int t0 = nearest_track(layer, c);
    // A pad can extend past its own track's influence band; scan neighbors.
    const Layer& lay = tech_->layer(layer);
    int reach =
        static_cast<int>(((pad.width() + pad.height()) / 2 + influence(lay)) /
                             lay.pitch +
                         2);
    for (int t = std::max(0, t0 - reach);
         t <= std::min(track_count(layer) - 1, t0 + reach); ++t)
      if (rect_blocked(layer, t, pad, net)) return true;
    return false;
  }

  // Exact multiset equality with a freshly derived grid; used by the
  // coherence property tests.
  bool same_occupancy(const RouteGrid& other) const {
    auto canon = [](const RouteGrid& g) {
      std::vector<std::tuple<int, int, Dbu, Dbu, Dbu, Dbu, int, int>> all;
      for (size_t l = 0; l < g.items_.size(); ++l)
        for (size_t t = 0; t < g.items_[l].size(); ++t)
          for (const auto& it : g.items_[l][t])
            all.emplace_back(static_cast<int>(l), static_cast<int>(t), it.r.lx,
                             it.r.ly, it.r.hx, it.r.hy, it.net,
                             static_cast<int>(it.src));
      std::sort(all.begin(), all.end());
      return all;
    };
    return canon(*this) == canon(other);
  }

  Dbu track_coord(int layer, int track) const {
    return horizontal(layer) ? ys_[track] : xs_[track];
  }
  int nearest_track(int layer, Dbu c) const {
    const auto& v = horizontal(layer) ? ys_ : xs_;
    return lattice_nearest(v, c);
  }

 private:
  static int lattice_index(const std::vector<Dbu>& v, Dbu c) {
    auto it = std::lower_bound(v.begin(), v.end(), c);
    if (it == v.end() || *it != c) return -1;
    return static_cast<int>(it - v.begin());
  }
  static int lattice_nearest(const std::vector<Dbu>& v, Dbu c) {
    auto it = std::lower_bound(v.begin(), v.end(), c);
    if (it == v.end()) return static_cast<int>(v.size()) - 1;
    if (it == v.begin()) return 0;
    auto prev = it - 1;
    return (c - *prev <= *it - c) ? static_cast<int>(prev - v.begin())
                                  : static_cast<int>(it - v.begin());
  }

  static Dbu influence(const Layer& lay) { return lay.max_width / 2 + lay.min_spacing; }

  void register_item(int layer, const GeomItem& item) {
    const Layer& lay = tech_->layer(layer);
    Dbu inf = influence(lay);
    const auto& coords = horizontal(layer) ? ys_ : xs_;
    Dbu lo = (horizontal(layer) ? item.r.ly : item.r.lx) - inf;
    Dbu hi = (horizontal(layer) ? item.r.hy : item.r.hx) + inf;
    auto first = std::lower_bound(coords.begin(), coords.end(), lo);
    for (auto it = first; it != coords.end() && *it <= hi; ++it)
      items_[layer - 1][it - coords.begin()].push_back(item);
  }

  bool rect_blocked(int layer, int track, const Rect& probe, int net) const {
    const Layer& lay = tech_->layer(layer);
    for (const auto& item : items_[layer - 1][track]) {
      if (item.net == net && net >= 0) continue;
      if (within_spacing(probe, item.r, lay.min_spacing)) return true;
    }
    return false;
  }

  TechnologyPtr tech_;
  Rect die_;
  std::vector<Dbu> xs_, ys_;
  // items_[layer-1][track]: geometry whose spacing halo reaches the track.
  std::vector<std::vector<std::vector<GeomItem>>> items_;
};

}  // namespace salsy
