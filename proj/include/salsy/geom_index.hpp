#pragma once

// Flattened per-layer view of all conductor geometry in a layout: routed
// wires, via pads, instance pin ports and IO pads. Exposure, free-track
// counting, DRC and the routing grid all draw from this one collection.

#include <vector>

#include "salsy/layout.hpp"

namespace salsy {

enum class GeomSrc : uint8_t { Wire, ViaPad, InstPin, IoPad };

struct GeomItem {
  Rect r;
  int net = -1;  // net index, -1 for unconnected instance pins
  GeomSrc src = GeomSrc::Wire;
};

struct GeometryIndex {
  // by_layer[k] holds layer index k+1 (routing layers only).
  std::vector<std::vector<GeomItem>> by_layer;

  explicit GeometryIndex(int num_routing) : by_layer(num_routing) {}
  std::vector<GeomItem>& layer(int index) { return by_layer.at(index - 1); }
  const std::vector<GeomItem>& layer(int index) const { return by_layer.at(index - 1); }
};

inline GeometryIndex collect_geometry(const Layout& L, bool include_pins = true) {
  GeometryIndex gi(L.tech->num_routing());
  for (size_t ni = 0; ni < L.nets.size(); ++ni) {
    const Net& net = L.nets[ni];
    int id = static_cast<int>(ni);
    for (const auto& s : net.route)
      gi.layer(s.layer).push_back({s.rect(), id, GeomSrc::Wire});
    for (const auto& v : net.vias) {
      std::vector<LayerRect> pads;
      via_metal(*L.tech, v, pads);
      for (const auto& p : pads) gi.layer(p.layer).push_back({p.rect, id, GeomSrc::ViaPad});
    }
  }
  if (include_pins) {
    // Pin pads inherit the net they are attached to.
    std::vector<std::vector<int>> inst_pin_net(L.instances.size());
    for (size_t i = 0; i < L.instances.size(); ++i)
      inst_pin_net[i].assign(L.tech->masters[L.instances[i].master].pins.size(), -1);
    std::vector<int> io_net(L.io_pins.size(), -1);
    for (size_t ni = 0; ni < L.nets.size(); ++ni)
      for (const auto& p : L.nets[ni].pins) {
        if (p.is_io)
          io_net[p.io] = static_cast<int>(ni);
        else
          inst_pin_net[p.inst][p.pin] = static_cast<int>(ni);
      }
    for (size_t i = 0; i < L.instances.size(); ++i) {
      const Instance& inst = L.instances[i];
      if (!inst.placed) continue;
      const CellMaster& m = L.master_of(inst);
      for (size_t pi = 0; pi < m.pins.size(); ++pi)
        for (const auto& r : instance_pin_shapes(L, inst, static_cast<int>(pi)))
          gi.layer(m.pins[pi].layer)
              .push_back({r, inst_pin_net[i][pi], GeomSrc::InstPin});
    }
    for (size_t i = 0; i < L.io_pins.size(); ++i)
      gi.layer(L.io_pins[i].layer)
          .push_back({L.io_pins[i].shape, io_net[i], GeomSrc::IoPad});
  }
  return gi;
}

}  // namespace salsy
