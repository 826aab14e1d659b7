#pragma once

// Technology model: layer stack, via definitions, placement site and the
// cell master library with the electrical coefficients the quality proxies
// consume.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "salsy/geometry.hpp"

namespace salsy {

enum class LayerKind { Routing, Cut };
enum class LayerDir { Horizontal, Vertical };

struct Layer {
  std::string name;
  LayerKind kind = LayerKind::Routing;
  int index = 0;  // routing: 1 = lowest metal; cut: index of metal below
  LayerDir dir = LayerDir::Horizontal;
  Dbu pitch = 0;
  Dbu default_width = 0;
  Dbu min_width = 0;
  Dbu max_width = 0;
  Dbu min_spacing = 0;
  double unit_r = 0.0;  // ohm per DBU at default width
  double unit_c = 0.0;  // fF per DBU at default width
};

// Fixed geometry of one via master: rects per layer, exactly one cut layer
// between two adjacent routing layers.
struct ViaDef {
  std::string name;
  int bottom = 0;  // routing layer index
  int top = 0;
  bool is_default = false;
  std::vector<Rect> bottom_rects;  // centered on the via location
  std::vector<Rect> cut_rects;
  std::vector<Rect> top_rects;
  int cut_count() const { return static_cast<int>(cut_rects.size()); }
};

enum class MasterClass { Core, Filler, Buffer };

enum class PinDir { Input, Output };
enum class PinUse { Signal, Clock };

struct MasterPin {
  std::string name;
  PinDir dir = PinDir::Input;
  PinUse use = PinUse::Signal;
  int layer = 1;            // routing layer index of the port shapes
  std::vector<Rect> shapes;  // master-local coordinates, orientation N
};

struct CellMaster {
  std::string name;
  MasterClass cls = MasterClass::Core;
  Dbu width = 0;
  Dbu height = 0;
  std::vector<MasterPin> pins;
  // Electrical coefficients for the power/timing proxies.
  double leakage_uw = 0.0;
  double input_cap_ff = 0.0;
  double intrinsic_delay_ps = 0.0;
  double drive_slope_ps_per_ff = 0.0;

  bool sequential() const {
    for (const auto& p : pins)
      if (p.use == PinUse::Clock) return true;
    return false;
  }
  const MasterPin* find_pin(const std::string& pin) const {
    for (const auto& p : pins)
      if (p.name == pin) return &p;
    return nullptr;
  }
  int pin_index(const std::string& pin) const {
    for (size_t i = 0; i < pins.size(); ++i)
      if (pins[i].name == pin) return static_cast<int>(i);
    return -1;
  }
};

struct SiteDef {
  std::string name;
  Dbu width = 0;
  Dbu height = 0;
};

struct Technology {
  std::string name;
  int dbu_per_micron = 1000;
  SiteDef site;
  std::vector<Layer> routing;  // routing[k] has index k+1
  std::vector<Layer> cuts;     // cuts[k] sits between routing k+1 and k+2
  std::vector<ViaDef> vias;
  std::vector<CellMaster> masters;
  double via_r_ohm = 2.0;  // lumped resistance of one cut

  int num_routing() const { return static_cast<int>(routing.size()); }

  const Layer& layer(int index) const { return routing.at(index - 1); }
  const Layer* find_layer(const std::string& n) const {
    for (const auto& l : routing)
      if (l.name == n) return &l;
    for (const auto& l : cuts)
      if (l.name == n) return &l;
    return nullptr;
  }
  const CellMaster* find_master(const std::string& n) const {
    for (const auto& m : masters)
      if (m.name == n) return &m;
    return nullptr;
  }
  const ViaDef* find_via(const std::string& n) const {
    for (const auto& v : vias)
      if (v.name == n) return &v;
    return nullptr;
  }
  // Default (single-cut) via between routing layers k and k+1.
  const ViaDef* default_via(int bottom) const {
    for (const auto& v : vias)
      if (v.bottom == bottom && v.is_default) return &v;
    return nullptr;
  }

  // Track lattice: tracks run at offset pitch/2 + k*pitch from the die
  // origin. first_track_at(c) is the smallest track coordinate >= c.
  Dbu track_offset(const Layer& l) const { return l.pitch / 2; }
};

using TechnologyPtr = std::shared_ptr<const Technology>;

}  // namespace salsy
