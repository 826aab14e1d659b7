#pragma once

// Shared fixtures for the test suites: the bundled technology plus a tiny
// hand-assembly API for layouts that do not need the generator.

#include <string>

#include "salsy/assets_io.hpp"
#include "salsy/def_io.hpp"
#include "salsy/layout.hpp"
#include "salsy/lef_reader.hpp"
#include "salsy/mock_tech.hpp"

namespace testutil {

inline salsy::TechnologyPtr tech() {
  static salsy::TechnologyPtr t = salsy::parse_lef(salsy::mock65_lef_text());
  return t;
}

struct Builder {
  salsy::Layout L;

  explicit Builder(int rows = 4, int sites = 50) {
    auto t = tech();
    L.tech = t;
    L.design = "handmade";
    salsy::Dbu w = t->site.width * sites;
    salsy::Dbu h = t->site.height * rows;
    L.die = {0, 0, w, h};
    for (int r = 0; r < rows; ++r) {
      salsy::Row row;
      row.name = "row_" + std::to_string(r);
      row.origin = {0, r * t->site.height};
      row.site_count = sites;
      row.site_width = t->site.width;
      row.orient = (r % 2 == 0) ? salsy::Orient::N : salsy::Orient::FS;
      L.rows.push_back(row);
    }
  }

  int add(const std::string& name, const std::string& master, int row, int site,
          salsy::Orient orient = salsy::Orient::N, bool fixed = false) {
    auto t = L.tech;
    salsy::Instance inst;
    inst.name = name;
    for (size_t i = 0; i < t->masters.size(); ++i)
      if (t->masters[i].name == master) inst.master = static_cast<int>(i);
    if (inst.master < 0) throw std::runtime_error("no master " + master);
    inst.placed = true;
    inst.origin = {L.rows[row].origin.x + site * t->site.width, L.rows[row].origin.y};
    if (orient == salsy::Orient::N && L.rows[row].orient == salsy::Orient::FS)
      orient = salsy::Orient::FS;
    inst.orient = orient;
    inst.fixed = fixed;
    L.instances.push_back(inst);
    return static_cast<int>(L.instances.size()) - 1;
  }

  int add_io(const std::string& name, salsy::PinDir dir, int layer, salsy::Point at) {
    salsy::IoPin pin;
    pin.name = name;
    pin.dir = dir;
    pin.layer = layer;
    pin.at = at;
    pin.shape = {at.x - 100, at.y - 100, at.x + 100, at.y + 100};
    pin.side = salsy::IoSide::Bottom;
    L.io_pins.push_back(pin);
    return static_cast<int>(L.io_pins.size()) - 1;
  }

  void connect_io(int net, const std::string& io_name) {
    salsy::NetPin p;
    p.is_io = true;
    p.io = L.find_io(io_name);
    if (p.io < 0) throw std::runtime_error("no io pin " + io_name);
    L.nets[net].pins.push_back(p);
  }

  void add_wire(int net, int layer, salsy::Point a, salsy::Point b, salsy::Dbu width) {
    L.nets[net].route.push_back({layer, a, b, width});
  }

  int add_net(const std::string& name,
              const std::vector<std::pair<std::string, std::string>>& conns,
              salsy::NetKind kind = salsy::NetKind::Signal) {
    salsy::Net net;
    net.name = name;
    net.kind = kind;
    for (const auto& [inst, pin] : conns) {
      salsy::NetPin p;
      p.inst = L.find_instance(inst);
      if (p.inst < 0) throw std::runtime_error("no instance " + inst);
      p.pin = L.tech->masters[L.instances[p.inst].master].pin_index(pin);
      if (p.pin < 0) throw std::runtime_error("no pin " + pin);
      net.pins.push_back(p);
    }
    L.nets.push_back(net);
    L.refresh_connectivity();
    return static_cast<int>(L.nets.size()) - 1;
  }
};

}  // namespace testutil
