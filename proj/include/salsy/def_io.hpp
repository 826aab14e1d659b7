#pragma once

// DEF subset reader/writer. Covered statements: DESIGN, UNITS, DIEAREA,
// ROW, COMPONENTS (PLACED/FIXED/UNPLACED, orientations N/FN/S/FS), PINS,
// NETS with ROUTED wiring (layer, optional width override in DBU, points,
// via names). SPECIALNETS, GROUPS and REGIONS are rejected.
//
// The writer is canonical: components, pins and nets are emitted sorted,
// so identical models produce byte-identical text.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "salsy/io_util.hpp"
#include "salsy/layout.hpp"

namespace salsy {

namespace def_detail {

inline bool on_track(const Layer& l, Dbu c, Dbu die_lo) {
  Dbu off = die_lo + l.pitch / 2;
  return (c - off) % l.pitch == 0;
}

inline IoSide side_of(const Rect& die, Point p) {
  Dbu dl = p.x - die.lx, dr = die.hx - p.x;
  Dbu db = p.y - die.ly, dt = die.hy - p.y;
  Dbu m = std::min(std::min(dl, dr), std::min(db, dt));
  if (m == db) return IoSide::Bottom;
  if (m == dt) return IoSide::Top;
  if (m == dl) return IoSide::Left;
  return IoSide::Right;
}

}  // namespace def_detail

inline Layout parse_def(const std::string& text, TechnologyPtr tech,
                        std::vector<std::string>* warnings = nullptr) {
  Layout L;
  L.tech = tech;
  io::Cursor c(io::tokenize(text));
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };

  while (!c.done()) {
    io::Token t = c.next();
    const std::string& kw = t.text;
    if (kw == "VERSION") {
      c.next();
      c.expect(";");
    } else if (kw == "DESIGN") {
      L.design = c.ident();
      c.expect(";");
    } else if (kw == "UNITS") {
      c.expect("DISTANCE");
      c.expect("MICRONS");
      long long dbu = c.integer();
      c.expect(";");
      if (dbu != tech->dbu_per_micron)
        throw ParseError(t.line, "DEF units (" + std::to_string(dbu) +
                                     ") do not match the technology");
    } else if (kw == "DIEAREA") {
      Point lo = c.point();
      Point hi = c.point();
      c.expect(";");
      L.die = {lo.x, lo.y, hi.x, hi.y};
    } else if (kw == "ROW") {
      Row r;
      r.name = c.ident();
      std::string site = c.ident();
      if (site != tech->site.name)
        throw ParseError(t.line, "unresolved site '" + site + "'");
      r.origin.x = c.integer();
      r.origin.y = c.integer();
      r.orient = orient_from(c.ident());
      c.expect("DO");
      r.site_count = static_cast<int>(c.integer());
      c.expect("BY");
      c.integer();
      c.expect("STEP");
      r.site_width = c.integer();
      c.integer();
      c.expect(";");
      L.rows.push_back(r);
    } else if (kw == "COMPONENTS") {
      long long declared = c.integer();
      c.expect(";");
      while (c.accept("-")) {
        Instance inst;
        int line = c.peek().line;
        inst.name = c.ident();
        std::string master = c.ident();
        int mi = -1;
        for (size_t i = 0; i < tech->masters.size(); ++i)
          if (tech->masters[i].name == master) mi = static_cast<int>(i);
        if (mi < 0)
          throw ParseError(line, "unresolved master '" + master + "' for component '" +
                                     inst.name + "'");
        inst.master = mi;
        c.expect("+");
        std::string status = c.ident();
        if (status == "PLACED" || status == "FIXED") {
          inst.placed = true;
          inst.fixed = (status == "FIXED");
          inst.origin = c.point();
          inst.orient = orient_from(c.ident());
        } else if (status == "UNPLACED") {
          inst.placed = false;
        } else {
          throw ParseError(line, "unknown placement status '" + status + "'");
        }
        c.expect(";");
        L.instances.push_back(inst);
      }
      c.expect("END");
      c.expect("COMPONENTS");
      if (declared != static_cast<long long>(L.instances.size()))
        throw ParseError(t.line, "COMPONENTS count mismatch");
    } else if (kw == "PINS") {
      long long declared = c.integer();
      c.expect(";");
      while (c.accept("-")) {
        IoPin pin;
        pin.name = c.ident();
        std::string declared_net;
        Rect rel;
        while (c.accept("+")) {
          std::string f = c.ident();
          if (f == "NET") {
            declared_net = c.ident();
          } else if (f == "DIRECTION") {
            std::string d = c.ident();
            pin.dir = (d == "OUTPUT") ? PinDir::Output : PinDir::Input;
          } else if (f == "USE") {
            c.ident();
          } else if (f == "LAYER") {
            std::string lname = c.ident();
            const Layer* lay = tech->find_layer(lname);
            if (!lay || lay->kind != LayerKind::Routing)
              throw ParseError(c.last_line(), "unresolved layer '" + lname + "'");
            pin.layer = lay->index;
            Point a = c.point();
            Point b = c.point();
            rel = {a.x, a.y, b.x, b.y};
          } else if (f == "PLACED") {
            pin.at = c.point();
            c.ident();  // orientation, unused for pins
          } else {
            throw ParseError(c.last_line(), "unknown PIN field '" + f + "'");
          }
        }
        c.expect(";");
        pin.shape = {rel.lx + pin.at.x, rel.ly + pin.at.y, rel.hx + pin.at.x,
                     rel.hy + pin.at.y};
        pin.side = def_detail::side_of(L.die, pin.at);
        (void)declared_net;  // association re-established via NETS
        L.io_pins.push_back(pin);
      }
      c.expect("END");
      c.expect("PINS");
      if (declared != static_cast<long long>(L.io_pins.size()))
        throw ParseError(t.line, "PINS count mismatch");
    } else if (kw == "NETS") {
      long long declared = c.integer();
      c.expect(";");
      while (c.accept("-")) {
        Net net;
        int line = c.peek().line;
        net.name = c.ident();
        while (!c.done() && c.peek().text == "(") {
          c.expect("(");
          std::string a = c.ident();
          if (a == "PIN") {
            std::string io = c.ident();
            int idx = L.find_io(io);
            if (idx < 0)
              throw ParseError(c.last_line(), "unresolved pin 'PIN " + io + "' on net '" +
                                                  net.name + "'");
            NetPin p;
            p.is_io = true;
            p.io = idx;
            net.pins.push_back(p);
          } else {
            std::string pname = c.ident();
            int idx = L.find_instance(a);
            if (idx < 0)
              throw ParseError(c.last_line(),
                               "unresolved component '" + a + "' on net '" + net.name + "'");
            int pi = L.tech->masters[L.instances[idx].master].pin_index(pname);
            if (pi < 0)
              throw ParseError(c.last_line(), "unresolved pin '" + a + " " + pname +
                                                  "' on net '" + net.name + "'");
            NetPin p;
            p.inst = idx;
            p.pin = pi;
            net.pins.push_back(p);
          }
          c.expect(")");
        }
        while (c.accept("+")) {
          std::string f = c.ident();
          if (f == "USE") {
            std::string u = c.ident();
            net.kind = (u == "CLOCK") ? NetKind::Clock : NetKind::Signal;
          } else if (f == "ROUTED") {
            bool first = true;
            while (true) {
              if (!first && !c.accept("NEW")) break;
              first = false;
              std::string lname = c.ident();
              const Layer* lay = tech->find_layer(lname);
              if (!lay || lay->kind != LayerKind::Routing)
                throw ParseError(c.last_line(), "unresolved layer '" + lname + "'");
              Dbu width = lay->default_width;
              if (c.next_is_integer()) width = c.integer();
              Point p1 = c.point();
              // Either a second point (wire) or a via name.
              if (!c.done() && c.peek().text == "(") {
                Point p2 = c.point();
                WireSegment s;
                s.layer = lay->index;
                s.a = p1;
                s.b = p2;
                s.width = width;
                if (p1.x != p2.x && p1.y != p2.y)
                  throw ParseError(c.last_line(), "non axis-aligned wire on net '" +
                                                      net.name + "'");
                Dbu fixed = (p1.y == p2.y) ? p1.y : p1.x;
                bool dir_ok = (p1.y == p2.y) == (lay->dir == LayerDir::Horizontal);
                if (!def_detail::on_track(*lay, fixed,
                                          (lay->dir == LayerDir::Horizontal) ? L.die.ly
                                                                             : L.die.lx) ||
                    !dir_ok)
                  warn("net '" + net.name + "': off-track segment on " + lname);
                net.route.push_back(s);
              } else {
                std::string vname = c.ident();
                const ViaDef* vd = tech->find_via(vname);
                if (!vd)
                  throw ParseError(c.last_line(), "unresolved via '" + vname + "'");
                if (vd->bottom != lay->index)
                  throw ParseError(c.last_line(), "via '" + vname +
                                                      "' does not start on layer " + lname);
                ViaInstance vi;
                for (size_t i = 0; i < tech->vias.size(); ++i)
                  if (tech->vias[i].name == vname) vi.via_def = static_cast<int>(i);
                vi.at = p1;
                net.vias.push_back(vi);
              }
            }
          } else {
            throw ParseError(line, "unknown NET field '" + f + "'");
          }
        }
        c.expect(";");
        L.nets.push_back(net);
      }
      c.expect("END");
      c.expect("NETS");
      if (declared != static_cast<long long>(L.nets.size()))
        throw ParseError(t.line, "NETS count mismatch");
    } else if (kw == "SPECIALNETS" || kw == "GROUPS" || kw == "REGIONS") {
      throw ParseError(t.line, kw + " is not supported by this DEF subset");
    } else if (kw == "END") {
      c.expect("DESIGN");
      break;
    } else {
      throw ParseError(t.line, "unknown keyword '" + kw + "'");
    }
  }

  L.refresh_connectivity();
  return L;
}

// ---------------------------------------------------------------------------

inline std::string write_def(const Layout& L) {
  const Technology& tech = *L.tech;
  std::ostringstream os;
  os << "VERSION 5.8 ;\n";
  os << "DESIGN " << L.design << " ;\n";
  os << "UNITS DISTANCE MICRONS " << tech.dbu_per_micron << " ;\n";
  os << "DIEAREA ( " << L.die.lx << " " << L.die.ly << " ) ( " << L.die.hx << " "
     << L.die.hy << " ) ;\n";

  std::vector<const Row*> rows;
  for (const auto& r : L.rows) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](const Row* a, const Row* b) {
    if (a->origin.y != b->origin.y) return a->origin.y < b->origin.y;
    if (a->origin.x != b->origin.x) return a->origin.x < b->origin.x;
    return a->name < b->name;
  });
  for (const Row* r : rows)
    os << "ROW " << r->name << " " << tech.site.name << " " << r->origin.x << " "
       << r->origin.y << " " << orient_name(r->orient) << " DO " << r->site_count
       << " BY 1 STEP " << r->site_width << " 0 ;\n";

  std::vector<const Instance*> insts;
  for (const auto& i : L.instances) insts.push_back(&i);
  std::sort(insts.begin(), insts.end(),
            [](const Instance* a, const Instance* b) { return a->name < b->name; });
  os << "COMPONENTS " << insts.size() << " ;\n";
  for (const Instance* i : insts) {
    os << "- " << i->name << " " << tech.masters[i->master].name << " + ";
    if (!i->placed)
      os << "UNPLACED";
    else
      os << (i->fixed ? "FIXED" : "PLACED") << " ( " << i->origin.x << " "
         << i->origin.y << " ) " << orient_name(i->orient);
    os << " ;\n";
  }
  os << "END COMPONENTS\n";

  // Net lookup for pin NET fields.
  auto net_of_io = [&](int io) -> const Net* {
    for (const auto& n : L.nets)
      for (const auto& p : n.pins)
        if (p.is_io && p.io == io) return &n;
    return nullptr;
  };
  std::vector<int> ios(L.io_pins.size());
  for (size_t i = 0; i < ios.size(); ++i) ios[i] = static_cast<int>(i);
  std::sort(ios.begin(), ios.end(),
            [&](int a, int b) { return L.io_pins[a].name < L.io_pins[b].name; });
  os << "PINS " << ios.size() << " ;\n";
  for (int idx : ios) {
    const IoPin& p = L.io_pins[idx];
    os << "- " << p.name;
    if (const Net* n = net_of_io(idx)) os << " + NET " << n->name;
    os << " + DIRECTION " << (p.dir == PinDir::Input ? "INPUT" : "OUTPUT");
    Rect rel{p.shape.lx - p.at.x, p.shape.ly - p.at.y, p.shape.hx - p.at.x,
             p.shape.hy - p.at.y};
    os << " + LAYER " << tech.layer(p.layer).name << " ( " << rel.lx << " " << rel.ly
       << " ) ( " << rel.hx << " " << rel.hy << " )";
    os << " + PLACED ( " << p.at.x << " " << p.at.y << " ) N ;\n";
  }
  os << "END PINS\n";

  std::vector<const Net*> nets;
  for (const auto& n : L.nets) nets.push_back(&n);
  std::sort(nets.begin(), nets.end(),
            [](const Net* a, const Net* b) { return a->name < b->name; });
  os << "NETS " << nets.size() << " ;\n";
  for (const Net* n : nets) {
    os << "- " << n->name;
    std::vector<NetPin> pins = n->pins;
    std::sort(pins.begin(), pins.end(), [&](const NetPin& a, const NetPin& b) {
      auto key = [&](const NetPin& p) {
        if (p.is_io) return std::make_tuple(0, L.io_pins[p.io].name, std::string());
        return std::make_tuple(1, L.instances[p.inst].name,
                               tech.masters[L.instances[p.inst].master].pins[p.pin].name);
      };
      return key(a) < key(b);
    });
    for (const auto& p : pins) {
      if (p.is_io)
        os << " ( PIN " << L.io_pins[p.io].name << " )";
      else
        os << " ( " << L.instances[p.inst].name << " "
           << tech.masters[L.instances[p.inst].master].pins[p.pin].name << " )";
    }
    os << "\n  + USE " << (n->kind == NetKind::Clock ? "CLOCK" : "SIGNAL");

    std::vector<WireSegment> segs = n->route;
    for (auto& s : segs) {
      if (std::make_pair(s.b.x, s.b.y) < std::make_pair(s.a.x, s.a.y))
        std::swap(s.a, s.b);
    }
    std::sort(segs.begin(), segs.end(), [](const WireSegment& a, const WireSegment& b) {
      return std::make_tuple(a.layer, a.a.x, a.a.y, a.b.x, a.b.y, a.width) <
             std::make_tuple(b.layer, b.a.x, b.a.y, b.b.x, b.b.y, b.width);
    });
    std::vector<ViaInstance> vias = n->vias;
    std::sort(vias.begin(), vias.end(), [&](const ViaInstance& a, const ViaInstance& b) {
      return std::make_tuple(tech.vias[a.via_def].name, a.at.x, a.at.y) <
             std::make_tuple(tech.vias[b.via_def].name, b.at.x, b.at.y);
    });
    bool first = true;
    auto stmt = [&](const std::string& body) {
      if (first)
        os << "\n  + ROUTED " << body;
      else
        os << "\n    NEW " << body;
      first = false;
    };
    for (const auto& s : segs) {
      std::ostringstream b;
      const Layer& lay = tech.layer(s.layer);
      b << lay.name;
      if (s.width != lay.default_width) b << " " << s.width;
      b << " ( " << s.a.x << " " << s.a.y << " ) ( " << s.b.x << " " << s.b.y << " )";
      stmt(b.str());
    }
    for (const auto& v : vias) {
      const ViaDef& vd = tech.vias[v.via_def];
      std::ostringstream b;
      b << tech.layer(vd.bottom).name << " ( " << v.at.x << " " << v.at.y << " ) "
        << vd.name;
      stmt(b.str());
    }
    os << " ;\n";
  }
  os << "END NETS\n";
  os << "END DESIGN\n";
  return os.str();
}

}  // namespace salsy
