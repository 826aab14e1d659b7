#pragma once

// Reader for the LEF subset: UNITS, SITE, LAYER (routing/cut), VIA with
// explicit per-layer rects, MACRO with PIN/PORT shapes and PROPERTY lines
// carrying the electrical coefficients.

#include <memory>
#include <string>

#include "salsy/io_util.hpp"
#include "salsy/tech.hpp"

namespace salsy {

namespace lef_detail {

inline int routing_index_from_name(const std::string& name) {
  // Mx naming, x = stack position.
  if (name.size() >= 2 && name[0] == 'M') {
    try {
      return std::stoi(name.substr(1));
    } catch (...) {
    }
  }
  return -1;
}

}  // namespace lef_detail

inline std::shared_ptr<Technology> parse_lef(const std::string& text) {
  auto tech = std::make_shared<Technology>();
  io::Cursor c(io::tokenize(text));
  int dbu = 1000;
  bool units_seen = false;

  auto to_dbu = [&](double um) { return io::um_to_dbu(um, dbu); };

  while (!c.done()) {
    io::Token t = c.next();
    const std::string& kw = t.text;

    if (kw == "VERSION" || kw == "BUSBITCHARS" || kw == "DIVIDERCHAR") {
      c.next();
      c.expect(";");
    } else if (kw == "UNITS") {
      c.expect("DATABASE");
      c.expect("MICRONS");
      dbu = static_cast<int>(c.integer());
      c.expect(";");
      c.expect("END");
      c.expect("UNITS");
      tech->dbu_per_micron = dbu;
      units_seen = true;
    } else if (kw == "SITE") {
      std::string name = c.ident();
      SiteDef site;
      site.name = name;
      while (!c.accept("END")) {
        io::Token st = c.next();
        if (st.text == "CLASS") {
          c.next();
          c.expect(";");
        } else if (st.text == "SIZE") {
          site.width = to_dbu(c.number());
          c.expect("BY");
          site.height = to_dbu(c.number());
          c.expect(";");
        } else {
          throw ParseError(st.line, "unknown keyword '" + st.text + "' in SITE");
        }
      }
      c.expect(name);
      tech->site = site;
    } else if (kw == "LAYER") {
      std::string name = c.ident();
      Layer layer;
      layer.name = name;
      std::string type;
      while (!c.accept("END")) {
        io::Token st = c.next();
        if (st.text == "TYPE") {
          type = c.ident();
          c.expect(";");
        } else if (st.text == "DIRECTION") {
          std::string d = c.ident();
          c.expect(";");
          if (d == "HORIZONTAL")
            layer.dir = LayerDir::Horizontal;
          else if (d == "VERTICAL")
            layer.dir = LayerDir::Vertical;
          else
            throw ParseError(st.line, "bad DIRECTION '" + d + "'");
        } else if (st.text == "PITCH") {
          layer.pitch = to_dbu(c.number());
          c.expect(";");
        } else if (st.text == "WIDTH") {
          layer.default_width = to_dbu(c.number());
          c.expect(";");
        } else if (st.text == "MINWIDTH") {
          layer.min_width = to_dbu(c.number());
          c.expect(";");
        } else if (st.text == "MAXWIDTH") {
          layer.max_width = to_dbu(c.number());
          c.expect(";");
        } else if (st.text == "SPACING") {
          layer.min_spacing = to_dbu(c.number());
          c.expect(";");
        } else if (st.text == "RESISTANCE") {
          layer.unit_r = c.number() / dbu;  // ohm/um -> ohm/DBU
          c.expect(";");
        } else if (st.text == "CAPACITANCE") {
          layer.unit_c = c.number() / dbu;  // fF/um -> fF/DBU
          c.expect(";");
        } else {
          throw ParseError(st.line, "unknown keyword '" + st.text + "' in LAYER");
        }
      }
      c.expect(name);
      if (type == "ROUTING") {
        layer.kind = LayerKind::Routing;
        layer.index = static_cast<int>(tech->routing.size()) + 1;
        int named = lef_detail::routing_index_from_name(name);
        if (named > 0 && named != layer.index)
          throw ParseError(t.line, "non-monotone layer order: '" + name +
                                       "' appears at stack position " +
                                       std::to_string(layer.index));
        if (layer.min_width > layer.default_width ||
            layer.default_width > layer.max_width)
          throw ParseError(t.line, "layer '" + name + "' width bounds invalid");
        if (layer.pitch < layer.default_width + layer.min_spacing)
          throw ParseError(t.line, "layer '" + name + "' pitch too small");
        tech->routing.push_back(layer);
      } else if (type == "CUT") {
        layer.kind = LayerKind::Cut;
        layer.index = static_cast<int>(tech->cuts.size()) + 1;
        tech->cuts.push_back(layer);
      } else {
        throw ParseError(t.line, "layer '" + name + "' has no valid TYPE");
      }
    } else if (kw == "VIA") {
      ViaDef via;
      via.name = c.ident();
      via.is_default = c.accept("DEFAULT");
      std::string cut_name;
      while (!c.accept("END")) {
        c.expect("LAYER");
        std::string lname = c.ident();
        c.expect(";");
        const Layer* lay = tech->find_layer(lname);
        if (!lay)
          throw ParseError(t.line, "via '" + via.name + "' references unknown layer '" +
                                       lname + "'");
        std::vector<Rect>* dst = nullptr;
        if (lay->kind == LayerKind::Cut) {
          dst = &via.cut_rects;
          cut_name = lname;
        } else if (via.bottom == 0) {
          via.bottom = lay->index;
          dst = &via.bottom_rects;
        } else {
          via.top = lay->index;
          dst = &via.top_rects;
        }
        while (c.accept("RECT")) {
          Rect r;
          r.lx = to_dbu(c.number());
          r.ly = to_dbu(c.number());
          r.hx = to_dbu(c.number());
          r.hy = to_dbu(c.number());
          c.expect(";");
          dst->push_back(r);
        }
      }
      c.expect(via.name);
      if (via.top != via.bottom + 1)
        throw ParseError(t.line, "via '" + via.name +
                                     "' must join adjacent routing layers");
      if (via.cut_rects.empty())
        throw ParseError(t.line, "via '" + via.name + "' has no cut geometry");
      tech->vias.push_back(via);
    } else if (kw == "MACRO") {
      std::string name = c.ident();
      CellMaster m;
      m.name = name;
      while (!(c.peek().text == "END")) {
        io::Token st = c.next();
        if (st.text == "CLASS") {
          std::string cls = c.ident();
          c.expect(";");
          if (cls == "CORE")
            m.cls = MasterClass::Core;
          else if (cls == "FILLER")
            m.cls = MasterClass::Filler;
          else if (cls == "BUFFER")
            m.cls = MasterClass::Buffer;
          else
            throw ParseError(st.line, "unknown macro class '" + cls + "'");
        } else if (st.text == "SIZE") {
          m.width = to_dbu(c.number());
          c.expect("BY");
          m.height = to_dbu(c.number());
          c.expect(";");
        } else if (st.text == "SITE") {
          c.ident();
          c.expect(";");
        } else if (st.text == "ORIGIN") {
          c.number();
          c.number();
          c.expect(";");
        } else if (st.text == "PROPERTY") {
          std::string pname = c.ident();
          double v = c.number();
          c.expect(";");
          if (pname == "LEAKAGE")
            m.leakage_uw = v;
          else if (pname == "INPUT_CAP")
            m.input_cap_ff = v;
          else if (pname == "DELAY")
            m.intrinsic_delay_ps = v;
          else if (pname == "SLOPE")
            m.drive_slope_ps_per_ff = v;
          else
            throw ParseError(st.line, "unknown macro property '" + pname + "'");
        } else if (st.text == "PIN") {
          MasterPin pin;
          pin.name = c.ident();
          while (!c.accept("END")) {
            io::Token pt = c.next();
            if (pt.text == "DIRECTION") {
              std::string d = c.ident();
              c.expect(";");
              if (d == "INPUT")
                pin.dir = PinDir::Input;
              else if (d == "OUTPUT")
                pin.dir = PinDir::Output;
              else
                throw ParseError(pt.line, "bad pin DIRECTION '" + d + "'");
            } else if (pt.text == "USE") {
              std::string u = c.ident();
              c.expect(";");
              pin.use = (u == "CLOCK") ? PinUse::Clock : PinUse::Signal;
            } else if (pt.text == "PORT") {
              int cur_layer = 0;
              while (!c.accept("END")) {
                io::Token gt = c.next();
                if (gt.text == "LAYER") {
                  std::string lname = c.ident();
                  c.expect(";");
                  const Layer* lay = tech->find_layer(lname);
                  if (!lay || lay->kind != LayerKind::Routing)
                    throw ParseError(gt.line,
                                     "pin port on unknown routing layer '" + lname + "'");
                  cur_layer = lay->index;
                } else if (gt.text == "RECT") {
                  if (cur_layer == 0)
                    throw ParseError(gt.line, "RECT before LAYER in PORT");
                  Rect r;
                  r.lx = to_dbu(c.number());
                  r.ly = to_dbu(c.number());
                  r.hx = to_dbu(c.number());
                  r.hy = to_dbu(c.number());
                  c.expect(";");
                  pin.layer = cur_layer;
                  pin.shapes.push_back(r);
                } else {
                  throw ParseError(gt.line, "unknown keyword '" + gt.text + "' in PORT");
                }
              }
            } else {
              throw ParseError(pt.line, "unknown keyword '" + pt.text + "' in PIN");
            }
          }
          c.expect(pin.name);
          for (const auto& s : pin.shapes)
            if (s.lx < 0 || s.ly < 0 || s.hx > m.width || s.hy > m.height)
              throw ParseError(st.line, "pin '" + pin.name + "' of '" + name +
                                            "' extends outside the footprint");
          m.pins.push_back(pin);
        } else {
          throw ParseError(st.line, "unknown keyword '" + st.text + "' in MACRO");
        }
      }
      c.expect("END");
      c.expect(name);
      if (tech->site.width <= 0)
        throw ParseError(t.line, "MACRO before SITE definition");
      if (m.width <= 0 || m.width % tech->site.width != 0)
        throw ParseError(t.line, "macro '" + name +
                                     "' width is not a multiple of the site width");
      if (m.height != tech->site.height)
        throw ParseError(t.line, "macro '" + name + "' height differs from site");
      tech->masters.push_back(m);
    } else if (kw == "END") {
      if (c.accept("LIBRARY")) break;
      throw ParseError(t.line, "stray END");
    } else {
      throw ParseError(t.line, "unknown keyword '" + kw + "'");
    }
  }

  if (!units_seen) throw ParseError(1, "missing UNITS section");
  if (tech->routing.empty()) throw ParseError(1, "no routing layers");
  return tech;
}

}  // namespace salsy
