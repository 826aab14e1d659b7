#pragma once

// Asset list loader. Line format: `cell <name>` or `net <name>`, `#`
// comments. Net assets are root names: nets produced later by buffer
// splits (suffix "__b<k>") resolve back to their root.

#include <set>
#include <sstream>
#include <string>

#include "salsy/io_util.hpp"
#include "salsy/layout.hpp"

namespace salsy {

// Tag layout nets from an asset set (idempotent; used after passes mutate
// the netlist).
inline void apply_assets(Layout& layout, const AssetSet& assets) {
  for (auto& n : layout.nets)
    n.is_asset = assets.net_assets.count(asset_root(n.name)) > 0;
}

inline AssetSet load_assets(const std::string& text, Layout& layout) {
  AssetSet assets;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    std::istringstream ls(s);
    std::string kind, name;
    if (!(ls >> kind)) continue;
    if (!(ls >> name)) throw ParseError(line, "expected a name after '" + kind + "'");
    std::string extra;
    if (ls >> extra) throw ParseError(line, "trailing token '" + extra + "'");
    if (kind == "cell") {
      if (assets.cell_assets.count(name))
        throw ParseError(line, "duplicate cell asset '" + name + "'");
      if (layout.find_instance(name) < 0)
        throw ParseError(line, "unresolved asset 'cell " + name + "'");
      assets.cell_assets.insert(name);
    } else if (kind == "net") {
      if (assets.net_assets.count(name))
        throw ParseError(line, "duplicate net asset '" + name + "'");
      bool found = false;
      for (const auto& n : layout.nets)
        if (asset_root(n.name) == name) found = true;
      if (!found) throw ParseError(line, "unresolved asset 'net " + name + "'");
      assets.net_assets.insert(name);
    } else {
      throw ParseError(line, "expected 'cell' or 'net', got '" + kind + "'");
    }
  }
  apply_assets(layout, assets);
  return assets;
}

inline std::string write_assets(const AssetSet& assets) {
  std::ostringstream os;
  for (const auto& c : assets.cell_assets) os << "cell " << c << "\n";
  for (const auto& n : assets.net_assets) os << "net " << n << "\n";
  return os.str();
}

}  // namespace salsy
