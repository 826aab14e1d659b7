#pragma once

// Security metrics: exploitable placement regions with their free routing
// tracks (Trojan-insertion side) and top-down exposed area of cell/net
// assets (front-side probing / fault-injection side).

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "salsy/config.hpp"
#include "salsy/geom_index.hpp"
#include "salsy/layout.hpp"
#include "salsy/parallel.hpp"

namespace salsy {

enum class SiteState : uint8_t { Free, Filler, Unconnected, Blocked };

// Per-site occupancy of one row. Runs are broken by connected functional
// cells and by fixed instances of any class.
inline std::vector<SiteState> row_occupancy(const Layout& L, int row_index) {
  const Row& row = L.rows[row_index];
  std::vector<SiteState> sites(row.site_count, SiteState::Free);
  for (const auto& inst : L.instances) {
    if (!inst.placed || inst.origin.y != row.origin.y) continue;
    const CellMaster& m = L.master_of(inst);
    if (inst.origin.x < row.origin.x || inst.origin.x + m.width > row.x_end()) continue;
    int s0 = static_cast<int>((inst.origin.x - row.origin.x) / row.site_width);
    int s1 = s0 + static_cast<int>(m.width / row.site_width);
    SiteState st;
    if (inst.fixed)
      st = SiteState::Blocked;
    else if (m.cls == MasterClass::Filler)
      st = SiteState::Filler;
    else if (!inst.connected)
      st = SiteState::Unconnected;
    else
      st = SiteState::Blocked;
    for (int s = std::max(0, s0); s < std::min(row.site_count, s1); ++s)
      sites[s] = std::max(sites[s], st);
  }
  return sites;
}

struct ExploitableRegion {
  int row = 0;        // index into Layout::rows
  int start = 0;      // site interval [start, end)
  int end = 0;
  int site_count = 0;
  int free_tracks = 0;
  int n_free = 0, n_filler = 0, n_unconnected = 0;

  Rect box(const Layout& L) const {
    const Row& r = L.rows[row];
    return {r.origin.x + start * r.site_width, r.origin.y,
            r.origin.x + end * r.site_width, r.origin.y + L.tech->site.height};
  }
};

// Maximal runs of free / filler / unconnected sites of length >= threshold,
// sorted by (row, start). free_tracks is filled in by ti_raw.
inline std::vector<ExploitableRegion> find_exploitable_regions(const Layout& L,
                                                               int threshold) {
  std::vector<std::vector<ExploitableRegion>> per_row(L.rows.size());
  parallel_for(L.rows.size(), [&](size_t ri) {
    auto sites = row_occupancy(L, static_cast<int>(ri));
    int n = static_cast<int>(sites.size());
    int i = 0;
    while (i < n) {
      if (sites[i] == SiteState::Blocked) {
        ++i;
        continue;
      }
      int j = i;
      ExploitableRegion reg;
      while (j < n && sites[j] != SiteState::Blocked) {
        if (sites[j] == SiteState::Free) ++reg.n_free;
        if (sites[j] == SiteState::Filler) ++reg.n_filler;
        if (sites[j] == SiteState::Unconnected) ++reg.n_unconnected;
        ++j;
      }
      if (j - i >= threshold) {
        reg.row = static_cast<int>(ri);
        reg.start = i;
        reg.end = j;
        reg.site_count = j - i;
        per_row[ri].push_back(reg);
      }
      i = j;
    }
  });
  std::vector<ExploitableRegion> out;
  for (auto& v : per_row) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// Routing tracks crossing the halo-expanded region box that carry no wire
// or via geometry within the layer's min spacing. Cell pin pads are cell
// metal, not routing occupancy, and do not count.
inline int count_free_tracks(const Layout& L, const GeometryIndex& gi,
                             const ExploitableRegion& region, Dbu halo) {
  Rect box = region.box(L).expanded(halo);
  box = box.intersection(L.die);
  if (box.degenerate()) return 0;
  int free_total = 0;
  for (const Layer& lay : L.tech->routing) {
    bool horiz = lay.dir == LayerDir::Horizontal;
    Dbu origin = horiz ? L.die.ly : L.die.lx;
    Dbu lo = horiz ? box.ly : box.lx;
    Dbu hi = horiz ? box.hy : box.hx;
    Dbu off = origin + lay.pitch / 2;
    auto ceil_div = [](Dbu a, Dbu b) { return a >= 0 ? (a + b - 1) / b : a / b; };
    Dbu c0 = off + ceil_div(lo - off, lay.pitch) * lay.pitch;  // first track >= lo
    for (Dbu c = c0; c <= hi; c += lay.pitch) {
      Rect probe = horiz ? Rect{box.lx, c, box.hx, c} : Rect{c, box.ly, c, box.hy};
      bool occupied = false;
      for (const auto& item : gi.layer(lay.index)) {
        if (item.src != GeomSrc::Wire && item.src != GeomSrc::ViaPad) continue;
        if (within_spacing(probe, item.r, lay.min_spacing)) {
          occupied = true;
          break;
        }
      }
      if (!occupied) ++free_total;
    }
  }
  return free_total;
}

inline int count_free_tracks(const Layout& L, const ExploitableRegion& region,
                             Dbu halo) {
  GeometryIndex gi = collect_geometry(L, false);
  return count_free_tracks(L, gi, region, halo);
}

struct TiRaw {
  long long sts_sites = 0;
  long long fts_tracks = 0;
  std::vector<ExploitableRegion> regions;
};

inline TiRaw ti_raw(const Layout& L, const ScoreConfig& cfg) {
  TiRaw out;
  out.regions = find_exploitable_regions(L, cfg.gap_threshold);
  GeometryIndex gi = collect_geometry(L, false);
  Dbu halo = static_cast<Dbu>(cfg.halo_pitches) * L.tech->routing.front().pitch;
  parallel_for(out.regions.size(), [&](size_t i) {
    out.regions[i].free_tracks = count_free_tracks(L, gi, out.regions[i], halo);
  });
  for (const auto& r : out.regions) {
    out.sts_sites += r.site_count;
    out.fts_tracks += r.free_tracks;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exposed area.

struct AssetExposure {
  std::string name;
  bool is_cell = false;
  Area shape_area = 0;  // projected union of the asset's own metal
  Area exposed = 0;     // projected area reachable from the top
  std::vector<Rect> exposed_rects;
};

struct ExposureMap {
  std::vector<AssetExposure> assets;  // cells first, then nets, each sorted
  Area total_cell = 0;
  Area total_net = 0;

  const AssetExposure* find(const std::string& name) const {
    for (const auto& a : assets)
      if (a.name == name) return &a;
    return nullptr;
  }
};

namespace sec_detail {

// Exposure of one asset given its metal per layer. A projected point is
// exposed iff some asset layer L holds metal there with no foreign metal
// above L; metal of the asset's own net group never shadows it.
inline void asset_exposure(const Layout& L, const GeometryIndex& gi,
                           const std::map<int, std::vector<Rect>>& metal_by_layer,
                           const std::vector<char>& own_net, AssetExposure& out) {
  std::vector<Rect> all_metal;
  std::vector<Rect> exposed_slabs;
  for (const auto& [layer, rects] : metal_by_layer) {
    Rect bbox;
    bool first = true;
    for (const auto& r : rects) {
      bbox = first ? r : bbox.bbox_with(r);
      first = false;
      all_metal.push_back(r);
    }
    std::vector<Rect> shadows;
    for (int above = layer + 1; above <= L.tech->num_routing(); ++above)
      for (const auto& item : gi.layer(above)) {
        if (item.net >= 0 && own_net[item.net]) continue;
        if (item.r.overlaps(bbox)) shadows.push_back(item.r);
      }
    for (const auto& slab : region_difference(rects, shadows))
      exposed_slabs.push_back(slab);
  }
  out.shape_area = union_area(all_metal);
  out.exposed = union_area(exposed_slabs);
  out.exposed_rects = std::move(exposed_slabs);
}

}  // namespace sec_detail

inline ExposureMap exposed_area(const Layout& L, const AssetSet& assets) {
  ExposureMap map;
  GeometryIndex gi = collect_geometry(L, true);

  struct Job {
    AssetExposure result;
    std::map<int, std::vector<Rect>> metal;
    std::vector<char> own;  // nets whose shadows are exempt
  };
  std::vector<Job> jobs;

  for (const auto& name : assets.cell_assets) {
    Job job;
    job.result.name = name;
    job.result.is_cell = true;
    job.own.assign(L.nets.size(), 0);
    int idx = L.find_instance(name);
    if (idx >= 0 && L.instances[idx].placed)
      for (const auto& lr : instance_metal(L, L.instances[idx]))
        job.metal[lr.layer].push_back(lr.rect);
    jobs.push_back(std::move(job));
  }
  for (const auto& root : assets.net_assets) {
    Job job;
    job.result.name = root;
    job.result.is_cell = false;
    job.own.assign(L.nets.size(), 0);
    for (size_t ni = 0; ni < L.nets.size(); ++ni) {
      if (asset_root(L.nets[ni].name) != root) continue;
      job.own[ni] = 1;
      for (const auto& s : L.nets[ni].route) job.metal[s.layer].push_back(s.rect());
      std::vector<LayerRect> pads;
      for (const auto& v : L.nets[ni].vias) via_metal(*L.tech, v, pads);
      for (const auto& p : pads) job.metal[p.layer].push_back(p.rect);
    }
    jobs.push_back(std::move(job));
  }

  parallel_for(jobs.size(), [&](size_t i) {
    sec_detail::asset_exposure(L, gi, jobs[i].metal, jobs[i].own, jobs[i].result);
  });

  for (auto& job : jobs) {
    if (job.result.is_cell)
      map.total_cell += job.result.exposed;
    else
      map.total_net += job.result.exposed;
    map.assets.push_back(std::move(job.result));
  }
  return map;
}

}  // namespace salsy
