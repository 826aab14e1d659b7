#pragma once

// Baseline-normalized sub-scores and the score composition. The default
// equal-weight composition averages each group and multiplies design
// quality by the mean of the two security terms; the percentage scheme
// multiplies des * ti * fsp_fi with the 10/30/30/30 and 60/40 weights.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "salsy/quality.hpp"
#include "salsy/scoring_fwd.hpp"
#include "salsy/sec_metrics.hpp"

namespace salsy {

inline RawMetrics measure(const Layout& L, const AssetSet& assets,
                          const ScoreConfig& cfg) {
  RawMetrics m;
  m.design = L.design;
  m.cell_area = cell_area(L);
  m.power_uw = power_proxy(L, cfg);
  TimingResult t = timing_proxy(L, cfg);
  m.wns_ps = t.wns_ps;
  m.tns_ps = t.tns_ps;
  m.endpoints = t.endpoints;
  m.drc_count = static_cast<int>(drc_lite(L).size());
  TiRaw ti = ti_raw(L, cfg);
  m.ti_sts = ti.sts_sites;
  m.ti_fts = ti.fts_tracks;
  m.region_count = static_cast<long long>(ti.regions.size());
  ExposureMap em = exposed_area(L, assets);
  m.ea_c = em.total_cell;
  m.ea_n = em.total_net;
  m.cell_assets.assign(assets.cell_assets.begin(), assets.cell_assets.end());
  m.net_assets.assign(assets.net_assets.begin(), assets.net_assets.end());
  return m;
}

inline SubScores normalize(const RawMetrics& secured, const RawMetrics& baseline,
                           const ScoreConfig& cfg) {
  if (secured.cell_assets != baseline.cell_assets ||
      secured.net_assets != baseline.net_assets)
    throw std::runtime_error("secured and baseline asset sets differ");

  SubScores s;
  auto ratio = [&](double num, double den, const std::string& name) {
    if (den == 0.0 && num == 0.0) return 0.0;
    if (den == 0.0) {
      s.violations.push_back(name + ": baseline is 0 but secured is nonzero");
      return std::numeric_limits<double>::infinity();
    }
    return num / den;
  };
  s.des_p_total = ratio(secured.power_uw, baseline.power_uw, "des_p_total");
  s.des_area = ratio(static_cast<double>(secured.cell_area),
                     static_cast<double>(baseline.cell_area), "des_area");
  s.ti_sts = ratio(static_cast<double>(secured.ti_sts),
                   static_cast<double>(baseline.ti_sts), "ti_sts");
  s.ti_fts = ratio(static_cast<double>(secured.ti_fts),
                   static_cast<double>(baseline.ti_fts), "ti_fts");
  s.fsp_fi_ea_c = ratio(static_cast<double>(secured.ea_c),
                        static_cast<double>(baseline.ea_c), "fsp_fi_ea_c");
  s.fsp_fi_ea_n = ratio(static_cast<double>(secured.ea_n),
                        static_cast<double>(baseline.ea_n), "fsp_fi_ea_n");
  // Absolute terms, judged on the secured layout alone.
  s.des_issues = std::min(1.0, secured.drc_count / std::max(1.0, double(cfg.drc_cap)));
  s.des_perf =
      secured.endpoints > 0
          ? std::max(0.0, -secured.tns_ps / (secured.endpoints * cfg.clock_period_ps))
          : 0.0;
  return s;
}

inline ScoreBundle aggregate(const SubScores& s, const ScoreConfig& cfg) {
  ScoreBundle b;
  b.des = cfg.w_des_issues * s.des_issues + cfg.w_des_perf * s.des_perf +
          cfg.w_des_p * s.des_p_total + cfg.w_des_area * s.des_area;
  b.ti = cfg.w_ti_sts * s.ti_sts + cfg.w_ti_fts * s.ti_fts;
  b.fsp_fi = cfg.w_ea_c * s.fsp_fi_ea_c + cfg.w_ea_n * s.fsp_fi_ea_n;
  if (cfg.mode == ScoreConfig::Mode::Equal) {
    b.security = 0.5 * (b.ti + b.fsp_fi);
    b.overall = b.des * b.security;
  } else {
    b.security = b.ti * b.fsp_fi;
    b.overall = b.des * b.ti * b.fsp_fi;
  }
  return b;
}

inline ScoreBundle score_pair(const RawMetrics& secured, const RawMetrics& baseline,
                              const ScoreConfig& cfg) {
  return aggregate(normalize(secured, baseline, cfg), cfg);
}

}  // namespace salsy
