#pragma once

// Plain score data carriers, shared by scoring, passes and reports.

#include <string>
#include <vector>

#include "salsy/geometry.hpp"

namespace salsy {

struct RawMetrics {
  std::string design;
  Area cell_area = 0;
  double power_uw = 0;
  double wns_ps = 0;
  double tns_ps = 0;
  int endpoints = 0;
  int drc_count = 0;
  long long ti_sts = 0;
  long long ti_fts = 0;
  long long region_count = 0;
  Area ea_c = 0;
  Area ea_n = 0;
  std::vector<std::string> cell_assets;  // sorted
  std::vector<std::string> net_assets;   // sorted roots
};

struct SubScores {
  double des_issues = 0, des_perf = 0, des_p_total = 0, des_area = 0;
  double ti_sts = 0, ti_fts = 0;
  double fsp_fi_ea_c = 0, fsp_fi_ea_n = 0;
  std::vector<std::string> violations;  // infinite-ratio diagnostics
};

struct ScoreBundle {
  double des = 0, ti = 0, fsp_fi = 0, security = 0, overall = 0;
};

}  // namespace salsy
