#pragma once

// Flat key=value configuration for scoring and the pass pipeline.
// Keys are processed in file order; score.mode loads a weight preset that
// later explicit weight keys may override.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "salsy/io_util.hpp"

namespace salsy {

struct ScoreConfig {
  enum class Mode { Equal, Percentage };
  Mode mode = Mode::Equal;
  int gap_threshold = 20;      // sites
  int halo_pitches = 2;        // free-track halo around a region
  double clock_period_ps = 10000.0;
  double activity = 0.2;       // switching activity alpha
  double vdd = 1.2;            // volts
  int drc_cap = 20;            // des_issues saturates at this count

  double w_des_issues = 0.25, w_des_perf = 0.25, w_des_p = 0.25, w_des_area = 0.25;
  double w_ti_sts = 0.5, w_ti_fts = 0.5;
  double w_ea_c = 0.5, w_ea_n = 0.5;

  void load_mode_preset() {
    if (mode == Mode::Equal) {
      w_des_issues = w_des_perf = w_des_p = w_des_area = 0.25;
      w_ti_sts = w_ti_fts = 0.5;
      w_ea_c = w_ea_n = 0.5;
    } else {
      w_des_p = 0.1;
      w_des_perf = w_des_area = w_des_issues = 0.3;
      w_ti_sts = 0.6;
      w_ti_fts = 0.4;
      w_ea_c = w_ea_n = 0.5;
    }
  }
};

struct PassConfig {
  std::vector<std::string> order = {"ndr_cts",      "layer_targeted",
                                    "multicut_vias", "edge_cells",
                                    "intermediate_buffering", "cell_flipping",
                                    "location_buffering", "final_refinement"};
  double ndr_factor = 2.0;
  Dbu ndr_cap = 400;
  std::vector<int> asset_layers = {2, 3};
  std::vector<int> other_layers = {4, 5, 6};
  int other_width_mult = 2;
  std::string buffer_master = "BUF_X1";
  int max_buffers = 512;
  Dbu length_threshold = 20000;  // intermediate buffering kicks in above this
  int flip_k = 5;
  int edge_radius_sites = 80;
  int max_shift_sites = 4;
  double fsp_target = 0.85;
  double ti_target = 0.05;
  int fsp_loop_limit = 1;
  int ti_loop_limit = 2;
  int splice_halo_sites = 24;
  int multicut_bottom = 1;  // convert vias between this layer and the next

  bool enabled(const std::string& pass) const {
    for (const auto& p : order)
      if (p == pass) return true;
    return false;
  }
};

struct Config {
  ScoreConfig score;
  PassConfig pass;
  std::string profile = "contest";
};

inline void apply_profile(Config& cfg, const std::string& profile) {
  cfg.profile = profile;
  if (profile == "contest") {
    cfg.pass.order = {"ndr_cts",      "layer_targeted",        "multicut_vias",
                      "edge_cells",   "intermediate_buffering", "cell_flipping",
                      "location_buffering", "final_refinement"};
    cfg.pass.ndr_factor = 4.0;
    cfg.pass.ndr_cap = 800;
  } else if (profile == "tapeout") {
    // Techniques that are not chip-feasible stay off: multicut vias,
    // edge cell placement, intermediate buffering.
    cfg.pass.order = {"ndr_cts", "layer_targeted", "cell_flipping",
                      "location_buffering", "final_refinement"};
    cfg.pass.ndr_factor = 2.0;
    cfg.pass.ndr_cap = 400;
  } else {
    throw std::runtime_error("unknown profile '" + profile + "' (contest|tapeout)");
  }
}

namespace cfg_detail {

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<int> parse_layer_list(const std::string& v, int line) {
  std::vector<int> out;
  for (const auto& s : split_list(v)) {
    if (s.size() < 2 || s[0] != 'M')
      throw ParseError(line, "expected layer list like M2,M3 got '" + v + "'");
    out.push_back(std::stoi(s.substr(1)));
  }
  return out;
}

}  // namespace cfg_detail

inline void validate_config(const Config& cfg) {
  auto group = [](double a, double b, double c, double d) {
    return std::abs(a + b + c + d - 1.0) < 1e-9;
  };
  const auto& s = cfg.score;
  if (!group(s.w_des_issues, s.w_des_perf, s.w_des_p, s.w_des_area))
    throw std::runtime_error("des weights must sum to 1");
  if (std::abs(s.w_ti_sts + s.w_ti_fts - 1.0) >= 1e-9)
    throw std::runtime_error("ti weights must sum to 1");
  if (std::abs(s.w_ea_c + s.w_ea_n - 1.0) >= 1e-9)
    throw std::runtime_error("fsp_fi weights must sum to 1");
  if (s.gap_threshold < 2) throw std::runtime_error("gap threshold must be >= 2");
  if (cfg.pass.fsp_loop_limit < 1 || cfg.pass.ti_loop_limit < 1)
    throw std::runtime_error("loop limits must be >= 1");
  for (int a : cfg.pass.asset_layers)
    for (int b : cfg.pass.other_layers)
      if (a == b) throw std::runtime_error("asset/other layer sets must be disjoint");
}

inline Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    auto l = s.find_first_not_of(" \t\r");
    if (l == std::string::npos) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key = value");
    auto trim = [](std::string v) {
      auto a = v.find_first_not_of(" \t\r");
      auto b = v.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
    };
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty() || val.empty()) throw ParseError(line, "expected key = value");

    auto num = [&] {
      try {
        return std::stod(val);
      } catch (...) {
        throw ParseError(line, "expected a number for '" + key + "'");
      }
    };

    if (key == "score.mode") {
      if (val == "equal")
        cfg.score.mode = ScoreConfig::Mode::Equal;
      else if (val == "percentage")
        cfg.score.mode = ScoreConfig::Mode::Percentage;
      else
        throw ParseError(line, "score.mode must be equal|percentage");
      cfg.score.load_mode_preset();
    } else if (key == "score.gap_threshold")
      cfg.score.gap_threshold = static_cast<int>(num());
    else if (key == "score.halo_pitches")
      cfg.score.halo_pitches = static_cast<int>(num());
    else if (key == "score.clock_period_ps")
      cfg.score.clock_period_ps = num();
    else if (key == "score.activity")
      cfg.score.activity = num();
    else if (key == "score.vdd")
      cfg.score.vdd = num();
    else if (key == "score.drc_cap")
      cfg.score.drc_cap = static_cast<int>(num());
    else if (key == "score.w_des_issues")
      cfg.score.w_des_issues = num();
    else if (key == "score.w_des_perf")
      cfg.score.w_des_perf = num();
    else if (key == "score.w_des_p")
      cfg.score.w_des_p = num();
    else if (key == "score.w_des_area")
      cfg.score.w_des_area = num();
    else if (key == "score.w_ti_sts")
      cfg.score.w_ti_sts = num();
    else if (key == "score.w_ti_fts")
      cfg.score.w_ti_fts = num();
    else if (key == "score.w_ea_c")
      cfg.score.w_ea_c = num();
    else if (key == "score.w_ea_n")
      cfg.score.w_ea_n = num();
    else if (key == "pass.profile")
      apply_profile(cfg, val);
    else if (key == "pass.order")
      cfg.pass.order = cfg_detail::split_list(val);
    else if (key == "pass.ndr_factor")
      cfg.pass.ndr_factor = num();
    else if (key == "pass.ndr_cap")
      cfg.pass.ndr_cap = static_cast<Dbu>(num());
    else if (key == "pass.asset_layers")
      cfg.pass.asset_layers = cfg_detail::parse_layer_list(val, line);
    else if (key == "pass.other_layers")
      cfg.pass.other_layers = cfg_detail::parse_layer_list(val, line);
    else if (key == "pass.other_width_mult")
      cfg.pass.other_width_mult = static_cast<int>(num());
    else if (key == "pass.buffer_master")
      cfg.pass.buffer_master = val;
    else if (key == "pass.max_buffers")
      cfg.pass.max_buffers = static_cast<int>(num());
    else if (key == "pass.length_threshold")
      cfg.pass.length_threshold = static_cast<Dbu>(num());
    else if (key == "pass.flip_k")
      cfg.pass.flip_k = static_cast<int>(num());
    else if (key == "pass.edge_radius_sites")
      cfg.pass.edge_radius_sites = static_cast<int>(num());
    else if (key == "pass.max_shift_sites")
      cfg.pass.max_shift_sites = static_cast<int>(num());
    else if (key == "pass.fsp_target")
      cfg.pass.fsp_target = num();
    else if (key == "pass.ti_target")
      cfg.pass.ti_target = num();
    else if (key == "pass.fsp_loop_limit")
      cfg.pass.fsp_loop_limit = static_cast<int>(num());
    else if (key == "pass.ti_loop_limit")
      cfg.pass.ti_loop_limit = static_cast<int>(num());
    else if (key == "pass.splice_halo_sites")
      cfg.pass.splice_halo_sites = static_cast<int>(num());
    else if (key == "pass.multicut_bottom")
      cfg.pass.multicut_bottom = static_cast<int>(num());
    else
      throw ParseError(line, "unknown config key '" + key + "'");
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace salsy
