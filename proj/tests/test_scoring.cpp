#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "salsy/scoring.hpp"

using namespace salsy;

namespace {

RawMetrics clean_raw() {
  RawMetrics m;
  m.design = "d";
  m.cell_area = 1000000;
  m.power_uw = 120.0;
  m.wns_ps = 500;
  m.tns_ps = 0;
  m.endpoints = 10;
  m.drc_count = 0;
  m.ti_sts = 4000;
  m.ti_fts = 9000;
  m.ea_c = 500000;
  m.ea_n = 700000;
  m.cell_assets = {"u1"};
  m.net_assets = {"k"};
  return m;
}

}  // namespace

TEST_CASE("normalize") {
  ScoreConfig cfg;
  SECTION("a design scored against itself is all ones and clean") {
    RawMetrics m = clean_raw();
    SubScores s = normalize(m, m, cfg);
    CHECK(s.des_p_total == 1.0);
    CHECK(s.des_area == 1.0);
    CHECK(s.ti_sts == 1.0);
    CHECK(s.ti_fts == 1.0);
    CHECK(s.fsp_fi_ea_c == 1.0);
    CHECK(s.fsp_fi_ea_n == 1.0);
    CHECK(s.des_issues == 0.0);
    CHECK(s.des_perf == 0.0);
    // The issue/perf terms are absolute penalties, so a clean self-scored
    // design lands at des = 0.5 with a perfect security side.
    ScoreBundle b = aggregate(s, cfg);
    CHECK(b.security == Catch::Approx(1.0));
    CHECK(b.des == Catch::Approx(0.5));
    CHECK(b.overall == Catch::Approx(0.5));
  }
  SECTION("zero-over-nonzero gives a hard zero") {
    RawMetrics base = clean_raw();
    RawMetrics sec = clean_raw();
    sec.ti_sts = 0;
    SubScores s = normalize(sec, base, cfg);
    CHECK(s.ti_sts == 0.0);
  }
  SECTION("zero-over-zero is zero by convention (empty asset sets)") {
    RawMetrics base = clean_raw();
    RawMetrics sec = clean_raw();
    base.ea_c = base.ea_n = sec.ea_c = sec.ea_n = 0;
    SubScores s = normalize(sec, base, cfg);
    CHECK(s.fsp_fi_ea_c == 0.0);
    CHECK(s.fsp_fi_ea_n == 0.0);
    CHECK(s.violations.empty());
  }
  SECTION("nonzero-over-zero is an infinite ratio and a violation") {
    RawMetrics base = clean_raw();
    RawMetrics sec = clean_raw();
    base.ti_fts = 0;
    SubScores s = normalize(sec, base, cfg);
    CHECK(std::isinf(s.ti_fts));
    REQUIRE(s.violations.size() == 1);
    CHECK_THAT(s.violations[0], Catch::Matchers::ContainsSubstring("ti_fts"));
  }
  SECTION("issue and perf terms are absolute on the secured layout") {
    RawMetrics base = clean_raw();
    RawMetrics sec = clean_raw();
    sec.drc_count = 5;
    sec.tns_ps = -5000;  // vs 10 endpoints * 10000 ps
    SubScores s = normalize(sec, base, cfg);
    CHECK(s.des_issues == Catch::Approx(0.25));
    CHECK(s.des_perf == Catch::Approx(0.05));
    sec.drc_count = 100;
    CHECK(normalize(sec, base, cfg).des_issues == 1.0);  // saturates
  }
  SECTION("mismatched asset sets are rejected") {
    RawMetrics base = clean_raw();
    RawMetrics sec = clean_raw();
    sec.net_assets.push_back("extra");
    CHECK_THROWS_WITH(normalize(sec, base, cfg),
                      Catch::Matchers::ContainsSubstring("asset sets differ"));
  }
}

TEST_CASE("equal-weight aggregation reproduces the reference scorecards") {
  ScoreConfig cfg;  // equal mode is the default
  SECTION("present-like column") {
    SubScores s;
    s.des_issues = 0.000;
    s.des_perf = 0.000;
    s.des_p_total = 1.161;
    s.des_area = 0.597;
    s.ti_sts = 0.000;
    s.ti_fts = 0.000;
    s.fsp_fi_ea_c = 0.293;
    s.fsp_fi_ea_n = 0.568;
    ScoreBundle b = aggregate(s, cfg);
    CHECK(b.des == Catch::Approx(0.4395).margin(0.0001));
    CHECK(b.ti == 0.0);
    CHECK(b.fsp_fi == Catch::Approx(0.4305).margin(0.0001));
    CHECK(b.overall == Catch::Approx(0.094).margin(0.001));
  }
  SECTION("seed-like column") {
    SubScores s;
    s.des_p_total = 1.041;
    s.des_area = 0.627;
    s.ti_sts = 0.026;
    s.ti_fts = 0.169;
    s.fsp_fi_ea_c = 0.762;
    s.fsp_fi_ea_n = 0.835;
    ScoreBundle b = aggregate(s, cfg);
    CHECK(b.des == Catch::Approx(0.417).margin(0.001));
    CHECK(b.ti == Catch::Approx(0.097).margin(0.001));
    CHECK(b.fsp_fi == Catch::Approx(0.799).margin(0.001));
    CHECK(b.overall == Catch::Approx(0.187).margin(0.001));
  }
  SECTION("all ones is the baseline identity") {
    SubScores s;
    s.des_issues = s.des_perf = s.des_p_total = s.des_area = 1.0;
    s.ti_sts = s.ti_fts = 1.0;
    s.fsp_fi_ea_c = s.fsp_fi_ea_n = 1.0;
    ScoreBundle b = aggregate(s, cfg);
    CHECK(b.des == 1.0);
    CHECK(b.ti == 1.0);
    CHECK(b.fsp_fi == 1.0);
    CHECK(b.overall == 1.0);
  }
}

TEST_CASE("percentage mode composes multiplicatively") {
  ScoreConfig cfg;
  cfg.mode = ScoreConfig::Mode::Percentage;
  cfg.load_mode_preset();
  SubScores s;
  s.des_issues = 0.0;
  s.des_perf = 0.0;
  s.des_p_total = 1.0;
  s.des_area = 0.5;
  s.ti_sts = 0.5;
  s.ti_fts = 0.25;
  s.fsp_fi_ea_c = 0.4;
  s.fsp_fi_ea_n = 0.6;
  ScoreBundle b = aggregate(s, cfg);
  CHECK(b.des == Catch::Approx(0.1 * 1.0 + 0.3 * 0.5));
  CHECK(b.ti == Catch::Approx(0.6 * 0.5 + 0.4 * 0.25));
  CHECK(b.fsp_fi == Catch::Approx(0.5));
  CHECK(b.overall == Catch::Approx(b.des * b.ti * b.fsp_fi));
}

TEST_CASE("aggregation is monotone and scales on the security side") {
  ScoreConfig cfg;
  oracle::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    SubScores s;
    s.des_issues = rng.unit();
    s.des_perf = rng.unit();
    s.des_p_total = rng.unit() * 2;
    s.des_area = rng.unit() * 2;
    s.ti_sts = rng.unit();
    s.ti_fts = rng.unit();
    s.fsp_fi_ea_c = rng.unit();
    s.fsp_fi_ea_n = rng.unit();
    ScoreBundle b = aggregate(s, cfg);

    SubScores t = s;
    double* fields[] = {&t.des_issues, &t.des_perf, &t.des_p_total, &t.des_area,
                        &t.ti_sts,     &t.ti_fts,   &t.fsp_fi_ea_c, &t.fsp_fi_ea_n};
    int pick = static_cast<int>(rng.below(8));
    *fields[pick] *= rng.unit();  // strictly decrease one sub-score
    ScoreBundle b2 = aggregate(t, cfg);
    CHECK(b2.overall <= b.overall + 1e-12);

    double c = rng.unit() * 2;
    SubScores u = s;
    u.ti_sts *= c;
    u.ti_fts *= c;
    u.fsp_fi_ea_c *= c;
    u.fsp_fi_ea_n *= c;
    ScoreBundle b3 = aggregate(u, cfg);
    CHECK(b3.security == Catch::Approx(c * b.security).margin(1e-9));
  }
}
