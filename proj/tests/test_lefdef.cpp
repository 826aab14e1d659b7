#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "salsy/assets_io.hpp"
#include "salsy/config.hpp"
#include "salsy/def_io.hpp"
#include "salsy/lef_reader.hpp"
#include "salsy/mock_tech.hpp"
#include "test_helpers.hpp"

using namespace salsy;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

const char* kMiniDef = R"(VERSION 5.8 ;
DESIGN mini ;
UNITS DISTANCE MICRONS 1000 ;
DIEAREA ( 0 0 ) ( 4000 1400 ) ;
ROW row_0 core 0 0 N DO 20 BY 1 STEP 200 0 ;
COMPONENTS 2 ;
- u1 INV_X1 + PLACED ( 0 0 ) N ;
- u2 INV_X1 + PLACED ( 1000 0 ) FN ;
END COMPONENTS
PINS 0 ;
END PINS
NETS 1 ;
- n1 ( u1 Y ) ( u2 A )
  + USE SIGNAL
  + ROUTED M1 ( 300 700 ) ( 1300 700 )
    NEW M1 ( 300 700 ) V12_1
    NEW M2 ( 300 700 ) ( 300 900 ) ;
END NETS
END DESIGN
)";

}  // namespace

TEST_CASE("bundled technology parses and matches its manifest") {
  std::string lef = slurp("tests/fixtures/mock65.lef");
  CHECK(lef == mock65_lef_text());  // fixture mirrors the built-in text

  auto tech = parse_lef(lef);
  std::map<std::string, int> manifest;
  std::istringstream mf(slurp("tests/fixtures/mock65.manifest"));
  std::string key, eq;
  int value;
  while (mf >> key >> eq >> value) manifest[key] = value;

  CHECK(static_cast<int>(tech->masters.size()) == manifest.at("masters"));
  CHECK(tech->num_routing() == manifest.at("routing_layers"));
  CHECK(static_cast<int>(tech->cuts.size()) == manifest.at("cut_layers"));
  CHECK(static_cast<int>(tech->vias.size()) == manifest.at("vias"));

  CHECK(tech->site.width == 200);
  CHECK(tech->site.height == 1400);
  CHECK(tech->layer(1).dir == LayerDir::Horizontal);
  CHECK(tech->layer(2).dir == LayerDir::Vertical);
  CHECK(tech->default_via(1) != nullptr);
  CHECK(tech->default_via(1)->cut_count() == 1);
  CHECK(tech->find_via("V12_2x2")->cut_count() == 4);
}

TEST_CASE("lef errors carry line numbers") {
  SECTION("unknown keyword") {
    std::string bad = "UNITS\n  DATABASE MICRONS 1000 ;\nEND UNITS\nBANANA\n";
    try {
      parse_lef(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 4);
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("BANANA"));
    }
  }
  SECTION("macro size off the site grid") {
    std::string lef = mock65_lef_text();
    auto pos = lef.find("SIZE 0.8 BY 1.4");  // FILL_X4, no pins in the way
    lef.replace(pos, 15, "SIZE 0.9 BY 1.4");
    CHECK_THROWS_WITH(parse_lef(lef),
                      Catch::Matchers::ContainsSubstring("multiple of the site width"));
  }
  SECTION("out-of-order metal naming") {
    std::string lef = mock65_lef_text();
    auto a = lef.find("LAYER M2");
    lef.replace(a, 8, "LAYER M5");
    lef.replace(lef.find("END M2"), 6, "END M5");
    CHECK_THROWS_WITH(parse_lef(lef),
                      Catch::Matchers::ContainsSubstring("non-monotone layer order"));
  }
}

TEST_CASE("minimal def parses, resolves and round-trips") {
  auto tech = testutil::tech();
  std::vector<std::string> warnings;
  Layout L = parse_def(kMiniDef, tech, &warnings);
  CHECK(warnings.empty());
  CHECK(L.design == "mini");
  CHECK(L.instances.size() == 2);
  CHECK(L.rows.size() == 1);
  REQUIRE(L.nets.size() == 1);
  CHECK(L.instances[L.find_instance("u2")].orient == Orient::FN);
  CHECK(L.instances[0].connected);
  CHECK(net_is_connected(L, L.nets[0]));

  std::string w1 = write_def(L);
  std::string w2 = write_def(L);
  CHECK(w1 == w2);  // writer determinism
  Layout L2 = parse_def(w1, tech);
  CHECK(write_def(L2) == w1);  // fixpoint
}

TEST_CASE("def subset rejections and diagnostics") {
  auto tech = testutil::tech();
  SECTION("SPECIALNETS is rejected") {
    std::string def =
        "DESIGN d ;\nUNITS DISTANCE MICRONS 1000 ;\nDIEAREA ( 0 0 ) ( 100 100 ) ;\n"
        "SPECIALNETS 1 ;\n";
    CHECK_THROWS_WITH(parse_def(def, tech),
                      Catch::Matchers::ContainsSubstring("SPECIALNETS"));
  }
  SECTION("dangling master reference names the symbol") {
    std::string def =
        "DESIGN d ;\nUNITS DISTANCE MICRONS 1000 ;\nDIEAREA ( 0 0 ) ( 100 100 ) ;\n"
        "COMPONENTS 1 ;\n- u1 NOPE_X9 + PLACED ( 0 0 ) N ;\nEND COMPONENTS\n";
    CHECK_THROWS_WITH(parse_def(def, tech),
                      Catch::Matchers::ContainsSubstring("NOPE_X9"));
  }
  SECTION("off-track geometry warns but keeps the wire") {
    std::string def(kMiniDef);
    auto pos = def.find("ROUTED M1 ( 300 700 ) ( 1300 700 )");
    def.replace(pos, 34, "ROUTED M1 ( 300 702 ) ( 1300 702 )");
    std::vector<std::string> warnings;
    Layout L = parse_def(def, tech, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK_THAT(warnings[0], Catch::Matchers::ContainsSubstring("off-track"));
    CHECK(L.nets[0].route.size() == 2);
  }
  SECTION("empty nets section round-trips") {
    testutil::Builder b(1, 10);
    b.add("u1", "INV_X1", 0, 0);
    std::string text = write_def(b.L);
    Layout L = parse_def(text, tech);
    CHECK(L.nets.empty());
    CHECK(write_def(L) == text);
  }
}

TEST_CASE("asset list loading") {
  testutil::Builder b;
  b.add("u_round_0", "DFF_X1", 0, 0);
  b.add("u2", "INV_X1", 0, 6);
  b.add_net("k_in", {{"u_round_0", "Q"}, {"u2", "A"}});

  SECTION("resolves both kinds") {
    auto assets = load_assets("net k_in\ncell u_round_0\n", b.L);
    CHECK(assets.cell_assets.size() == 1);
    CHECK(assets.net_assets.size() == 1);
    CHECK(b.L.nets[0].is_asset);
  }
  SECTION("empty file yields an empty set") {
    auto assets = load_assets("# nothing here\n", b.L);
    CHECK(assets.empty());
  }
  SECTION("unresolved name is an error") {
    CHECK_THROWS_WITH(load_assets("net missing_net\n", b.L),
                      Catch::Matchers::ContainsSubstring("unresolved asset"));
  }
  SECTION("duplicates are an error") {
    CHECK_THROWS_WITH(load_assets("cell u_round_0\ncell u_round_0\n", b.L),
                      Catch::Matchers::ContainsSubstring("duplicate"));
  }
  SECTION("buffer-split derivatives resolve to their root") {
    b.L.nets[0].name = "k_in__b0";
    auto assets = load_assets("net k_in\n", b.L);
    CHECK(assets.net_assets.count("k_in") == 1);
    CHECK(b.L.nets[0].is_asset);
  }
}

TEST_CASE("config parsing and validation") {
  SECTION("defaults are the equal-weight scheme") {
    Config cfg = parse_config("");
    CHECK(cfg.score.mode == ScoreConfig::Mode::Equal);
    CHECK(cfg.score.gap_threshold == 20);
    CHECK(cfg.score.w_des_p == 0.25);
  }
  SECTION("percentage preset") {
    Config cfg = parse_config("score.mode = percentage\n");
    CHECK(cfg.score.w_des_p == 0.1);
    CHECK(cfg.score.w_ti_sts == 0.6);
  }
  SECTION("weight groups must sum to one") {
    CHECK_THROWS_WITH(parse_config("score.w_ti_sts = 0.9\n"),
                      Catch::Matchers::ContainsSubstring("sum to 1"));
  }
  SECTION("threshold floor") {
    CHECK_THROWS_WITH(parse_config("score.gap_threshold = 1\n"),
                      Catch::Matchers::ContainsSubstring(">= 2"));
  }
  SECTION("unknown keys are rejected with a line number") {
    try {
      parse_config("\nscore.bogus = 3\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }
  SECTION("profiles pick pass sets") {
    Config cfg = parse_config("pass.profile = tapeout\n");
    CHECK_FALSE(cfg.pass.enabled("multicut_vias"));
    CHECK(cfg.pass.enabled("location_buffering"));
    Config c2 = parse_config("pass.profile = contest\n");
    CHECK(c2.pass.enabled("multicut_vias"));
  }
  SECTION("layer sets must stay disjoint") {
    CHECK_THROWS_WITH(parse_config("pass.asset_layers = M2,M4\n"),
                      Catch::Matchers::ContainsSubstring("disjoint"));
  }
}
