#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chered/config.hpp"
#include "chered/verify.hpp"

#include <cstdio>
#include <fstream>

using namespace chered;

TEST_CASE("TOML subset parsing") {
  TomlTable t = parse_toml(
      "# comment\n"
      "[sweep]\n"
      "group = \"A1\"\n"
      "maxdeg = 24\n"
      "flag = true\n"
      "irreps = [\"triv\", \"sgn\"]\n"
      "points = [[0.1], [0.25]]\n");
  CHECK(t.at("sweep.group").as_string() == "A1");
  CHECK(t.at("sweep.maxdeg").as_number() == 24);
  CHECK(t.at("sweep.flag").as_bool());
  CHECK(t.at("sweep.irreps").as_array().size() == 2);
  CHECK(t.at("sweep.points").as_array()[1].as_array()[0].as_number() == 0.25);
}

TEST_CASE("signature comparison driver: rank-1 exact matches") {
  {
    ParamPoint c(std::vector<Rat>{Rat(1, 4)});
    ComparisonReport rep = verify_signature_comparison("A1", "triv", c, 24);
    CHECK(rep.full_support);
    REQUIRE(rep.a_exact);
    CHECK(rep.a_value == Rat(1));
    CHECK(rep.dim_kz_gram == 1);
    CHECK(rep.dim_kz_hecke == 1);
    CHECK(rep.p == 1);
    CHECK(rep.q == 0);
    CHECK(rep.primary_ok);
    CHECK(rep.signed_ok);
    CHECK(rep.abs_mismatch == 0.0);
  }
  {
    ParamPoint c(std::vector<Rat>{Rat(1)});
    ComparisonReport rep = verify_signature_comparison("A1", "triv", c, 24);
    REQUIRE(rep.a_exact);
    CHECK(rep.a_value == Rat(-1));
    // Signed verdict via the shifted weight normalization: (p, q) = (0, 1).
    CHECK(rep.signed_normalized);
    CHECK(rep.p == 0);
    CHECK(rep.q == 1);
    CHECK(rep.primary_ok);
    CHECK(rep.signed_ok);
  }
}

TEST_CASE("signature comparison driver at c = 0") {
  ParamPoint c(std::vector<Rat>{Rat(0), Rat(0)});
  ComparisonReport rep = verify_signature_comparison("B2", "refl", c, 16);
  REQUIRE(rep.a_exact);
  CHECK(rep.a_value == Rat(1));
  CHECK(rep.p == 2);
  CHECK(rep.q == 0);
  CHECK(rep.primary_ok);
  CHECK(rep.signed_ok);
}

TEST_CASE("signature comparison driver skips proper-support cases") {
  // A1 triv at c = 1/2: L is one-dimensional (proper support).
  ParamPoint c(std::vector<Rat>{Rat(1, 2)});
  ComparisonReport rep = verify_signature_comparison("A1", "triv", c, 24);
  CHECK_FALSE(rep.full_support);
}

TEST_CASE("Corollary 4.15 driver") {
  ParamPoint c(std::vector<Rat>{Rat(1, 4)});
  auto entries = verify_kz_nondegeneracy("A1", c, 24);
  REQUIRE(entries.size() == 2);
  for (const auto& e : entries) {
    CHECK(e.full_support);
    CHECK(e.ok);
    CHECK(e.definite);
    CHECK(e.quasi_unitary_checked);
    CHECK(e.nondegeneracy_margin > 1e-3);
  }
}

TEST_CASE("sweep: empty grid gives empty report") {
  SweepConfig cfg;
  cfg.group = "A1";
  cfg.mode = "sch";
  auto cells = run_sweep(cfg);
  CHECK(cells.empty());
}

TEST_CASE("sweep over the rank-1 unitary and non-unitary windows") {
  SweepConfig cfg;
  cfg.group = "A1";
  cfg.irreps = {"triv"};
  cfg.max_degree = 24;
  for (double v : {0.1, 0.25, 0.45}) cfg.points.push_back({v});
  auto cells = run_sweep(cfg);
  REQUIRE(cells.size() == 3);
  for (const auto& cell : cells) {
    REQUIRE_FALSE(cell.failed);
    REQUIRE(cell.report.has_value());
    CHECK(cell.report->a_exact);
    CHECK(cell.report->a_value == Rat(1));
  }
  SweepConfig cfg2 = cfg;
  cfg2.points.clear();
  for (double v : {0.55, 0.95, 1.45}) cfg2.points.push_back({v});
  auto cells2 = run_sweep(cfg2);
  for (const auto& cell : cells2) {
    REQUIRE_FALSE(cell.failed);
    CHECK(cell.report->a_value == Rat(-1));
  }
}

TEST_CASE("sweep config from TOML with a grid") {
  std::string path = "/tmp/chered_sweep_test.toml";
  {
    std::ofstream out(path);
    out << "[sweep]\n"
        << "group = \"A1\"\n"
        << "irreps = [\"triv\"]\n"
        << "maxdeg = 20\n"
        << "mode = \"sch\"\n"
        << "grid_start = [0.1]\n"
        << "grid_stop = [0.3]\n"
        << "grid_count = 3\n";
  }
  SweepConfig cfg = sweep_config_from_toml(path);
  CHECK(cfg.group == "A1");
  REQUIRE(cfg.points.size() == 3);
  CHECK(cfg.points[1][0] == doctest::Approx(0.2));
  auto cells = run_sweep(cfg);
  REQUIRE(cells.size() == 3);
  for (const auto& cell : cells) {
    CHECK_FALSE(cell.failed);
    CHECK(cell.sch.size() == 21);
    CHECK(cell.sch[0] == 1);
  }
  std::remove(path.c_str());
}

TEST_CASE("sweep isolates per-cell failures") {
  SweepConfig cfg;
  cfg.group = "A1";
  cfg.irreps = {"no-such-irrep"};
  cfg.points = {{0.1}};
  auto cells = run_sweep(cfg);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].failed);
  CHECK(!cells[0].error.empty());
}
