#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chered/jantzen.hpp"

using namespace chered;

TEST_CASE("generic point: single level of full dimension") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  ParamPoint c0(std::vector<Rat>{Rat(1, 5)});
  ParamPoint c1(std::vector<Rat>{Rat(1)});
  for (int d = 0; d <= 6; ++d) {
    auto jd = jantzen_filtration(m, c0, c1, d);
    CHECK_FALSE(jd.skipped);
    CHECK(jd.ord_det == 0);
    REQUIRE(jd.levels.size() == 1);
    CHECK(jd.levels[0].dim == m.dim(d));
    CHECK(jd.levels[0].inertia.z == 0);
  }
}

TEST_CASE("A1 wall at c = 1/2: one level-1 line per degree") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  ParamPoint c0(std::vector<Rat>{Rat(1, 2)});
  ParamPoint c1(std::vector<Rat>{Rat(1)});
  // Degree 0: single level k = 0, dim 1, positive.
  {
    auto jd = jantzen_filtration(m, c0, c1, 0);
    REQUIRE(jd.levels.size() == 1);
    CHECK(jd.levels[0].dim == 1);
    CHECK(jd.levels[0].inertia.p == 1);
    CHECK(jd.ord_det == 0);
  }
  for (int d = 1; d <= 12; ++d) {
    auto jd = jantzen_filtration(m, c0, c1, d);
    CHECK(jd.ord_det == 1);
    REQUIRE(jd.levels.size() == 2);
    CHECK(jd.levels[0].dim == 0);
    CHECK(jd.levels[1].dim == 1);
    // G(t) = (-2t) (positive unit), so the level-1 form is negative.
    CHECK(jd.levels[1].inertia.q == 1);
    // Monotone dims: dim^{>= k} non-increasing.
    CHECK(jd.level_basis[0].cols() >= jd.level_basis[1].cols());
  }
}

TEST_CASE("A1 wall: submodule closure and wall-crossing identities") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  ParamPoint c0(std::vector<Rat>{Rat(1, 2)});
  ParamPoint c1(std::vector<Rat>{Rat(1)});
  std::vector<JantzenDegree> filtration;
  for (int d = 0; d <= 10; ++d) filtration.push_back(jantzen_filtration(m, c0, c1, d));
  auto sub = submodule_check(m, c0, filtration);
  CHECK(sub.ok);

  auto report = wall_crossing_check(m, c0, c1, Rat(1, 10), 10);
  CHECK(report.ok);
  CHECK_FALSE(report.wall_in_interval);
  CHECK(report.degrees_checked == 11);
}

TEST_CASE("degenerate direction is skipped") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  ParamPoint c0(std::vector<Rat>{Rat(1, 2)});
  ParamPoint c1(std::vector<Rat>{Rat(0)});  // constant pencil, det == 0 for d >= 1
  auto jd = jantzen_filtration(m, c0, c1, 1);
  CHECK(jd.skipped);
  CHECK(!jd.error.empty());
}

TEST_CASE("B2 trivial across its first wall along c1 = c0") {
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  // First wall on the ray c = s(1,1): the degree-1 Gram is (1 - 4s) Id.
  ParamPoint c0(std::vector<Rat>{Rat(1, 4), Rat(1, 4)});
  ParamPoint c1 = c0;
  auto jd = jantzen_filtration(m, c0, c1, 1);
  CHECK(jd.ord_det == 2);
  REQUIRE(jd.levels.size() == 2);
  CHECK(jd.levels[0].dim == 0);
  CHECK(jd.levels[1].dim == 2);

  std::vector<JantzenDegree> filtration;
  for (int d = 0; d <= 6; ++d) filtration.push_back(jantzen_filtration(m, c0, c1, d));
  CHECK(submodule_check(m, c0, filtration).ok);
  auto report = wall_crossing_check(m, c0, c1, Rat(1, 10), 6);
  CHECK(report.ok);

  // Valuation sums match ord det (verified internally; spot-check too).
  for (const auto& fd : filtration) {
    long vs = 0;
    for (const auto& lv : fd.levels) vs += long(lv.level) * lv.dim;
    CHECK(vs == fd.ord_det);
  }
}

TEST_CASE("no wall inside (0, s] detection") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  // From c0 = 0.4 along c1 = 1, the wall at c = 1/2 sits at t = 0.1;
  // taking s = 0.2 must flag it.
  ParamPoint c0(std::vector<Rat>{Rat(2, 5)});
  ParamPoint c1(std::vector<Rat>{Rat(1)});
  auto report = wall_crossing_check(m, c0, c1, Rat(1, 5), 4);
  CHECK(report.wall_in_interval);
}
