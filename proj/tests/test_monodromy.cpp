#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chered/monodromy.hpp"

using namespace chered;

namespace {

KZContext make_kz(const std::string& label, const std::string& irrep) {
  auto ctx = GroupContext<double>::build(label);
  auto reps = irreps_of(ctx);
  return KZContext::build(ctx, find_irrep(reps, irrep));
}

ParamPoint real_c(std::initializer_list<double> vals) {
  return ParamPoint(std::vector<double>(vals));
}

}  // namespace

TEST_CASE("c = 0: trivial monodromy and T_i = s_i") {
  KZContext kz = make_kz("A2", "std");
  ParamPoint zero = real_c({0.0});
  auto gens = braid_generators(kz, zero);
  for (size_t i = 0; i < gens.t.size(); ++i)
    CHECK((gens.t[i] - kz.rho_c(kz.W.simple[i])).norm() < 1e-9);
  auto hk = hecke_check(kz, zero, gens);
  CHECK(hk.max_residual < 1e-9);
}

TEST_CASE("rank-1 scalar oracles") {
  // triv: the connection vanishes on the fiber, T = 1.
  KZContext kt = make_kz("A1", "triv");
  ParamPoint c = real_c({0.3});
  auto gt = braid_generators(kt, c);
  CHECK(std::abs(gt.t[0](0, 0) - 1.0) < 1e-9);

  // sgn: T = -q with q = e^{-2 pi i c}.
  KZContext ks = make_kz("A1", "sgn");
  auto gs = braid_generators(ks, c);
  std::complex<double> q = std::exp(std::complex<double>(0, -2 * M_PI) * 0.3);
  CHECK(std::abs(gs.t[0](0, 0) + q) < 1e-9);

  // Complex parameter: same closed form.
  ParamPoint cc(std::vector<std::complex<double>>{{0.2, 0.15}});
  auto gsc = braid_generators(ks, cc);
  std::complex<double> qc =
      std::exp(std::complex<double>(0, -2 * M_PI) * std::complex<double>(0.2, 0.15));
  CHECK(std::abs(gsc.t[0](0, 0) + qc) < 1e-8);
}

TEST_CASE("flatness: contractible loops have trivial monodromy") {
  KZContext kz = make_kz("A2", "std");
  ParamPoint c = real_c({0.2});
  std::vector<double> x0 = kz.x0;
  std::vector<double> d1 = {0.2, 0.05}, d2 = {-0.07, 0.15};
  auto shift = [&](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
  };
  Path rect = Path::line(x0, shift(x0, d1))
                  .then(Path::line(shift(x0, d1), shift(shift(x0, d1), d2)))
                  .then(Path::line(shift(shift(x0, d1), d2), shift(x0, d2)))
                  .then(Path::line(shift(x0, d2), x0));
  Transport t = transport(kz, c, Connection::KZ, rect, 1e-10);
  CHECK((t.mat - CMat::Identity(2, 2)).norm() < 1e-9);
  Transport t2 = transport(kz, c, Connection::ModifiedKZ, rect, 1e-10);
  CHECK((t2.mat - CMat::Identity(2, 2)).norm() < 1e-9);
}

TEST_CASE("transport composability") {
  KZContext kz = make_kz("B2", "refl");
  ParamPoint c = real_c({0.15, 0.3});
  std::vector<double> x0 = kz.x0;
  std::vector<double> mid = {x0[0] * 1.3, x0[1] * 0.9};
  std::vector<double> far = {x0[0] * 1.7, x0[1] * 1.4};
  Path p1 = Path::line(x0, mid), p2 = Path::line(mid, far);
  Transport t1 = transport(kz, c, Connection::KZ, p1, 1e-11);
  Transport t2 = transport(kz, c, Connection::KZ, p2, 1e-11);
  Transport t12 = transport(kz, c, Connection::KZ, p1.then(p2), 1e-11);
  CHECK((t12.mat - t2.mat * t1.mat).norm() < 1e-8);
}

TEST_CASE("Hecke eigenvalues {1, -q} for the A2 standard representation") {
  KZContext kz = make_kz("A2", "std");
  ParamPoint c = real_c({0.2});
  auto gens = braid_generators(kz, c);
  std::complex<double> q = std::exp(std::complex<double>(0, -2 * M_PI) * 0.2);
  for (const auto& t : gens.t) {
    Eigen::ComplexEigenSolver<CMat> es(t);
    std::complex<double> e0 = es.eigenvalues()(0), e1 = es.eigenvalues()(1);
    double match1 = std::min(std::abs(e0 - 1.0) + std::abs(e1 + q),
                             std::abs(e1 - 1.0) + std::abs(e0 + q));
    CHECK(match1 < 1e-8);
  }
}

TEST_CASE("Hecke quadratic and braid residuals across groups") {
  struct Case {
    std::string label, irrep;
    std::vector<double> c;
  };
  std::vector<Case> cases = {
      {"A2", "std", {0.2}},
      {"B2", "refl", {0.15, 0.3}},
      {"I2_5", "rot1", {0.1}},
      {"A3", "std2", {0.25}},
      {"G2", "rot1", {0.35, 0.15}},
      {"G2", "rot2", {0.2, 0.45}},
      {"B3", "refl", {0.35, 0.15}},
      {"B3", "(21|)", {0.25, 0.4}},
      {"I2_7", "rot3", {0.3}},
  };
  for (const auto& cs : cases) {
    KZContext kz = make_kz(cs.label, cs.irrep);
    ParamPoint c = ParamPoint(cs.c);
    auto gens = braid_generators(kz, c);
    auto hk = hecke_check(kz, c, gens);
    CAPTURE(cs.label);
    CHECK(hk.max_residual < 1e-8);
  }
}

TEST_CASE("invariant form: identity at c = 0 and invariance at generic c") {
  {
    KZContext kz = make_kz("B2", "refl");
    InvariantForm f = invariant_form_solve(kz, real_c({0.0, 0.0}));
    CHECK((f.b - CMat::Identity(2, 2)).norm() < 1e-8);
    CHECK(f.solution_space_dim >= 1);
  }
  {
    KZContext kz = make_kz("A2", "std");
    InvariantForm f = invariant_form_solve(kz, real_c({0.2}));
    CHECK(f.invariance_residual < 1e-8);
    CHECK(f.hermiticity_defect < 1e-6);
    CHECK(std::abs(f.b_hermitized.determinant()) > 1e-6);
    KZFormInertia in = kz_form_inertia(f.b_hermitized);
    CHECK(in.dim_kz_l == 2);
  }
  {
    // A1 sgn, real c: B = 1 scalar.
    KZContext kz = make_kz("A1", "sgn");
    InvariantForm f = invariant_form_solve(kz, real_c({0.22}));
    CHECK(std::abs(f.b(0, 0) - 1.0) < 1e-9);
    CHECK(f.invariance_residual < 1e-9);
  }
}

TEST_CASE("invariant form for complex parameters") {
  KZContext kz = make_kz("A2", "std");
  ParamPoint c(std::vector<std::complex<double>>{{0.2, 0.1}});
  InvariantForm f = invariant_form_solve(kz, c);
  CHECK(f.invariance_residual < 1e-7);
}

TEST_CASE("kz form inertia at c = 0") {
  KZContext kz = make_kz("A3", "refl");
  InvariantForm f = invariant_form_solve(kz, real_c({0.0}));
  KZFormInertia in = kz_form_inertia(f.b_hermitized);
  CHECK(in.p == 3);
  CHECK(in.q == 0);
  CHECK(in.radical == 0);
}
