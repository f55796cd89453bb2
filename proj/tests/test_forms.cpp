#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chered/forms.hpp"

using namespace chered;

namespace {

// Independent rank-1 oracle: beta(x^n, x^n) = prod_{k=1}^n (k - c(1-(-1)^k)).
Exact rank1_norm(int n, const Exact& c) {
  Exact prod(1);
  for (int k = 1; k <= n; ++k)
    prod *= Exact(k) - c * Exact(k % 2 == 0 ? 0 : 2);
  return prod;
}

Rat factorial_product(const std::vector<int>& expo) {
  Rat prod(1);
  for (int e : expo)
    for (int k = 2; k <= e; ++k) prod *= k;
  return prod;
}

}  // namespace

TEST_CASE("rank-1 Gram values against the recursion oracle") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  Exact c(Rat(1, 4));
  auto gram = beta_gram_sweep(m, std::vector<Exact>{c}, 10);
  for (int n = 0; n <= 10; ++n) CHECK(gram[size_t(n)](0, 0) == rank1_norm(n, c));
  // Degree 1 value 1 - 2c.
  CHECK(gram[1](0, 0) == Exact(1) - Exact(2) * c);
}

TEST_CASE("Gram at c = 0 is the derivative pairing (multi-index factorials)") {
  for (const std::string label : {"A2", "B2"}) {
    auto ctx = GroupContext<Exact>::build(label);
    auto reps = irreps_of(ctx);
    for (const auto& name : {"triv", "refl"}) {
      StandardModule<Exact> m(ctx, find_irrep(reps, name));
      std::vector<Exact> zero(size_t(ctx.W.num_classes), Exact(0));
      auto gram = beta_gram_sweep(m, zero, 4);
      for (int n = 0; n <= 4; ++n) {
        GradedBasis b = m.basis(n);
        for (int r = 0; r < b.dim(); ++r)
          for (int col = 0; col < b.dim(); ++col) {
            Exact expect(0);
            if (r == col) expect = Exact(factorial_product(b.monos[size_t(r / b.lambda_dim)]));
            CHECK(gram[size_t(n)](r, col) == expect);
          }
      }
    }
  }
}

TEST_CASE("A2 trivial degree 1: (1 - 3c) I") {
  auto ctx = GroupContext<Exact>::build("A2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  Exact c(Rat(2, 11));
  auto gram = beta_gram_sweep(m, std::vector<Exact>{c}, 1);
  Exact expect = Exact(1) - Exact(3) * c;
  CHECK(gram[1](0, 0) == expect);
  CHECK(gram[1](1, 1) == expect);
  CHECK(gram[1](0, 1).is_zero());
}

TEST_CASE("split-choice independence, symmetry, W-invariance") {
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "refl"));
  std::vector<Exact> c = {Exact(Rat(1, 3)), Exact(Rat(-1, 5))};
  auto gram_least = beta_gram_sweep(m, c, 5, false);
  auto gram_greatest = beta_gram_sweep(m, c, 5, true);
  for (int n = 0; n <= 5; ++n) {
    CHECK(gram_least[size_t(n)] == gram_greatest[size_t(n)]);
    CHECK(gram_least[size_t(n)] == gram_least[size_t(n)].transpose());
    for (const auto& el : ctx.elements) {
      Matrix<Exact> act = m.action(el, n);
      CHECK(act.transpose() * gram_least[size_t(n)] * act == gram_least[size_t(n)]);
    }
  }
}

TEST_CASE("exp(f) and the Gaussian form in rank 1") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  Exact c(Rat(1, 6));
  // Cutoff 1: f lowers by 2, so exp(f) = Id.
  CHECK(exp_f_matrix(m, {c}, 1) == Matrix<Exact>::identity(2));
  // Cutoff 2: exp(f) x^2 = x^2 + (1 - 2c) * 1.
  Matrix<Exact> e = exp_f_matrix(m, {c}, 2);
  CHECK(e(0, 2) == Exact(1) - Exact(2) * c);
  // Gamma: gamma(1, x^2) = 1 - 2c; gamma restricted to degrees <= 1 is
  // diag(1, 1 - 2c).
  Matrix<Exact> gamma = gaussian_gram(m, {c}, 2);
  CHECK(gamma(0, 2) == Exact(1) - Exact(2) * c);
  CHECK(gamma(0, 0) == Exact(1));
  CHECK(gamma(1, 1) == Exact(1) - Exact(2) * c);
  CHECK(gamma(0, 1).is_zero());
  // c = 0: classical heat operator, exp(Delta/2) x^2 = x^2 + 1.
  Matrix<Exact> e0 = exp_f_matrix(m, {Exact(0)}, 2);
  CHECK(e0(0, 2) == Exact(1));
}

TEST_CASE("Gaussian adjointness is exact and sign(beta) = sign(gamma)") {
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  for (const auto& name : {"triv", "refl"}) {
    StandardModule<Exact> m(ctx, find_irrep(reps, name));
    std::vector<Exact> c = {Exact(Rat(3, 10)), Exact(Rat(-2, 7))};
    CHECK(gamma_adjointness_residual(m, c, 5) == 0.0);
    // Inertia comparison of beta and gamma on the filtered space.
    auto beta = beta_gram_sweep(m, c, 5);
    Matrix<Exact> gamma = gaussian_gram(m, c, 5);
    Inertia ig = inertia_symmetric(gamma);
    Inertia ib;
    for (int n = 0; n <= 5; ++n) {
      Inertia in = inertia_symmetric(beta[size_t(n)]);
      ib.p += in.p;
      ib.q += in.q;
      ib.z += in.z;
    }
    CHECK(ib.p == ig.p);
    CHECK(ib.q == ig.q);
    CHECK(ib.z == ig.z);
  }
}

TEST_CASE("float-mode Gaussian adjointness residual") {
  auto ctx = GroupContext<double>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<double> m(ctx, find_irrep(reps, "refl"));
  std::vector<double> c = {0.3, -2.0 / 7};
  CHECK(gamma_adjointness_residual(m, c, 6) < 1e-10);
}

TEST_CASE("radical sweeps") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  // c = 1/2 kills all degrees >= 1 for triv.
  {
    StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
    auto sweep = radical_sweep(m, {Exact(Rat(1, 2))}, 8);
    CHECK(sweep.kernel_dim[0] == 0);
    for (int n = 1; n <= 8; ++n) CHECK(sweep.kernel_dim[size_t(n)] == 1);
    CHECK(sweep.submodule_ok);
  }
  // Mirror: sgn at c = -1/2.
  {
    StandardModule<Exact> m(ctx, find_irrep(reps, "sgn"));
    auto sweep = radical_sweep(m, {Exact(Rat(-1, 2))}, 6);
    for (int n = 1; n <= 6; ++n) CHECK(sweep.kernel_dim[size_t(n)] == 1);
    CHECK(sweep.submodule_ok);
  }
  // Generic c: no radical.
  {
    StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
    auto sweep = radical_sweep(m, {Exact(Rat(3, 7))}, 6);
    for (int n = 0; n <= 6; ++n) CHECK(sweep.kernel_dim[size_t(n)] == 0);
    CHECK(sweep.submodule_ok);
  }
}

TEST_CASE("bivariate class-parameter pencils (B2)") {
  using P2 = Poly<Poly<Exact>>;
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  // c1 = inner variable u, c2 = outer variable v.
  P2 c1(Poly<Exact>::variable());
  P2 c2 = P2::variable();
  auto gram = beta_gram_sweep(m, std::vector<P2>{c1, c2}, 3);
  for (int n = 0; n <= 3; ++n)
    CHECK(gram[size_t(n)] == gram[size_t(n)].transpose());
  // Evaluating the pencil reproduces the numeric Gram.
  Exact v1(Rat(1, 3)), v2(Rat(1, 7));
  auto gram_num = beta_gram_sweep(m, std::vector<Exact>{v1, v2}, 3);
  for (int n = 0; n <= 3; ++n)
    for (int r = 0; r < gram_num[size_t(n)].rows(); ++r)
      for (int cidx = 0; cidx < gram_num[size_t(n)].cols(); ++cidx) {
        Poly<Exact> in_u = gram[size_t(n)](r, cidx)(Poly<Exact>(v2));
        CHECK(in_u(v1) == gram_num[size_t(n)](r, cidx));
      }
}

TEST_CASE("isotypic inertia sums to the full inertia") {
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "refl"));
  std::vector<Exact> c = {Exact(Rat(1, 5)), Exact(Rat(2, 7))};
  auto gram = beta_gram_sweep(m, c, 5);
  for (int n = 0; n <= 5; ++n) {
    Inertia full = inertia_symmetric(gram[size_t(n)]);
    Inertia sum;
    for (const auto& pi : reps) {
      Inertia in = isotypic_inertia(m, gram[size_t(n)], pi, n);
      sum.p += in.p;
      sum.q += in.q;
      sum.z += in.z;
    }
    CHECK(sum.p == full.p);
    CHECK(sum.q == full.q);
    CHECK(sum.z == full.z);
  }
}
