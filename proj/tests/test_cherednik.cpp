#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chered/cherednik.hpp"

using namespace chered;

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Pencil equality up to the given shape.
template <class F>
bool pencil_equal(const OperatorPencil<F>& a, const OperatorPencil<F>& b) {
  if (!(a.a0 == b.a0)) return false;
  if (a.a_cls.size() != b.a_cls.size()) return false;
  for (size_t k = 0; k < a.a_cls.size(); ++k)
    if (!(a.a_cls[k] == b.a_cls[k])) return false;
  return true;
}

}  // namespace

TEST_CASE("graded piece dimensions") {
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "refl"));
  for (int n = 0; n <= 6; ++n)
    CHECK(m.dim(n) == int(binom(n + ctx.W.rank - 1, ctx.W.rank - 1)) * 2);
}

TEST_CASE("multiplication operators") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  Matrix<Exact> x0 = m.mult_x(0, 0);
  CHECK(x0.rows() == 1);
  CHECK(x0(0, 0) == Exact(1));  // 1 -> x

  auto a2 = GroupContext<Exact>::build("A2");
  auto reps2 = irreps_of(a2);
  StandardModule<Exact> m2(a2, find_irrep(reps2, "triv"));
  for (int i = 0; i < 2; ++i)
    for (int n = 0; n <= 4; ++n) {
      Matrix<Exact> mx = m2.mult_x(i, n);
      // Columns have exactly one nonzero entry, equal to 1.
      for (int c = 0; c < mx.cols(); ++c) {
        int nonzero = 0;
        for (int r = 0; r < mx.rows(); ++r)
          if (!mx(r, c).is_zero()) {
            ++nonzero;
            CHECK(mx(r, c) == Exact(1));
          }
        CHECK(nonzero == 1);
      }
    }
}

TEST_CASE("rank-1 Dunkl operator closed form") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  for (int n = 1; n <= 8; ++n) {
    OperatorPencil<Exact> d = m.dunkl(0, n);
    // D x^n = (n - c(1 - (-1)^n)) x^{n-1}.
    CHECK(d.a0(0, 0) == Exact(n));
    CHECK(d.a_cls[0](0, 0) == Exact(n % 2 == 0 ? 0 : -2));
  }
  // sgn mirrors the sign of c.
  StandardModule<Exact> ms(ctx, find_irrep(reps, "sgn"));
  for (int n = 1; n <= 8; ++n) {
    OperatorPencil<Exact> d = ms.dunkl(0, n);
    CHECK(d.a0(0, 0) == Exact(n));
    CHECK(d.a_cls[0](0, 0) == Exact(n % 2 == 0 ? 0 : 2));
  }
}

TEST_CASE("Dunkl at c = 0 is the derivative") {
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "refl"));
  std::vector<Exact> zero = {Exact(0), Exact(0)};
  for (int n = 1; n <= 4; ++n) {
    Matrix<Exact> d = m.dunkl(0, n).eval(zero);
    CHECK(d == m.dunkl(0, n).a0);
  }
}

TEST_CASE("Dunkl commutativity as pencils") {
  for (const std::string label : {"A2", "B2"}) {
    auto ctx = GroupContext<Exact>::build(label);
    auto reps = irreps_of(ctx);
    for (const auto& rep : reps) {
      StandardModule<Exact> m(ctx, rep);
      for (int n = 2; n <= 5; ++n) {
        OperatorPencil<Exact> d0n = m.dunkl(0, n), d1n = m.dunkl(1, n);
        OperatorPencil<Exact> d0m = m.dunkl(0, n - 1), d1m = m.dunkl(1, n - 1);
        // Coefficient-wise vanishing of [D_0, D_1] in the parameters.
        CHECK((d0m.a0 * d1n.a0 - d1m.a0 * d0n.a0).is_zero());
        for (size_t k = 0; k < d0n.a_cls.size(); ++k) {
          Matrix<Exact> lin = d0m.a0 * d1n.a_cls[k] + d0m.a_cls[k] * d1n.a0 -
                              d1m.a0 * d0n.a_cls[k] - d1m.a_cls[k] * d0n.a0;
          CHECK(lin.is_zero());
          for (size_t j = 0; j < d0n.a_cls.size(); ++j) {
            Matrix<Exact> quad = d0m.a_cls[k] * d1n.a_cls[j] + d0m.a_cls[j] * d1n.a_cls[k] -
                                 d1m.a_cls[k] * d0n.a_cls[j] - d1m.a_cls[j] * d0n.a_cls[k];
            CHECK(quad.is_zero());
          }
        }
      }
    }
  }
}

TEST_CASE("W-equivariance of Dunkl operators") {
  auto ctx = GroupContext<Exact>::build("A2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "std"));
  std::vector<Exact> cv = {Exact(Rat(1, 3))};
  for (const auto& el : ctx.elements) {
    int inv_idx = element_index(ctx.elements, el.mat.transpose());
    REQUIRE(inv_idx >= 0);
    const auto& el_inv = ctx.elements[size_t(inv_idx)];
    for (int n = 1; n <= 3; ++n) {
      for (int i = 0; i < 2; ++i) {
        // w D_{y_i} w^{-1} = sum_j (w e_i)_j D_{y_j}.
        Matrix<Exact> lhs = m.action(el, n - 1) * m.dunkl(i, n).eval(cv) *
                            m.action(el_inv, n);
        Matrix<Exact> rhs(m.dim(n - 1), m.dim(n));
        for (int j = 0; j < 2; ++j) {
          Exact coeff = el.mat(j, i);
          if (coeff.is_zero()) continue;
          rhs += coeff * m.dunkl(j, n).eval(cv);
        }
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("grading element eigenvalues") {
  auto a1 = GroupContext<Exact>::build("A1");
  auto reps1 = irreps_of(a1);
  StandardModule<Exact> m1(a1, find_irrep(reps1, "triv"));
  Exact c(Rat(2, 7));
  CHECK(m1.grading_action({c}, 0) == Exact(Rat(1, 2)) - c);
  CHECK(m1.grading_action({c}, 3) == Exact(Rat(1, 2)) - c + Exact(3));

  auto b2 = GroupContext<Exact>::build("B2");
  auto reps2 = irreps_of(b2);
  StandardModule<Exact> m2(b2, find_irrep(reps2, "triv"));
  Exact c1(Rat(1, 5)), c2(Rat(1, 7));
  CHECK(m2.grading_action({c1, c2}, 2) ==
        Exact(3) - Exact(2) * c1 - Exact(2) * c2);
  // c = 0: l/2 + n for every irrep.
  for (const auto& rep : reps2) {
    StandardModule<Exact> m(b2, rep);
    CHECK(m.grading_action({Exact(0), Exact(0)}, 4) == Exact(5));
  }
}

TEST_CASE("pencil evaluation in a polynomial ring") {
  auto ctx = GroupContext<Exact>::build("A1");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "triv"));
  using P = Poly<Exact>;
  std::vector<P> c = {P::variable()};  // c = t symbolically
  Matrix<P> d = m.dunkl(0, 1).eval(c);
  // D x = 1 - 2t.
  CHECK(d(0, 0) == P(std::vector<Exact>{Exact(1), Exact(-2)}));
}
