#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chered/matrix.hpp"
#include "chered/mpoly.hpp"
#include "chered/poly.hpp"
#include "chered/scalar.hpp"
#include "chered/wirreps.hpp"

using namespace chered;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("-1/2") == Rat(-1, 2));
  CHECK(parse_rational("0.25") == Rat(1, 4));
  CHECK(parse_rational("-0.1") == Rat(-1, 10));
  CHECK(parse_rational("1.5") == Rat(3, 2));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("quadratic extension arithmetic and signs") {
  Exact r3 = Exact::sqrt_of(3);
  CHECK((r3 * r3) == Exact(3));
  Exact x = Exact(1) + r3;          // 1 + sqrt(3) > 0
  Exact y = Exact(2) - r3;          // 2 - sqrt(3) > 0 (sqrt 3 ~ 1.73)
  Exact z = Exact(1) - r3;          // < 0
  CHECK(x.sign() == 1);
  CHECK(y.sign() == 1);
  CHECK(z.sign() == -1);
  CHECK((x * x) == Exact(4) + Exact(2) * r3);
  CHECK((x / x) == Exact(1));
  CHECK((y * y.inv()) == Exact(1));
  CHECK(std::fabs(x.to_double() - (1 + std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("polynomial ring basics") {
  Poly<Exact> t = Poly<Exact>::variable();
  Poly<Exact> p = (t - Poly<Exact>(Exact(1))) * (t + Poly<Exact>(Exact(2)));
  CHECK(p.degree() == 2);
  CHECK(p(Exact(1)).is_zero());
  CHECK(p(Exact(-2)).is_zero());
  Poly<Exact> q = p.exact_div(t - Poly<Exact>(Exact(1)));
  CHECK(q == t + Poly<Exact>(Exact(2)));
  CHECK_THROWS(p.exact_div(t - Poly<Exact>(Exact(5))));
  Poly<Exact> tp = t * p;
  CHECK(tp.valuation() == 1);
  CHECK(tp.divided_by_variable() == p);
}

TEST_CASE("series inverse") {
  // 1/(1 - t) = 1 + t + t^2 + ...
  Poly<Exact> den(std::vector<Exact>{Exact(1), Exact(-1)});
  auto inv = series_inverse(den, 5);
  for (int k = 0; k <= 5; ++k) CHECK(inv[size_t(k)] == Exact(1));
}

TEST_CASE("exact kernel and rank") {
  Matrix<Exact> m(2, 3);
  m(0, 0) = Exact(1);
  m(0, 1) = Exact(2);
  m(0, 2) = Exact(3);
  m(1, 0) = Exact(2);
  m(1, 1) = Exact(4);
  m(1, 2) = Exact(6);
  CHECK(rank(m) == 1);
  Matrix<Exact> ker = kernel_basis(m);
  CHECK(ker.cols() == 2);
  CHECK((m * ker).is_zero());
}

TEST_CASE("exact symmetric inertia, including hyperbolic blocks") {
  Matrix<Exact> diag(3, 3);
  diag(0, 0) = Exact(2);
  diag(1, 1) = Exact(-5);
  diag(2, 2) = Exact(0);
  Inertia in = inertia_symmetric(diag);
  CHECK(in.p == 1);
  CHECK(in.q == 1);
  CHECK(in.z == 1);

  // [[0, 1], [1, 0]] has eigenvalues +-1.
  Matrix<Exact> hyp(2, 2);
  hyp(0, 1) = Exact(1);
  hyp(1, 0) = Exact(1);
  in = inertia_symmetric(hyp);
  CHECK(in.p == 1);
  CHECK(in.q == 1);
  CHECK(in.z == 0);
}

TEST_CASE("float inertia via eigenvalues") {
  Eigen::MatrixXd g(2, 2);
  g << 3, 0, 0, -2;
  bool margin = false;
  Inertia in = inertia_float(g, &margin);
  CHECK(in.p == 1);
  CHECK(in.q == 1);
  CHECK(margin);
}

TEST_CASE("polynomial matrix determinant and adjugate") {
  using P = Poly<Exact>;
  P t = P::variable();
  Matrix<P> m(2, 2);
  m(0, 0) = t;
  m(0, 1) = P(Exact(1));
  m(1, 0) = P(Exact(1));
  m(1, 1) = t;
  P det = det_poly(m);
  CHECK(det == t * t - P(Exact(1)));
  Matrix<P> adj = adjugate_poly(m);
  Matrix<P> prod = adj * m;
  CHECK(prod(0, 0) == det);
  CHECK(prod(1, 1) == det);
  CHECK(prod(0, 1).is_zero());
}

TEST_CASE("multivariate division by a linear form") {
  using M = MPoly<Exact>;
  // (x - y)(x + y) / (x - y) = x + y
  std::vector<Exact> xmy = {Exact(1), Exact(-1)};
  std::vector<Exact> xpy = {Exact(1), Exact(1)};
  M prod = M::linear(xmy) * M::linear(xpy);
  M quot = prod.divide_by_linear(xmy);
  CHECK(quot == M::linear(xpy));
  CHECK_THROWS(M::linear(xpy).divide_by_linear(xmy));
}

TEST_CASE("linear substitution") {
  using M = MPoly<Exact>;
  // Swap variables in x^2 y.
  M mono = M::monomial(2, {2, 1});
  Matrix<Exact> swap(2, 2);
  swap(0, 1) = Exact(1);
  swap(1, 0) = Exact(1);
  CHECK(mono.substitute_linear(swap) == M::monomial(2, {1, 2}));
}

TEST_CASE("rational fit utility shapes") {
  Poly<Rat> p = poincare_poly({2, 3});
  // [2]_t [3]_t = (1+t)(1+t+t^2): degree 3, value 6 at t = 1.
  CHECK(p.degree() == 3);
  CHECK(p(Rat(1)) == Rat(6));
}
