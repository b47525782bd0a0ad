#include <random>

#include "doctest.h"
#include "ratequiv/affine.hpp"
#include "ratequiv/form.hpp"
#include "ratequiv/univariate.hpp"

using namespace ratequiv;

namespace {

HomogeneousForm random_form(std::mt19937_64& rng, int degree, int height = 5) {
  std::uniform_int_distribution<int> coef(-height, height);
  HomogeneousForm f(degree);
  for (const auto& e : monomials_of_degree(degree)) f.add_term(e, Rational(coef(rng)));
  if (f.is_zero()) f.add_term({degree, 0, 0, 0}, Rational(1));
  return f;
}

Vec4q random_vec(std::mt19937_64& rng, int height = 7) {
  std::uniform_int_distribution<int> c(-height, height);
  Vec4q v;
  for (int i = 0; i < 4; ++i) v(i) = make_rational(c(rng), 1 + std::abs(c(rng)));
  return v;
}

// Oracle: d/dx_k of an affine polynomial, written independently of shift().
AffinePolynomial<Rational> partial(const AffinePolynomial<Rational>& g, int k) {
  AffinePolynomial<Rational> out;
  for (const auto& [e, c] : g.terms()) {
    if (e[static_cast<std::size_t>(k)] == 0) continue;
    AffineExponent d = e;
    --d[static_cast<std::size_t>(k)];
    out.add_term(d, Rational(c * e[static_cast<std::size_t>(k)]));
  }
  return out;
}

Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// (f_i)_p from the partial-derivative formula of the Taylor expansion.
AffinePolynomial<Rational> taylor_by_derivatives(const HomogeneousForm& f, const RationalPoint& p, int i) {
  AffinePolynomial<Rational> g = dehomogenize(f);
  Vec3q pa = p.affine();
  AffinePolynomial<Rational> out;
  for (int l = 0; l <= i; ++l)
    for (int m = 0; m <= i - l; ++m) {
      int n = i - l - m;
      AffinePolynomial<Rational> d = g;
      for (int k = 0; k < l; ++k) d = partial(d, 0);
      for (int k = 0; k < m; ++k) d = partial(d, 1);
      for (int k = 0; k < n; ++k) d = partial(d, 2);
      Rational value = d(pa);
      out.add_term({l, m, n}, Rational(value / Rational(factorial(l) * factorial(m) * factorial(n))));
    }
  return out;
}

}  // namespace

TEST_CASE("parse_form reads the polynomial grammar") {
  HomogeneousForm f = parse_form("X^4+Y^4+z^4+t^4-2*X*Y*Z*T");
  CHECK(f.degree() == 4);
  CHECK(f.size() == 5);
  CHECK(f.coefficient({1, 1, 1, 1}) == -2);
  CHECK(to_string(f) == "X^4-2*X*Y*Z*T+Y^4+Z^4+T^4");
  CHECK(parse_form(to_string(f)) == f);

  HomogeneousForm g = parse_form("3/4*(X+Y)^2 - X*Y/2");
  CHECK(g.coefficient({1, 1, 0, 0}) == Rational(1));
  CHECK(g.coefficient({2, 0, 0, 0}) == Rational(3, 4));
}

TEST_CASE("parse_form rejects bad input and names the problem") {
  try {
    parse_form("X^2+Y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'Y'") != std::string::npos);
  }
  try {
    parse_form("X^2+W*Y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(std::string(e.what()).find("'W'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_form("X-X"), ParseError);
  CHECK_THROWS_AS(parse_form("X/Y"), ParseError);
  CHECK_THROWS_AS(parse_form("(X+Y"), ParseError);
}

TEST_CASE("homogeneity: f(lambda v) = lambda^d f(v) exactly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 1 + trial % 5;
    HomogeneousForm f = random_form(rng, d);
    Vec4q v = random_vec(rng);
    Rational lambda = make_rational(static_cast<long>(trial % 7) - 3, 5);
    if (sgn(lambda) == 0) lambda = Rational(2, 3);
    Rational expected = f(v);
    for (int k = 0; k < d; ++k) expected *= lambda;
    Vec4q w = v;
    for (int i = 0; i < 4; ++i) w(i) = Rational(v(i) * lambda);
    CHECK(f(w) == expected);
  }
}

TEST_CASE("form arithmetic and derivatives") {
  HomogeneousForm f = parse_form("X*T-Y*Z");
  CHECK(f.derivative(0) == parse_form("T"));
  CHECK(f.derivative(1) == parse_form("-Z"));
  HomogeneousForm sq = pow(f, 2);
  CHECK(sq.degree() == 4);
  CHECK(sq == f * f);
  // Euler: sum X_i df/dX_i = d f.
  HomogeneousForm euler(2);
  for (int i = 0; i < 4; ++i) euler += HomogeneousForm::variable(i) * f.derivative(i);
  CHECK(euler == f * Rational(2));
  CHECK_THROWS_AS(f + parse_form("X"), std::invalid_argument);

  Eigen::Matrix<Rational, 4, 4> swap = Eigen::Matrix<Rational, 4, 4>::Zero();
  swap(0, 3) = 1;
  swap(3, 0) = 1;
  swap(1, 1) = 1;
  swap(2, 2) = 1;
  CHECK(substitute_linear(f, swap) == f);
  CHECK(substitute_linear(parse_form("X^2"), swap) == parse_form("T^2"));
}

TEST_CASE("taylor_part examples on the sphere-like quadric") {
  HomogeneousForm f = parse_form("X^2+Y^2+Z^2-T^2");
  RationalPoint p(1, 0, 0, 1);
  CHECK(taylor_part(f, p, 0).is_zero());
  AffinePolynomial<Rational> two_a;
  two_a.add_term({1, 0, 0}, Rational(2));
  CHECK(taylor_part(f, p, 1) == two_a);
  AffinePolynomial<Rational> squares;
  squares.add_term({2, 0, 0}, Rational(1));
  squares.add_term({0, 2, 0}, Rational(1));
  squares.add_term({0, 0, 2}, Rational(1));
  CHECK(taylor_part(f, p, 2) == squares);
  CHECK(taylor_part(f, p, 3).is_zero());
}

TEST_CASE("taylor_part rejects the plane at infinity") {
  HomogeneousForm f = parse_form("X^2+Y^2+Z^2-T^2");
  CHECK_THROWS_AS(taylor_part(f, RationalPoint(1, 1, 0, 0), 1), ChartError);
}

TEST_CASE("taylor_part matches the partial-derivative formula") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 1 + trial % 5;
    HomogeneousForm f = random_form(rng, d);
    Vec4q v = random_vec(rng);
    v(3) = make_rational(1 + trial % 3, 2);
    RationalPoint p(v);
    for (int i = 0; i <= d; ++i) CHECK(taylor_part(f, p, i) == taylor_by_derivatives(f, p, i));
  }
}

TEST_CASE("taylor completeness: sum of parts at (v - p) is the dehomogenized form") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    int d = 1 + trial % 5;
    HomogeneousForm f = random_form(rng, d);
    Vec4q pv = random_vec(rng);
    pv(3) = 1;
    RationalPoint p(pv);
    auto parts = taylor_parts(f, p);
    // Evaluate at several chart points; as polynomials of degree <= 5 in 3
    // variables, agreement on random points is exact identity with
    // overwhelming probability, and here exact arithmetic makes each check exact.
    for (int k = 0; k < 5; ++k) {
      Vec4q w = random_vec(rng);
      w(3) = 1;
      Vec3q x(w(0), w(1), w(2));
      Vec3q dir = x - p.affine();
      Rational sum = 0;
      for (const auto& part : parts) sum += part(dir);
      CHECK(sum == dehomogenize(f)(x));
      CHECK(sum == f(w));
    }
    CHECK(parts[0].is_zero() == (sgn(f(p.coords())) == 0));
  }
}

TEST_CASE("taylor_part(f, p, 0) vanishes exactly when p is on f") {
  HomogeneousForm f = parse_form("X^3+Y^3+Z^3-T^3");
  CHECK(taylor_part(f, RationalPoint(1, 0, 0, 1), 0).is_zero());
  CHECK(!taylor_part(f, RationalPoint(1, 1, 0, 1), 0).is_zero());
}

TEST_CASE("find_roots examples") {
  using P = UnivariatePolynomial<double>;
  auto r = find_roots(P({Complex(-1), Complex(0), Complex(1)}));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].value - Complex(-1)) < 1e-12);
  CHECK(std::abs(r[1].value - Complex(1)) < 1e-12);
  CHECK(r[0].multiplicity == 1);

  auto cube = find_roots(P::from_roots({2.0, 2.0, 2.0}));
  REQUIRE(cube.size() == 1);
  CHECK(cube[0].multiplicity == 3);
  CHECK(std::abs(cube[0].value - Complex(2)) < 1e-9);

  auto zeros = find_roots(P({Complex(0), Complex(0), Complex(3), Complex(1)}));
  REQUIRE(zeros.size() == 2);
  CHECK(zeros[0].multiplicity + zeros[1].multiplicity == 3);

  CHECK_THROWS_AS(find_roots(P({Complex(1), Complex(1e-20)})), DegeneracyError);
  CHECK_THROWS_AS(find_roots(P({Complex(0), Complex(0)})), DegeneracyError);
}

TEST_CASE("find_roots: random degree-24 polynomials have 24 certified roots") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int precision : {53, 64}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Complex> c;
      for (int k = 0; k <= 24; ++k) c.emplace_back(u(rng), u(rng));
      UnivariatePolynomial<double> p(c);
      RootOptions opts;
      opts.precision_bits = precision;
      auto roots = find_roots(p, opts);
      int total = 0;
      for (const auto& r : roots) {
        total += r.multiplicity;
        CHECK(std::abs(p(r.value)) <= 1e3 * residual_bound(p, r.value) + 1e-12);
      }
      CHECK(total == 24);
    }
  }
}

TEST_CASE("find_roots clusters mixed multiplicities") {
  using P = UnivariatePolynomial<double>;
  std::vector<Complex> roots{Complex(0.5, 0.25), Complex(0.5, 0.25), Complex(-1.5, 0), Complex(-1.5, 0),
                             Complex(-1.5, 0), Complex(3, -1), Complex(0, 2), Complex(0, 2), Complex(0, 2),
                             Complex(0, 2)};
  auto found = find_roots(P::from_roots(roots, Complex(2, 1)));
  REQUIRE(found.size() == 4);
  std::map<int, int> by_mult;
  for (const auto& r : found) by_mult[r.multiplicity]++;
  CHECK(by_mult[1] == 1);
  CHECK(by_mult[2] == 1);
  CHECK(by_mult[3] == 1);
  CHECK(by_mult[4] == 1);
  for (const auto& r : found) {
    bool matched = false;
    for (const auto& z : roots) matched = matched || std::abs(z - r.value) < 1e-6;
    CHECK(matched);
  }
}
