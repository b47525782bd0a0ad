#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "ratequiv/chow.hpp"
#include "ratequiv/intersect.hpp"
#include "ratequiv/random.hpp"

using namespace ratequiv;

namespace {

// Leibniz expansion, independent of the elimination code.
Rational leibniz_det(const std::array<Vec4q, 4>& rows) {
  std::array<int, 4> perm{0, 1, 2, 3};
  Rational acc = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < 4; ++i) term *= rows[static_cast<std::size_t>(i)](perm[static_cast<std::size_t>(i)]);
    acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

Vec4q random_coeffs(Rng& rng) {
  Vec4q v;
  for (int i = 0; i < 4; ++i) v(i) = Rational(random_int(rng, -9, 9));
  return v;
}

DualLinearForm<Rational> random_g(Rng& rng) {
  Vec4q v;
  do {
    v = random_coeffs(rng);
  } while (v.isZero());
  return DualLinearForm<Rational>(v);
}

Rational power(const Rational& x, long k) {
  Rational r = 1;
  for (long i = 0; i < k; ++i) r *= x;
  return r;
}

bool proportional(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  Complex c = a[0] / b[0];
  for (std::size_t i = 1; i < a.size(); ++i)
    if (std::abs(a[i] / b[i] - c) > tol * std::abs(c)) return false;
  return true;
}

}  // namespace

TEST_CASE("chow_eval examples") {
  ZeroCycle z;
  z.add(RationalPoint(1, 2, 3, 4), 1);
  CHECK(std::abs(chow_eval(z, DualLinearForm<Rational>(Vec4q(4, 0, 0, -1)))) == 0.0);

  ZeroCycle twice;
  RationalPoint p(1, 2, 3, 4);
  twice.add(p, 2);
  DualLinearForm<Rational> g(Vec4q(1, -1, 2, 1));
  Complex gp = g(p.to_numeric().coords());
  CHECK(std::abs(chow_eval(twice, g) - gp * gp) < 1e-12);

  ZeroCycle virtual_cycle;
  virtual_cycle.add(p, -1);
  CHECK_THROWS_AS(chow_eval(virtual_cycle, g), std::invalid_argument);
  CHECK_THROWS_AS(DualLinearForm<Rational>(Vec4q(0, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("chow_eval is homogeneous and multiplicative") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    ZeroCycle z1, z2;
    for (int k = 0; k < 3; ++k) z1.add(random_point(rng), 1 + k);
    for (int k = 0; k < 2; ++k) z2.add(random_point(rng), 1);
    auto g = random_g(rng);
    if (ChowEvaluator(z1 + z2).min_relative_factor(g) < 1e-6) continue;
    const Rational lambda(random_nonzero_int(rng, 5), 3);
    DualLinearForm<Rational> lg(Vec4q(g.coeffs() * lambda));
    Complex base = chow_eval(z1, g);
    CHECK(std::abs(chow_eval(z1, lg) - std::pow(lambda.get_d(), z1.degree()) * base) <= 1e-9 * std::abs(chow_eval(z1, lg)));
    Complex sum = chow_eval(z1 + z2, g);
    CHECK(std::abs(sum - base * chow_eval(z2, g)) <= 1e-9 * std::abs(sum));
  }
}

TEST_CASE("macaulay_resultant of linear forms is the coefficient determinant") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Vec4q, 4> rows;
    std::array<HomogeneousForm, 4> forms;
    for (std::size_t i = 0; i < 4; ++i) {
      rows[i] = random_coeffs(rng);
      forms[i] = HomogeneousForm::linear(rows[i]);
      if (forms[i].is_zero()) forms[i] = HomogeneousForm::variable(static_cast<int>(i));
      for (int j = 0; j < 4; ++j) rows[i](j) = forms[i].coefficient({j == 0, j == 1, j == 2, j == 3});
    }
    auto r = macaulay_resultant(forms);
    CHECK(r.value == leibniz_det(rows));
    CHECK(r.path == MacaulayResult::Path::determinant);
  }
}

TEST_CASE("macaulay_resultant normalization, vanishing and capacity") {
  std::array<HomogeneousForm, 4> monomials{parse_form("X^2"), parse_form("Y^3"), parse_form("Z"), parse_form("T^2")};
  CHECK(macaulay_resultant(monomials).value == 1);

  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    RationalPoint p = random_point(rng, 4);
    std::array<HomogeneousForm, 4> common{random_form_through(rng, 2, {p}, 4), random_form_through(rng, 1, {p}, 4),
                                          random_form_through(rng, 2, {p}, 4), random_form_through(rng, 1, {p}, 4)};
    CHECK(macaulay_resultant(common).value == 0);
    std::array<HomogeneousForm, 4> generic{random_form(rng, 2, 4), random_form(rng, 1, 4), random_form(rng, 2, 4),
                                           random_form(rng, 1, 4)};
    CHECK(macaulay_resultant(generic).value != 0);
  }

  std::array<HomogeneousForm, 4> big{random_form(rng, 4), random_form(rng, 4), random_form(rng, 4), random_form(rng, 2)};
  CHECK_THROWS_AS(macaulay_resultant(big), CapacityError);
}

TEST_CASE("macaulay_resultant scales with the product of the other degrees") {
  Rng rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    std::array<HomogeneousForm, 4> f{random_form(rng, 2, 5), random_form(rng, 1, 5), random_form(rng, 2, 5),
                                     random_form(rng, 1, 5)};
    const Rational base = macaulay_resultant(f).value;
    for (std::size_t i = 0; i < 4; ++i) {
      long others = 1;
      for (std::size_t j = 0; j < 4; ++j)
        if (j != i) others *= f[j].degree();
      auto g = f;
      const Rational lambda(random_nonzero_int(rng, 4), random_int(rng, 1, 3));
      g[i] *= lambda;
      CHECK(macaulay_resultant(g).value == power(lambda, others) * base);
    }
  }
}

TEST_CASE("macaulay_resultant is multiplicative in each argument") {
  Rng rng(34);
  for (int trial = 0; trial < 4; ++trial) {
    HomogeneousForm u = random_form(rng, 1, 5), v = random_form(rng, 1, 5);
    std::array<HomogeneousForm, 4> rest{HomogeneousForm(), random_form(rng, 2, 5), random_form(rng, 1, 5),
                                        random_form(rng, 1, 5)};
    auto with = [&](const HomogeneousForm& first) {
      auto f = rest;
      f[0] = first;
      return macaulay_resultant(f).value;
    };
    CHECK(with(u * v) == with(u) * with(v));
  }
}

TEST_CASE("macaulay_resultant falls back to perturbation when the extraneous minor is singular") {
  // With X in second place, the rows of the non-reduced minor coming from X
  // avoid its columns, so the minor is singular for every first form.
  const std::array<HomogeneousForm, 3> linear{parse_form("X"), parse_form("Y+Z"), parse_form("Z-T")};
  const Vec4q common(0, -1, 1, 1);
  Rng rng(2);
  std::vector<Complex> res, at_p;
  for (int trial = 0; trial < 4; ++trial) {
    HomogeneousForm f1 = random_form(rng, 2, 6);
    auto r = macaulay_resultant({f1, linear[0], linear[1], linear[2]});
    CHECK(r.path == MacaulayResult::Path::perturbed);
    auto permuted = macaulay_resultant({linear[0], linear[1], linear[2], f1});
    CHECK(abs(r.value) == abs(permuted.value));
    res.push_back(scalar_cast<Complex>(r.value));
    at_p.push_back(scalar_cast<Complex>(f1(common)));
  }
  // The resultant of one form against three planes through a point is
  // proportional to its value there.
  CHECK(proportional(res, at_p, 1e-12));
}

TEST_CASE("macaulay_resultant agrees with the Chow product of the complete intersection") {
  Rng rng(9);
  for (int trial = 0; trial < 6; ++trial) {
    const int sb = 1 + trial % 2;
    const int d = 2 + trial % 2;
    HomogeneousForm b = random_form(rng, sb, 5), h = random_form(rng, 1, 5);
    Surface f(random_form(rng, d, 5));
    ZeroCycle v = complete_intersection_cycle(b, h, f);
    REQUIRE(v.degree() == sb * d);
    std::vector<Complex> res, chow;
    for (int k = 0; k < 10; ++k) {
      auto g = random_g(rng);
      res.push_back(scalar_cast<Complex>(macaulay_resultant({b, h, f.form(), HomogeneousForm::linear(g.coeffs())}).value));
      chow.push_back(chow_eval(v, g));
    }
    CHECK(proportional(res, chow, 1e-7));
  }
}

TEST_CASE("star_check verdicts") {
  Rng rng(17);
  RunConfig config;
  config.trials = 30;

  RationalPoint x = random_point(rng, 5), y = random_point(rng, 5);
  Surface f(random_form_through(rng, 4, {x, y}));
  HomogeneousForm a = random_form(rng, 1), b = random_form(rng, 1), h = random_form(rng, 1);
  ZeroCycle zx, zy;
  zx.add(x, 1);
  zy.add(y, 1);

  auto same = star_check(zx, zx, CIExpression<Rational>(a, a, h), f, config);
  CHECK(same.verdict == StarCheckReport::Verdict::holds);
  CHECK(std::abs(same.ratio - 1.0) < 1e-9);
  CHECK(same.samples_used == config.trials);

  auto random_pair = star_check(zx, zy, CIExpression<Rational>(a, b, h), f, config);
  CHECK(random_pair.verdict == StarCheckReport::Verdict::fails);

  // Rescaling a, b or h changes the constant only.
  auto scaled = star_check(zx, zy, CIExpression<Rational>(a * Rational(3), b, h * Rational(-2)), f, config);
  CHECK(scaled.verdict == random_pair.verdict);
  auto scaled_same = star_check(zx, zx, CIExpression<Rational>(a * Rational(5), a * Rational(5), h * Rational(7)), f, config);
  CHECK(scaled_same.verdict == StarCheckReport::Verdict::holds);

  // {a = h = 0} lying on F is improper.
  Surface plane(a);
  auto improper = star_check(zx, zx, CIExpression<Rational>(a, a, h), plane, config);
  CHECK(improper.verdict == StarCheckReport::Verdict::degenerate);
  CHECK(!improper.reason.empty());

  ZeroCycle two;
  two.add(x, 2);
  CHECK_THROWS_AS(star_check(zx, two, CIExpression<Rational>(a, b, h), f, config), std::invalid_argument);
}
