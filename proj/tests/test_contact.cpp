#include "doctest.h"
#include "ratequiv/calculus.hpp"
#include "ratequiv/chow.hpp"
#include "ratequiv/contact.hpp"
#include "ratequiv/intersect.hpp"
#include "ratequiv/random.hpp"

using namespace ratequiv;

namespace {

bool parallel(const Vec3q& v, const Vec3q& w) {
  return v(1) * w(2) == v(2) * w(1) && v(2) * w(0) == v(0) * w(2) && v(0) * w(1) == v(1) * w(0);
}

ComplexPoint off_surface_point(Rng& rng, const Surface& f) {
  for (;;) {
    RationalPoint p = random_point(rng);
    if (!is_zero(f.form()(p.coords()))) return p.to_numeric();
  }
}

ZeroCycle single(const ComplexPoint& p) {
  ZeroCycle z;
  z.add(p, 1);
  return z;
}

}  // namespace

TEST_CASE("contact_directions at generic points of quartics") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    RationalPoint p = random_point(rng, 5);
    Surface f(random_form_through(rng, 4, {p}));
    auto c = contact_directions(f, p, 3);
    CHECK(!c.positive_dimensional);
    REQUIRE(c.directions.size() == 2);
    for (const auto& d : c.directions) {
      CHECK(d.verified);
      CHECK(d.contact_order >= 3);
      REQUIRE(d.line);
      // Independent of the Taylor expansion: intersect the line with F.
      CHECK(line_surface_cycle(*d.line, f).multiplicity_at(p.to_numeric()) >= 3);
    }
    CHECK(contact_directions(f, p, 2).positive_dimensional);

    auto numeric = contact_directions(f, p.to_numeric(), 3);
    REQUIRE(numeric.directions.size() == 2);
    for (const auto& d : numeric.directions) CHECK(d.verified);
  }
}

TEST_CASE("contact_directions rejects bad points") {
  Surface f(parse_form("X*Y*Z*T"));
  CHECK_THROWS_AS(contact_directions(f, RationalPoint(0, 0, 0, 1), 3), SingularPointError);
  Surface g(parse_form("X^4+Y^4+Z^4-T^4"));
  CHECK_THROWS_AS(contact_directions(g, RationalPoint(1, 1, 1, 1), 3), NotOnSurfaceError);
  // The tangent plane at (1:0:0:1) cuts the Fermat quartic in four lines
  // through the point, so every tangent direction has contact 4.
  auto fermat = contact_directions(g, RationalPoint(1, 0, 0, 1), 3);
  CHECK(fermat.positive_dimensional);
  CHECK(fermat.directions.empty());
  // A point at infinity goes through a chart change.
  auto inf = contact_directions(Surface(parse_form("X^4+Y^4-Z^4-Z*T^3")), RationalPoint(1, 0, 1, 0), 3);
  CHECK(inf.chart[3] != 3);
  for (const auto& d : inf.directions) CHECK(d.verified);
}

TEST_CASE("quintic family has two exact contact-4 lines at the origin") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Rational c1, c2, c3;
    Surface f(quintic_family_member(seed, &c1, &c2, &c3));
    CHECK(c1 != 0);
    CHECK(c2 != 0);
    CHECK(c3 != 0);
    auto c = contact_directions(f, RationalPoint(0, 0, 0, 1), 4);
    REQUIRE(c.directions.size() == 2);
    bool first = false, second = false;
    for (const auto& d : c.directions) {
      REQUIRE(d.exact);
      first = first || parallel(*d.exact, Vec3q(0, -1, 1));
      second = second || parallel(*d.exact, Vec3q(1, 0, -1));
      CHECK(d.contact_order == 4);
      CHECK(d.verified);
    }
    CHECK(first);
    CHECK(second);

    Surface flat(quintic_family_member(seed, nullptr, nullptr, nullptr, true));
    CHECK(contact_directions(flat, RationalPoint(0, 0, 0, 1), 3).positive_dimensional);
  }
}

TEST_CASE("quintic family demo") {
  RunConfig config;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    config.seed = seed;
    auto demo = quintic_family_demo(config);
    CHECK(demo.distinct);
    CHECK(demo.expression_holds);
    CHECK(demo.residual_points.size() == 2);
  }
}

TEST_CASE("polar locus degrees and contact") {
  Rng rng(41);
  for (int d = 2; d <= 5; ++d) {
    Surface f(random_form(rng, d));
    ComplexPoint q = off_surface_point(rng, f);
    auto locus = polar_locus(f, q, 3);
    REQUIRE(locus.points);
    CHECK(locus.points->degree() == d * (d - 1) * (d - 2));
    CHECK(locus.max_residual < 1e-8);
    if (d == 4) {
      for (const auto& e : locus.points->entries()) {
        auto cycle = line_surface_cycle(ComplexLine(e.point, q), f);
        CHECK(cycle.multiplicity_at(e.point) >= 3);
      }
    }
    auto curve = polar_locus(f, q, 2);
    REQUIRE(curve.curve);
    CHECK(curve.curve->degree == d * (d - 1));
    for (const auto& s : curve.curve->samples) CHECK(s.degree() == d * (d - 1));
  }
  Surface f(random_form(rng, 4));
  CHECK_THROWS_AS(polar_locus(f, off_surface_point(rng, f), 4), std::invalid_argument);
}

TEST_CASE("equiv_step pairs are verified") {
  Rng rng(51);
  RunConfig config;
  config.trials = 20;
  for (int trial = 0; trial < 3; ++trial) {
    RationalPoint q = random_point(rng, 5);
    Surface f(random_form_through(rng, 4, {q}));
    auto step = equiv_step(f, q.to_numeric(), config);
    CHECK(step.polar_degree == 24);
    CHECK(step.seed_multiplicity >= 6);
    CHECK(static_cast<int>(step.pairs.size()) + step.seed_multiplicity + step.degenerate_points <= 24);
    CHECK(step.pairs.size() >= 16);
    const ComplexSurface fc(f.form().cast<Complex>());
    for (const auto& pair : step.pairs) {
      CHECK(pair.verified);
      CHECK(pair.witness.residual2.degree() == 1);
      CHECK(pair.witness.residual1.multiplicity_at(q.to_numeric()) == 1);
      if (&pair == &step.pairs.front()) {
        auto expr = lines_to_expression(pair.witness.l1, pair.witness.l2);
        auto star = star_check(single(q.to_numeric()), single(pair.q_i), expr, fc, config);
        CHECK(star.verdict == StarCheckReport::Verdict::holds);
      }
    }
  }
  Surface cubic(random_form(rng, 3));
  CHECK_THROWS_AS(equiv_step(cubic, off_surface_point(rng, cubic)), std::invalid_argument);
  Surface quartic(random_form(rng, 4));
  CHECK_THROWS_AS(equiv_step(quartic, off_surface_point(rng, quartic)), NotOnSurfaceError);
}

TEST_CASE("orbit expands and truncates") {
  Rng rng(61);
  RationalPoint q = random_point(rng, 5);
  Surface f(random_form_through(rng, 4, {q}));
  auto step = equiv_step(f, q.to_numeric());
  auto one = orbit(f, q.to_numeric(), 1, 1000);
  CHECK(one.rounds == 1);
  CHECK(!one.truncated);
  CHECK(one.members.size() == step.pairs.size() + 1);
  for (std::size_t i = 1; i < one.members.size(); ++i) {
    CHECK(one.members[i].parent == 0);
    CHECK(one.members[i].witness);
  }

  auto capped = orbit(f, q.to_numeric(), 2, 3);
  CHECK(capped.truncated);
  CHECK(capped.members.size() == 3);

  auto none = orbit(f, q.to_numeric(), 0, 10);
  CHECK(none.members.size() == 1);
}

TEST_CASE("residual_search on low degree surfaces") {
  Rng rng(71);
  RunConfig config;

  Surface plane(parse_form("X+2*Y-Z+3*T"));
  RationalPoint a(1, 1, 0, -1), b(2, -1, 3, 1);
  auto r1 = residual_search(plane, a, b, 10, config);
  CHECK(r1.success);
  CHECK(r1.exact1);
  CHECK(r1.exact2);

  Surface quadric(parse_form("X*T-Y*Z"));
  RationalPoint c(1, 1, 1, 1), d(2, 1, 2, 1);
  auto r2 = residual_search(quadric, c, d, 10, config);
  CHECK(r2.success);
  REQUIRE(r2.exact1);
  REQUIRE(r2.exact2);
  CHECK(cycle_eq(r2.residual1, r2.residual2, config.point_tol));
  ZeroCycle x, y;
  x.add(c, 1);
  y.add(d, 1);
  CHECK(verify_expression(x, y, lines_to_expression(*r2.exact1, *r2.exact2), quadric, config).holds);

  for (int trial = 0; trial < 3; ++trial) {
    RationalPoint p1 = random_point(rng, 5), p2 = random_point(rng, 5);
    Surface cubic(random_form_through(rng, 3, {p1, p2}));
    auto r3 = residual_search(cubic, p1.to_numeric(), p2.to_numeric(), 10, config);
    CHECK(r3.success);
    REQUIRE(r3.l1);
    REQUIRE(r3.l2);
    CHECK(cycle_eq(r3.residual1, r3.residual2, config.point_tol));
    CHECK(lines_meet(*r3.l1, *r3.l2, 1e-8));
  }

  Surface quartic(random_form(rng, 4));
  CHECK_THROWS(residual_search(quartic, RationalPoint(1, 0, 0, 0), RationalPoint(0, 1, 0, 0), 10, config));
}

TEST_CASE("xr_dimension table") {
  auto q4 = xr_dimension(4, 4);
  CHECK(q4.dim_fd == 34);
  CHECK(q4.dim_xr == 34);
  CHECK(q4.fibre == 0);
  CHECK(q4.verdict == "nonempty-expected");
  CHECK(q4.shape == "finite");
  CHECK(xr_dimension(4, 3).shape == "surface");
  CHECK(xr_dimension(4, 2).shape == "surface");
  auto q5 = xr_dimension(5, 5);
  CHECK(q5.dim_fd == 55);
  CHECK(q5.fibre == -2);
  CHECK(q5.verdict == "empty-expected");
  CHECK(q5.shape == "empty");
  CHECK(xr_dimension(3, 3).dim_fd == 19);
  CHECK_THROWS_AS(xr_dimension(4, 1), std::invalid_argument);
}
