#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ratequiv/calculus.hpp"
#include "ratequiv/chow.hpp"
#include "ratequiv/contact.hpp"
#include "ratequiv/intersect.hpp"
#include "ratequiv/random.hpp"

using namespace ratequiv;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ZeroCycle single(const ComplexPoint& p) {
  ZeroCycle z;
  z.add(p, 1);
  return z;
}

RationalPoint off_surface(Rng& rng, const Surface& f) {
  for (;;) {
    RationalPoint p = random_point(rng, 5);
    if (f.form()(p.coords()) != 0) return p;
  }
}

bool parallel(const Vec3q& v, const Vec3q& w) {
  return v(1) * w(2) == v(2) * w(1) && v(2) * w(0) == v(0) * w(2) && v(0) * w(1) == v(1) * w(0);
}

Result polar_count() {
  Rng rng(1001);
  int ok = 0;
  double worst = 0.0;
  std::ostringstream bad;
  for (int i = 0; i < 5; ++i) {
    Surface f(random_form(rng, 4));
    RationalPoint q = off_surface(rng, f);
    auto t0 = Clock::now();
    auto locus = polar_locus(f, q.to_numeric(), 3);
    const double t = seconds_since(t0);
    worst = std::max(worst, t);
    const int degree = locus.points->degree();
    const auto distinct = locus.points->size();
    if (degree == 24 && distinct == 24 && t < 10.0)
      ++ok;
    else
      bad << " [instance " << i << ": degree " << degree << ", " << distinct << " points, " << t << " s]";
  }
  std::ostringstream s;
  s << ok << "/5 quartics with 24 distinct polar points, slowest " << worst << " s" << bad.str();
  return {ok == 5, s.str()};
}

Result two_contact_lines() {
  Rng rng(1002);
  int ok = 0;
  for (int i = 0; i < 20; ++i) {
    RationalPoint p = random_point(rng, 5);
    Surface f(random_form_through(rng, 4, {p}));
    auto c = contact_directions(f, p, 3);
    bool good = !c.positive_dimensional && c.directions.size() == 2;
    for (const auto& d : c.directions) good = good && d.verified && (d.exact || d.surd) && d.contact_order >= 3;
    ok += good ? 1 : 0;
  }
  return {ok == 20, std::to_string(ok) + "/20 points with exactly two exactly verified directions"};
}

Result equiv_degree() {
  Rng rng(1003);
  RationalPoint q = random_point(rng, 5);
  Surface f(random_form_through(rng, 4, {q}));
  auto step = equiv_step(f, q.to_numeric());
  int verified = 0;
  for (const auto& p : step.pairs) verified += p.verified ? 1 : 0;
  std::ostringstream s;
  s << step.pairs.size() << " pairs (" << verified << " verified), polar degree " << step.polar_degree
    << ", multiplicity at q " << step.seed_multiplicity << "; expected 24 pairs";
  return {step.pairs.size() == 24 && verified == 24, s.str()};
}

bool search_and_verify(const Surface& f, const RationalPoint& x, const RationalPoint& y, const RunConfig& config) {
  auto r = residual_search(f, x, y, 10, config);
  if (!r.success) return false;
  if (r.exact1 && r.exact2) {
    auto e = lines_to_expression(*r.exact1, *r.exact2);
    ZeroCycle zx, zy;
    zx.add(x, 1);
    zy.add(y, 1);
    return e.s() == 1 && e.e() == 1 && verify_expression(zx, zy, e, f, config).holds;
  }
  auto e = lines_to_expression(*r.l1, *r.l2);
  return e.s() == 1 && e.e() == 1 &&
         verify_expression(single(x.to_numeric()), single(y.to_numeric()), e, f.cast<Complex>(), config).holds;
}

Result low_degree_completeness() {
  Rng rng(1004);
  RunConfig config;
  int plane_ok = 0, quadric_ok = 0, cubic_ok = 0, cubic_flagged = 0;
  for (int i = 0; i < 20; ++i) {
    Vec4q c;
    for (int k = 0; k < 3; ++k) c(k) = Rational(random_int(rng, -9, 9));
    c(3) = Rational(random_nonzero_int(rng, 9));
    Surface plane(HomogeneousForm::linear(c));
    auto on_plane = [&] {
      Vec4q v;
      do {
        for (int k = 0; k < 3; ++k) v(k) = Rational(random_int(rng, -9, 9));
        v(3) = -(c(0) * v(0) + c(1) * v(1) + c(2) * v(2)) / c(3);
      } while (v.isZero());
      return RationalPoint(v);
    };
    RationalPoint x = on_plane(), y = on_plane();
    if (x.coords() == y.coords()) y = on_plane();
    plane_ok += search_and_verify(plane, x, y, config) ? 1 : 0;
  }
  Surface quadric(parse_form("X*T-Y*Z"));
  for (int i = 0; i < 20; ++i) {
    // (s u : s v : t u : t v) lies on XT = YZ.
    auto on_quadric = [&] {
      Rational s(random_nonzero_int(rng, 9)), t(random_nonzero_int(rng, 9));
      Rational u(random_nonzero_int(rng, 9)), v(random_nonzero_int(rng, 9));
      return RationalPoint(s * u, s * v, t * u, t * v);
    };
    RationalPoint x = on_quadric(), y = on_quadric();
    while (x.coords() == y.coords()) y = on_quadric();
    quadric_ok += search_and_verify(quadric, x, y, config) ? 1 : 0;
  }
  for (int i = 0; i < 20; ++i) {
    RationalPoint x = random_point(rng, 5), y = random_point(rng, 5);
    Surface cubic(random_form_through(rng, 3, {x, y}));
    auto r = residual_search(cubic, x, y, 10, config);
    if (r.success) {
      auto e = lines_to_expression(*r.l1, *r.l2);
      bool holds = verify_expression(single(x.to_numeric()), single(y.to_numeric()), e, cubic.cast<Complex>(), config).holds;
      cubic_ok += holds ? 1 : 0;
    } else {
      cubic_flagged += r.reason.empty() ? 0 : 1;
    }
  }
  std::ostringstream s;
  s << "plane " << plane_ok << "/20, quadric " << quadric_ok << "/20, cubic " << cubic_ok << "/20 ("
    << cubic_flagged << " flagged inconclusive)";
  const bool unflagged = cubic_ok + cubic_flagged < 20;
  return {plane_ok == 20 && quadric_ok == 20 && cubic_ok >= 16 && !unflagged, s.str()};
}

Result quintic_demo() {
  int ok = 0;
  RunConfig config;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    config.seed = seed;
    auto demo = quintic_family_demo(config);
    bool first = false, second = false, orders = demo.contact.directions.size() == 2;
    for (const auto& d : demo.contact.directions) {
      if (!d.exact) {
        orders = false;
        continue;
      }
      first = first || parallel(*d.exact, Vec3q(0, -1, 1));
      second = second || parallel(*d.exact, Vec3q(1, 0, -1));
      orders = orders && d.contact_order == 4;
    }
    ok += first && second && orders && demo.distinct ? 1 : 0;
  }
  return {ok == 5, std::to_string(ok) + "/5 seeds with directions (0,-1,1), (1,0,-1) of contact exactly 4"};
}

Result dimension_table() {
  auto a = xr_dimension(4, 3), b = xr_dimension(5, 4), c = xr_dimension(6, 5);
  std::ostringstream s;
  s << "fibres " << a.fibre << " " << a.shape << " / " << b.fibre << " " << b.shape << " / " << c.fibre << " "
    << c.shape;
  return {a.fibre == 2 && b.fibre == 0 && c.fibre == -2 && a.shape == "surface" && b.shape == "finite" &&
              c.shape == "empty",
          s.str()};
}

Result star_soundness() {
  Rng rng(1007);
  RunConfig config;
  config.trials = 50;
  int holds = 0, witnesses = 0;
  double worst = 0.0;
  while (witnesses < 24) {
    RationalPoint q = random_point(rng, 5);
    Surface f(random_form_through(rng, 4, {q}));
    ComplexSurface fc(f.form().cast<Complex>());
    auto step = equiv_step(f, q.to_numeric(), config);
    for (std::size_t i = 0; i < step.pairs.size() && i < 8; ++i) {
      const auto& pair = step.pairs[i];
      auto expr = lines_to_expression(pair.witness.l1, pair.witness.l2);
      auto r = star_check(single(q.to_numeric()), single(pair.q_i), expr, fc, config);
      ++witnesses;
      worst = std::max(worst, r.max_deviation);
      holds += r.verdict == StarCheckReport::Verdict::holds && r.samples_used == 50 && r.max_deviation <= 1e-6 ? 1 : 0;
    }
  }
  int fails = 0;
  for (int i = 0; i < 20; ++i) {
    RationalPoint x = random_point(rng, 5), y = random_point(rng, 5);
    Surface f(random_form_through(rng, 4, {x, y}));
    CIExpression<Rational> e(random_form(rng, 1), random_form(rng, 1), random_form(rng, 1));
    ZeroCycle zx, zy;
    zx.add(x, 1);
    zy.add(y, 1);
    fails += star_check(zx, zy, e, f, config).verdict == StarCheckReport::Verdict::fails ? 1 : 0;
  }
  std::ostringstream s;
  s << holds << "/" << witnesses << " witnesses hold (max deviation " << worst << "), " << fails
    << "/20 random instances fail";
  return {holds == witnesses && fails == 20, s.str()};
}

Result nesting_invariance() {
  Rng rng(1008);
  RunConfig config;
  int verified = 0, rule2 = 0, rule3 = 0;
  while (verified < 20) {
    RationalPoint o = random_point(rng), p = random_point(rng), q = random_point(rng);
    RationalLine l1(o, p), l2(o, q);
    auto e = lines_to_expression(l1, l2);
    Surface f(random_form(rng, 3 + verified % 2));
    if (!verify_expression(line_surface_cycle(l1, f), line_surface_cycle(l2, f), e, f, config).holds) continue;
    ++verified;
    config.seed = static_cast<std::uint64_t>(verified);
    rule2 += same_difference(e, nesting_rule_2(e, random_form(rng, 1), f, config), f, config) ? 1 : 0;
    rule3 += same_difference(e, nesting_rule_3(e, 1 + verified % 2, f, config), f, config) ? 1 : 0;
  }
  int balanced = 0;
  for (int i = 0; i < 100; ++i) {
    MultiDegree m1(random_int(rng, 1, 30), random_int(rng, 1, 200));
    MultiDegree m2(random_int(rng, 1, 30), random_int(rng, 1, 200));
    auto r = match_multidegrees(m1, m2);
    const bool eq = r.identity ? m1 == m2 : m1.e + r.r1 * (m1.s + r.t1) == m2.e + r.r2 * (m2.s + r.t2);
    balanced += eq ? 1 : 0;
  }
  std::ostringstream s;
  s << "rule 2 " << rule2 << "/20, rule 3 " << rule3 << "/20, degree matching " << balanced << "/100";
  return {rule2 == 20 && rule3 == 20 && balanced == 100, s.str()};
}

Result bezout_suite() {
  Rng rng(1009);
  RunConfig config;
  int lines = 0, lines_ok = 0, cis = 0, cis_ok = 0, polars = 0, polars_ok = 0;
  while (lines < 100) {
    const int d = 1 + lines % 5;
    Surface f(random_form(rng, d));
    RationalLine l(random_point(rng), random_point(rng));
    if (restrict_to_line(f.form(), l).on_surface) continue;
    ++lines;
    lines_ok += line_surface_cycle(l, f, config).degree() == d ? 1 : 0;
  }
  while (cis < 100) {
    const int s = 1 + cis % 2, e = 1 + (cis / 2) % 2, d = 1 + cis % 4;
    Surface f(random_form(rng, d, 5));
    HomogeneousForm a = random_form(rng, s, 5), h = random_form(rng, e, 5);
    try {
      ZeroCycle z = complete_intersection_cycle(a, h, f, config);
      ++cis;
      cis_ok += z.degree() == s * e * d ? 1 : 0;
    } catch (const ImproperIntersectionError&) {
    }
  }
  while (polars < 100) {
    const int d = 2 + polars % 4;
    Surface f(random_form(rng, d));
    ++polars;
    auto locus = polar_locus(f, off_surface(rng, f).to_numeric(), 3, config);
    polars_ok += locus.points->degree() == d * (d - 1) * (d - 2) ? 1 : 0;
  }
  std::ostringstream s;
  s << "line cycles " << lines_ok << "/" << lines << ", complete intersections " << cis_ok << "/" << cis
    << ", polar loci " << polars_ok << "/" << polars;
  return {lines_ok == lines && cis_ok == cis && polars_ok == polars, s.str()};
}

std::pair<int, std::string> run_capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return {-1, out};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  return {pclose(pipe), out};
}

Result cli_determinism(const std::string& cli) {
  const std::vector<std::string> commands{
      "taylor --sample quartic --seed 3",
      "restrict-line --sample cubic --seed 2",
      "line-cycle --sample quartic --seed 2",
      "ci-cycle --sample quartic --seed 4 --a X+Y --h Z-2*T+X",
      "polar-locus --sample quartic --seed 5",
      "contact-lines --sample quartic --seed 4",
      "equiv-step --sample quartic --seed 7",
      "orbit --sample quartic --seed 7 --max-iter 1 --cap 30",
      "residual-search --sample cubic --seed 9",
      "verify-expr --surface X*T-Y*Z --point 1:1:1:1 --point2 2:1:2:1 --a X-Y --b Y-Z --h T",
      "star-check --sample quartic --seed 3 --a X-Y --b Y-Z --h T+X",
      "match-degrees --s 1 2 --e 5 3",
      "xr-dim --d 6 --r 5",
      "demo-quintic --seed 2",
      "demo-plane --seed 2"};
  int same = 0;
  std::string bad;
  for (const auto& c : commands) {
    auto first = run_capture(cli + " " + c);
    auto second = run_capture(cli + " " + c);
    if (first == second && !first.second.empty())
      ++same;
    else
      bad += " [" + c + "]";
  }
  return {same == static_cast<int>(commands.size()),
          std::to_string(same) + "/" + std::to_string(commands.size()) + " subcommands reproducible" + bad};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string cli = RATEQUIV_CLI_PATH;
  std::vector<int> only, known;
  app.add_option("--cli", cli, "Path to the command-line tool");
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--known-failure", known, "Criteria whose failure is expected and does not fail the run");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Result()>> criteria{
      polar_count,      two_contact_lines, equiv_degree,       low_degree_completeness, quintic_demo,
      dimension_table,  star_soundness,    nesting_invariance, bezout_suite,            [&] { return cli_determinism(cli); }};

  const std::set<int> selected(only.begin(), only.end()), expected(known.begin(), known.end());
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    auto t0 = Clock::now();
    Result r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const bool known_failure = expected.count(id) > 0;
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << id << ": " << r.detail;
    if (known_failure) std::cout << (r.pass ? " (listed as known failure, passed)" : " (known failure)");
    std::cout << " [" << seconds_since(t0) << " s]" << std::endl;
    if (!r.pass && !known_failure) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
