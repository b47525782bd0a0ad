#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ratequiv/calculus.hpp"
#include "ratequiv/chow.hpp"
#include "ratequiv/contact.hpp"
#include "ratequiv/intersect.hpp"
#include "ratequiv/random.hpp"
#include "report.hpp"

using namespace ratequiv;
using ratequiv::cli::Json;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 64;

struct Options {
  std::string surface, sample, a, b, h;
  std::vector<std::string> points, points2;
  int d = 0, r = 0;
  std::vector<long> s, e;
  std::uint64_t seed = 1;
  double tol = 1e-7, cluster_tol = 1e-8, residual_tol = 1e-8;
  int precision = 64, trials = 50;
  int max_iter = -1, cap = 100;
  int json_indent = 2;
};

struct Outcome {
  Json report;
  int code = kHolds;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string read_text(const std::string& value) {
  if (value.empty() || value[0] != '@') return value;
  std::ifstream in(value.substr(1));
  if (!in) throw UsageError("cannot read '" + value.substr(1) + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

HomogeneousForm form_arg(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing ") + flag);
  return parse_form(read_text(value));
}

RunConfig make_config(const Options& o) {
  RunConfig c;
  c.seed = o.seed;
  c.point_tol = o.tol;
  c.cluster_tol = o.cluster_tol;
  c.residual_tol = o.residual_tol;
  c.precision = o.precision;
  c.trials = o.trials;
  c.validate();
  return c;
}

int sample_degree(const std::string& name) {
  static const std::map<std::string, int> degrees{
      {"plane", 1}, {"quadric", 2}, {"cubic", 3}, {"quartic", 4}, {"quintic", 5}};
  auto it = degrees.find(name);
  if (it == degrees.end()) throw UsageError("unknown --sample '" + name + "'");
  return it->second;
}

// Resolves the surface and the two point lists. Missing points are sampled
// when the surface is sampled; `through` forces a sampled surface through them.
struct Inputs {
  std::optional<Surface> f;
  std::vector<RationalPoint> x, y;
};

Inputs resolve(const Options& o, std::size_t need_x, std::size_t need_y, bool through, int default_sample = 0) {
  Inputs in;
  for (const auto& p : o.points) in.x.push_back(parse_point(p));
  for (const auto& p : o.points2) in.y.push_back(parse_point(p));
  if (!o.surface.empty()) {
    in.f.emplace(form_arg(o.surface, "--surface"));
  } else if (!o.sample.empty() || default_sample > 0) {
    const int degree = o.sample.empty() ? default_sample : sample_degree(o.sample);
    Rng rng(mix_seed(o.seed, "cli-sample"));
    while (in.x.size() < need_x) in.x.push_back(random_point(rng, 5));
    while (in.y.size() < need_y) in.y.push_back(random_point(rng, 5));
    std::vector<RationalPoint> on;
    if (through) {
      on = in.x;
      on.insert(on.end(), in.y.begin(), in.y.end());
    }
    in.f.emplace(random_form_through(rng, degree, on));
  } else {
    throw UsageError("need --surface or --sample");
  }
  if (in.x.size() < need_x) throw UsageError("missing --point");
  if (in.y.size() < need_y) throw UsageError("missing --point2");
  return in;
}

ZeroCycle cycle_of(const std::vector<RationalPoint>& pts, double tol) {
  ZeroCycle z(tol);
  for (const auto& p : pts) z.add(p, 1);
  return z;
}

Json config_json(const Options& o) {
  return Json{{"seed", o.seed},        {"tol", o.tol},         {"cluster_tol", o.cluster_tol},
              {"residual_tol", o.residual_tol}, {"precision", o.precision}, {"trials", o.trials}};
}

Outcome cmd_taylor(const Options& o) {
  Inputs in = resolve(o, 1, 0, true);
  auto parts = taylor_parts(in.f->form(), in.x[0]);
  Json list = Json::array();
  for (std::size_t i = 0; i < parts.size(); ++i)
    list.push_back(Json{{"order", i}, {"part", cli::to_string(parts[i])}});
  return {Json{{"surface", to_string(in.f->form())}, {"point", cli::to_json(in.x[0])}, {"parts", list}}};
}

Outcome cmd_restrict_line(const Options& o) {
  Inputs in = resolve(o, 1, 1, false);
  RationalLine l(in.x[0], in.y[0]);
  auto r = restrict_to_line(in.f->form(), l);
  Json coeffs = Json::array();
  for (const auto& c : r.coefficients) coeffs.push_back(c.get_str());
  return {Json{{"surface", to_string(in.f->form())},
               {"line", cli::to_json(l)},
               {"coefficients", coeffs},
               {"infinity_multiplicity", r.infinity_multiplicity},
               {"on_surface", r.on_surface}}};
}

Outcome cmd_line_cycle(const Options& o, const RunConfig& config) {
  Inputs in = resolve(o, 1, 1, false);
  RationalLine l(in.x[0], in.y[0]);
  ZeroCycle z = line_surface_cycle(l, *in.f, config);
  return {Json{{"surface", to_string(in.f->form())}, {"line", cli::to_json(l)}, {"cycle", cli::to_json(z)}}};
}

Outcome cmd_ci_cycle(const Options& o, const RunConfig& config) {
  Inputs in = resolve(o, 0, 0, false);
  HomogeneousForm a = form_arg(o.a, "--a"), h = form_arg(o.h, "--h");
  ZeroCycle z = complete_intersection_cycle(a, h, *in.f, config);
  return {Json{{"surface", to_string(in.f->form())},
               {"a", to_string(a)},
               {"h", to_string(h)},
               {"cycle", cli::to_json(z)}}};
}

Outcome cmd_polar_locus(const Options& o, const RunConfig& config) {
  Inputs in = resolve(o, 1, 0, false);
  const int r = o.r == 0 ? 3 : o.r;
  auto locus = polar_locus(*in.f, in.x[0].to_numeric(), r, config);
  Json j{{"surface", to_string(in.f->form())}, {"q", cli::to_json(in.x[0])}, {"r", r}};
  if (locus.points) {
    j["degree"] = locus.points->degree();
    j["distinct"] = locus.points->size();
    j["max_residual"] = format_real(locus.max_residual);
    j["points"] = cli::to_json(*locus.points);
  }
  if (locus.curve) {
    j["degree"] = locus.curve->degree;
    Json samples = Json::array();
    for (const auto& s : locus.curve->samples) samples.push_back(cli::to_json(s));
    j["samples"] = samples;
  }
  return {j};
}

Outcome cmd_contact_lines(const Options& o, const RunConfig& config) {
  Inputs in = resolve(o, 1, 0, true);
  const int r = o.r == 0 ? 3 : o.r;
  auto c = contact_directions(*in.f, in.x[0], r, config);
  bool verified = std::all_of(c.directions.begin(), c.directions.end(), [](const auto& d) { return d.verified; });
  Json j{{"surface", to_string(in.f->form())}, {"point", cli::to_json(in.x[0])}, {"r", r}};
  j.update(cli::to_json(c));
  return {j, verified ? kHolds : kFails};
}

Json witness_pair(const EquivPair& p) {
  return Json{{"q_i", cli::to_json(p.q_i)}, {"verified", p.verified}, {"witness", cli::to_json(p.witness)}};
}

Outcome cmd_equiv_step(const Options& o, const RunConfig& config) {
  Inputs in = resolve(o, 1, 0, true, 4);
  auto step = equiv_step(*in.f, in.x[0].to_numeric(), config);
  auto pairs = step.pairs;
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return cli::point_less(a.q_i, b.q_i); });
  Json list = Json::array();
  int verified = 0;
  for (const auto& p : pairs) {
    list.push_back(witness_pair(p));
    verified += p.verified ? 1 : 0;
  }
  Json j{{"surface", to_string(in.f->form())},
         {"q", cli::to_json(in.x[0])},
         {"polar_degree", step.polar_degree},
         {"seed_multiplicity", step.seed_multiplicity},
         {"degenerate_points", step.degenerate_points},
         {"pair_count", pairs.size()},
         {"verified_count", verified},
         {"pairs", list},
         {"warnings", step.warnings}};
  return {j, !pairs.empty() && verified == static_cast<int>(pairs.size()) ? kHolds : kFails};
}

Outcome cmd_orbit(const Options& o, const RunConfig& config) {
  Inputs in = resolve(o, 1, 0, true, 4);
  const int rounds = o.max_iter < 0 ? 1 : o.max_iter;
  auto st = orbit(*in.f, in.x[0].to_numeric(), rounds, o.cap, config);
  Json members = Json::array();
  for (const auto& m : st.members) {
    Json j{{"point", cli::to_json(m.point)}, {"parent", m.parent}, {"round", m.round}};
    if (m.witness) j["witness"] = cli::to_json(*m.witness);
    members.push_back(std::move(j));
  }
  return {Json{{"surface", to_string(in.f->form())},
               {"q", cli::to_json(in.x[0])},
               {"rounds", st.rounds},
               {"truncated", st.truncated},
               {"size", st.members.size()},
               {"members", members},
               {"frontier", st.frontier},
               {"warnings", st.warnings}}};
}

Outcome cmd_residual_search(const Options& o, const RunConfig& config) {
  Inputs in = resolve(o, 1, 1, true, 3);
  const int attempts = o.max_iter < 0 ? 10 : o.max_iter;
  auto r = residual_search(*in.f, in.x[0], in.y[0], attempts, config);
  Json j{{"surface", to_string(in.f->form())},
         {"q1", cli::to_json(in.x[0])},
         {"q2", cli::to_json(in.y[0])},
         {"success", r.success},
         {"attempts_used", r.attempts_used},
         {"best_residual", format_real(r.best_residual)},
         {"reason", r.reason}};
  if (r.exact1 && r.exact2) {
    j["l1"] = cli::to_json(*r.exact1);
    j["l2"] = cli::to_json(*r.exact2);
    j["expression"] = cli::to_json(lines_to_expression(*r.exact1, *r.exact2));
  } else if (r.l1 && r.l2) {
    j["l1"] = cli::to_json(*r.l1);
    j["l2"] = cli::to_json(*r.l2);
    if (r.success) j["expression"] = cli::to_json(lines_to_expression(*r.l1, *r.l2));
  }
  j["residual1"] = cli::to_json(r.residual1);
  j["residual2"] = cli::to_json(r.residual2);
  return {j, r.success ? kHolds : kInconclusive};
}

struct ExpressionInputs {
  Inputs in;
  ZeroCycle x, y;
  CIExpression<Rational> expr;
};

ExpressionInputs expression_inputs(const Options& o, const RunConfig& config) {
  Inputs in = resolve(o, 1, 1, true);
  CIExpression<Rational> expr(form_arg(o.a, "--a"), form_arg(o.b, "--b"), form_arg(o.h, "--h"));
  return {in, cycle_of(in.x, config.point_tol), cycle_of(in.y, config.point_tol), expr};
}

Outcome cmd_verify_expr(const Options& o, const RunConfig& config) {
  auto ei = expression_inputs(o, config);
  auto v = verify_expression(ei.x, ei.y, ei.expr, *ei.in.f, config);
  return {Json{{"surface", to_string(ei.in.f->form())},
               {"x", cli::to_json(ei.x)},
               {"y", cli::to_json(ei.y)},
               {"expression", cli::to_json(ei.expr)},
               {"verdict", v.holds ? "holds" : "fails"},
               {"vx", cli::to_json(v.vx)},
               {"vy", cli::to_json(v.vy)},
               {"residual", cli::to_json(v.residual)}},
          v.holds ? kHolds : kFails};
}

int star_code(const StarCheckReport& r) {
  switch (r.verdict) {
    case StarCheckReport::Verdict::holds:
      return kHolds;
    case StarCheckReport::Verdict::fails:
      return kFails;
    default:
      return kInconclusive;
  }
}

Outcome cmd_star_check(const Options& o, const RunConfig& config) {
  auto ei = expression_inputs(o, config);
  auto r = star_check(ei.x, ei.y, ei.expr, *ei.in.f, config);
  Json j{{"surface", to_string(ei.in.f->form())}, {"expression", cli::to_json(ei.expr)}};
  j.update(cli::to_json(r));
  return {j, star_code(r)};
}

Outcome cmd_match_degrees(const Options& o) {
  if (o.s.size() != 2 || o.e.size() != 2) throw UsageError("--s and --e each take two values");
  MultiDegree m1(o.s[0], o.e[0]), m2(o.s[1], o.e[1]);
  auto m = match_multidegrees(m1, m2);
  return {Json{{"common", Json{{"s", m.common.s}, {"e", m.common.e}}},
               {"t1", m.t1},
               {"t2", m.t2},
               {"r1", m.r1},
               {"r2", m.r2},
               {"p1", m.p1},
               {"p2", m.p2},
               {"pad1", m.pad1},
               {"pad2", m.pad2},
               {"identity", m.identity}}};
}

Outcome cmd_xr_dim(const Options& o) {
  auto x = xr_dimension(o.d, o.r);
  return {Json{{"d", o.d},
               {"r", o.r},
               {"dim_fd", x.dim_fd},
               {"dim_xr", x.dim_xr},
               {"fibre", x.fibre},
               {"verdict", x.verdict},
               {"shape", x.shape}}};
}

Outcome cmd_demo_quintic(const RunConfig& config) {
  auto demo = quintic_family_demo(config);
  Json pts = Json::array();
  for (const auto& p : demo.residual_points) pts.push_back(cli::to_json(p));
  Json j{{"surface", to_string(demo.f)},
         {"c1", demo.c1.get_str()},
         {"c2", demo.c2.get_str()},
         {"c3", demo.c3.get_str()},
         {"point", Json::array({"0", "0", "0", "1"})},
         {"contact", cli::to_json(demo.contact)},
         {"residual_points", pts},
         {"distinct", demo.distinct},
         {"expression_holds", demo.expression_holds},
         {"resamples", demo.resamples}};
  const bool ok = demo.contact.directions.size() == 2 && demo.distinct && demo.expression_holds;
  return {j, ok ? kHolds : kFails};
}

// Two points on a plane are joined through an auxiliary point off the plane.
Outcome cmd_demo_plane(const Options& o, const RunConfig& config) {
  Rng rng(mix_seed(o.seed, "demo-plane"));
  std::optional<Surface> plane;
  if (!o.surface.empty()) plane.emplace(form_arg(o.surface, "--surface"));
  if (!plane) {
    Vec4q c;
    for (int i = 0; i < 3; ++i) c(i) = Rational(random_int(rng, -9, 9));
    c(3) = Rational(random_nonzero_int(rng, 9));
    plane.emplace(HomogeneousForm::linear(c));
  }
  if (plane->degree() != 1) throw UsageError("demo-plane needs a plane");
  const HomogeneousForm& f = plane->form();
  auto on_plane = [&](const std::vector<std::string>& given) {
    if (!given.empty()) return parse_point(given[0]);
    for (;;) {
      RationalPoint p = random_point(rng, 5);
      // Project along a coordinate axis onto the plane.
      for (int i = 3; i >= 0; --i) {
        Exponent e{0, 0, 0, 0};
        e[static_cast<std::size_t>(i)] = 1;
        const Rational ci = f.coefficient(e);
        if (ci == 0) continue;
        Vec4q v = p.coords();
        v(i) = 0;
        v(i) = -f(v) / ci;
        if (!v.isZero()) return RationalPoint(v);
      }
    }
  };
  RationalPoint x = on_plane(o.points), y = on_plane(o.points2);
  if (x.coords() == y.coords()) throw UsageError("the two points coincide");
  RationalPoint aux = random_point(rng, 5);
  while (f(aux.coords()) == 0) aux = random_point(rng, 5);
  auto expr = lines_to_expression(RationalLine(x, aux), RationalLine(y, aux));
  ZeroCycle zx = cycle_of({x}, config.point_tol), zy = cycle_of({y}, config.point_tol);
  auto v = verify_expression(zx, zy, expr, *plane, config);
  auto star = star_check(zx, zy, expr, *plane, config);
  Json j{{"surface", to_string(f)},
         {"x", cli::to_json(x)},
         {"y", cli::to_json(y)},
         {"auxiliary", cli::to_json(aux)},
         {"expression", cli::to_json(expr)},
         {"verdict", v.holds ? "holds" : "fails"},
         {"star_check", cli::to_json(star)}};
  return {j, v.holds && star.verdict == StarCheckReport::Verdict::holds ? kHolds : kFails};
}

void print(const Json& j, int indent) { std::cout << j.dump(indent) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational equivalence of 0-cycles on surfaces in P^3"};
  app.require_subcommand(1);
  // -h is taken by the form h.
  app.set_help_flag("--help", "Print this help message and exit");
  Options o;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"taylor", "Taylor parts of F at a point"},
      {"restrict-line", "Restriction of F to the line through two points"},
      {"line-cycle", "Intersection cycle of a line with F"},
      {"ci-cycle", "Intersection cycle of {a = h = 0} with F"},
      {"polar-locus", "Points with a contact-r line through q"},
      {"contact-lines", "Lines with contact order r at a point of F"},
      {"equiv-step", "Points q_i with q - q_i rationally equivalent through two lines"},
      {"orbit", "Closure of equiv-step from a point"},
      {"residual-search", "Lines joining two points on a low degree surface"},
      {"verify-expr", "Check an expression (a, b, h) for X - Y"},
      {"star-check", "Probabilistic Chow form identity for an expression"},
      {"match-degrees", "Common multidegree for two expressions"},
      {"xr-dim", "Expected dimension count for contact-r lines"},
      {"demo-quintic", "Quintic with two contact-4 lines at the origin"},
      {"demo-plane", "Two points on a plane joined through an auxiliary point"}};

  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--surface", o.surface, "Surface equation, or @file");
    sub->add_option("--sample", o.sample, "Sample the surface: plane, quadric, cubic, quartic, quintic");
    sub->add_option("--point", o.points, "Point (x:y:z:t); repeat to build a cycle");
    sub->add_option("--point2", o.points2, "Second point or cycle");
    sub->add_option("--a", o.a, "Form a, or @file");
    sub->add_option("--b", o.b, "Form b, or @file");
    sub->add_option("--h", o.h, "Form h, or @file");
    sub->add_option("--d", o.d, "Surface degree");
    sub->add_option("--r", o.r, "Contact order");
    sub->add_option("--s", o.s, "Degrees s1 s2")->expected(2);
    sub->add_option("--e", o.e, "Degrees e1 e2")->expected(2);
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--tol", o.tol, "Point tolerance");
    sub->add_option("--cluster-tol", o.cluster_tol, "Root cluster tolerance");
    sub->add_option("--residual-tol", o.residual_tol, "Residual tolerance");
    sub->add_option("--precision", o.precision, "Root finding precision in bits (53..64)");
    sub->add_option("--trials", o.trials, "Random samples for probabilistic checks");
    sub->add_option("--max-iter", o.max_iter, "Orbit rounds or search attempts");
    sub->add_option("--cap", o.cap, "Maximum orbit size");
    sub->add_option("--json-indent", o.json_indent, "JSON indentation, -1 for one line");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  Outcome out;
  try {
    RunConfig config = make_config(o);
    if (cmd == "taylor") out = cmd_taylor(o);
    else if (cmd == "restrict-line") out = cmd_restrict_line(o);
    else if (cmd == "line-cycle") out = cmd_line_cycle(o, config);
    else if (cmd == "ci-cycle") out = cmd_ci_cycle(o, config);
    else if (cmd == "polar-locus") out = cmd_polar_locus(o, config);
    else if (cmd == "contact-lines") out = cmd_contact_lines(o, config);
    else if (cmd == "equiv-step") out = cmd_equiv_step(o, config);
    else if (cmd == "orbit") out = cmd_orbit(o, config);
    else if (cmd == "residual-search") out = cmd_residual_search(o, config);
    else if (cmd == "verify-expr") out = cmd_verify_expr(o, config);
    else if (cmd == "star-check") out = cmd_star_check(o, config);
    else if (cmd == "match-degrees") out = cmd_match_degrees(o);
    else if (cmd == "xr-dim") out = cmd_xr_dim(o);
    else if (cmd == "demo-quintic") out = cmd_demo_quintic(config);
    else if (cmd == "demo-plane") out = cmd_demo_plane(o, config);
    out.report["command"] = cmd;
    out.report["config"] = config_json(o);
  } catch (const ParseError& e) {
    out = {Json{{"command", cmd}, {"error", e.what()}, {"kind", "parse"}, {"position", e.position()}}, kUsage};
  } catch (const std::invalid_argument& e) {
    out = {Json{{"command", cmd}, {"error", e.what()}, {"kind", "usage"}}, kUsage};
  } catch (const std::exception& e) {
    // Improper intersections, solver and capacity limits, singular points.
    out = {Json{{"command", cmd}, {"error", e.what()}, {"kind", "inconclusive"}}, kInconclusive};
  }
  print(out.report, o.json_indent);
  if (out.code == kUsage) std::cerr << out.report["error"].get<std::string>() << "\n";
  return out.code;
}
