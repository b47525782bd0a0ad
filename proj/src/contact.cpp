#include "ratequiv/contact.hpp"

#include <Eigen/Dense>

#include "ratequiv/calculus.hpp"
#include "ratequiv/intersect.hpp"
#include "ratequiv/linalg.hpp"
#include "ratequiv/qpoly.hpp"
#include "ratequiv/random.hpp"

namespace ratequiv {

namespace {

template <typename S>
std::vector<S> poly_mul(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> out(a.size() + b.size() - 1, S(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = S(out[i + j] + a[i] * b[j]);
  return out;
}

// part(u k1 + k2) as a polynomial in u, lowest degree first.
template <typename S>
std::vector<S> on_tangent_line(const AffinePolynomial<S>& part, const Vec3<S>& k1, const Vec3<S>& k2) {
  std::vector<S> out(1, S(0));
  for (const auto& [e, c] : part.terms()) {
    std::vector<S> term{c};
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < e[static_cast<std::size_t>(j)]; ++k) term = poly_mul(term, std::vector<S>{k2(j), k1(j)});
    if (term.size() > out.size()) out.resize(term.size(), S(0));
    for (std::size_t k = 0; k < term.size(); ++k) out[k] = S(out[k] + term[k]);
  }
  return out;
}

template <typename S>
Eigen::Matrix<S, 4, 4> chart_matrix(const std::array<int, 4>& chart) {
  Eigen::Matrix<S, 4, 4> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = S(0);
  for (int i = 0; i < 4; ++i) m(chart[static_cast<std::size_t>(i)], i) = S(1);
  return m;
}

std::array<int, 4> swap_into_t(int k) {
  std::array<int, 4> c{0, 1, 2, 3};
  std::swap(c[static_cast<std::size_t>(k)], c[3]);
  return c;
}

std::array<int, 4> exact_chart(const Vec4q& p) {
  if (!is_zero(p(3))) return {0, 1, 2, 3};
  for (int k = 2; k >= 0; --k)
    if (!is_zero(p(k))) return swap_into_t(k);
  throw std::invalid_argument("zero point");
}

// Keeps the affine coordinates of p bounded by moving a dominant coordinate
// into T when T is small.
std::array<int, 4> numeric_chart(const Vec4c& p) {
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(p(i)) > std::abs(p(k))) k = i;
  if (std::abs(p(3)) >= 1e-3 * std::abs(p(k))) return {0, 1, 2, 3};
  return swap_into_t(k);
}

template <typename S>
Vec4<S> in_chart(const Vec4<S>& x, const std::array<int, 4>& chart) {
  Vec4<S> y;
  for (int i = 0; i < 4; ++i) y(i) = x(chart[static_cast<std::size_t>(i)]);
  return y;
}

template <typename S>
Vec4<S> from_chart(const Vec4<S>& y, const std::array<int, 4>& chart) {
  Vec4<S> x;
  for (int i = 0; i < 4; ++i) x(chart[static_cast<std::size_t>(i)]) = y(i);
  return x;
}

template <typename S>
double relative_residual(const AffinePolynomial<S>& part, const Vec3c& dir) {
  double scale = 0.0;
  for (const auto& [e, c] : part.terms()) scale += magnitude(c);
  if (scale == 0.0) return 0.0;
  const double n = dir.norm();
  return std::abs(part.template cast<Complex>()(dir)) / (scale * std::pow(n, part.degree()));
}

QuadraticSurd evaluate_surd(const AffinePolynomial<Rational>& part, const std::array<QuadraticSurd, 3>& v) {
  const Rational& d = v[0].radicand();
  QuadraticSurd acc(0, 0, d);
  for (const auto& [e, c] : part.terms()) {
    QuadraticSurd term(c, 0, d);
    for (std::size_t j = 0; j < 3; ++j)
      for (int k = 0; k < e[j]; ++k) term = term * v[j];
    acc = acc + term;
  }
  return acc;
}

Vec3c normalized(const Vec3c& v) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v(i)) > std::abs(v(k)) * (1.0 + 1e-12)) k = i;
  Vec3c out = v / v(k);
  out(k) = 1.0;
  return out;
}

RootOptions root_options(const RunConfig& config) {
  RootOptions o;
  o.cluster_tol = config.cluster_tol;
  o.precision_bits = config.precision;
  return o;
}

void attach_numeric_line(ContactDirection& d, const Surface& f, const ComplexPoint& p, const Vec3c& dir,
                         const std::array<int, 4>& chart, const RunConfig& config) {
  Vec4c far = from_chart(Vec4c(dir(0), dir(1), dir(2), 0.0), chart);
  d.line = ComplexLine(p, ComplexPoint(far));
  try {
    d.contact_order = line_surface_cycle(*d.line, f, config).multiplicity_at(p);
  } catch (const LineOnSurfaceError&) {
    d.contact_order = -1;
  }
}

}  // namespace

ContactResult contact_directions(const Surface& f, const RationalPoint& p, int r, const RunConfig& config) {
  if (r < 2) throw std::invalid_argument("contact order must be at least 2");
  if (!is_zero(f.form()(p.coords()))) throw NotOnSurfaceError("the point does not lie on the surface");
  ContactResult out;
  out.chart = exact_chart(p.coords());
  const HomogeneousForm g = substitute_linear(f.form(), chart_matrix<Rational>(out.chart));
  const auto parts = taylor_parts(g, RationalPoint(in_chart(p.coords(), out.chart)));
  auto part = [&](int i) {
    return i < static_cast<int>(parts.size()) ? parts[static_cast<std::size_t>(i)] : AffinePolynomial<Rational>();
  };
  const auto& f1 = parts[1];
  if (f1.is_zero()) throw SingularPointError("the surface is singular at the point");

  MatrixQ w(1, 3);
  w(0, 0) = f1.coefficient({1, 0, 0});
  w(0, 1) = f1.coefficient({0, 1, 0});
  w(0, 2) = f1.coefficient({0, 0, 1});
  const auto ker = nullspace(w);
  const Vec3q k1 = ker[0], k2 = ker[1];

  QPoly common;
  int at_infinity = -1;
  for (int i = 2; i < r; ++i) {
    auto b = on_tangent_line(part(i), k1, k2);
    QPoly q(b.begin(), b.end());
    trim(q);
    if (q.empty()) continue;
    common = common.empty() ? q : gcd(common, q);
    const int inf = i - degree(q);
    at_infinity = at_infinity < 0 ? inf : std::min(at_infinity, inf);
  }
  if (at_infinity < 0) {
    out.positive_dimensional = true;
    return out;
  }

  const ComplexPoint pn = p.to_numeric();
  auto verify_numeric = [&](ContactDirection& d) {
    d.verified = true;
    for (int i = 1; i < r; ++i) d.verified = d.verified && relative_residual(part(i), d.numeric) <= config.residual_tol;
  };
  auto add_exact = [&](const Vec3q& dir, int mult) {
    ContactDirection d;
    d.multiplicity = mult;
    Vec3q e = dir;
    for (int j = 0; j < 3; ++j)
      if (!is_zero(e(j))) {
        Rational s = e(j);
        for (int l = 0; l < 3; ++l) e(l) = Rational(e(l) / s);
        break;
      }
    d.exact = e;
    d.numeric = normalized(Vec3c(scalar_cast<Complex>(e(0)), scalar_cast<Complex>(e(1)), scalar_cast<Complex>(e(2))));
    d.verified = true;
    for (int i = 1; i < r; ++i) d.verified = d.verified && is_zero(part(i)(e));
    Vec4q far = from_chart(Vec4q(e(0), e(1), e(2), Rational(0)), out.chart);
    d.exact_line = RationalLine(p, RationalPoint(far));
    d.line = d.exact_line->to_numeric();
    try {
      d.contact_order = line_surface_cycle(*d.exact_line, f, config).multiplicity_at(pn);
    } catch (const LineOnSurfaceError&) {
      d.contact_order = -1;
    }
    out.directions.push_back(std::move(d));
  };

  if (at_infinity > 0) add_exact(k1, at_infinity);
  if (degree(common) >= 1) {
    const auto sqf = squarefree_decomposition(common);
    for (std::size_t k = 0; k < sqf.size(); ++k) {
      const QPoly& factor = sqf[k];
      const int mult = static_cast<int>(k) + 1;
      if (degree(factor) == 1) {
        Rational u = -factor[0] / factor[1];
        add_exact(Vec3q(u * k1 + k2), mult);
      } else if (degree(factor) == 2) {
        const Rational& a = factor[2];
        const Rational& b = factor[1];
        const Rational& c = factor[0];
        Rational disc = b * b - 4 * a * c, root;
        if (rational_sqrt(disc, root)) {
          for (int sign : {1, -1}) add_exact(Vec3q(Rational((-b + sign * root) / (2 * a)) * k1 + k2), mult);
          continue;
        }
        for (int sign : {1, -1}) {
          const Rational re = -b / (2 * a), im = Rational(sign) / (2 * a);
          std::array<QuadraticSurd, 3> v{QuadraticSurd(0, 0, disc), QuadraticSurd(0, 0, disc),
                                         QuadraticSurd(0, 0, disc)};
          for (int j = 0; j < 3; ++j)
            v[static_cast<std::size_t>(j)] = QuadraticSurd(Rational(re * k1(j) + k2(j)), Rational(im * k1(j)), disc);
          ContactDirection d;
          d.multiplicity = mult;
          d.numeric = normalized(Vec3c(v[0].to_complex(), v[1].to_complex(), v[2].to_complex()));
          d.verified = true;
          for (int i = 1; i < r; ++i) d.verified = d.verified && evaluate_surd(part(i), v).is_zero();
          d.surd = v;
          attach_numeric_line(d, f, pn, d.numeric, out.chart, config);
          out.directions.push_back(std::move(d));
        }
      } else if (degree(factor) > 2) {
        std::vector<Complex> c;
        for (const auto& x : factor) c.push_back(scalar_cast<Complex>(x));
        for (const auto& root : find_roots(UnivariatePolynomial<double>(c), root_options(config))) {
          ContactDirection d;
          d.multiplicity = mult * root.multiplicity;
          Vec3c dir;
          for (int j = 0; j < 3; ++j) dir(j) = root.value * scalar_cast<Complex>(k1(j)) + scalar_cast<Complex>(k2(j));
          d.numeric = normalized(dir);
          verify_numeric(d);
          attach_numeric_line(d, f, pn, d.numeric, out.chart, config);
          out.directions.push_back(std::move(d));
        }
      }
    }
  }
  return out;
}

ContactResult contact_directions(const Surface& f, const ComplexPoint& p, int r, const RunConfig& config) {
  if (r < 2) throw std::invalid_argument("contact order must be at least 2");
  if (f.relative_value(p.coords()) > config.residual_tol)
    throw NotOnSurfaceError("the point does not lie on the surface");
  ContactResult out;
  out.chart = numeric_chart(p.coords());
  const ComplexForm g = substitute_linear(f.form().cast<Complex>(), chart_matrix<Complex>(out.chart));
  const auto parts = taylor_parts(g, ComplexPoint(in_chart(p.coords(), out.chart)));
  auto part = [&](int i) {
    return i < static_cast<int>(parts.size()) ? parts[static_cast<std::size_t>(i)] : AffinePolynomial<Complex>();
  };
  double scale = 0.0;
  for (const auto& x : parts) scale = std::max(scale, x.max_coefficient());
  constexpr double kZero = 1e-10;

  const auto& f1 = parts[1];
  Eigen::Matrix<Complex, 1, 3> w;
  w << f1.coefficient({1, 0, 0}), f1.coefficient({0, 1, 0}), f1.coefficient({0, 0, 1});
  if (w.norm() <= kZero * scale) throw SingularPointError("the surface is singular at the point");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(w), Eigen::ComputeFullV);
  const Vec3c k1 = svd.matrixV().col(1), k2 = svd.matrixV().col(2);

  std::vector<std::vector<Complex>> conds;
  for (int i = 2; i < r; ++i) {
    auto b = on_tangent_line(part(i), k1, k2);
    double m = 0.0;
    for (const auto& c : b) m = std::max(m, std::abs(c));
    if (m > kZero * scale) conds.push_back(std::move(b));
  }
  if (conds.empty()) {
    out.positive_dimensional = true;
    return out;
  }

  // Candidates from the lowest-order condition, filtered by the others.
  UnivariatePolynomial<double> first(conds[0]);
  int at_infinity = 0;
  UnivariatePolynomial<double> chart_poly = first.trimmed(kZero, &at_infinity);
  struct Candidate {
    Vec3c dir;
    int mult;
  };
  std::vector<Candidate> candidates;
  if (at_infinity > 0) candidates.push_back({k1, at_infinity});
  if (chart_poly.degree() >= 1)
    for (const auto& root : find_roots(chart_poly, root_options(config)))
      candidates.push_back({Vec3c(root.value * k1 + k2), root.multiplicity});

  const ComplexPoint pn(p.coords());
  for (const auto& cand : candidates) {
    bool common = true;
    for (std::size_t j = 1; j < conds.size() && common; ++j)
      common = relative_residual(part(static_cast<int>(j) + 2), cand.dir) <= config.residual_tol;
    if (!common) continue;
    ContactDirection d;
    d.multiplicity = cand.mult;
    d.numeric = normalized(cand.dir);
    d.verified = true;
    for (int i = 1; i < r; ++i) d.verified = d.verified && relative_residual(part(i), d.numeric) <= config.residual_tol;
    attach_numeric_line(d, f, pn, d.numeric, out.chart, config);
    out.directions.push_back(std::move(d));
  }
  return out;
}

PolarLocus polar_locus(const Surface& f, const ComplexPoint& q, int r, const RunConfig& config) {
  if (r != 2 && r != 3) throw std::invalid_argument("the polar locus is implemented for r = 2 and r = 3");
  const ComplexForm fc = f.form().cast<Complex>();
  const ComplexForm d1 = fc.directional_derivative(q.coords());
  PolarLocus out;
  out.r = r;
  const std::string salt = to_string(f.form()) + "|" + to_string(q);
  if (r == 2) {
    if (d1.is_zero()) throw ImproperIntersectionError("the first polar vanishes identically");
    PolarCurveReport curve;
    curve.degree = f.degree() * (f.degree() - 1);
    Rng rng(mix_seed(config.seed, "polar-curve|" + salt));
    const ComplexSurface fs(fc);
    for (int k = 0; k < 3; ++k) {
      Vec4c plane;
      for (int i = 0; i < 4; ++i) plane(i) = static_cast<double>(random_nonzero_int(rng, 9));
      curve.samples.push_back(complete_intersection_cycle(ComplexForm::linear(plane), d1, fs, config));
    }
    out.curve = std::move(curve);
    return out;
  }
  const ComplexForm d2 = d1.directional_derivative(q.coords());
  ZeroCycle points(config.point_tol);
  std::vector<ComplexForm> system{fc, d1, d2};
  for (const auto& g : system) {
    if (g.is_zero()) throw ImproperIntersectionError("a polar vanishes identically");
    if (g.degree() == 0) {
      out.points = points;
      return out;
    }
  }
  Rng rng(mix_seed(config.seed, "polar|" + salt));
  const SystemReport report = solve_projective_system(system, rng, config);
  for (const auto& s : report.solutions) {
    points.add(ComplexPoint(Vec4c(s.point)), s.multiplicity);
    out.max_residual = std::max(out.max_residual, s.residual);
  }
  out.points = std::move(points);
  return out;
}

EquivStepReport equiv_step(const Surface& f, const ComplexPoint& q, const RunConfig& config) {
  if (f.degree() != 4) throw std::invalid_argument("equiv_step needs a quartic surface");
  if (f.relative_value(q.coords()) > config.residual_tol)
    throw NotOnSurfaceError("the point does not lie on the surface");
  // Polar points this close to q belong to q's own (non-reduced) cluster.
  constexpr double kSeedRadius = 1e-5;
  constexpr double kThroughQ = 1e-6;
  const double tol = config.point_tol;
  EquivStepReport out;
  const ZeroCycle polar = *polar_locus(f, q, 3, config).points;
  out.polar_degree = polar.degree();
  for (const auto& entry : polar.entries()) {
    const ComplexPoint& p = entry.point;
    if (chordal_distance(p, q) <= kSeedRadius) {
      out.seed_multiplicity += entry.multiplicity;
      continue;
    }
    const std::string where = to_string(p);
    if (entry.multiplicity > 1)
      out.warnings.push_back("polar point " + where + " has multiplicity " + std::to_string(entry.multiplicity));
    ContactResult contact;
    try {
      contact = contact_directions(f, p, 3, config);
    } catch (const std::exception& e) {
      out.warnings.push_back("polar point " + where + ": " + e.what());
      ++out.degenerate_points;
      continue;
    }
    if (contact.positive_dimensional || contact.directions.size() != 2) {
      out.warnings.push_back("polar point " + where + " does not have two contact-3 lines");
      ++out.degenerate_points;
      continue;
    }
    std::array<double, 2> dist{};
    for (std::size_t k = 0; k < 2; ++k) dist[k] = distance_to_line(*contact.directions[k].line, q.coords());
    const std::size_t through = dist[0] <= dist[1] ? 0 : 1;
    if (dist[through] > kThroughQ) {
      out.warnings.push_back("no contact-3 line at " + where + " passes through q");
      continue;
    }
    if (dist[1 - through] <= kThroughQ) {
      out.warnings.push_back("both contact-3 lines at " + where + " pass through q");
      ++out.degenerate_points;
      continue;
    }
    const ComplexLine l1(p, q);
    const ComplexLine l2 = *contact.directions[1 - through].line;
    ZeroCycle c1(tol), c2(tol);
    try {
      c1 = line_surface_cycle(l1, f, config);
      c2 = line_surface_cycle(l2, f, config);
    } catch (const LineOnSurfaceError&) {
      out.warnings.push_back("a contact line at " + where + " lies on the surface");
      ++out.degenerate_points;
      continue;
    }
    ZeroCycle r1 = c1, r2 = c2;
    r1.add(p, -3);
    r2.add(p, -3);
    if (r2.size() != 1 || r2.entries()[0].multiplicity != 1) {
      out.warnings.push_back("the second contact line at " + where + " has residual " + to_string(r2));
      ++out.degenerate_points;
      continue;
    }
    EquivPair pair{r2.entries()[0].point, ContactWitness{p, l1, l2, 3, r1, r2}, false};
    ZeroCycle lhs(tol);
    lhs.add(q, 1);
    lhs.add(pair.q_i, -1);
    pair.verified = cycle_eq(lhs, cycle_sub(c1, c2, tol), tol);
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

OrbitState orbit(const Surface& f, const ComplexPoint& q, int k, int cap, const RunConfig& config) {
  if (k < 0 || cap < 1) throw std::invalid_argument("orbit needs k >= 0 and cap >= 1");
  OrbitState state;
  state.members.push_back({q, -1, std::nullopt, 0});
  state.frontier.push_back(0);
  auto known = [&](const ComplexPoint& x) {
    for (const auto& m : state.members)
      if (chordal_distance(m.point, x) <= config.point_tol) return true;
    return false;
  };
  for (int round = 1; round <= k && !state.frontier.empty() && !state.truncated; ++round) {
    std::vector<int> next;
    for (int index : state.frontier) {
      const ComplexPoint from = state.members[static_cast<std::size_t>(index)].point;
      EquivStepReport step;
      try {
        step = equiv_step(f, from, config);
      } catch (const std::exception& e) {
        state.warnings.push_back("equiv_step at " + to_string(from) + ": " + e.what());
        continue;
      }
      for (auto& w : step.warnings) state.warnings.push_back(std::move(w));
      for (auto& pair : step.pairs) {
        if (known(pair.q_i)) continue;
        if (static_cast<int>(state.members.size()) >= cap) {
          state.truncated = true;
          break;
        }
        state.members.push_back({pair.q_i, index, std::move(pair.witness), round});
        next.push_back(static_cast<int>(state.members.size()) - 1);
      }
      if (state.truncated) break;
    }
    state.frontier = std::move(next);
    state.rounds = round;
  }
  return state;
}

namespace {

double cycle_mismatch(const ZeroCycle& a, const ZeroCycle& b) {
  ZeroCycle d = cycle_sub(a, b, a.tolerance());
  double worst = 0.0;
  for (const auto& e : d.entries()) {
    double nearest = 1.0;
    for (const auto& other : d.entries())
      if (&other != &e && (other.multiplicity > 0) != (e.multiplicity > 0))
        nearest = std::min(nearest, chordal_distance(e.point, other.point));
    worst = std::max(worst, nearest);
  }
  return worst;
}

template <typename LineT, typename PointT>
bool try_lines(const Surface& f, const LineT& l1, const LineT& l2, const PointT& q1, const PointT& q2,
               const RunConfig& config, ResidualSearchReport& out) {
  ZeroCycle c1(config.point_tol), c2(config.point_tol);
  try {
    c1 = line_surface_cycle(l1, f, config);
    c2 = line_surface_cycle(l2, f, config);
  } catch (const LineOnSurfaceError&) {
    return false;
  }
  c1.add(q1, -1);
  c2.add(q2, -1);
  out.best_residual = std::min(out.best_residual, cycle_mismatch(c1, c2));
  if (!c1.effective() || !c2.effective() || !cycle_eq(c1, c2, config.point_tol)) return false;
  out.success = true;
  out.best_residual = 0.0;
  out.residual1 = c1;
  out.residual2 = c2;
  return true;
}

bool separated(const ComplexPoint& a, const ComplexPoint& b) { return chordal_distance(a, b) > 1e-6; }

// Degree 3: (L1 . F) = q1 + 2s and (L2 . F) = q2 + 2s for s with
// D_{q1} f (s) = D_{q2} f (s) = 0.
void search_cubic(const Surface& f, const ComplexPoint& q1, const ComplexPoint& q2, int attempts,
                  const RunConfig& config, ResidualSearchReport& out) {
  const ComplexForm fc = f.form().cast<Complex>();
  std::vector<ComplexForm> system{fc, fc.directional_derivative(q1.coords()), fc.directional_derivative(q2.coords())};
  Rng rng(mix_seed(config.seed, "residual-search|" + to_string(f.form()) + "|" + to_string(q1) + "|" + to_string(q2)));
  for (int attempt = 0; attempt < attempts && !out.success; ++attempt) {
    ++out.attempts_used;
    SystemReport report;
    try {
      report = solve_projective_system(system, rng, config);
    } catch (const ImproperIntersectionError& e) {
      out.reason = e.what();
      return;
    } catch (const SolverError& e) {
      out.reason = e.what();
      continue;
    }
    for (const auto& sol : report.solutions) {
      const ComplexPoint s(Vec4c(sol.point));
      if (!separated(s, q1) || !separated(s, q2)) continue;
      const ComplexLine l1(q1, s), l2(q2, s);
      if (distance_to_line(l1, q2.coords()) <= 1e-8) continue;
      if (try_lines(f, l1, l2, q1, q2, config, out)) {
        out.l1 = l1;
        out.l2 = l2;
        return;
      }
    }
    out.reason = "no tangency point gives matching residuals";
  }
}

void check_pair(const Surface& f, const ComplexPoint& q1, const ComplexPoint& q2, const RunConfig& config) {
  if (f.degree() > 3) throw std::invalid_argument("residual_search needs a surface of degree at most 3");
  if (f.relative_value(q1.coords()) > config.residual_tol || f.relative_value(q2.coords()) > config.residual_tol)
    throw NotOnSurfaceError("the points must lie on the surface");
  if (!separated(q1, q2)) throw std::invalid_argument("residual_search needs two distinct points");
}

}  // namespace

ResidualSearchReport residual_search(const Surface& f, const ComplexPoint& q1, const ComplexPoint& q2, int attempts,
                                     const RunConfig& config) {
  check_pair(f, q1, q2, config);
  ResidualSearchReport out;
  out.best_residual = 1.0;
  if (f.degree() == 3) {
    search_cubic(f, q1, q2, attempts, config, out);
    return out;
  }
  Rng rng(mix_seed(config.seed, "residual-search|" + to_string(f.form()) + "|" + to_string(q1) + "|" + to_string(q2)));
  for (int attempt = 0; attempt < attempts && !out.success; ++attempt) {
    ++out.attempts_used;
    Vec4c aux;
    for (int i = 0; i < 4; ++i) aux(i) = random_complex(rng);
    ComplexPoint r(aux);
    if (f.degree() == 2) {
      // The second point of a random line through q1 is shared with L2.
      ZeroCycle c(config.point_tol);
      try {
        c = line_surface_cycle(ComplexLine(q1, r), f, config);
      } catch (const LineOnSurfaceError&) {
        continue;
      }
      c.add(q1, -1);
      if (c.size() != 1 || c.entries()[0].multiplicity != 1) continue;
      r = c.entries()[0].point;
      if (!separated(r, q1) || !separated(r, q2)) continue;
    } else if (f.relative_value(r.coords()) <= 1e-6) {
      continue;
    }
    const ComplexLine l1(q1, r), l2(q2, r);
    if (try_lines(f, l1, l2, q1, q2, config, out)) {
      out.l1 = l1;
      out.l2 = l2;
    }
  }
  if (!out.success && out.reason.empty()) out.reason = "no attempt produced matching residuals";
  return out;
}

ResidualSearchReport residual_search(const Surface& f, const RationalPoint& q1, const RationalPoint& q2, int attempts,
                                     const RunConfig& config) {
  check_pair(f, q1.to_numeric(), q2.to_numeric(), config);
  if (!is_zero(f.form()(q1.coords())) || !is_zero(f.form()(q2.coords())))
    throw NotOnSurfaceError("the points must lie on the surface");
  if (f.degree() == 3) return residual_search(f, q1.to_numeric(), q2.to_numeric(), attempts, config);
  ResidualSearchReport out;
  out.best_residual = 1.0;
  Rng rng(mix_seed(config.seed, "residual-search|" + to_string(f.form()) + "|" + to_string(q1) + "|" + to_string(q2)));
  for (int attempt = 0; attempt < attempts && !out.success; ++attempt) {
    ++out.attempts_used;
    RationalPoint r = random_point(rng);
    if (f.degree() == 2) {
      if (r.coords() == q1.coords()) continue;
      ZeroCycle c(config.point_tol);
      try {
        c = line_surface_cycle(RationalLine(q1, r), f, config);
      } catch (const LineOnSurfaceError&) {
        continue;
      }
      c.add(q1, -1);
      if (c.size() != 1 || c.entries()[0].multiplicity != 1 || !c.entries()[0].exact) continue;
      r = *c.entries()[0].exact;
    } else if (is_zero(f.form()(r.coords()))) {
      continue;
    }
    if (r.coords() == q1.coords() || r.coords() == q2.coords()) continue;
    const RationalLine l1(q1, r), l2(q2, r);
    if (try_lines(f, l1, l2, q1, q2, config, out)) {
      out.exact1 = l1;
      out.exact2 = l2;
      out.l1 = l1.to_numeric();
      out.l2 = l2.to_numeric();
    }
  }
  if (!out.success && out.reason.empty()) out.reason = "no attempt produced matching residuals";
  return out;
}

XrDimension xr_dimension(int d, int r) {
  if (d < 1 || r < 2) throw std::invalid_argument("xr_dimension needs d >= 1 and r >= 2");
  XrDimension out;
  const long n = d;
  out.dim_fd = (n + 3) * (n + 2) * (n + 1) / 6 - 1;
  out.dim_xr = out.dim_fd - 2L * r + 8;
  out.fibre = 8 - 2L * r;
  out.verdict = out.fibre >= 0 ? "nonempty-expected" : "empty-expected";
  out.shape = out.fibre >= 2 ? "surface" : out.fibre == 1 ? "curve" : out.fibre == 0 ? "finite" : "empty";
  return out;
}

HomogeneousForm quintic_family_member(std::uint64_t seed, Rational* c1, Rational* c2, Rational* c3, bool zero_c2) {
  Rng rng(mix_seed(seed, "quintic-family"));
  const Rational a(random_nonzero_int(rng, 9));
  const Rational b = zero_c2 ? Rational(0) : Rational(random_nonzero_int(rng, 9));
  const Rational c(random_nonzero_int(rng, 9));
  const auto X = HomogeneousForm::variable(0), Y = HomogeneousForm::variable(1), Z = HomogeneousForm::variable(2),
             T = HomogeneousForm::variable(3);
  HomogeneousForm f = a * (X + Y + Z) * pow(T, 4) + b * X * Y * pow(T, 3) + c * X * Y * Z * pow(T, 2);
  for (int deg : {4, 5})
    for (const auto& e : monomials_of_degree(deg)) {
      if (e[3] != 0) continue;
      Exponent lifted = e;
      lifted[3] = 5 - deg;
      f.add_term(lifted, Rational(random_int(rng, -9, 9)));
    }
  if (c1) *c1 = a;
  if (c2) *c2 = b;
  if (c3) *c3 = c;
  return f;
}

QuinticDemoReport quintic_family_demo(const RunConfig& config) {
  const RationalPoint p(0, 0, 0, 1);
  QuinticDemoReport out;
  constexpr int kResamples = 3;
  for (int attempt = 0; attempt <= kResamples; ++attempt) {
    out = QuinticDemoReport{};
    out.resamples = attempt;
    out.f = quintic_family_member(mix_seed(config.seed, std::to_string(attempt)), &out.c1, &out.c2, &out.c3);
    const Surface f(out.f);
    if (f.gradient_at(p.coords()).isZero()) continue;
    out.contact = contact_directions(f, p, 4, config);
    bool generic = !out.contact.positive_dimensional && out.contact.directions.size() == 2;
    for (const auto& d : out.contact.directions) {
      generic = generic && d.contact_order == 4 && d.exact_line;
      if (!d.exact_line) continue;
      ZeroCycle c = line_surface_cycle(*d.exact_line, f, config);
      c.add(p, -4);
      if (c.size() == 1 && c.entries()[0].exact) out.residual_points.push_back(*c.entries()[0].exact);
    }
    out.distinct = out.residual_points.size() == 2 && out.residual_points[0].coords() != out.residual_points[1].coords();
    if (!generic || !out.distinct) continue;
    const auto expr = lines_to_expression(*out.contact.directions[0].exact_line, *out.contact.directions[1].exact_line);
    ZeroCycle x(config.point_tol), y(config.point_tol);
    x.add(out.residual_points[0], 1);
    y.add(out.residual_points[1], 1);
    out.expression_holds = verify_expression(x, y, expr, f, config).holds;
    return out;
  }
  return out;
}

}  // namespace ratequiv
