#include "ratequiv/intersect.hpp"

#include <Eigen/Dense>

#include "ratequiv/linalg.hpp"
#include "ratequiv/qpoly.hpp"

namespace ratequiv {

namespace {

RootOptions root_options(const RunConfig& config) {
  RootOptions o;
  o.cluster_tol = config.cluster_tol;
  o.precision_bits = config.precision;
  return o;
}

Vec4c combine(const Complex& s, const ComplexLine& l) {
  return s * l.first().coords() + l.second().coords();
}

// Random unitary change of the line parameters, so that no intersection
// point sits at or near the point at infinity of the chart.
ComplexLine rotated(const ComplexLine& l, Rng& rng) {
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = random_complex(rng);
  Eigen::Matrix2cd q = Eigen::HouseholderQR<Eigen::Matrix2cd>(m).householderQ();
  Vec4c p = q(0, 0) * l.first().coords() + q(1, 0) * l.second().coords();
  Vec4c r = q(0, 1) * l.first().coords() + q(1, 1) * l.second().coords();
  return ComplexLine(ComplexPoint(p), ComplexPoint(r));
}

std::string salt_of(const ComplexLine& l) { return to_string(l.first()) + to_string(l.second()); }

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, const std::string& salt) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : salt) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

ZeroCycle line_surface_cycle(const RationalLine& l, const Surface& f, const RunConfig& config) {
  auto r = restrict_to_line(f.form(), l);
  if (r.on_surface) throw LineOnSurfaceError("line lies on the surface");
  ZeroCycle out(config.point_tol);
  if (r.infinity_multiplicity > 0) out.add(l.first(), r.infinity_multiplicity);
  QPoly chart(r.coefficients.begin(), r.coefficients.end());
  trim(chart);
  auto parts = squarefree_decomposition(chart);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int mult = static_cast<int>(k) + 1;
    const QPoly& part = parts[k];
    if (degree(part) < 1) continue;
    if (degree(part) == 1) {
      Rational s = -part[0] / part[1];
      Vec4q v;
      for (int i = 0; i < 4; ++i) v(i) = Rational(s * l.first()(i) + l.second()(i));
      out.add(RationalPoint(v), mult);
      continue;
    }
    std::vector<Complex> c;
    for (const auto& x : part) c.push_back(scalar_cast<Complex>(x));
    Vec4c pn, qn;
    for (int i = 0; i < 4; ++i) {
      pn(i) = scalar_cast<Complex>(l.first()(i));
      qn(i) = scalar_cast<Complex>(l.second()(i));
    }
    for (const auto& root : find_roots(UnivariatePolynomial<double>(c), root_options(config)))
      out.add(ComplexPoint(Vec4c(root.value * pn + qn)), mult * root.multiplicity);
  }
  return out;
}

ZeroCycle line_surface_cycle(const ComplexLine& l, const ComplexSurface& f, const RunConfig& config) {
  if (restrict_to_line(f.form(), l).on_surface) throw LineOnSurfaceError("line lies on the surface");
  Rng rng(mix_seed(config.seed, salt_of(l)));
  ComplexLine rl = rotated(l, rng);
  auto r = restrict_to_line(f.form(), rl);
  ZeroCycle out(config.point_tol);
  if (r.infinity_multiplicity > 0) out.add(rl.first(), r.infinity_multiplicity);
  if (r.infinity_multiplicity < f.degree()) {
    for (const auto& root : find_roots(chart_polynomial(r), root_options(config)))
      out.add(ComplexPoint(combine(root.value, rl)), root.multiplicity);
  }
  return out;
}

ZeroCycle line_surface_cycle(const ComplexLine& l, const Surface& f, const RunConfig& config) {
  return line_surface_cycle(l, f.cast<Complex>(), config);
}

RationalLine line_of_planes(const HomogeneousForm& a, const HomogeneousForm& h) {
  if (a.degree() != 1 || h.degree() != 1) throw std::invalid_argument("line_of_planes needs linear forms");
  MatrixQ m(2, 4);
  for (int i = 0; i < 4; ++i) {
    Exponent e{0, 0, 0, 0};
    e[static_cast<std::size_t>(i)] = 1;
    m(0, i) = a.coefficient(e);
    m(1, i) = h.coefficient(e);
  }
  auto kernel = nullspace(m);
  if (kernel.size() != 2) throw ImproperIntersectionError("the two planes do not meet in a line");
  return RationalLine(RationalPoint(Vec4q(kernel[0])), RationalPoint(Vec4q(kernel[1])));
}

ComplexLine line_of_planes(const ComplexForm& a, const ComplexForm& h) {
  if (a.degree() != 1 || h.degree() != 1) throw std::invalid_argument("line_of_planes needs linear forms");
  Eigen::Matrix<Complex, 2, 4> m;
  for (int i = 0; i < 4; ++i) {
    Exponent e{0, 0, 0, 0};
    e[static_cast<std::size_t>(i)] = 1;
    m(0, i) = a.coefficient(e);
    m(1, i) = h.coefficient(e);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(m), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0) || sv(1) <= 1e-10 * sv(0)) throw ImproperIntersectionError("the two planes do not meet in a line");
  Vec4c p = svd.matrixV().col(2), q = svd.matrixV().col(3);
  return ComplexLine(ComplexPoint(p), ComplexPoint(q));
}

namespace {

template <typename Scalar>
ZeroCycle ci_cycle(const Form<Scalar>& a, const Form<Scalar>& h, const SurfaceP3<Scalar>& f, const RunConfig& config,
                   const std::string& salt) {
  if (a.is_zero() || h.is_zero()) throw ImproperIntersectionError("a complete intersection form vanishes");
  ZeroCycle out(config.point_tol);
  if (a.degree() == 0 || h.degree() == 0) return out;
  if (a.degree() == 1 && h.degree() == 1) {
    auto l = line_of_planes(a, h);
    try {
      return line_surface_cycle(l, f, config);
    } catch (const LineOnSurfaceError&) {
      throw ImproperIntersectionError("{a = h = 0} is a line on the surface");
    }
  }
  Rng rng(mix_seed(config.seed, salt));
  std::vector<ComplexForm> system{a.template cast<Complex>(), h.template cast<Complex>(),
                                  f.form().template cast<Complex>()};
  SystemReport report = solve_projective_system(system, rng, config);
  for (const auto& s : report.solutions) out.add(ComplexPoint(Vec4c(s.point)), s.multiplicity);
  return out;
}

}  // namespace

ZeroCycle complete_intersection_cycle(const HomogeneousForm& a, const HomogeneousForm& h, const Surface& f,
                                      const RunConfig& config) {
  return ci_cycle(a, h, f, config, to_string(a) + "|" + to_string(h) + "|" + to_string(f.form()));
}

ZeroCycle complete_intersection_cycle(const ComplexForm& a, const ComplexForm& h, const ComplexSurface& f,
                                      const RunConfig& config) {
  return ci_cycle(a, h, f, config, to_string(a) + "|" + to_string(h) + "|" + to_string(f.form()));
}

}  // namespace ratequiv
