#include "ratequiv/calculus.hpp"

#include <tuple>

#include <Eigen/Dense>

#include "ratequiv/intersect.hpp"
#include "ratequiv/linalg.hpp"

namespace ratequiv {

namespace {

template <typename Scalar>
ExpressionVerdict verify_impl(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Scalar>& expr,
                              const SurfaceP3<Scalar>& f, const RunConfig& config) {
  if (x.degree() != y.degree()) throw std::invalid_argument("verify_expression needs cycles of equal degree");
  ExpressionVerdict v;
  v.vx = complete_intersection_cycle(expr.a(), expr.h(), f, config);
  v.vy = complete_intersection_cycle(expr.b(), expr.h(), f, config);
  const double tol = config.point_tol;
  v.residual = cycle_sub(cycle_sub(x, y, tol), cycle_sub(v.vx, v.vy, tol), tol);
  v.holds = v.residual.empty();
  return v;
}

HomogeneousForm primitive_linear(const VectorQ& c) {
  Integer l = 1;
  for (int i = 0; i < 4; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c(i).get_den_mpz_t());
  std::array<Integer, 4> n;
  Integer g = 0;
  for (int i = 0; i < 4; ++i) {
    n[static_cast<std::size_t>(i)] = c(i).get_num() * (l / c(i).get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n[static_cast<std::size_t>(i)].get_mpz_t());
  }
  // Sign: first nonzero coefficient positive.
  for (int i = 0; i < 4; ++i)
    if (sgn(n[static_cast<std::size_t>(i)]) != 0) {
      if (sgn(n[static_cast<std::size_t>(i)]) < 0) g = -g;
      break;
    }
  Vec4q v;
  for (int i = 0; i < 4; ++i) v(i) = Rational(n[static_cast<std::size_t>(i)] / g);
  return HomogeneousForm::linear(v);
}

MatrixQ rows_of(std::initializer_list<const RationalPoint*> pts) {
  MatrixQ m(static_cast<Eigen::Index>(pts.size()), 4);
  Eigen::Index r = 0;
  for (const auto* p : pts) {
    for (int i = 0; i < 4; ++i) m(r, i) = p->coords()(i);
    ++r;
  }
  return m;
}

// A plane through l other than h.
VectorQ other_plane(const RationalLine& l, const VectorQ& h) {
  for (const auto& k : nullspace(rows_of({&l.first(), &l.second()}))) {
    MatrixQ pair(2, 4);
    pair.row(0) = k.transpose();
    pair.row(1) = h.transpose();
    if (rank(pair) == 2) return k;
  }
  throw std::logic_error("a line lies in a single plane");
}

Vec4c other_plane(const ComplexLine& l, const Vec4c& h) {
  Eigen::Matrix<Complex, 2, 4> m;
  m.row(0) = l.first().coords().transpose();
  m.row(1) = l.second().coords().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(m), Eigen::ComputeFullV);
  Vec4c best = Vec4c::Zero();
  for (int c = 2; c < 4; ++c) {
    Vec4c v = svd.matrixV().col(c);
    Vec4c w = v - h.dot(v) * h;
    if (w.norm() > best.norm()) best = w;
  }
  return best / best.norm();
}

}  // namespace

ExpressionVerdict verify_expression(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Rational>& expr,
                                    const Surface& f, const RunConfig& config) {
  return verify_impl(x, y, expr, f, config);
}

ExpressionVerdict verify_expression(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Complex>& expr,
                                    const ComplexSurface& f, const RunConfig& config) {
  return verify_impl(x, y, expr, f, config);
}

CIExpression<Rational> lines_to_expression(const RationalLine& l1, const RationalLine& l2) {
  auto kernel = nullspace(rows_of({&l1.first(), &l1.second(), &l2.first(), &l2.second()}));
  if (kernel.empty()) throw SkewLinesError("the lines are skew");
  if (kernel.size() > 1) throw std::invalid_argument("the lines coincide");
  const VectorQ& h = kernel[0];
  return CIExpression<Rational>(primitive_linear(other_plane(l1, h)), primitive_linear(other_plane(l2, h)),
                                primitive_linear(h));
}

CIExpression<Complex> lines_to_expression(const ComplexLine& l1, const ComplexLine& l2) {
  Eigen::Matrix4cd m;
  m.row(0) = l1.first().coords().transpose();
  m.row(1) = l1.second().coords().transpose();
  m.row(2) = l2.first().coords().transpose();
  m.row(3) = l2.second().coords().transpose();
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  constexpr double kRankTol = 1e-9;
  if (sv(3) > kRankTol * sv(0)) throw SkewLinesError("the lines are skew");
  if (sv(2) <= kRankTol * sv(0)) throw std::invalid_argument("the lines coincide");
  Vec4c h = svd.matrixV().col(3);
  return CIExpression<Complex>(ComplexForm::linear(other_plane(l1, h)), ComplexForm::linear(other_plane(l2, h)),
                               ComplexForm::linear(h));
}

namespace {

template <typename Scalar>
CIExpression<Scalar> rule_2(const CIExpression<Scalar>& expr, const Form<Scalar>& g, const SurfaceP3<Scalar>& f,
                            const RunConfig& config) {
  if (g.is_zero()) throw ImproperIntersectionError("g vanishes identically");
  complete_intersection_cycle(g, expr.h(), f, config);
  return CIExpression<Scalar>(expr.a() * g, expr.b() * g, expr.h());
}

template <typename Scalar>
CIExpression<Scalar> rule_3(const CIExpression<Scalar>& expr, int rr, const Scalar& alpha, const Scalar& beta,
                            const SurfaceP3<Scalar>& f, const RunConfig& config) {
  if (rr < 1) throw std::invalid_argument("the pencil multiplier must be positive");
  if (is_zero(alpha) || is_zero(beta))
    throw ImproperIntersectionError("the pencil member shares its zero set with a or b");
  complete_intersection_cycle(expr.a(), expr.b(), f, config);
  Form<Scalar> c = expr.a() * alpha + expr.b() * beta;
  if (c.is_zero()) throw ImproperIntersectionError("the pencil member vanishes");
  return CIExpression<Scalar>(expr.a(), expr.b(), expr.h() * pow(c, rr));
}

template <typename Scalar>
bool same_difference_impl(const CIExpression<Scalar>& e1, const CIExpression<Scalar>& e2,
                          const SurfaceP3<Scalar>& f, const RunConfig& config) {
  const double tol = config.point_tol;
  ZeroCycle d1 = cycle_sub(complete_intersection_cycle(e1.a(), e1.h(), f, config),
                           complete_intersection_cycle(e1.b(), e1.h(), f, config), tol);
  ZeroCycle d2 = cycle_sub(complete_intersection_cycle(e2.a(), e2.h(), f, config),
                           complete_intersection_cycle(e2.b(), e2.h(), f, config), tol);
  return cycle_eq(d1, d2, tol);
}

}  // namespace

CIExpression<Rational> nesting_rule_2(const CIExpression<Rational>& expr, const HomogeneousForm& g,
                                      const Surface& f, const RunConfig& config) {
  return rule_2(expr, g, f, config);
}

CIExpression<Complex> nesting_rule_2(const CIExpression<Complex>& expr, const ComplexForm& g,
                                     const ComplexSurface& f, const RunConfig& config) {
  return rule_2(expr, g, f, config);
}

CIExpression<Rational> nesting_rule_3(const CIExpression<Rational>& expr, int rr, const Rational& alpha,
                                      const Rational& beta, const Surface& f, const RunConfig& config) {
  return rule_3(expr, rr, alpha, beta, f, config);
}

CIExpression<Complex> nesting_rule_3(const CIExpression<Complex>& expr, int rr, const Complex& alpha,
                                     const Complex& beta, const ComplexSurface& f, const RunConfig& config) {
  return rule_3(expr, rr, alpha, beta, f, config);
}

CIExpression<Rational> nesting_rule_3(const CIExpression<Rational>& expr, int rr, const Surface& f,
                                      const RunConfig& config) {
  Rng rng(mix_seed(config.seed, "pencil"));
  Rational alpha(random_nonzero_int(rng, 9)), beta(random_nonzero_int(rng, 9));
  return rule_3(expr, rr, alpha, beta, f, config);
}

bool same_difference(const CIExpression<Rational>& e1, const CIExpression<Rational>& e2, const Surface& f,
                     const RunConfig& config) {
  return same_difference_impl(e1, e2, f, config);
}

bool same_difference(const CIExpression<Complex>& e1, const CIExpression<Complex>& e2, const ComplexSurface& f,
                     const RunConfig& config) {
  return same_difference_impl(e1, e2, f, config);
}

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

long next_prime(long n, long avoid) {
  while (!is_prime(n) || n == avoid) ++n;
  return n;
}

// Returns (x, y) with a x + b y = gcd(a, b).
std::pair<long, long> bezout(long a, long b) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  return {x0, y0};
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

DegreeMatch match_multidegrees(const MultiDegree& m1, const MultiDegree& m2) {
  DegreeMatch out;
  if (m1 == m2) {
    out.common = m1;
    out.identity = true;
    return out;
  }
  out.p1 = next_prime(m1.s + 1, 0);
  out.p2 = next_prime(m2.s + 1, out.p1);
  out.t1 = out.p1 - m1.s;
  out.t2 = out.p2 - m2.s;
  // r1 p1 - r2 p2 = e2 - e1, so r1 = lambda delta + k p2, r2 = -mu delta + k p1.
  const long delta = m2.e - m1.e;
  auto [lambda, mu] = bezout(out.p1, out.p2);
  const long base1 = lambda * delta, base2 = -mu * delta;
  // Smallest k with base1 + k p2 >= 1 and base2 + k p1 >= 1.
  long k = std::max(floor_div(-base1, out.p2) + 1, floor_div(-base2, out.p1) + 1);
  out.r1 = base1 + k * out.p2;
  out.r2 = base2 + k * out.p1;
  const long e = m1.e + out.r1 * out.p1;
  const long s = std::max(out.p1, out.p2);
  out.pad1 = s - out.p1;
  out.pad2 = s - out.p2;
  out.common = MultiDegree(s, e);
  return out;
}

}  // namespace ratequiv
