#include "ratequiv/chow.hpp"

#include <map>
#include <optional>

#include "ratequiv/intersect.hpp"
#include "ratequiv/linalg.hpp"
#include "ratequiv/random.hpp"

namespace ratequiv {

ChowEvaluator::ChowEvaluator(ZeroCycle z) : z_(std::move(z)) {
  if (!z_.effective()) throw std::invalid_argument("the Chow polynomial needs an effective cycle");
}

std::string to_string(MacaulayResult::Path path) {
  switch (path) {
    case MacaulayResult::Path::determinant:
      return "determinant";
    case MacaulayResult::Path::quotient:
      return "quotient";
    case MacaulayResult::Path::perturbed:
      return "perturbed";
  }
  return "unknown";
}

std::string to_string(StarCheckReport::Verdict v) {
  switch (v) {
    case StarCheckReport::Verdict::holds:
      return "holds";
    case StarCheckReport::Verdict::fails:
      return "fails";
    case StarCheckReport::Verdict::degenerate:
      return "degenerate";
  }
  return "unknown";
}

namespace {

struct MacaulayMatrices {
  MatrixQ full;
  MatrixQ extraneous;
};

// Rows are indexed like the columns: the row of monomial x^alpha is
// x^(alpha - d_i e_i) * f_i for the first i with x_i^{d_i} | x^alpha.
MacaulayMatrices macaulay_matrices(const std::array<HomogeneousForm, 4>& f) {
  int big = -3;
  std::array<int, 4> d{};
  for (std::size_t i = 0; i < 4; ++i) {
    d[i] = f[i].degree();
    big += d[i];
  }
  const auto monos = monomials_of_degree(big);
  std::map<Exponent, int> column;
  for (std::size_t k = 0; k < monos.size(); ++k) column[monos[k]] = static_cast<int>(k);
  const auto n = static_cast<Eigen::Index>(monos.size());
  MatrixQ m = MatrixQ::Zero(n, n);
  std::vector<int> non_reduced;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    const Exponent& alpha = monos[k];
    int first = -1, divisible = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (alpha[i] >= d[i]) {
        if (first < 0) first = static_cast<int>(i);
        ++divisible;
      }
    if (divisible >= 2) non_reduced.push_back(static_cast<int>(k));
    Exponent shift = alpha;
    shift[static_cast<std::size_t>(first)] -= d[static_cast<std::size_t>(first)];
    for (const auto& [e, c] : f[static_cast<std::size_t>(first)].terms()) {
      Exponent target{e[0] + shift[0], e[1] + shift[1], e[2] + shift[2], e[3] + shift[3]};
      m(static_cast<Eigen::Index>(k), column.at(target)) = c;
    }
  }
  const auto r = static_cast<Eigen::Index>(non_reduced.size());
  MatrixQ sub(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      sub(i, j) = m(non_reduced[static_cast<std::size_t>(i)], non_reduced[static_cast<std::size_t>(j)]);
  return {std::move(m), std::move(sub)};
}

std::optional<Rational> quotient(const std::array<HomogeneousForm, 4>& f, int* rows = nullptr) {
  auto mats = macaulay_matrices(f);
  if (rows) *rows = static_cast<int>(mats.full.rows());
  Rational den = mats.extraneous.rows() == 0 ? Rational(1) : determinant(mats.extraneous);
  if (is_zero(den)) return std::nullopt;
  return Rational(determinant(mats.full) / den);
}

Rational lagrange_at_zero(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  Rational acc = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational w = ys[i];
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) w *= Rational(-xs[j] / (xs[i] - xs[j]));
    acc += w;
  }
  return acc;
}

}  // namespace

MacaulayResult macaulay_resultant(const std::array<HomogeneousForm, 4>& forms, long capacity) {
  long product = 1;
  for (const auto& f : forms) {
    if (f.is_zero()) {
      MacaulayResult r;
      r.value = 0;
      return r;
    }
    product *= std::max(f.degree(), 1);
  }
  if (product > capacity)
    throw CapacityError("degree product " + std::to_string(product) + " exceeds the Macaulay capacity " +
                        std::to_string(capacity));
  // A constant form c gives c^(product of the other degrees).
  for (std::size_t i = 0; i < 4; ++i) {
    if (forms[i].degree() != 0) continue;
    long others = 1;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) others *= forms[j].degree();
    MacaulayResult r;
    mpq_class c = forms[i].coefficient({0, 0, 0, 0});
    mpz_pow_ui(r.value.get_num_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(others));
    mpz_pow_ui(r.value.get_den_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(others));
    r.value.canonicalize();
    return r;
  }

  MacaulayResult out;
  bool linear = true;
  for (const auto& f : forms) linear = linear && f.degree() == 1;
  if (auto v = quotient(forms, &out.rows)) {
    out.value = *v;
    out.path = linear ? MacaulayResult::Path::determinant : MacaulayResult::Path::quotient;
    return out;
  }

  // Res(f + eps x^d) is a polynomial in eps of degree at most sum_i prod_{j != i} d_j.
  long k = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    long p = 1;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) p *= forms[j].degree();
    k += p;
  }
  std::vector<Rational> xs, ys;
  for (long eps = 1; static_cast<long>(xs.size()) <= k; ++eps) {
    std::array<HomogeneousForm, 4> g = forms;
    for (std::size_t i = 0; i < 4; ++i) {
      Exponent e{0, 0, 0, 0};
      e[i] = forms[i].degree();
      g[i] += HomogeneousForm::monomial(e, Rational(eps));
    }
    if (auto v = quotient(g)) {
      xs.emplace_back(eps);
      ys.push_back(*v);
    }
  }
  out.value = lagrange_at_zero(xs, ys);
  out.path = MacaulayResult::Path::perturbed;
  return out;
}

namespace {

Vec4q random_dual(Rng& rng) {
  Vec4q g;
  do {
    for (int i = 0; i < 4; ++i) g(i) = Rational(random_int(rng, -9, 9));
  } while (g.isZero());
  return g;
}

}  // namespace

StarCheckReport star_check_cycles(const ZeroCycle& x, const ZeroCycle& y, const ZeroCycle& vx,
                                  const ZeroCycle& vy, const RunConfig& config) {
  StarCheckReport report;
  if (x.degree() != y.degree()) throw std::invalid_argument("star_check needs cycles of equal degree");
  if (!x.effective() || !y.effective() || !vx.effective() || !vy.effective()) {
    report.reason = "a cycle is not effective";
    return report;
  }
  // The complete intersections have equal degree because deg a = deg b, so
  // both sides are forms of the same degree and g may be normalized.
  ZeroCycle lhs = x + vy, rhs = y + vx;
  ChowEvaluator left(lhs), right(rhs);
  constexpr double kDegenerate = 1e-6;
  constexpr double kRatioTol = 1e-6;
  Rng rng(mix_seed(config.seed, "star-check"));
  const int max_draws = 4 * config.trials;
  int draws = 0;
  while (report.samples_used < config.trials && draws < max_draws) {
    ++draws;
    Vec4q gq = random_dual(rng);
    Vec4c gc;
    for (int i = 0; i < 4; ++i) gc(i) = scalar_cast<Complex>(gq(i));
    DualLinearForm<Complex> g(Vec4c(gc / gc.norm()));
    if (left.min_relative_factor(g) < kDegenerate || right.min_relative_factor(g) < kDegenerate) {
      ++report.discarded;
      continue;
    }
    Complex r = left(g) / right(g);
    if (report.samples_used == 0) {
      report.ratio = r;
    } else {
      report.max_deviation = std::max(report.max_deviation, std::abs(r - report.ratio) / std::abs(report.ratio));
    }
    ++report.samples_used;
  }
  if (report.samples_used < std::max(2, config.trials / 2)) {
    report.verdict = StarCheckReport::Verdict::degenerate;
    report.reason = "too few samples avoid the cycles";
  } else if (report.max_deviation <= kRatioTol) {
    report.verdict = StarCheckReport::Verdict::holds;
  } else {
    report.verdict = StarCheckReport::Verdict::fails;
    report.reason = "the ratio is not constant in g";
  }
  return report;
}

namespace {

template <typename Scalar>
StarCheckReport star_check_impl(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Scalar>& expr,
                                const SurfaceP3<Scalar>& f, const RunConfig& config) {
  if (x.degree() != y.degree()) throw std::invalid_argument("star_check needs cycles of equal degree");
  ZeroCycle vx(config.point_tol), vy(config.point_tol);
  try {
    vx = complete_intersection_cycle(expr.a(), expr.h(), f, config);
    vy = complete_intersection_cycle(expr.b(), expr.h(), f, config);
  } catch (const ImproperIntersectionError& e) {
    StarCheckReport r;
    r.reason = e.what();
    return r;
  } catch (const SolverError& e) {
    StarCheckReport r;
    r.reason = e.what();
    return r;
  }
  return star_check_cycles(x, y, vx, vy, config);
}

}  // namespace

StarCheckReport star_check(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Rational>& expr,
                           const Surface& f, const RunConfig& config) {
  return star_check_impl(x, y, expr, f, config);
}

StarCheckReport star_check(const ZeroCycle& x, const ZeroCycle& y, const CIExpression<Complex>& expr,
                           const ComplexSurface& f, const RunConfig& config) {
  return star_check_impl(x, y, expr, f, config);
}

}  // namespace ratequiv
