#include "ratequiv/random.hpp"

#include <algorithm>

#include "ratequiv/linalg.hpp"

namespace ratequiv {

HomogeneousForm random_form(Rng& rng, int degree, long height) {
  HomogeneousForm f(degree);
  for (const auto& e : monomials_of_degree(degree)) f.add_term(e, Rational(random_int(rng, -height, height)));
  if (f.is_zero()) f.add_term({degree, 0, 0, 0}, Rational(1));
  return f;
}

RationalPoint random_point(Rng& rng, long height) {
  Vec4q v;
  for (int i = 0; i < 4; ++i) v(i) = Rational(random_nonzero_int(rng, height));
  return RationalPoint(v);
}

HomogeneousForm random_form_through(Rng& rng, int degree, const std::vector<RationalPoint>& points,
                                    long height) {
  auto monomials = monomials_of_degree(degree);
  if (points.size() >= monomials.size())
    throw std::invalid_argument("too many prescribed points for the form degree");
  for (int attempt = 0; attempt < 64; ++attempt) {
    HomogeneousForm f = random_form(rng, degree, height);
    if (points.empty()) return f;
    // Free monomials whose coefficients absorb the conditions.
    std::vector<std::size_t> order(monomials.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size() - 1; i > 0; --i)
      std::swap(order[i], order[static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(i)))]);
    const auto k = static_cast<Eigen::Index>(points.size());
    MatrixQ m(k, k);
    VectorQ rhs(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const Vec4q& p = points[static_cast<std::size_t>(i)].coords();
      HomogeneousForm rest = f;
      for (Eigen::Index j = 0; j < k; ++j) {
        const Exponent& e = monomials[order[static_cast<std::size_t>(j)]];
        m(i, j) = HomogeneousForm::monomial(e, Rational(1))(p);
      }
      for (Eigen::Index j = 0; j < k; ++j) {
        const Exponent& e = monomials[order[static_cast<std::size_t>(j)]];
        rest.add_term(e, Rational(-f.coefficient(e)));
      }
      rhs(i) = Rational(-rest(p));
    }
    if (rank(m) < k) continue;
    auto x = solve(m, rhs);
    if (!x) continue;
    HomogeneousForm g(degree);
    for (const auto& [e, c] : f.terms()) g.add_term(e, c);
    for (Eigen::Index j = 0; j < k; ++j) {
      const Exponent& e = monomials[order[static_cast<std::size_t>(j)]];
      g.add_term(e, Rational(-f.coefficient(e)));
      g.add_term(e, (*x)(j));
    }
    if (g.is_zero()) continue;
    return g;
  }
  throw std::runtime_error("could not place a random form through the given points");
}

}  // namespace ratequiv
