#pragma once

#include "ratequiv/config.hpp"
#include "ratequiv/cycle.hpp"
#include "ratequiv/line.hpp"
#include "ratequiv/surface.hpp"
#include "ratequiv/system.hpp"
#include "ratequiv/univariate.hpp"

namespace ratequiv {

/// The line lies on the surface, so (L . F) is not a 0-cycle.
class LineOnSurfaceError : public ImproperIntersectionError {
 public:
  using ImproperIntersectionError::ImproperIntersectionError;
};

/// The chart polynomial of a restriction (numeric), for root finding.
template <typename Scalar>
UnivariatePolynomial<double> chart_polynomial(const LineRestriction<Scalar>& r) {
  std::vector<Complex> c;
  const int top = static_cast<int>(r.coefficients.size()) - 1 - r.infinity_multiplicity;
  for (int k = 0; k <= top; ++k) c.push_back(scalar_cast<Complex>(r.coefficients[static_cast<std::size_t>(k)]));
  return UnivariatePolynomial<double>(std::move(c));
}

/// (L . F) with multiplicities; degree is always deg F. For rational data the
/// multiplicities come from an exact squarefree decomposition.
ZeroCycle line_surface_cycle(const RationalLine& l, const Surface& f, const RunConfig& config = {});
ZeroCycle line_surface_cycle(const ComplexLine& l, const ComplexSurface& f, const RunConfig& config = {});
ZeroCycle line_surface_cycle(const ComplexLine& l, const Surface& f, const RunConfig& config = {});

/// The line {a = h = 0} for two independent linear forms.
RationalLine line_of_planes(const HomogeneousForm& a, const HomogeneousForm& h);
ComplexLine line_of_planes(const ComplexForm& a, const ComplexForm& h);

/// [{a = h = f = 0}], of degree deg a * deg h * deg f when finite.
ZeroCycle complete_intersection_cycle(const HomogeneousForm& a, const HomogeneousForm& h, const Surface& f,
                                      const RunConfig& config = {});
ZeroCycle complete_intersection_cycle(const ComplexForm& a, const ComplexForm& h, const ComplexSurface& f,
                                      const RunConfig& config = {});

/// Deterministic seed for an operation from the run seed and its inputs.
std::uint64_t mix_seed(std::uint64_t seed, const std::string& salt);

}  // namespace ratequiv
