#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "ratequiv/config.hpp"
#include "ratequiv/form.hpp"
#include "ratequiv/random.hpp"

namespace ratequiv {

/// The solution set of a system is not finite.
class ImproperIntersectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Path tracking did not produce a consistent solution count.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SystemSolution {
  /// Homogeneous coordinates, largest entry scaled to 1; length n + 1.
  Eigen::VectorXcd point;
  int multiplicity = 1;
  /// Endpoint where the Jacobian is rank deficient (found by the endgame).
  bool singular = false;
  /// Largest normalized residual over the equations.
  double residual = 0.0;
};

struct SystemReport {
  std::vector<SystemSolution> solutions;
  int paths = 0;
  int attempts = 0;
  /// Singular clusters had to be joined across more than the usual radius,
  /// or kept with winding numbers that do not add up (see
  /// solve_projective_system).
  bool repaired = false;
};

/// Solves n homogeneous equations in the first n + 1 of the variables
/// (X, Y, Z, T), n in {1, 2, 3}, counting solutions with multiplicity.
///
/// Total-degree homotopy on a random affine patch with a random gamma; paths
/// ending at singular points go through a Cauchy endgame, and the number of
/// paths converging to a point is its multiplicity. Whenever the path count
/// is inconsistent the whole solve is redone with fresh random choices.
/// Near a point of high multiplicity some cycles can have endgame estimates
/// that stay well away from the point; such stragglers are joined to the
/// nearest singular cluster, and a repaired solve is returned only if a
/// few clean attempts have failed.
/// Throws ImproperIntersectionError when the solution set is not finite.
SystemReport solve_projective_system(const std::vector<ComplexForm>& forms, Rng& rng,
                                     const RunConfig& config = {});

/// Largest |f_i(x)| / (sum |coeffs| * |x|^d).
double normalized_residual(const std::vector<ComplexForm>& forms, const Eigen::VectorXcd& x);

}  // namespace ratequiv
