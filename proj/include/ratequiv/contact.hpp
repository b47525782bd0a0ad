#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratequiv/affine.hpp"
#include "ratequiv/config.hpp"
#include "ratequiv/cycle.hpp"
#include "ratequiv/line.hpp"
#include "ratequiv/surd.hpp"
#include "ratequiv/surface.hpp"

namespace ratequiv {

class NotOnSurfaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The gradient of f vanishes at the point.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A direction (a : b : c) at p on the chart, i.e. the point (a : b : c : 0)
/// in chart coordinates.
struct ContactDirection {
  /// Largest entry scaled to 1.
  Vec3c numeric;
  std::optional<Vec3q> exact;
  /// Conjugate directions over Q(sqrt d) keep their exact coordinates here.
  std::optional<std::array<QuadraticSurd, 3>> surd;
  /// Multiplicity as a root of the contact equations on the tangent line.
  int multiplicity = 1;
  /// Taylor parts 1 .. r-1 vanish in the direction: exactly for exact and
  /// surd directions, to the residual tolerance otherwise.
  bool verified = false;
  /// Line through p in this direction, in the original coordinates.
  std::optional<ComplexLine> line;
  std::optional<RationalLine> exact_line;
  /// Multiplicity of p in (L . F); -1 when the line lies on F.
  int contact_order = 0;
};

struct ContactResult {
  /// The contact equations cut out a curve of directions (e.g. r = 2).
  bool positive_dimensional = false;
  std::vector<ContactDirection> directions;
  /// chart[i] is the original coordinate placed at position i; T is moved
  /// away only when p has T = 0 (or tiny T in numeric mode).
  std::array<int, 4> chart{0, 1, 2, 3};
};

/// Lines through p with (L . F) >= r p, via the Taylor parts
/// (f_1)_p = ... = (f_{r-1})_p = 0 restricted to the tangent line of
/// directions. Throws NotOnSurfaceError, SingularPointError.
ContactResult contact_directions(const Surface& f, const RationalPoint& p, int r, const RunConfig& config = {});
ContactResult contact_directions(const Surface& f, const ComplexPoint& p, int r, const RunConfig& config = {});

struct PolarCurveReport {
  /// Degree d (d - 1) of {f = D_q f = 0}.
  int degree = 0;
  /// Sections by random planes; each has `degree` points.
  std::vector<ZeroCycle> samples;
};

struct PolarLocus {
  int r = 3;
  /// r = 3: the 0-cycle {f = D_q f = D_q^2 f = 0}.
  std::optional<ZeroCycle> points;
  /// r = 2: the polar curve.
  std::optional<PolarCurveReport> curve;
  /// Largest normalized residual of the defining equations over the points.
  double max_residual = 0.0;
};

/// Points p of F with a line through p and q of contact order r at p.
/// r = 3 gives a cycle of degree d (d - 1) (d - 2); r = 2 a curve report.
PolarLocus polar_locus(const Surface& f, const ComplexPoint& q, int r, const RunConfig& config = {});

struct ContactWitness {
  ComplexPoint p;
  ComplexLine l1, l2;
  int r = 3;
  /// (L_i . F) - r p.
  ZeroCycle residual1, residual2;
};

struct EquivPair {
  ComplexPoint q_i;
  ContactWitness witness;
  /// q - q_i = (L1 . F) - (L2 . F) under cycle_eq.
  bool verified = false;
};

struct EquivStepReport {
  std::vector<EquivPair> pairs;
  /// Degree of the polar cycle and the part of it sitting at q itself.
  int polar_degree = 0;
  int seed_multiplicity = 0;
  /// Polar points skipped, with the reason.
  std::vector<std::string> warnings;
  int degenerate_points = 0;
};

/// For q on a quartic F: for each polar point p != q the contact-3 line
/// through q is L1, the other one is L2, and q_i is the residual point of L2.
EquivStepReport equiv_step(const Surface& f, const ComplexPoint& q, const RunConfig& config = {});

struct OrbitMember {
  ComplexPoint point;
  /// Index of the member this one was reached from; -1 for the seed.
  int parent = -1;
  std::optional<ContactWitness> witness;
  int round = 0;
};

struct OrbitState {
  std::vector<OrbitMember> members;
  /// Members not yet expanded.
  std::vector<int> frontier;
  int rounds = 0;
  bool truncated = false;
  std::vector<std::string> warnings;
};

/// Breadth-first closure of equiv_step for up to k rounds or cap points.
OrbitState orbit(const Surface& f, const ComplexPoint& q, int k, int cap, const RunConfig& config = {});

struct ResidualSearchReport {
  bool success = false;
  std::optional<ComplexLine> l1, l2;
  std::optional<RationalLine> exact1, exact2;
  /// (L_i . F) - q_i.
  ZeroCycle residual1, residual2;
  /// Chordal mismatch of the best candidate; 0 on success, 1 when no
  /// candidate line pair was formed.
  double best_residual = 0.0;
  int attempts_used = 0;
  std::string reason;
};

/// Lines L1 through q1 and L2 through q2 on a surface of degree at most 3
/// with (L1 . F) - q1 = (L2 . F) - q2. The two lines always meet, so they
/// convert to an expression with s = e = 1. Failure is inconclusive.
ResidualSearchReport residual_search(const Surface& f, const ComplexPoint& q1, const ComplexPoint& q2,
                                     int attempts, const RunConfig& config = {});
ResidualSearchReport residual_search(const Surface& f, const RationalPoint& q1, const RationalPoint& q2,
                                     int attempts, const RunConfig& config = {});

struct XrDimension {
  long dim_fd = 0;
  long dim_xr = 0;
  long fibre = 0;
  /// "nonempty-expected" or "empty-expected".
  std::string verdict;
  /// "surface", "curve", "finite" or "empty".
  std::string shape;
};

XrDimension xr_dimension(int d, int r);

struct QuinticDemoReport {
  HomogeneousForm f;
  Rational c1, c2, c3;
  ContactResult contact;
  std::vector<RationalPoint> residual_points;
  bool distinct = false;
  /// q1 - q2 = (L1 . F) - (L2 . F) checked with verify_expression.
  bool expression_holds = false;
  int resamples = 0;
};

/// c1 (X+Y+Z) T^4 + c2 XY T^3 + c3 XYZ T^2 + f4 T + f5 with f4, f5 forms in
/// X, Y, Z; p = (0:0:0:1) is a smooth point with two lines of contact 4.
HomogeneousForm quintic_family_member(std::uint64_t seed, Rational* c1 = nullptr, Rational* c2 = nullptr,
                                      Rational* c3 = nullptr, bool zero_c2 = false);

QuinticDemoReport quintic_family_demo(const RunConfig& config = {});

}  // namespace ratequiv
