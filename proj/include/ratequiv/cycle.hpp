#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratequiv/point.hpp"

namespace ratequiv {

struct CycleEntry {
  ComplexPoint point;
  int multiplicity = 0;
  /// Present when the point is known exactly.
  std::optional<RationalPoint> exact;
};

/// Finite formal sum of points of P^3 with nonzero integer multiplicities.
/// Points closer than the identification tolerance (chordal distance) are
/// merged on insertion; entries are kept in canonical coordinate order.
class ZeroCycle {
 public:
  explicit ZeroCycle(double point_tol = 1e-7) : tol_(point_tol) {}

  void add(const ComplexPoint& p, int multiplicity);
  void add(const RationalPoint& p, int multiplicity);
  void add(const ZeroCycle& other, int sign = 1);

  const std::vector<CycleEntry>& entries() const { return entries_; }
  double tolerance() const { return tol_; }
  int degree() const;
  bool effective() const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  /// Multiplicity of the entry identified with p, 0 if none.
  int multiplicity_at(const ComplexPoint& p) const;
  ZeroCycle negated() const;

 private:
  void insert(const ComplexPoint& p, int multiplicity, const std::optional<RationalPoint>& exact);

  double tol_;
  std::vector<CycleEntry> entries_;
};

ZeroCycle cycle_add(const ZeroCycle& a, const ZeroCycle& b, double tol);
ZeroCycle cycle_sub(const ZeroCycle& a, const ZeroCycle& b, double tol);
bool cycle_eq(const ZeroCycle& a, const ZeroCycle& b, double tol);

inline ZeroCycle operator+(const ZeroCycle& a, const ZeroCycle& b) { return cycle_add(a, b, a.tolerance()); }
inline ZeroCycle operator-(const ZeroCycle& a, const ZeroCycle& b) { return cycle_sub(a, b, a.tolerance()); }

/// Canonical text "[m*](x:y:z:t) + ..." for logs and diagnostics.
std::string to_string(const ZeroCycle& z);

}  // namespace ratequiv
