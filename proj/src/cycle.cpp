#include "ratequiv/cycle.hpp"

#include <algorithm>

namespace ratequiv {

namespace {

bool coordinate_less(const ComplexPoint& a, const ComplexPoint& b) {
  for (int i = 0; i < 4; ++i) {
    double ar = a(i).real(), br = b(i).real();
    if (std::abs(ar - br) > 1e-9) return ar < br;
    double ai = a(i).imag(), bi = b(i).imag();
    if (std::abs(ai - bi) > 1e-9) return ai < bi;
  }
  return false;
}

}  // namespace

void ZeroCycle::insert(const ComplexPoint& p, int multiplicity, const std::optional<RationalPoint>& exact) {
  if (multiplicity == 0) return;
  for (auto it = entries_.begin(); it != entries_.end(); ++it) {
    if (chordal_distance(it->point, p) > tol_) continue;
    it->multiplicity += multiplicity;
    if (!it->exact && exact) {
      it->exact = exact;
      it->point = exact->to_numeric();
    }
    if (it->multiplicity == 0) entries_.erase(it);
    return;
  }
  CycleEntry e{exact ? exact->to_numeric() : p, multiplicity, exact};
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), e, [](const CycleEntry& x, const CycleEntry& y) {
    return coordinate_less(x.point, y.point);
  });
  entries_.insert(pos, e);
}

void ZeroCycle::add(const ComplexPoint& p, int multiplicity) { insert(p, multiplicity, std::nullopt); }

void ZeroCycle::add(const RationalPoint& p, int multiplicity) { insert(p.to_numeric(), multiplicity, p); }

void ZeroCycle::add(const ZeroCycle& other, int sign) {
  for (const auto& e : other.entries_) insert(e.point, sign * e.multiplicity, e.exact);
}

int ZeroCycle::degree() const {
  int d = 0;
  for (const auto& e : entries_) d += e.multiplicity;
  return d;
}

bool ZeroCycle::effective() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CycleEntry& e) { return e.multiplicity > 0; });
}

int ZeroCycle::multiplicity_at(const ComplexPoint& p) const {
  for (const auto& e : entries_)
    if (chordal_distance(e.point, p) <= tol_) return e.multiplicity;
  return 0;
}

ZeroCycle ZeroCycle::negated() const {
  ZeroCycle out = *this;
  for (auto& e : out.entries_) e.multiplicity = -e.multiplicity;
  return out;
}

ZeroCycle cycle_add(const ZeroCycle& a, const ZeroCycle& b, double tol) {
  ZeroCycle out(tol);
  out.add(a);
  out.add(b);
  return out;
}

ZeroCycle cycle_sub(const ZeroCycle& a, const ZeroCycle& b, double tol) {
  ZeroCycle out(tol);
  out.add(a);
  out.add(b, -1);
  return out;
}

bool cycle_eq(const ZeroCycle& a, const ZeroCycle& b, double tol) { return cycle_sub(a, b, tol).empty(); }

std::string to_string(const ZeroCycle& z) {
  if (z.empty()) return "0";
  std::string out;
  for (const auto& e : z.entries()) {
    if (!out.empty()) out += e.multiplicity < 0 ? " - " : " + ";
    else if (e.multiplicity < 0) out += "-";
    int m = std::abs(e.multiplicity);
    if (m != 1) out += std::to_string(m) + "*";
    out += e.exact ? to_string(*e.exact) : to_string(e.point);
  }
  return out;
}

}  // namespace ratequiv
