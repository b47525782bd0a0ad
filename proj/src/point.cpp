#include "ratequiv/point.hpp"

#include <algorithm>

namespace ratequiv {

double chordal_distance(const Vec4c& p, const Vec4c& q) {
  double np = p.norm(), nq = q.norm();
  if (np == 0.0 || nq == 0.0) throw std::invalid_argument("zero vector in chordal distance");
  Vec4c u = p / np, v = q / nq;
  Vec4c w = v - u * u.dot(v);
  return w.norm();
}

RationalPoint parse_point(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '(' && c != ')' && c != '[' && c != ']') s += (c == ':' ? ',' : c);
  Vec4q v;
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t end = s.find(',', start);
    if ((i < 3 && end == std::string::npos) || (i == 3 && end != std::string::npos))
      throw std::invalid_argument("point '" + text + "' must have exactly four coordinates");
    v(i) = parse_rational(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
    start = end + 1;
  }
  return RationalPoint(v);
}

std::string to_string(const RationalPoint& p) {
  std::string out = "(";
  for (int i = 0; i < 4; ++i) out += (i ? ":" : "") + p(i).get_str();
  return out + ")";
}

std::string to_string(const ComplexPoint& p) {
  std::string out = "(";
  for (int i = 0; i < 4; ++i) out += (i ? ":" : "") + format_complex(p(i));
  return out + ")";
}

}  // namespace ratequiv
