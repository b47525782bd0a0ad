#include "report.hpp"

namespace ratequiv::cli {

Json to_json(const RationalPoint& p) {
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) out.push_back(p(i).get_str());
  return out;
}

Json to_json(const ComplexPoint& p, const std::optional<RationalPoint>& exact) {
  if (exact) return to_json(*exact);
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) out.push_back(format_complex(p(i)));
  return out;
}

Json to_json(const RationalLine& l) { return Json::array({to_json(l.first()), to_json(l.second())}); }

Json to_json(const ComplexLine& l) { return Json::array({to_json(l.first()), to_json(l.second())}); }

Json to_json(const ZeroCycle& z) {
  Json entries = Json::array();
  for (const auto& e : z.entries())
    entries.push_back(Json{{"point", to_json(e.point, e.exact)}, {"mult", e.multiplicity}});
  return Json{{"degree", z.degree()}, {"effective", z.effective()}, {"entries", std::move(entries)}};
}

namespace {

template <typename Scalar>
Json expression_json(const CIExpression<Scalar>& e) {
  return Json{{"a", to_string(e.a())}, {"b", to_string(e.b())}, {"h", to_string(e.h())}, {"s", e.s()}, {"e", e.e()}};
}

}  // namespace

Json to_json(const CIExpression<Rational>& e) { return expression_json(e); }
Json to_json(const CIExpression<Complex>& e) { return expression_json(e); }

Json to_json(const ContactResult& c) {
  Json dirs = Json::array();
  for (const auto& d : c.directions) {
    Json j;
    Json numeric = Json::array();
    for (int i = 0; i < 3; ++i) numeric.push_back(format_complex(d.numeric(i)));
    j["numeric"] = std::move(numeric);
    if (d.exact) {
      Json exact = Json::array();
      for (int i = 0; i < 3; ++i) exact.push_back((*d.exact)(i).get_str());
      j["exact"] = std::move(exact);
    }
    if (d.surd) {
      Json surd = Json::array();
      for (const auto& s : *d.surd) surd.push_back(s.to_string());
      j["surd"] = std::move(surd);
    }
    j["multiplicity"] = d.multiplicity;
    j["verified"] = d.verified;
    j["contact_order"] = d.contact_order;
    if (d.exact_line)
      j["line"] = to_json(*d.exact_line);
    else if (d.line)
      j["line"] = to_json(*d.line);
    dirs.push_back(std::move(j));
  }
  return Json{{"positive_dimensional", c.positive_dimensional},
              {"chart", c.chart},
              {"directions", std::move(dirs)}};
}

Json to_json(const ContactWitness& w) {
  return Json{{"p", to_json(w.p)},
              {"r", w.r},
              {"l1", to_json(w.l1)},
              {"l2", to_json(w.l2)},
              {"residual1", to_json(w.residual1)},
              {"residual2", to_json(w.residual2)}};
}

Json to_json(const StarCheckReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"ratio", format_complex(r.ratio)},
              {"samples_used", r.samples_used},
              {"discarded", r.discarded},
              {"max_deviation", format_real(r.max_deviation)},
              {"reason", r.reason}};
}

std::string to_string(const AffinePolynomial<Rational>& p) {
  if (p.is_zero()) return "0";
  static const char* names[3] = {"a", "b", "c"};
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const Rational a = abs(c);
    std::string coef = a == 1 && !mono.empty() ? std::string() : a.get_str();
    std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    if (out.empty())
      out = (sgn(c) < 0 ? "-" : "") + term;
    else
      out += (sgn(c) < 0 ? "-" : "+") + term;
  }
  return out;
}

bool point_less(const ComplexPoint& p, const ComplexPoint& q) {
  for (int i = 0; i < 4; ++i) {
    if (p(i).real() != q(i).real()) return p(i).real() < q(i).real();
    if (p(i).imag() != q(i).imag()) return p(i).imag() < q(i).imag();
  }
  return false;
}

}  // namespace ratequiv::cli
