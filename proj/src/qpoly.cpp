#include "ratequiv/qpoly.hpp"

#include <stdexcept>

namespace ratequiv {

void trim(QPoly& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

int degree(const QPoly& p) {
  QPoly q = p;
  trim(q);
  return static_cast<int>(q.size()) - 1;
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(Rational(p[k] * static_cast<long>(k)));
  trim(d);
  return d;
}

QPoly multiply(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

std::pair<QPoly, QPoly> divide(const QPoly& a, const QPoly& b) {
  QPoly r = a, d = b;
  trim(r);
  trim(d);
  if (d.empty()) throw std::invalid_argument("polynomial division by zero");
  QPoly q(r.size() >= d.size() ? r.size() - d.size() + 1 : 0, Rational(0));
  while (!r.empty() && r.size() >= d.size()) {
    std::size_t shift = r.size() - d.size();
    Rational c = r.back() / d.back();
    q[shift] = c;
    for (std::size_t k = 0; k < d.size(); ++k) r[shift + k] -= c * d[k];
    r.pop_back();
    trim(r);
  }
  trim(q);
  return {q, r};
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

std::vector<QPoly> squarefree_decomposition(const QPoly& p) {
  QPoly f = p;
  trim(f);
  if (f.size() < 2) return {};
  std::vector<QPoly> out;
  QPoly fp = derivative(f);
  QPoly a = gcd(f, fp);
  QPoly b = divide(f, a).first;
  QPoly c = divide(fp, a).first;
  QPoly d = c;
  QPoly db = derivative(b);
  for (std::size_t k = 0; k < d.size() || k < db.size(); ++k) {
    if (k >= d.size()) d.push_back(Rational(0));
    if (k < db.size()) d[k] -= db[k];
  }
  trim(d);
  while (degree(b) > 0) {
    QPoly g = gcd(b, d);
    out.push_back(g);
    b = divide(b, g).first;
    c = divide(d, g).first;
    d = c;
    db = derivative(b);
    for (std::size_t k = 0; k < d.size() || k < db.size(); ++k) {
      if (k >= d.size()) d.push_back(Rational(0));
      if (k < db.size()) d[k] -= db[k];
    }
    trim(d);
  }
  return out;
}

Rational evaluate(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace ratequiv
