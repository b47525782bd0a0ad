#include "ratequiv/form.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace ratequiv {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::string s = text;
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/' && !slash && i > start && i + 1 < s.size()) {
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("malformed rational '" + text + "'");
  }
  if (start == s.size()) throw std::invalid_argument("malformed rational '" + text + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q(s);
  if (slash && sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

std::string format_real(double x) {
  if (x == 0.0 || std::abs(x) < 1e-300) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  std::string s = buf;
  if (s == "-0") return "0";
  return s;
}

std::string format_complex(const Complex& z) {
  std::string re = format_real(z.real());
  double im = z.imag();
  if (format_real(im) == "0") return re;
  std::string ims = format_real(std::abs(im));
  return re + (im < 0 ? "-" : "+") + ims + "i";
}

std::vector<Exponent> monomials_of_degree(int degree) {
  std::vector<Exponent> out;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b)
      for (int c = degree - a - b; c >= 0; --c) out.push_back({a, b, c, degree - a - b - c});
  return out;
}

namespace {

constexpr const char* kVariableNames = "XYZT";

std::string monomial_text(const Exponent& e) {
  std::string out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += kVariableNames[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

template <typename Scalar, typename CoefFormatter>
std::string render(const Form<Scalar>& f, CoefFormatter fmt) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    std::string mono = monomial_text(e);
    auto [negative, body] = fmt(c);
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    if (mono.empty()) {
      out += body.empty() ? "1" : body;
    } else {
      if (!body.empty()) out += body + "*";
      out += mono;
    }
  }
  return out;
}

// Dense intermediate for parsing: arbitrary, possibly inhomogeneous polynomial.
using Poly = std::map<Exponent, Rational, std::greater<Exponent>>;

void poly_add(Poly& acc, const Exponent& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = acc.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b)
      poly_add(out, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}, Rational(ca * cb));
  return out;
}

Poly poly_constant(const Rational& c) {
  Poly p;
  poly_add(p, {0, 0, 0, 0}, c);
  return p;
}

bool poly_is_constant(const Poly& p) {
  return p.empty() || (p.size() == 1 && total_degree(p.begin()->first) == 0);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Poly parse() {
    Poly p = expression();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected token");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    std::string token = pos_ < text_.size() ? std::string(1, text_[pos_]) : "end of input";
    throw ParseError(what + " '" + token + "' at position " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expression() {
    Poly acc;
    bool first = true;
    for (;;) {
      Rational sign(1);
      if (accept('-'))
        sign = -1;
      else if (accept('+'))
        sign = 1;
      else if (!first)
        break;
      Poly t = term();
      for (const auto& [e, c] : t) poly_add(acc, e, Rational(sign * c));
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = poly_mul(acc, factor());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Poly d = factor();
        if (!poly_is_constant(d) || d.empty()) {
          pos_ = at;
          fail("division by a non-constant or zero expression at");
        }
        Rational inv = 1 / d.begin()->second;
        for (auto& [e, c] : acc) c *= inv;
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    if (accept('-')) {
      Poly p = factor();
      for (auto& [e, c] : p) c = -c;
      return p;
    }
    Poly base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent at");
      if (pos_ - start > 3) {
        pos_ = start;
        fail("exponent too large at");
      }
      int k = std::stoi(text_.substr(start, pos_ - start));
      Poly out = poly_constant(Rational(1));
      for (int i = 0; i < k; ++i) out = poly_mul(out, base);
      return out;
    }
    return base;
  }

  Poly primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expression();
      if (!accept(')')) fail("expected ')' but found");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return poly_constant(Rational(mpz_class(text_.substr(start, pos_ - start))));
    }
    int var = -1;
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'X': var = 0; break;
      case 'Y': var = 1; break;
      case 'Z': var = 2; break;
      case 'T': var = 3; break;
      default: fail("unexpected token");
    }
    ++pos_;
    Exponent e{0, 0, 0, 0};
    e[static_cast<std::size_t>(var)] = 1;
    Poly p;
    poly_add(p, e, Rational(1));
    return p;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const HomogeneousForm& f) {
  return render(f, [](const Rational& c) {
    Rational a = abs(c);
    return std::pair<bool, std::string>{sgn(c) < 0, a == 1 ? std::string() : a.get_str()};
  });
}

std::string to_string(const ComplexForm& f) {
  return render(f, [](const Complex& c) {
    return std::pair<bool, std::string>{false, "(" + format_complex(c) + ")"};
  });
}

HomogeneousForm parse_form(const std::string& text) {
  Poly p = Parser(text).parse();
  if (p.empty()) throw ParseError("polynomial '" + text + "' is identically zero", 0);
  int degree = 0;
  for (const auto& [e, c] : p) degree = std::max(degree, total_degree(e));
  HomogeneousForm f(degree);
  for (const auto& [e, c] : p) {
    if (total_degree(e) != degree) {
      std::string mono = monomial_text(e);
      throw ParseError("non-homogeneous input: monomial '" + (mono.empty() ? "1" : mono) +
                           "' has degree " + std::to_string(total_degree(e)) + ", expected " +
                           std::to_string(degree),
                       0);
    }
    f.add_term(e, c);
  }
  return f;
}

}  // namespace ratequiv
