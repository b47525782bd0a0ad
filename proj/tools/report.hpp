#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "ratequiv/affine.hpp"
#include "ratequiv/chow.hpp"
#include "ratequiv/contact.hpp"
#include "ratequiv/cycle.hpp"
#include "ratequiv/expression.hpp"
#include "ratequiv/line.hpp"

namespace ratequiv::cli {

using Json = nlohmann::ordered_json;

/// Points are four coordinate strings: exact rationals when known, else
/// complex numbers in the library's fixed format.
Json to_json(const RationalPoint& p);
Json to_json(const ComplexPoint& p, const std::optional<RationalPoint>& exact = std::nullopt);
Json to_json(const RationalLine& l);
Json to_json(const ComplexLine& l);
Json to_json(const ZeroCycle& z);
Json to_json(const CIExpression<Rational>& e);
Json to_json(const CIExpression<Complex>& e);
Json to_json(const ContactResult& c);
Json to_json(const ContactWitness& w);
Json to_json(const StarCheckReport& r);

/// Taylor part in the direction variables a, b, c.
std::string to_string(const AffinePolynomial<Rational>& p);

/// Lexicographic on (re, im) of the normalized coordinates.
bool point_less(const ComplexPoint& p, const ComplexPoint& q);

}  // namespace ratequiv::cli
