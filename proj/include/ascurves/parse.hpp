#pragma once

#include <optional>
#include <string>

#include "ascurves/curve.hpp"

namespace ascurves {

/// Parsed curve description: characteristic, optional extension modulus and
/// the right-hand side. Grammar: lines (or ';'-separated fields)
///   p=<int>
///   field=<monic polynomial in t over F_p>     (optional)
///   f=<rational function in x, and t if field was given>
/// '#' starts a comment; whitespace is insignificant.
struct CurveSpec {
    std::int64_t p = 0;
    std::optional<std::string> field_text;
    std::string f_text;
    FieldPtr field;
    RationalFunction f;

    ArtinSchreierCurve curve() const { return ArtinSchreierCurve::make(p, f); }
    std::string to_string() const;  // "p=..; field=..; f=.."
};

CurveSpec parse_curve(const std::string& text);

// Expression grammar shared with the curve files: integer literals, x, the
// field generator t, operators + - * / ^ and parentheses.
RationalFunction parse_rational(const std::string& text, const FieldPtr& field);

}  // namespace ascurves
