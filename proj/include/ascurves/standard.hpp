#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ascurves/curve.hpp"

namespace ascurves {

/// A curve in standard form: the poles of highest order sit at infinity, 0
/// and 1, the part at infinity is monic when there are at most two poles,
/// no monomial exponent is divisible by p, the constant term vanishes, and
/// single-pole forms also have no linear term. Extra poles (four or more)
/// keep their positions and principal parts.
struct StandardFormCurve {
    StratumDescriptor stratum;
    ArtinSchreierCurve curve;
    // shape data over curve.field(): part at infinity and finite parts
    Polynomial poly;                   // polynomial part (zero constant term)
    std::vector<PrincipalPart> parts;  // finite poles: 0 first, then 1, then extras
    // named free coefficients for the eight reference strata, in table order
    std::vector<std::pair<std::string, FieldElement>> coefficients;

    FieldElement coefficient(const std::string& name) const;
    std::string shape_name() const;  // e.g. "x^4+a*x^2"
};

struct StandardizeResult {
    StandardFormCurve form;
    IsomorphismRecord transcript;  // applying it to the input yields form.curve
    ExtensionMap net;              // input field -> transcript field
};

// Remove every monomial x^(kp) (k != 0) and every (x-mu)^(-kp) term by
// subtracting h^p - h; requires all finite poles rational over the owner
// field. Returns (g, h) with g = f - (h^p - h).
std::pair<RationalFunction, RationalFunction> eliminate_p_powers(const RationalFunction& f);

struct SinglePoleNormalization {
    Polynomial g;       // monic of the same degree, no p-divisible or linear terms
    FieldElement beta;  // the substitution x -> x + beta
    Polynomial h;       // over a possibly larger field; g = f(x+beta) - (h^p - h)
    ExtensionMap ext;   // input field -> field of g
};
// Normalization of a polynomial right-hand side with a single pole at
// infinity: f monic of degree d > 1 with p not dividing d; the supported
// range is d < p^2 (UnsupportedNesting beyond).
SinglePoleNormalization normalize_single_pole(std::int64_t p, const Polynomial& f);

// Convert a curve to a standard form, deterministically: among admissible
// assignments of the highest-order poles to (infinity, 0, 1), the one whose
// serialized coefficient tuple is least wins; root choices follow the
// minimal-extension, least-root policy.
StandardizeResult standardize(const ArtinSchreierCurve& c);

// The number of free coefficients of a standard shape (equals the stratum
// dimension).
int free_coefficient_count(const StandardFormCurve& s);

// Build a standard-form curve of a reference stratum directly from its
// named coefficient values (in table order). Values are unified into a
// common field; the realized curve must land in the requested stratum
// (nonzero constraints are implied by that check).
StandardFormCurve standard_form_from_coefficients(const StratumDescriptor& st,
                                                  std::vector<FieldElement> coeffs);

// Structural audit used by tests and standardize itself.
void validate_standard_shape(std::int64_t p, const StandardFormCurve& s);

}  // namespace ascurves
