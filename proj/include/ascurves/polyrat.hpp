#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ascurves/ff.hpp"

namespace ascurves {

/// Dense univariate polynomial over a Field, constant term first, no
/// trailing zeros. The zero polynomial has an empty coefficient sequence.
class Polynomial {
public:
    static constexpr int kNegInfinity = -0x40000000;  // degree of the zero polynomial

    Polynomial() = default;
    explicit Polynomial(FieldPtr field) : field_(std::move(field)) {}
    Polynomial(FieldPtr field, std::vector<FieldElement> coeffs);

    static Polynomial zero(const FieldPtr& f) { return Polynomial(f); }
    static Polynomial constant(const FieldElement& c);
    static Polynomial x(const FieldPtr& f);  // the monomial x
    static Polynomial monomial(const FieldElement& c, int e);
    static Polynomial from_ints(const FieldPtr& f, const std::vector<std::int64_t>& ints);

    const FieldPtr& field() const { return field_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kNegInfinity : static_cast<int>(c_.size()) - 1; }
    FieldElement coeff(int i) const;  // zero beyond the stored range
    FieldElement leading() const;     // throws on the zero polynomial
    bool is_monic() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scale(const FieldElement& s) const;
    Polynomial shift(int e) const;  // multiply by x^e
    Polynomial pow(int e) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::pair<Polynomial, Polynomial> divrem(const Polynomial& d) const;
    Polynomial operator/(const Polynomial& d) const;  // exact or truncating division
    Polynomial operator%(const Polynomial& d) const;

    Polynomial derivative() const;
    FieldElement eval(const FieldElement& x) const;
    Polynomial compose(const Polynomial& g) const;  // this(g(x))
    Polynomial monic() const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    FieldPtr field_;
    std::vector<FieldElement> c_;
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);  // monic

// Embed all coefficients along a field extension.
Polynomial embed(const Polynomial& a, const ExtensionMap& via);

/// Reduced fraction of polynomials; the denominator is monic and coprime to
/// the numerator, so equality is coefficient-wise.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(Polynomial num, Polynomial den);
    explicit RationalFunction(Polynomial num);

    static RationalFunction zero(const FieldPtr& f);
    static RationalFunction constant(const FieldElement& c);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction scale(const FieldElement& s) const;
    RationalFunction inv() const;
    RationalFunction pow(int e) const;
    bool operator==(const RationalFunction& o) const;
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    // this(g(x)) for polynomial g
    RationalFunction compose(const Polynomial& g) const;

    // Polynomial part and proper remainder: f = poly + rem/den.
    std::pair<Polynomial, RationalFunction> split_polynomial_part() const;

    std::string to_string(const std::string& var = "x") const;

private:
    Polynomial num_;
    Polynomial den_;
};

RationalFunction embed(const RationalFunction& a, const ExtensionMap& via);

/// Point of the projective line: infinity or a field value.
struct ProjectivePoint {
    bool infinite = false;
    FieldElement value;  // meaningful iff !infinite

    static ProjectivePoint at_infinity() { return ProjectivePoint{true, FieldElement()}; }
    static ProjectivePoint finite(FieldElement v) { return ProjectivePoint{false, std::move(v)}; }
    std::string to_string() const { return infinite ? "inf" : value.to_string(); }
};

bool same_point(const ProjectivePoint& a, const ProjectivePoint& b);

struct PoleEntry {
    ProjectivePoint point;
    int order = 0;
};

/// Poles of a rational function with their orders, in canonical order:
/// orders descending; within an order P_inf first, then finite points by
/// serialization. Finite poles may live in an extension of the owner field;
/// `ext` maps the owner into that splitting field.
struct PoleProfile {
    ExtensionMap ext;
    std::vector<PoleEntry> entries;

    int total_finite_order() const;
    std::vector<int> orders() const;
};

// ---- operations ----------------------------------------------------------

// All roots of a in the owner field, or (with allow_extension) in a
// splitting extension, with multiplicities computed by repeated division.
struct RootsResult {
    ExtensionMap ext;
    std::vector<std::pair<FieldElement, int>> roots;  // sorted by coefficient sequence
};
RootsResult roots_with_multiplicity(const Polynomial& a, bool allow_extension);

// Irreducible monic factors with multiplicities over the owner field,
// together with the leading coefficient of a.
struct Factorization {
    FieldElement lead;
    std::vector<std::pair<Polynomial, int>> factors;
};
Factorization factorize(const Polynomial& a);

// The root of the polynomial in the smallest extension containing one
// (following the minimal-extension-first policy), lexicographically least
// among the roots of that extension.
std::pair<FieldElement, ExtensionMap> min_root(const Polynomial& a);

PoleProfile pole_profile(const RationalFunction& f);

/// Exact partial fraction decomposition over the splitting extension:
/// f = poly + sum over poles mu of sum_j coeffs[j-1] / (x - mu)^j.
struct PrincipalPart {
    ProjectivePoint point;
    std::vector<FieldElement> coeffs;  // coeffs[j-1] is the coefficient of (x-mu)^-j
};
struct PrincipalParts {
    ExtensionMap ext;
    Polynomial poly;
    std::vector<PrincipalPart> parts;

    RationalFunction recombine() const;
};
PrincipalParts principal_parts(const RationalFunction& f);

// Helpers shared by the curve layer ---------------------------------------

// All distinct roots of f lying in its own field of definition.
std::vector<FieldElement> distinct_roots_in_field(const Polynomial& f);

// Least degree m >= 1 such that F_{p^(k*m)} contains all roots of x^n - 1
// (i.e. n | p^(k*m) - 1), for n coprime to p.
int splitting_degree_for_roots_of_unity(const FieldPtr& f, std::int64_t n);

// All n-th roots of unity in the given field (n must divide q - 1 there).
std::vector<FieldElement> roots_of_unity(const FieldPtr& f, std::int64_t n);

}  // namespace ascurves
