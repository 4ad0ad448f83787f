#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ascurves/polyrat.hpp"
#include "ascurves/strata.hpp"

namespace ascurves {

/// Invertible fractional linear transformation x -> (ax+b)/(cx+d), stored
/// up to scalar: the first nonzero entry (in the order a, b, c, d) is
/// scaled to 1. (M1*M2)(x) = M1(M2(x)).
class MobiusTransform {
public:
    MobiusTransform() = default;  // empty; assign before use
    MobiusTransform(FieldElement a, FieldElement b, FieldElement c, FieldElement d);
    static MobiusTransform identity(const FieldPtr& f);
    static MobiusTransform scaling(const FieldElement& alpha);      // x -> alpha x
    static MobiusTransform translation(const FieldElement& beta);   // x -> x + beta

    const FieldElement& alpha() const { return a_; }
    const FieldElement& beta() const { return b_; }
    const FieldElement& gamma() const { return c_; }
    const FieldElement& delta() const { return d_; }
    const FieldPtr& field() const { return a_.field(); }

    FieldElement det() const { return a_ * d_ - b_ * c_; }
    MobiusTransform operator*(const MobiusTransform& o) const;
    MobiusTransform inverse() const;
    bool operator==(const MobiusTransform& o) const;
    bool is_identity() const;

    std::string to_string() const;

private:
    FieldElement a_, b_, c_, d_;
};

MobiusTransform embed(const MobiusTransform& m, const ExtensionMap& via);

// f(M(x)), reduced; fields are unified first.
RationalFunction mobius_apply(const MobiusTransform& m, const RationalFunction& f);

// Image of a pole of f under f -> f(M(x)): P_mu -> P_{(d mu - b)/(-c mu + a)}
// with the usual limit conventions at infinity.
ProjectivePoint pole_image(const MobiusTransform& m, const ProjectivePoint& point);

/// Witness isomorphism (lambda, M, h); applying it to a curve y^p - y = f
/// produces the curve with right-hand side (f(M(x)) - (h^p - h)) / lambda.
struct IsomorphismRecord {
    FieldElement lambda;     // in F_p^x
    MobiusTransform mobius;
    RationalFunction shift;  // h

    static IsomorphismRecord identity(const FieldPtr& f);
    std::string to_string() const;
};

// compose(first, then) applied to a curve equals applying first, then then.
IsomorphismRecord compose(const IsomorphismRecord& first, const IsomorphismRecord& then);
IsomorphismRecord inverse(const IsomorphismRecord& r);

struct AsReduction {
    RationalFunction reduced;  // every pole order prime to p
    RationalFunction witness;  // h with input = reduced + (h^p - h)
};
// Subtracts h^p - h terms until no pole order is divisible by p. Throws
// TrivialCover when the input is h^p - h exactly.
AsReduction as_reduce(std::int64_t p, const RationalFunction& f);

/// y^p - y = f with f reduced and constant-free; carries the pole profile,
/// genus, p-rank and the reduction witness.
class ArtinSchreierCurve {
public:
    ArtinSchreierCurve() = default;  // empty; assign before use
    static ArtinSchreierCurve make(std::int64_t p, const RationalFunction& f);

    std::int64_t p() const { return p_; }
    const RationalFunction& f() const { return f_; }
    const FieldPtr& field() const { return f_.field(); }
    // h over a possibly larger field with f_input = f + (h^p - h)
    const RationalFunction& reduction_witness() const { return witness_; }
    const PoleProfile& profile() const { return profile_; }
    long genus() const { return genus_; }
    long p_rank() const { return p_rank_; }
    const std::vector<int>& partition() const { return partition_; }
    StratumDescriptor stratum() const { return make_stratum(p_, partition_); }

    std::string to_string() const;  // "p=..; field=..; f=.."

private:
    std::int64_t p_ = 0;
    RationalFunction f_;
    RationalFunction witness_;
    PoleProfile profile_;
    std::vector<int> partition_;
    long genus_ = 0;
    long p_rank_ = 0;
};

// Isomorphic curve (f(M(x)) - (h^p-h))/lambda, re-reduced; genus, p-rank and
// partition are checked to be preserved.
ArtinSchreierCurve apply_isomorphism(const IsomorphismRecord& r, const ArtinSchreierCurve& c);

// Exact equality of the reduced right-hand sides after unifying fields.
bool same_curve(const ArtinSchreierCurve& a, const ArtinSchreierCurve& b);

/// Classification of curves whose degree-p subextension is not unique:
/// TypeA is y^p - y = a/(x^p - x); TypeB is y^p - y = x^lambda, lambda | p+1.
struct ExceptionalClass {
    enum class Kind { NotExceptional, TypeA, TypeB };
    Kind kind = Kind::NotExceptional;
    FieldElement a;      // TypeA: the family parameter, canonical up to F_p^x
    int lambda = 0;      // TypeB exponent

    std::string to_string() const;
};

ExceptionalClass classify_exceptional(const ArtinSchreierCurve& c);

}  // namespace ascurves
