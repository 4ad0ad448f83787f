#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ascurves/errors.hpp"

namespace ascurves {

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field F_{p^k} of odd characteristic, presented as F_p[t]/(m(t)).
/// The prime field (k = 1) carries no modulus. Fields are immutable and
/// shared; two fields are interchangeable iff p, k and the modulus agree.
class Field : public std::enable_shared_from_this<Field> {
public:
    // Validates p (odd prime) and, when given, the modulus (monic of degree
    // k, irreducible over F_p). With the modulus omitted and k > 1 the
    // canonical modulus is chosen: the lexicographically least monic
    // irreducible, comparing coefficient sequences constant term first.
    static FieldPtr make(std::int64_t p, int degree,
                         std::optional<std::vector<std::int64_t>> modulus = std::nullopt,
                         std::string generator = "t");

    // Same as make(p, degree) but memoized; always the canonical modulus.
    static FieldPtr canonical(std::int64_t p, int degree);

    std::int64_t characteristic() const { return p_; }
    int degree() const { return degree_; }

    // Monic modulus, constant term first, size degree+1. Empty for k = 1.
    const std::vector<std::int64_t>& modulus() const { return modulus_; }
    const std::string& generator_name() const { return generator_; }

    bool same_as(const Field& other) const;
    bool is_prime_field() const { return degree_ == 1; }

    // p^k as long double (size guard only) and exactly when it fits.
    bool size_fits_u64() const;
    std::uint64_t size_u64() const;  // throws InternalError when too large

    std::string description() const;  // "p^k" or "p^k:m-text"

private:
    Field(std::int64_t p, int degree, std::vector<std::int64_t> modulus, std::string generator);

    std::int64_t p_;
    int degree_;
    std::vector<std::int64_t> modulus_;
    std::string generator_;
};

/// Element of a Field: k residues mod p, coefficient of t^0 first.
class FieldElement {
public:
    FieldElement() = default;
    static FieldElement zero(const FieldPtr& f);
    static FieldElement one(const FieldPtr& f);
    static FieldElement from_int(const FieldPtr& f, std::int64_t n);
    static FieldElement from_coeffs(const FieldPtr& f, std::vector<std::int64_t> coeffs);
    // The class of t itself (for k = 1 this is just 0 + ... there is no t;
    // throws FieldMismatch on prime fields).
    static FieldElement generator(const FieldPtr& f);

    const FieldPtr& field() const { return field_; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool valid() const { return field_ != nullptr; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(std::int64_t e) const;  // negative e inverts first

    // x -> x^(p^steps); steps may exceed k (reduced mod nothing, iterated).
    FieldElement frobenius(int steps = 1) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // True iff the element lies in the subfield of size p^j (j | k).
    bool in_subfield(int j) const;
    // Least j | k with the element in F_{p^j}.
    int min_subfield_degree() const;

    std::string to_string() const;  // polynomial in t, e.g. "1+2*t"

private:
    FieldElement(FieldPtr f, std::vector<std::int64_t> c) : field_(std::move(f)), c_(std::move(c)) {}
    void require_same_field(const FieldElement& o) const;

    FieldPtr field_;
    std::vector<std::int64_t> c_;
};

/// Ring embedding of one field into another, given by the image of the
/// source generator. Identity maps have source == target.
struct ExtensionMap {
    FieldPtr source;
    FieldPtr target;
    FieldElement generator_image;  // unused for prime-field sources

    static ExtensionMap identity(const FieldPtr& f);
    bool is_identity() const;
};

// ---- module operations -------------------------------------------------

FieldPtr make_field(std::int64_t p, int degree,
                    std::optional<std::vector<std::int64_t>> modulus = std::nullopt);

// Image of a under via; FieldMismatch if a does not belong to via.source.
FieldElement embed(const FieldElement& a, const ExtensionMap& via);

// The canonical embedding between two fields of the same characteristic
// (source degree must divide target degree): generator goes to the
// lexicographically least root of the source modulus in the target.
// Deterministic and memoized.
ExtensionMap make_extension(const FieldPtr& source, const FieldPtr& target);

// Compose two embeddings a: F -> G, b: G -> H into F -> H.
ExtensionMap compose(const ExtensionMap& a, const ExtensionMap& b);

struct CommonField {
    FieldPtr field;
    ExtensionMap from_a;
    ExtensionMap from_b;
};
// Smallest of the two fields containing both (one of them when degrees
// divide, otherwise the canonical field of the lcm degree).
CommonField common_field(const FieldPtr& a, const FieldPtr& b);

// Preimage of x under the canonical embedding of `sub` into x's field;
// nullopt when x lies outside the image.
std::optional<FieldElement> descend(const FieldElement& x, const FieldPtr& sub);

// Embedding-stable total order key: (minimal subfield degree, coefficients
// of the element written in the canonical field of that degree).
struct CanonicalKey {
    int degree = 0;
    std::vector<std::int64_t> coeffs;
    auto operator<=>(const CanonicalKey&) const = default;
};
CanonicalKey canonical_key(const FieldElement& x);

// The unique r with r^p = a.
FieldElement frobenius_inverse(const FieldElement& a);

// Some r with r^n = a, in the smallest extension of a's field containing
// one; among the roots there, the coefficient-lexicographically least is
// returned. The map is the identity when no extension is needed.
std::pair<FieldElement, ExtensionMap> nth_root(const FieldElement& a, std::int64_t n);

// gamma with gamma^p - gamma = u, in the owner field when the absolute
// trace of u vanishes and in the degree-p extension otherwise.
std::pair<FieldElement, ExtensionMap> solve_wp(const FieldElement& u);

// Multiplicative order; a must be nonzero and the field size must fit u64.
std::uint64_t multiplicative_order(const FieldElement& a);

}  // namespace ascurves
