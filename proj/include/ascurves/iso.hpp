#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ascurves/invariants.hpp"

namespace ascurves {

/// One element of the finite group of isomorphisms between standard forms of
/// a stratum, as an explicit substitution rule on the coefficient tuple.
/// Constants (roots of unity, square roots depending on a coefficient) are
/// resolved in an extension at application time. For the single-pole genus-4
/// characteristic-3 stratum the rule acts on the reduced coordinate pair.
struct CoefficientAction {
    enum class Kind { Identity, DiagonalRootOfUnity, PoleSwap, SignedPermutation };

    StratumDescriptor stratum;
    std::string name;
    Kind kind = Kind::Identity;

    // DiagonalRootOfUnity: coefficient i is multiplied by zeta^powers[i],
    // zeta the zeta_index-th element of the sorted n-th roots of unity.
    int zeta_order = 1;
    int zeta_index = 0;
    std::vector<int> powers;

    // PoleSwap (two poles of order 2, p = 3): lambda in {1,2} and a choice
    // of square root gamma of lambda/c; (a,b,c) -> (b gamma/lambda, a/(gamma lambda), c).
    std::int64_t swap_lambda = 1;
    int sqrt_choice = 0;

    // SignedPermutation (three poles of order 1, p = 3): out[i] =
    // signs[i] * in[perm[i]]; lambda and the Mobius matrix give the witness.
    std::vector<int> perm;
    std::vector<int> signs;
    std::int64_t lambda = 1;
    std::array<std::int64_t, 4> matrix{1, 0, 0, 1};
};

// The complete list of coefficient actions for a reference stratum.
std::vector<CoefficientAction> group_of(const StratumDescriptor& st);

// Coordinates the group acts on: the named coefficients, except for the
// single-pole genus-4 p=3 stratum where the reduced pair
// (c^3+d, -cd-eps^2) is used.
std::vector<FieldElement> action_coordinates(const StandardFormCurve& s);

// Apply an action; the result may live in an extension of the input field.
std::vector<FieldElement> apply_action(const CoefficientAction& act,
                                       const std::vector<FieldElement>& tuple);

// A witness record realizing the action on a concrete standard form: applying
// it to source.curve yields the standard form with coefficients
// apply_action(act, action_coordinates(source)).
IsomorphismRecord action_witness(const CoefficientAction& act, const StandardFormCurve& source);

// Full group orbit of the action coordinates, deduplicated exactly; sorted
// by canonical keys.
std::vector<std::vector<FieldElement>> orbit(const StandardFormCurve& s);

// Decision procedure: standardize both curves, compare strata, search the
// orbit; on success returns a witness record (verified by application).
// Invariant vectors are cross-checked against the orbit answer; disagreement
// raises InternalError rather than returning silently.
std::optional<IsomorphismRecord> are_isomorphic(const ArtinSchreierCurve& c1,
                                                const ArtinSchreierCurve& c2);

/// Exhaustive isomorphism census of standard forms with coefficients in F_q.
struct CensusReport {
    StratumDescriptor stratum;
    std::uint64_t q = 0;
    std::size_t class_count = 0;
    std::vector<std::vector<FieldElement>> representatives;  // lex-least per class
    std::size_t invariant_classes = 0;
};

// Partitions the admissible coefficient tuples over F_q into isomorphism
// classes (orbit membership over the algebraic closure, intersected with
// F_q). Enumeration runs on `threads` workers over disjoint ranges
// (0 = hardware concurrency).
CensusReport census(const StratumDescriptor& st, std::uint64_t q,
                    std::uint64_t budget = 10000000, int threads = 0);

// Seed for the randomized equal-degree splitting inside root finding.
void set_random_seed(std::uint64_t seed);

}  // namespace ascurves
