#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ascurves/standard.hpp"

namespace ascurves {

/// Reconstructing invariants of a standard-form curve: named exact field
/// values, constant on isomorphism classes. For the two-poles-of-order-2
/// stratum in characteristic 3 the third generator is only defined up to
/// sign, so its square is carried alongside and comparisons treat I3 up to
/// sign.
struct InvariantVector {
    StratumDescriptor stratum;
    std::vector<std::pair<std::string, FieldElement>> values;

    FieldElement value(const std::string& name) const;
    bool has(const std::string& name) const;
};

InvariantVector invariants_of(const StandardFormCurve& s);

// Exact per-stratum identities between the generators.
bool check_relations(const InvariantVector& v);

// Equality under the comparison semantics (I3 up to sign where documented);
// values are compared after unifying fields.
bool same_invariants(const InvariantVector& a, const InvariantVector& b);

// A standard form whose invariants equal the given ones (under the
// comparison semantics). Throws InconsistentValues when the relations fail
// or no compatible root system exists.
StandardFormCurve reconstruct(const StratumDescriptor& st, const InvariantVector& v);

// Convenience: assemble an InvariantVector from named values.
InvariantVector make_invariants(const StratumDescriptor& st,
                                std::vector<std::pair<std::string, FieldElement>> values);

// Invariant values straight from a coefficient tuple (in table order), with
// no curve construction; the workhorse behind invariants_of and the census.
std::vector<std::pair<std::string, FieldElement>> invariant_values(
    const StratumDescriptor& st, const std::vector<FieldElement>& coeffs);

// Names whose values identify the class under the comparison semantics (for
// the two-poles-of-order-2 stratum I3 is replaced by I3sq).
std::vector<std::string> comparable_invariant_names(const StratumDescriptor& st);

}  // namespace ascurves
