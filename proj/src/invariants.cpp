#include "ascurves/invariants.hpp"

#include <algorithm>

namespace ascurves {

namespace {

FieldPtr unify_all(std::vector<FieldElement>& xs, std::int64_t p) {
    FieldPtr F = Field::canonical(p, 1);
    for (const auto& e : xs) F = common_field(F, e.field()).field;
    for (auto& e : xs)
        if (!e.field()->same_as(*F)) e = embed(e, make_extension(e.field(), F));
    return F;
}

bool key_eq(const FieldElement& a, const FieldElement& b) {
    return canonical_key(a) == canonical_key(b);
}

}  // namespace

FieldElement InvariantVector::value(const std::string& name) const {
    for (const auto& [n, v] : values)
        if (n == name) return v;
    throw Error(ErrorKind::Validation, "no invariant named " + name);
}

bool InvariantVector::has(const std::string& name) const {
    return std::any_of(values.begin(), values.end(), [&](const auto& kv) { return kv.first == name; });
}

InvariantVector make_invariants(const StratumDescriptor& st,
                                std::vector<std::pair<std::string, FieldElement>> values) {
    return InvariantVector{st, std::move(values)};
}

std::vector<std::pair<std::string, FieldElement>> invariant_values(
    const StratumDescriptor& st, const std::vector<FieldElement>& coeffs) {
    if (!is_reference_stratum(st))
        throw UnsupportedStratumError("invariants are tabulated only for genus 3 and 4: " + st.to_string());
    std::vector<std::pair<std::string, FieldElement>> out;
    auto coeff = [&](std::size_t i) { return coeffs.at(i); };

    if (st == make_stratum(3, std::vector<int>{5})) {
        out.emplace_back("I1", coeff(0).pow(4));
    } else if (st == make_stratum(3, std::vector<int>{3, 2})) {
        FieldElement a = coeff(0), b = coeff(1);
        out.emplace_back("I1", a.pow(4));
        out.emplace_back("I2", a * b);
        out.emplace_back("I3", b.pow(4));
    } else if (st == make_stratum(7, std::vector<int>{3})) {
        // empty set
    } else if (st == make_stratum(3, std::vector<int>{6})) {
        FieldElement c = coeff(0), d = coeff(1);
        FieldElement eps = frobenius_inverse(c);
        FieldElement ared = c.pow(3) + d;
        FieldElement bred = -(c * d) - eps * eps;
        out.emplace_back("I1", ared.pow(10));
        out.emplace_back("I2", bred.pow(5));
        out.emplace_back("I3", ared * ared * bred);
    } else if (st == make_stratum(3, std::vector<int>{3, 3})) {
        FieldElement a = coeff(0), b = coeff(1), c = coeff(2);
        FieldElement i3 = a.pow(4) * c * c - b.pow(4);
        out.emplace_back("I1", c);
        out.emplace_back("I2", a * b);
        out.emplace_back("I3", i3);
        out.emplace_back("I3sq", i3 * i3);
    } else if (st == make_stratum(3, std::vector<int>{2, 2, 2})) {
        FieldElement a = coeff(0), b = coeff(1), c = coeff(2);
        FieldElement prod = a * b * c;
        out.emplace_back("I1", prod * prod);
        out.emplace_back("I2", prod * (a - b - c));
        out.emplace_back("I3", a * b + a * c - b * c);
        out.emplace_back("I4", a * a + b * b + c * c);
    } else if (st == make_stratum(5, std::vector<int>{4})) {
        out.emplace_back("I1", coeff(0).pow(12));
    } else if (st == make_stratum(5, std::vector<int>{2, 2})) {
        out.emplace_back("I1", coeff(0).pow(2));
    }
    return out;
}

std::vector<std::string> comparable_invariant_names(const StratumDescriptor& st) {
    if (st == make_stratum(3, std::vector<int>{5})) return {"I1"};
    if (st == make_stratum(3, std::vector<int>{3, 2})) return {"I1", "I2", "I3"};
    if (st == make_stratum(7, std::vector<int>{3})) return {};
    if (st == make_stratum(3, std::vector<int>{6})) return {"I1", "I2", "I3"};
    if (st == make_stratum(3, std::vector<int>{3, 3})) return {"I1", "I2", "I3sq"};
    if (st == make_stratum(3, std::vector<int>{2, 2, 2})) return {"I1", "I2", "I3", "I4"};
    if (st == make_stratum(5, std::vector<int>{4})) return {"I1"};
    if (st == make_stratum(5, std::vector<int>{2, 2})) return {"I1"};
    throw UnsupportedStratumError("no tabulated invariants for " + st.to_string());
}

InvariantVector invariants_of(const StandardFormCurve& s) {
    const StratumDescriptor& st = s.stratum;
    std::vector<FieldElement> coeffs;
    for (const auto& [n, v] : s.coefficients) coeffs.push_back(v);
    InvariantVector v;
    v.stratum = st;
    v.values = invariant_values(st, coeffs);
    return v;
}

bool check_relations(const InvariantVector& v) {
    const StratumDescriptor& st = v.stratum;
    if (st == make_stratum(3, std::vector<int>{3, 2})) {
        return key_eq(v.value("I1") * v.value("I3"), v.value("I2").pow(4));
    }
    if (st == make_stratum(3, std::vector<int>{6})) {
        return key_eq(v.value("I1") * v.value("I2"), v.value("I3").pow(5));
    }
    if (st == make_stratum(3, std::vector<int>{2, 2, 2})) {
        return key_eq(v.value("I1") * (v.value("I3") + v.value("I4")), v.value("I2").pow(2));
    }
    if (st == make_stratum(3, std::vector<int>{3, 3}) && v.has("I3sq")) {
        return key_eq(v.value("I3").pow(2), v.value("I3sq"));
    }
    return true;
}

bool same_invariants(const InvariantVector& a, const InvariantVector& b) {
    if (!(a.stratum == b.stratum)) return false;
    bool sign_free_i3 = a.stratum == make_stratum(3, std::vector<int>{3, 3});
    for (const auto& [name, va] : a.values) {
        if (!b.has(name)) return false;
        FieldElement vb = b.value(name);
        if (sign_free_i3 && name == "I3") {
            if (!key_eq(va, vb) && !key_eq(va, -vb)) return false;
        } else {
            if (!key_eq(va, vb)) return false;
        }
    }
    return a.values.size() == b.values.size();
}

namespace {

// Deterministic choice among reconstruction candidates.
StandardFormCurve pick_candidate(const StratumDescriptor& st,
                                 std::vector<std::vector<FieldElement>>& tuples,
                                 const InvariantVector& target) {
    std::vector<StandardFormCurve> forms;
    for (auto& tup : tuples) {
        try {
            StandardFormCurve s = standard_form_from_coefficients(st, tup);
            if (same_invariants(invariants_of(s), target)) forms.push_back(std::move(s));
        } catch (const Error&) {
            continue;
        }
    }
    if (forms.empty()) throw InconsistentValuesError("no coefficient system realizes these invariants");
    std::sort(forms.begin(), forms.end(), [](const StandardFormCurve& x, const StandardFormCurve& y) {
        std::vector<CanonicalKey> kx, ky;
        for (const auto& [n, v] : x.coefficients) kx.push_back(canonical_key(v));
        for (const auto& [n, v] : y.coefficients) ky.push_back(canonical_key(v));
        return kx < ky;
    });
    return forms.front();
}

}  // namespace

StandardFormCurve reconstruct(const StratumDescriptor& st, const InvariantVector& v) {
    if (!is_reference_stratum(st))
        throw UnsupportedStratumError("reconstruction outside the tabulated strata");
    if (!(v.stratum == st)) throw InconsistentValuesError("invariant vector belongs to another stratum");
    if (!check_relations(v)) throw InconsistentValuesError("invariant relations fail");
    std::int64_t p = st.p;

    std::vector<FieldElement> vals;
    for (const auto& [n, e] : v.values) vals.push_back(e);
    FieldPtr F = unify_all(vals, p);
    auto val = [&](const std::string& name) {
        for (std::size_t i = 0; i < v.values.size(); ++i)
            if (v.values[i].first == name) return vals[i];
        throw InconsistentValuesError("missing invariant " + name);
    };
    FieldElement zero = FieldElement::zero(F);

    std::vector<std::vector<FieldElement>> tuples;
    if (st == make_stratum(3, std::vector<int>{5})) {
        auto [a, ext] = nth_root(val("I1"), 4);
        tuples.push_back({a});
    } else if (st == make_stratum(3, std::vector<int>{3, 2})) {
        FieldElement i1 = val("I1"), i2 = val("I2"), i3 = val("I3");
        if (i1.is_zero()) {
            auto [b, ext] = nth_root(i3, 4);
            tuples.push_back({embed(zero, ext.is_identity() ? ExtensionMap::identity(F) : ext), b});
        } else {
            auto [a, ext] = nth_root(i1, 4);
            FieldElement i2e = ext.is_identity() ? i2 : embed(i2, ext);
            tuples.push_back({a, i2e / a});
        }
    } else if (st == make_stratum(7, std::vector<int>{3})) {
        tuples.push_back({});
    } else if (st == make_stratum(3, std::vector<int>{6})) {
        FieldElement i1 = val("I1"), i2 = val("I2"), i3 = val("I3");
        FieldElement ared, bred;
        ExtensionMap ext = ExtensionMap::identity(F);
        if (i1.is_zero()) {
            ared = zero;
            auto [b5, e] = nth_root(i2, 5);
            bred = b5;
            ext = e;
            if (!ext.is_identity()) ared = embed(ared, ext);
        } else {
            auto [a10, e] = nth_root(i1, 10);
            ared = a10;
            ext = e;
            FieldElement i3e = ext.is_identity() ? i3 : embed(i3, ext);
            bred = i3e / (ared * ared);
        }
        // back to the standard coordinates: eps^12 - ared*eps^3 - eps^2 - bred = 0,
        // c = eps^3, d = ared - c^3
        const FieldPtr& FR = ared.field();
        std::vector<FieldElement> pc(13, FieldElement::zero(FR));
        pc[12] = FieldElement::one(FR);
        pc[3] = -ared;
        pc[2] = -FieldElement::one(FR);
        pc[0] = -bred;
        auto [eps, e2] = min_root(Polynomial(FR, pc));
        FieldElement c = eps.pow(3);
        FieldElement aredd = e2.is_identity() ? ared : embed(ared, e2);
        tuples.push_back({c, aredd - c.pow(3)});
    } else if (st == make_stratum(3, std::vector<int>{3, 3})) {
        FieldElement i1 = val("I1"), i2 = val("I2"), i3 = val("I3");
        if (i1.is_zero()) throw InconsistentValuesError("I1 = c must be nonzero in this stratum");
        if (i2.is_zero()) {
            // a = 0 branch: -b^4 = I3 up to sign
            for (int sign = 0; sign < 2; ++sign) {
                FieldElement rhs = sign == 0 ? -i3 : i3;
                auto [b, ext] = nth_root(rhs, 4);
                FieldElement c = ext.is_identity() ? i1 : embed(i1, ext);
                FieldElement z = FieldElement::zero(b.field());
                tuples.push_back({z, b, c});
            }
            // b = 0 branch: a^4 c^2 = I3 up to sign
            for (int sign = 0; sign < 2; ++sign) {
                FieldElement rhs = (sign == 0 ? i3 : -i3) / (i1 * i1);
                auto [a, ext] = nth_root(rhs, 4);
                FieldElement c = ext.is_identity() ? i1 : embed(i1, ext);
                FieldElement z = FieldElement::zero(a.field());
                tuples.push_back({a, z, c});
            }
        } else {
            // quadratic in A = a^4: c^2 A^2 - I3 A - I2^4 = 0
            for (int sign = 0; sign < 2; ++sign) {
                FieldElement i3s = sign == 0 ? i3 : -i3;
                FieldElement disc = i3s * i3s + i1 * i1 * i2.pow(4);
                auto [sq, e1] = nth_root(disc, 2);
                FieldElement i3e = e1.is_identity() ? i3s : embed(i3s, e1);
                FieldElement i1e = e1.is_identity() ? i1 : embed(i1, e1);
                FieldElement i2e = e1.is_identity() ? i2 : embed(i2, e1);
                FieldElement two_c2 = (i1e * i1e) + (i1e * i1e);  // 2 c^2
                for (int pm = 0; pm < 2; ++pm) {
                    FieldElement A = (pm == 0 ? i3e + sq : i3e - sq) / two_c2;
                    if (A.is_zero()) continue;
                    auto [a, e2] = nth_root(A, 4);
                    FieldElement i2f = e2.is_identity() ? i2e : embed(i2e, e2);
                    FieldElement i1f = e2.is_identity() ? i1e : embed(i1e, e2);
                    tuples.push_back({a, i2f / a, i1f});
                }
            }
        }
    } else if (st == make_stratum(3, std::vector<int>{2, 2, 2})) {
        FieldElement i1 = val("I1"), i2 = val("I2"), i3 = val("I3"), i4 = val("I4");
        if (i1.is_zero()) throw InconsistentValuesError("I1 = (abc)^2 must be nonzero");
        auto [p0, e0] = nth_root(i1, 2);
        FieldElement i2e = e0.is_identity() ? i2 : embed(i2, e0);
        FieldElement i3e = e0.is_identity() ? i3 : embed(i3, e0);
        for (int sign = 0; sign < 2; ++sign) {
            FieldElement prod = sign == 0 ? p0 : -p0;
            FieldElement u = i2e / prod;
            // a^3 - u a^2 - I3 a - prod = 0
            const FieldPtr& FR = prod.field();
            Polynomial cubic(FR, {-prod, -i3e, -u, FieldElement::one(FR)});
            auto rr = roots_with_multiplicity(cubic, true);
            for (const auto& [a0, mult] : rr.roots) {
                if (a0.is_zero()) continue;
                FieldElement ue = rr.ext.is_identity() ? u : embed(u, rr.ext);
                FieldElement i3f = rr.ext.is_identity() ? i3e : embed(i3e, rr.ext);
                FieldElement sum_bc = a0 - ue;                      // b + c
                FieldElement prod_bc = a0 * a0 - ue * a0 - i3f;     // b c
                FieldElement disc = sum_bc * sum_bc - prod_bc;      // (b+c)^2 - 4bc in char 3
                auto [sq, e2] = nth_root(disc, 2);
                FieldElement sum_e = e2.is_identity() ? sum_bc : embed(sum_bc, e2);
                FieldElement a_e = e2.is_identity() ? a0 : embed(a0, e2);
                FieldElement twoinv = FieldElement::from_int(sq.field(), 2);  // 1/2 = 2 mod 3
                FieldElement b = (sum_e + sq) * twoinv;
                FieldElement c = (sum_e - sq) * twoinv;
                if (b.is_zero() || c.is_zero()) continue;
                tuples.push_back({a_e, b, c});
            }
        }
    } else if (st == make_stratum(5, std::vector<int>{4})) {
        auto [a, ext] = nth_root(val("I1"), 12);
        tuples.push_back({a});
    } else if (st == make_stratum(5, std::vector<int>{2, 2})) {
        if (val("I1").is_zero()) throw InconsistentValuesError("I1 = a^2 must be nonzero");
        auto [a, ext] = nth_root(val("I1"), 2);
        tuples.push_back({a});
    }

    return pick_candidate(st, tuples, v);
}

}  // namespace ascurves
