#include "ascurves/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace ascurves {

namespace {

using Key = std::vector<CanonicalKey>;

Key tuple_key(const std::vector<FieldElement>& tuple) {
    Key k;
    k.reserve(tuple.size());
    for (const auto& e : tuple) k.push_back(canonical_key(e));
    return k;
}

FieldPtr unify_tuple(std::vector<FieldElement>& tuple) {
    if (tuple.empty()) throw InternalError("empty coefficient tuple");
    FieldPtr F = tuple[0].field();
    for (const auto& e : tuple) F = common_field(F, e.field()).field;
    for (auto& e : tuple)
        if (!e.field()->same_as(*F)) e = embed(e, make_extension(e.field(), F));
    return F;
}

FieldElement int_in(const FieldPtr& F, std::int64_t n) { return FieldElement::from_int(F, n); }

// conjugation x -> x^(p^j) applied componentwise
Polynomial conj(const Polynomial& f, int j) {
    std::vector<FieldElement> c;
    for (const auto& e : f.coeffs()) c.push_back(e.frobenius(j));
    return Polynomial(f.field(), c);
}
RationalFunction conj(const RationalFunction& f, int j) {
    return RationalFunction(conj(f.num(), j), conj(f.den(), j));
}
MobiusTransform conj(const MobiusTransform& m, int j) {
    return MobiusTransform(m.alpha().frobenius(j), m.beta().frobenius(j), m.gamma().frobenius(j),
                          m.delta().frobenius(j));
}
IsomorphismRecord conj(const IsomorphismRecord& r, int j) {
    return IsomorphismRecord{r.lambda.frobenius(j), conj(r.mobius, j), conj(r.shift, j)};
}

IsomorphismRecord embed_record(const IsomorphismRecord& r, const ExtensionMap& e) {
    if (e.is_identity()) return r;
    return IsomorphismRecord{embed(r.lambda, e), embed(r.mobius, e), embed(r.shift, e)};
}

const StratumDescriptor& st_g3s0() {
    static StratumDescriptor st = make_stratum(3, {5});
    return st;
}
const StratumDescriptor& st_g3s2() {
    static StratumDescriptor st = make_stratum(3, {3, 2});
    return st;
}
const StratumDescriptor& st_g3p7() {
    static StratumDescriptor st = make_stratum(7, {3});
    return st;
}
const StratumDescriptor& st_g4s0() {
    static StratumDescriptor st = make_stratum(3, {6});
    return st;
}
const StratumDescriptor& st_g4s2() {
    static StratumDescriptor st = make_stratum(3, {3, 3});
    return st;
}
const StratumDescriptor& st_g4s4() {
    static StratumDescriptor st = make_stratum(3, {2, 2, 2});
    return st;
}
const StratumDescriptor& st_g4p5s0() {
    static StratumDescriptor st = make_stratum(5, {4});
    return st;
}
const StratumDescriptor& st_g4p5s4() {
    static StratumDescriptor st = make_stratum(5, {2, 2});
    return st;
}

}  // namespace

std::vector<CoefficientAction> group_of(const StratumDescriptor& st) {
    if (!is_reference_stratum(st)) throw UnsupportedStratumError("no isomorphism group table for " + st.to_string());
    std::vector<CoefficientAction> out;
    auto diag = [&](int order, const std::vector<int>& powers) {
        for (int i = 0; i < order; ++i) {
            CoefficientAction a;
            a.stratum = st;
            a.kind = CoefficientAction::Kind::DiagonalRootOfUnity;
            a.zeta_order = order;
            a.zeta_index = i;
            a.powers = powers;
            a.name = "zeta" + std::to_string(order) + "#" + std::to_string(i);
            out.push_back(std::move(a));
        }
    };
    if (st == st_g3s0()) {
        diag(4, {1});
    } else if (st == st_g3s2()) {
        diag(4, {1, 3});
    } else if (st == st_g3p7()) {
        CoefficientAction a;
        a.stratum = st;
        a.kind = CoefficientAction::Kind::Identity;
        a.name = "id";
        out.push_back(std::move(a));
    } else if (st == st_g4s0()) {
        diag(10, {3, 4});  // reduced coordinates
    } else if (st == st_g4s2()) {
        diag(4, {1, 3, 0});
        for (std::int64_t lambda : {1, 2}) {
            for (int choice = 0; choice < 2; ++choice) {
                CoefficientAction a;
                a.stratum = st;
                a.kind = CoefficientAction::Kind::PoleSwap;
                a.swap_lambda = lambda;
                a.sqrt_choice = choice;
                a.name = "swap(l=" + std::to_string(lambda) + ",r=" + std::to_string(choice) + ")";
                out.push_back(std::move(a));
            }
        }
    } else if (st == st_g4s4()) {
        struct Row {
            const char* name;
            std::array<int, 3> perm;
            std::array<int, 3> signs;
            std::array<std::int64_t, 4> matrix;
        };
        static const Row rows[6] = {
            {"id", {0, 1, 2}, {1, 1, 1}, {1, 0, 0, 1}},
            {"(inf 0)", {1, 0, 2}, {1, 1, -1}, {0, 1, 1, 0}},
            {"(inf 1 0)", {1, 2, 0}, {-1, 1, -1}, {0, -1, 1, -1}},
            {"(inf 0 1)", {2, 0, 1}, {-1, -1, 1}, {-1, 1, -1, 0}},
            {"(inf 1)", {0, 2, 1}, {-1, -1, -1}, {1, -1, 0, -1}},
            {"(0 1)", {2, 1, 0}, {1, -1, 1}, {-1, 0, -1, 1}},
        };
        for (std::int64_t lambda : {1, -1}) {
            for (const auto& row : rows) {
                CoefficientAction a;
                a.stratum = st;
                a.kind = CoefficientAction::Kind::SignedPermutation;
                a.lambda = lambda;
                a.perm.assign(row.perm.begin(), row.perm.end());
                a.signs.assign(row.signs.begin(), row.signs.end());
                if (lambda == -1)
                    for (auto& s : a.signs) s = -s;
                a.matrix = row.matrix;
                a.name = std::string(row.name) + (lambda == 1 ? "" : " -");
                out.push_back(std::move(a));
            }
        }
    } else if (st == st_g4p5s0()) {
        diag(12, {1});
    } else if (st == st_g4p5s4()) {
        diag(2, {1});
    }
    return out;
}

std::vector<FieldElement> action_coordinates(const StandardFormCurve& s) {
    if (s.stratum == st_g4s0()) {
        FieldElement c = s.coefficient("c"), d = s.coefficient("d");
        FieldElement eps = frobenius_inverse(c);
        return {c.pow(3) + d, -(c * d) - eps * eps};
    }
    std::vector<FieldElement> out;
    for (const auto& [n, v] : s.coefficients) out.push_back(v);
    if (out.empty()) out.push_back(FieldElement::zero(s.curve.field()));  // marker for the empty stratum
    return out;
}

std::vector<FieldElement> apply_action(const CoefficientAction& act,
                                       const std::vector<FieldElement>& tuple_in) {
    std::vector<FieldElement> tuple = tuple_in;
    FieldPtr F = unify_tuple(tuple);
    std::int64_t p = F->characteristic();
    switch (act.kind) {
        case CoefficientAction::Kind::Identity:
            return tuple;
        case CoefficientAction::Kind::DiagonalRootOfUnity: {
            int m = splitting_degree_for_roots_of_unity(F, act.zeta_order);
            if (m > 1) {
                ExtensionMap e = make_extension(F, Field::canonical(p, F->degree() * m));
                for (auto& x : tuple) x = embed(x, e);
                F = e.target;
            }
            auto mu = roots_of_unity(F, act.zeta_order);
            FieldElement zeta = mu.at(static_cast<std::size_t>(act.zeta_index));
            for (std::size_t i = 0; i < tuple.size(); ++i)
                tuple[i] = tuple[i] * zeta.pow(act.powers.at(i));
            return tuple;
        }
        case CoefficientAction::Kind::PoleSwap: {
            FieldElement lambda = int_in(F, act.swap_lambda);
            FieldElement c = tuple.at(2);
            auto [g0, e] = nth_root(lambda / c, 2);
            if (!e.is_identity())
                for (auto& x : tuple) x = embed(x, e);
            FieldElement gamma = act.sqrt_choice == 0 ? g0 : -g0;
            FieldPtr FE = gamma.field();
            FieldElement l = int_in(FE, act.swap_lambda);
            FieldElement a = tuple.at(0), b = tuple.at(1), cc = tuple.at(2);
            return {b * gamma / l, a / (gamma * l), cc};
        }
        case CoefficientAction::Kind::SignedPermutation: {
            std::vector<FieldElement> out;
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                FieldElement v = tuple.at(static_cast<std::size_t>(act.perm.at(i)));
                out.push_back(act.signs.at(i) > 0 ? v : -v);
            }
            return out;
        }
    }
    throw InternalError("unknown action kind");
}

namespace {

RationalFunction wp(const RationalFunction& h) {
    return h.pow(static_cast<int>(h.field()->characteristic())) - h;
}

// A linear chain of field extensions carrying the record assembled so far,
// the right-hand side it currently produces, and any side data that must
// stay coherent with it. Records are only composed between equal fields, so
// no cross-chain identification is ever taken implicitly.
struct WitnessChain {
    IsomorphismRecord rec;
    RationalFunction cur;
    std::vector<FieldElement> data;
    std::vector<IsomorphismRecord> recs;

    const FieldPtr& field() const { return cur.field(); }

    void extend(const ExtensionMap& e) {
        if (e.is_identity()) return;
        rec = embed_record(rec, e);
        cur = embed(cur, e);
        for (auto& x : data) x = embed(x, e);
        for (auto& r : recs) r = embed_record(r, e);
    }
    void extend_to(const FieldPtr& target) {
        if (field()->same_as(*target)) return;
        extend(make_extension(field(), target));
    }
    void push(const FieldElement& lambda, const MobiusTransform& m, const RationalFunction& h) {
        IsomorphismRecord step{lambda, m, h};
        rec = compose(rec, step);
        cur = (mobius_apply(m, cur) - wp(h)).scale(lambda.inv());
    }
};

FieldElement prime_field_value(const FieldElement& x, const char* what) {
    auto k = canonical_key(x);
    if (k.degree != 1) throw InternalError(std::string(what) + ": value not in the prime field");
    return FieldElement::from_int(x.field(), k.coeffs[0]);
}

[[noreturn]] void witness_fail() {
    throw InternalError("witness derivation: target tuple not reachable");
}

// Conjugate a finished record so that it composes correctly with the direct
// canonical embedding of `origin` into the record's field; `tracked` is the
// image of origin's generator carried along the construction chain.
IsomorphismRecord align_record(const IsomorphismRecord& rec, const FieldPtr& origin,
                               const FieldElement& tracked) {
    const FieldPtr& W = rec.lambda.field();
    if (origin->is_prime_field() || origin->same_as(*W)) return rec;
    ExtensionMap direct = make_extension(origin, W);
    FieldElement w = tracked;
    for (int j = 0; j < W->degree(); ++j) {
        if (w == direct.generator_image) return j == 0 ? rec : conj(rec, j);
        w = w.frobenius();
    }
    throw InternalError("witness alignment: no conjugation matches the direct embedding");
}

// Reduction step of the single-pole genus-4 p=3 stratum, built in-chain:
// x^5+cx^4+dx^2 -> x^5+(c^3+d)x^2+(-cd-eps^2)x + constant, where (c, d) sit
// at data[si], data[si+1]. Constants are washed out by curve construction,
// so the shift polynomial needs no constant coefficient and the chain stays
// inside the fields already present.
void push_reduction(WitnessChain& chain, std::size_t si) {
    FieldElement c = chain.data.at(si);
    FieldElement eps = frobenius_inverse(c);
    const FieldPtr& F = chain.field();
    Polynomial h(F, {FieldElement::zero(F), -(eps * eps)});
    chain.push(FieldElement::one(F), MobiusTransform::translation(c), RationalFunction(h));
}

// Derive and push the standard-form isomorphism taking the tuple at
// data[ci..ci+n) to the tuple at data[ti..ti+n). Constants come from the
// tuples themselves (or from roots found in-chain), never from a foreign
// extension chain.
void push_match(WitnessChain& chain, const StratumDescriptor& st, std::size_t ci, std::size_t ti) {
    auto cv = [&](std::size_t i) { return chain.data.at(ci + i); };
    auto tv = [&](std::size_t i) { return chain.data.at(ti + i); };
    auto eq = [](const FieldElement& a, const FieldElement& b) { return a == b; };

    if (st == st_g3p7()) return;

    auto push_scaling = [&](const FieldElement& alpha, int lambda_power) {
        FieldElement lambda = prime_field_value(alpha.pow(lambda_power), "witness lambda");
        chain.push(lambda, MobiusTransform::scaling(alpha), RationalFunction::zero(alpha.field()));
    };

    if (st == st_g3s0()) {
        if (cv(0).is_zero()) {
            if (!tv(0).is_zero()) witness_fail();
            return;
        }
        FieldElement zeta = tv(0) / cv(0);
        auto [alpha, ext] = nth_root(zeta.inv(), 2);
        chain.extend(ext);
        push_scaling(alpha, 4);
        return;
    }
    if (st == st_g4p5s0()) {
        if (cv(0).is_zero()) {
            if (!tv(0).is_zero()) witness_fail();
            return;
        }
        push_scaling(cv(0) / tv(0), 3);
        return;
    }
    if (st == st_g4p5s4()) {
        FieldElement zinv = cv(0) / tv(0);  // lambda^2
        for (std::int64_t l = 1; l < 5; ++l) {
            FieldElement lam = FieldElement::from_int(chain.field(), l);
            if (eq(lam * lam, zinv)) {
                chain.push(lam, MobiusTransform::scaling(lam), RationalFunction::zero(chain.field()));
                return;
            }
        }
        witness_fail();
    }
    if (st == st_g3s2() || st == st_g4s2()) {
        bool with_c = st == st_g4s2();
        FieldElement a = cv(0), b = cv(1), a2 = tv(0), b2 = tv(1);
        if (with_c && !eq(cv(2), tv(2))) witness_fail();
        // diagonal attempt: a -> a/alpha, b -> b/alpha^3, alpha^4 = 1
        FieldElement alpha;
        bool have = false;
        if (!a.is_zero() && !a2.is_zero()) {
            alpha = a / a2;
            have = true;
        } else if (a.is_zero() && a2.is_zero()) {
            if (!b.is_zero() && !b2.is_zero()) {
                alpha = frobenius_inverse(b / b2);
                have = true;
            } else if (b.is_zero() && b2.is_zero()) {
                return;  // identity
            }
        }
        if (have && alpha.pow(4).is_one() && eq(a / alpha, a2) && eq(b / alpha.pow(3), b2)) {
            push_scaling(alpha, 2);
            return;
        }
        if (!with_c) witness_fail();
        // swap attempt: (a,b,c) -> (b gamma/lambda, a/(gamma lambda), c)
        FieldElement c = cv(2);
        for (std::int64_t l : {1, 2}) {
            FieldElement lam = FieldElement::from_int(chain.field(), l);
            FieldElement gamma;
            bool got = false;
            if (!b.is_zero()) {
                gamma = lam * a2 / b;
                got = !gamma.is_zero();
            } else if (!a.is_zero() && !b2.is_zero()) {
                gamma = a / (lam * b2);
                got = true;
            } else if (a.is_zero() && b.is_zero()) {
                auto [g0, ext] = nth_root(lam / c, 2);
                chain.extend(ext);
                a = cv(0); b = cv(1); c = cv(2); a2 = tv(0); b2 = tv(1);
                lam = FieldElement::from_int(chain.field(), l);
                gamma = g0;
                got = true;
            }
            if (!got) continue;
            if (!eq(c * gamma * gamma, lam)) continue;
            if (!eq(b * gamma / lam, a2)) continue;
            if (!eq(a / (gamma * lam), b2)) continue;
            const FieldPtr& FE = chain.field();
            MobiusTransform m(FieldElement::zero(FE), FieldElement::one(FE), gamma,
                              FieldElement::zero(FE));
            chain.push(lam, m, RationalFunction::zero(FE));
            return;
        }
        witness_fail();
    }
    if (st == st_g4s0()) {
        // reduced coordinates: (A, B) -> (A/alpha^3, B/alpha^4), alpha^10 = 1
        FieldElement A = cv(0), B = cv(1), A2 = tv(0), B2 = tv(1);
        FieldElement alpha = FieldElement::one(chain.field());
        if (!A.is_zero()) {
            if (A2.is_zero()) witness_fail();
            alpha = frobenius_inverse(A / A2);
            if (!alpha.pow(10).is_one() || !eq(B / alpha.pow(4), B2)) witness_fail();
        } else if (!B.is_zero()) {
            if (!A2.is_zero() || B2.is_zero()) witness_fail();
            int m = splitting_degree_for_roots_of_unity(chain.field(), 10);
            if (m > 1)
                chain.extend_to(Field::canonical(3, chain.field()->degree() * m));
            A = cv(0); B = cv(1); A2 = tv(0); B2 = tv(1);
            bool found = false;
            for (const auto& z : roots_of_unity(chain.field(), 10)) {
                if (eq(B / z.pow(4), B2)) {
                    alpha = z;
                    found = true;
                    break;
                }
            }
            if (!found) witness_fail();
        } else if (!A2.is_zero() || !B2.is_zero()) {
            witness_fail();
        }
        push_scaling(alpha, 5);
        return;
    }
    if (st == st_g4s4()) {
        for (const auto& act : group_of(st)) {
            bool match = true;
            for (std::size_t i = 0; i < 3; ++i) {
                FieldElement v = cv(static_cast<std::size_t>(act.perm.at(i)));
                if (act.signs.at(i) < 0) v = -v;
                if (!eq(v, tv(i))) match = false;
            }
            if (!match) continue;
            auto fe = [&](std::int64_t v) { return FieldElement::from_int(chain.field(), v); };
            MobiusTransform m(fe(act.matrix[0]), fe(act.matrix[1]), fe(act.matrix[2]),
                              fe(act.matrix[3]));
            // any constant produced by moving the pole at 1 is washed out by
            // curve construction
            chain.push(fe(act.lambda), m, RationalFunction::zero(chain.field()));
            return;
        }
        witness_fail();
    }
}

}  // namespace

IsomorphismRecord action_witness(const CoefficientAction& act, const StandardFormCurve& source) {
    std::vector<FieldElement> coords = action_coordinates(source);
    FieldPtr F0 = unify_tuple(coords);
    std::vector<FieldElement> target = apply_action(act, coords);
    // apply_action makes at most one canonical extension hop from the
    // unified coordinate field, which the chain adopts first
    FieldPtr FT = target.empty() ? F0 : target[0].field();

    WitnessChain chain;
    chain.rec = IsomorphismRecord::identity(source.curve.field());
    chain.cur = source.curve.f();
    const FieldPtr origin = source.curve.field();
    std::size_t origin_idx = chain.data.size();
    chain.data.push_back(origin->is_prime_field() ? FieldElement::zero(origin)
                                                  : FieldElement::generator(origin));
    std::size_t data_shift = 1;
    (void)data_shift;
    std::size_t coords_idx = chain.data.size();
    std::size_t n = coords.size();
    for (const auto& x : coords) chain.data.push_back(chain.field()->same_as(*x.field())
                                                          ? x
                                                          : embed(x, make_extension(x.field(), chain.field())));
    chain.extend_to(common_field(chain.field(), FT).field);
    for (const auto& x : target)
        chain.data.push_back(x.field()->same_as(*chain.field())
                                 ? x
                                 : embed(x, make_extension(x.field(), chain.field())));
    std::size_t ti = chain.data.size() - target.size();
    if (source.stratum == st_g4s0()) {
        std::size_t si = chain.data.size();
        chain.data.push_back(chain.field()->same_as(*source.coefficient("c").field())
                                 ? source.coefficient("c")
                                 : embed(source.coefficient("c"),
                                         make_extension(source.coefficient("c").field(), chain.field())));
        chain.data.push_back(chain.field()->same_as(*source.coefficient("d").field())
                                 ? source.coefficient("d")
                                 : embed(source.coefficient("d"),
                                         make_extension(source.coefficient("d").field(), chain.field())));
        push_reduction(chain, si);
    }
    push_match(chain, source.stratum, coords_idx, ti);
    return align_record(chain.rec, origin, chain.data.at(origin_idx));
}

std::vector<std::vector<FieldElement>> orbit(const StandardFormCurve& s) {
    auto coords = action_coordinates(s);
    std::map<Key, std::vector<FieldElement>> seen;
    for (const auto& act : group_of(s.stratum)) {
        auto image = apply_action(act, coords);
        seen.emplace(tuple_key(image), image);
    }
    std::vector<std::vector<FieldElement>> out;
    out.reserve(seen.size());
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

// ---- are_isomorphic ---------------------------------------------------------

std::optional<IsomorphismRecord> are_isomorphic(const ArtinSchreierCurve& c1,
                                                const ArtinSchreierCurve& c2) {
    if (c1.p() != c2.p()) return std::nullopt;
    std::int64_t p = c1.p();
    CommonField base = common_field(c1.field(), c2.field());
    ArtinSchreierCurve b1 = base.from_a.is_identity()
                                ? c1
                                : ArtinSchreierCurve::make(p, embed(c1.f(), base.from_a));
    ArtinSchreierCurve b2 = base.from_b.is_identity()
                                ? c2
                                : ArtinSchreierCurve::make(p, embed(c2.f(), base.from_b));
    if (!(b1.stratum() == b2.stratum())) return std::nullopt;
    StandardizeResult s1 = standardize(b1);
    StandardizeResult s2 = standardize(b2);
    const StratumDescriptor st = s1.form.stratum;
    if (!is_reference_stratum(st))
        throw UnsupportedStratumError("isomorphism testing outside the tabulated strata: " +
                                      st.to_string());

    // One ambient field; side 1 is conjugated so that both standardization
    // chains agree on the common base field of the inputs.
    FieldPtr FA = s1.net.target, FB = s2.net.target;
    CommonField top = common_field(FA, FB);
    FieldPtr C = top.field;
    int twist = 0;
    if (!base.field->is_prime_field()) {
        FieldElement u = embed(s1.net.generator_image, top.from_a);
        FieldElement v = embed(s2.net.generator_image, top.from_b);
        bool found = false;
        FieldElement w = u;
        for (int j = 0; j < C->degree(); ++j) {
            if (w == v) {
                twist = j;
                found = true;
                break;
            }
            w = w.frobenius();
        }
        if (!found) throw InternalError("no Galois twist aligns the two standardizations");
    }
    // lifts go through the explicit transcript fields, never a direct hop
    auto lift1 = [&](const FieldElement& x) {
        ExtensionMap via = x.field()->same_as(*FA) ? top.from_a
                                                   : compose(make_extension(x.field(), FA), top.from_a);
        FieldElement y = embed(x, via);
        return twist == 0 ? y : y.frobenius(twist);
    };
    auto lift2 = [&](const FieldElement& x) {
        ExtensionMap via = x.field()->same_as(*FB) ? top.from_b
                                                   : compose(make_extension(x.field(), FB), top.from_b);
        return embed(x, via);
    };

    std::vector<FieldElement> t1, t2;
    for (const auto& x : action_coordinates(s1.form)) t1.push_back(lift1(x));
    for (const auto& x : action_coordinates(s2.form)) t2.push_back(lift2(x));

    // orbit decision, cross-checked against the invariants
    Key want = tuple_key(t2);
    bool in_orbit = false;
    for (const auto& act : group_of(st)) {
        if (tuple_key(apply_action(act, t1)) == want) {
            in_orbit = true;
            break;
        }
    }
    bool inv_equal = same_invariants(invariants_of(s1.form), invariants_of(s2.form));
    if (inv_equal != in_orbit)
        throw InternalError("orbit membership and invariant comparison disagree");
    if (!in_orbit) return std::nullopt;

    // assemble the witness along one chain rooted at C
    WitnessChain chain;
    chain.rec = conj(embed_record(s1.transcript, top.from_a), twist);
    {
        const FieldPtr& FD = s1.form.curve.field();
        ExtensionMap via = FD->same_as(*FA) ? top.from_a : compose(make_extension(FD, FA), top.from_a);
        chain.cur = conj(embed(s1.form.curve.f(), via), twist);
    }
    std::size_t n = t1.size();
    for (const auto& x : t1) chain.data.push_back(x);
    for (const auto& x : t2) chain.data.push_back(x);
    std::size_t extra = chain.data.size();
    if (st == st_g4s0()) {
        chain.data.push_back(lift1(s1.form.coefficient("c")));
        chain.data.push_back(lift1(s1.form.coefficient("d")));
        chain.data.push_back(lift2(s2.form.coefficient("c")));
        chain.data.push_back(lift2(s2.form.coefficient("d")));
    }
    chain.recs.push_back(embed_record(s2.transcript, top.from_b));
    // track the identification of the base field along the chain
    std::size_t base_gen_idx = chain.data.size();
    chain.data.push_back(base.field->is_prime_field()
                             ? FieldElement::zero(C)
                             : embed(s2.net.generator_image, top.from_b));

    if (st == st_g4s0()) push_reduction(chain, extra);
    push_match(chain, st, 0, n);
    if (st == st_g4s0()) {
        // undo the reduction of side 2, inside the same chain
        FieldElement c2c = chain.data.at(extra + 2);
        FieldElement eps = frobenius_inverse(c2c);
        const FieldPtr& FW = chain.field();
        Polynomial h(FW, {FieldElement::zero(FW), -(eps * eps)});
        IsomorphismRecord inv2 =
            inverse(IsomorphismRecord{FieldElement::one(FW), MobiusTransform::translation(c2c),
                                      RationalFunction(h)});
        chain.push(inv2.lambda, inv2.mobius, inv2.shift);
    }
    {
        IsomorphismRecord inv2 = inverse(chain.recs.at(0));
        chain.push(inv2.lambda, inv2.mobius, inv2.shift);
    }
    IsomorphismRecord total = chain.rec;

    // verification through explicitly tracked identifications (both inputs
    // embedded along the side-2 chain, against which side 1 was aligned)
    {
        const FieldPtr& W = total.lambda.field();
        ExtensionMap e2W = base.field->is_prime_field()
                               ? make_extension(base.field, W)
                               : ExtensionMap{base.field, W, chain.data.at(base_gen_idx)};
        ArtinSchreierCurve c1w = ArtinSchreierCurve::make(p, embed(b1.f(), e2W));
        ArtinSchreierCurve c2w = ArtinSchreierCurve::make(p, embed(b2.f(), e2W));
        if (!same_curve(apply_isomorphism(total, c1w), c2w))
            throw InternalError("isomorphism witness failed verification");
    }
    // hand back a record that composes with the direct embedding of the
    // first input's field
    if (!c1.field()->is_prime_field()) {
        ExtensionMap f0w{base.field, total.lambda.field(), chain.data.at(base_gen_idx)};
        FieldElement img = c1.field()->same_as(*base.field)
                               ? chain.data.at(base_gen_idx)
                               : embed(base.from_a.generator_image, f0w);
        total = align_record(total, c1.field(), img);
    }
    return total;
}

// ---- census -------------------------------------------------------------------

namespace {

struct Domain {
    std::vector<bool> nonzero;  // per coordinate
};

Domain census_domain(const StratumDescriptor& st) {
    if (st == st_g3s0()) return {{false}};
    if (st == st_g3s2()) return {{false, true}};
    if (st == st_g3p7()) return {{}};
    if (st == st_g4s0()) return {{false, false}};
    if (st == st_g4s2()) return {{false, false, true}};
    if (st == st_g4s4()) return {{true, true, true}};
    if (st == st_g4p5s0()) return {{false}};
    if (st == st_g4p5s4()) return {{true}};
    throw UnsupportedStratumError("census outside the tabulated strata");
}

std::vector<FieldElement> tuple_at(const FieldPtr& F, const Domain& dom,
                                   const std::vector<FieldElement>& elems, std::uint64_t index) {
    std::vector<FieldElement> out;
    std::uint64_t q = F->size_u64();
    for (bool nz : dom.nonzero) {
        std::uint64_t radix = nz ? q - 1 : q;
        std::uint64_t digit = index % radix;
        index /= radix;
        out.push_back(elems[static_cast<std::size_t>(nz ? digit + 1 : digit)]);
    }
    return out;
}

// the action coordinates of a census tuple (reduced pair for the single-pole
// genus-4 p=3 stratum)
std::vector<FieldElement> census_action_coords(const StratumDescriptor& st,
                                               const std::vector<FieldElement>& tuple) {
    if (st == st_g4s0()) {
        FieldElement c = tuple.at(0), d = tuple.at(1);
        FieldElement eps = frobenius_inverse(c);
        return {c.pow(3) + d, -(c * d) - eps * eps};
    }
    if (tuple.empty()) return {FieldElement::zero(Field::canonical(st.p, 1))};
    return tuple;
}

}  // namespace

CensusReport census(const StratumDescriptor& st, std::uint64_t q, std::uint64_t budget, int threads) {
    if (!is_reference_stratum(st)) throw UnsupportedStratumError("census outside the tabulated strata");
    // q must be a power of p
    int k = 0;
    {
        std::uint64_t m = q;
        while (m > 1) {
            if (m % static_cast<std::uint64_t>(st.p) != 0)
                throw Error(ErrorKind::Validation, "census field size is not a power of p");
            m /= static_cast<std::uint64_t>(st.p);
            ++k;
        }
        if (k == 0) throw Error(ErrorKind::Validation, "census field must have at least p elements");
    }
    FieldPtr F = Field::canonical(st.p, k);
    Domain dom = census_domain(st);

    std::uint64_t total = 1;
    for (bool nz : dom.nonzero) {
        std::uint64_t radix = nz ? q - 1 : q;
        if (total > budget / std::max<std::uint64_t>(radix, 1) + 1) total = budget + 1;
        else total *= radix;
    }
    if (total > budget) throw DomainTooLargeError("census domain exceeds the tuple budget");

    // all field elements sorted by coefficient sequence (zero first)
    std::vector<FieldElement> elems;
    {
        std::vector<std::int64_t> c(static_cast<std::size_t>(k), 0);
        while (true) {
            elems.push_back(FieldElement::from_coeffs(F, c));
            int i = k - 1;
            while (i >= 0) {
                if (++c[static_cast<std::size_t>(i)] < st.p) break;
                c[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
        }
        std::sort(elems.begin(), elems.end(),
                  [](const FieldElement& a, const FieldElement& b) { return a.coeffs() < b.coeffs(); });
    }

    auto group = group_of(st);

    struct Shard {
        std::map<Key, std::vector<FieldElement>> classes;  // class key -> least tuple
        std::set<Key> invariant_keys;
    };
    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    if (static_cast<std::uint64_t>(nthreads) > total) nthreads = static_cast<int>(std::max<std::uint64_t>(total, 1));
    std::vector<Shard> shards(static_cast<std::size_t>(nthreads));

    auto worker = [&](int tid) {
        Shard& shard = shards[static_cast<std::size_t>(tid)];
        for (std::uint64_t idx = static_cast<std::uint64_t>(tid); idx < total;
             idx += static_cast<std::uint64_t>(nthreads)) {
            auto tuple = tuple_at(F, dom, elems, idx);
            auto coords = census_action_coords(st, tuple);
            // class key: least canonical key of the orbit members lying in F_q
            Key best;
            bool have = false;
            for (const auto& act : group) {
                auto image = apply_action(act, coords);
                Key kk = tuple_key(image);
                bool in_fq = true;
                for (const auto& ck : kk)
                    if (k % ck.degree != 0) in_fq = false;
                if (!in_fq) continue;
                if (!have || kk < best) {
                    best = kk;
                    have = true;
                }
            }
            if (!have) throw InternalError("census orbit misses its own base tuple");
            auto it = shard.classes.find(best);
            if (it == shard.classes.end()) shard.classes.emplace(best, tuple);
            // the identity action is in the group, so the first tuple seen for
            // a class in index order is the least; merging keeps the least
            // invariant class key
            std::vector<std::pair<std::string, FieldElement>> iv = invariant_values(st, tuple);
            Key ik;
            for (const auto& name : comparable_invariant_names(st)) {
                for (const auto& [n, v] : iv)
                    if (n == name) ik.push_back(canonical_key(v));
            }
            shard.invariant_keys.insert(ik);
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::map<Key, std::vector<FieldElement>> classes;
    std::set<Key> invariant_keys;
    for (auto& shard : shards) {
        for (auto& [kk, tuple] : shard.classes) {
            auto it = classes.find(kk);
            if (it == classes.end()) {
                classes.emplace(kk, tuple);
            } else if (tuple_key(tuple) < tuple_key(it->second)) {
                it->second = tuple;
            }
        }
        invariant_keys.insert(shard.invariant_keys.begin(), shard.invariant_keys.end());
    }

    CensusReport report;
    report.stratum = st;
    report.q = q;
    report.class_count = classes.size();
    for (auto& [kk, tuple] : classes) report.representatives.push_back(tuple);
    std::sort(report.representatives.begin(), report.representatives.end(),
              [](const auto& a, const auto& b) { return tuple_key(a) < tuple_key(b); });
    report.invariant_classes = invariant_keys.size();
    return report;
}

// ---- exceptional classification ------------------------------------------------

namespace {

// matrix whose standard point action takes (a1,a2,a3) to (0,1,inf)
MobiusTransform to_zero_one_inf(const FieldPtr& F, const ProjectivePoint& a,
                                const ProjectivePoint& b, const ProjectivePoint& c) {
    FieldElement one = FieldElement::one(F), zero = FieldElement::zero(F);
    if (a.infinite) return MobiusTransform(zero, b.value - c.value, one, -c.value);
    if (b.infinite) return MobiusTransform(one, -a.value, one, -c.value);
    if (c.infinite) return MobiusTransform(one, -a.value, zero, b.value - a.value);
    return MobiusTransform(b.value - c.value, -a.value * (b.value - c.value), b.value - a.value,
                           -c.value * (b.value - a.value));
}

MobiusTransform adjugate(const MobiusTransform& m) {
    return MobiusTransform(m.delta(), -m.beta(), -m.gamma(), m.alpha());
}

// Mobius M whose pole action takes the source triple to the target triple
MobiusTransform pole_mover(const FieldPtr& F, const std::array<ProjectivePoint, 3>& src,
                           const std::array<ProjectivePoint, 3>& dst) {
    MobiusTransform n1 = to_zero_one_inf(F, src[0], src[1], src[2]);
    MobiusTransform n2 = to_zero_one_inf(F, dst[0], dst[1], dst[2]);
    // point action n2^{-1} * n1 maps src -> dst; the pole action of M is the
    // point action of adj(M)
    return adjugate(n2.inverse() * n1);
}

FieldElement canonical_scalar_multiple(const FieldElement& a) {
    // least representative of {lambda a : lambda in F_p^x}
    FieldElement best = a;
    std::int64_t p = a.field()->characteristic();
    for (std::int64_t l = 2; l < p; ++l) {
        FieldElement cand = a * FieldElement::from_int(a.field(), l);
        if (canonical_key(cand) < canonical_key(best)) best = cand;
    }
    return best;
}

}  // namespace

ExceptionalClass classify_exceptional(const ArtinSchreierCurve& c) {
    std::int64_t p = c.p();
    ExceptionalClass out;
    StandardizeResult sr = standardize(c);
    const StandardFormCurve& s = sr.form;
    int r = static_cast<int>(s.stratum.partition.size()) - 1;

    // pure power x^d with d | p+1: single pole, all shape coefficients zero
    if (r == 0) {
        int d = s.stratum.partition[0] - 1;
        bool pure = true;
        for (int i = 1; i < d; ++i)
            if (!s.poly.coeff(i).is_zero()) pure = false;
        if (pure && d >= 2 && (p + 1) % d == 0) {
            out.kind = ExceptionalClass::Kind::TypeB;
            out.lambda = d;
            return out;
        }
        return out;
    }

    // a/(x^p - x): p simple poles
    bool all_simple = true;
    for (int e : s.stratum.partition)
        if (e != 2) all_simple = false;
    if (!all_simple || static_cast<std::int64_t>(s.stratum.partition.size()) != p) return out;

    if (p == 3) {
        InvariantVector v = invariants_of(s);
        if (v.value("I2").is_zero() && v.value("I3").is_zero() && v.value("I4").is_zero()) {
            FieldElement prod = s.coefficient("a") * s.coefficient("b") * s.coefficient("c");
            FieldElement cand = frobenius_inverse(prod);
            out.kind = ExceptionalClass::Kind::TypeA;
            out.a = canonical_scalar_multiple(cand);
        }
        return out;
    }

    // general p: search a pole-moving map taking the pole set onto F_p with
    // all residues equal
    const PoleProfile& prof = c.profile();
    RationalFunction f = prof.ext.is_identity() ? c.f() : embed(c.f(), prof.ext);
    const FieldPtr& F = f.field();
    std::array<ProjectivePoint, 3> src{prof.entries[0].point, prof.entries[1].point,
                                       prof.entries[2].point};
    for (std::int64_t u = 0; u < p; ++u)
        for (std::int64_t v = 0; v < p; ++v) {
            if (v == u) continue;
            for (std::int64_t w = 0; w < p; ++w) {
                if (w == u || w == v) continue;
                std::array<ProjectivePoint, 3> dst{
                    ProjectivePoint::finite(int_in(F, u)), ProjectivePoint::finite(int_in(F, v)),
                    ProjectivePoint::finite(int_in(F, w))};
                MobiusTransform m = pole_mover(F, src, dst);
                bool ok = true;
                for (const auto& e : prof.entries) {
                    ProjectivePoint img = pole_image(m, e.point);
                    if (img.infinite || canonical_key(img.value).degree != 1) ok = false;
                }
                if (!ok) continue;
                RationalFunction g = mobius_apply(m, f);
                auto pp = principal_parts(g);
                if (!pp.ext.is_identity()) continue;
                if (pp.poly.degree() > 0) continue;
                FieldElement rho = pp.parts.at(0).coeffs.at(0);
                bool equal = true;
                for (const auto& part : pp.parts) {
                    if (part.coeffs.size() != 1 || !(part.coeffs[0] == rho)) equal = false;
                }
                if (!equal) continue;
                out.kind = ExceptionalClass::Kind::TypeA;
                out.a = canonical_scalar_multiple(-rho);
                return out;
            }
        }
    return out;
}

}  // namespace ascurves
