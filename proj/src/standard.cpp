#include <cstdio>
#include "ascurves/standard.hpp"

#include <algorithm>
#include <numeric>

namespace ascurves {

namespace {

RationalFunction wp(const RationalFunction& h) {
    return h.pow(static_cast<int>(h.field()->characteristic())) - h;
}

// binomial coefficients mod p up to n
std::vector<std::vector<std::int64_t>> pascal_mod(int n, std::int64_t p) {
    std::vector<std::vector<std::int64_t>> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        c[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 0);
        c[static_cast<std::size_t>(i)][0] = 1;
        for (int j = 1; j <= i; ++j)
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                 (j <= i - 1 ? c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] : 0)) %
                p;
    }
    return c;
}

struct ShapeData {
    Polynomial poly;
    std::vector<PrincipalPart> parts;
};

// decompose a rational function whose finite poles are all rational over
// its own field
ShapeData rational_shape(const RationalFunction& f) {
    auto pp = principal_parts(f);
    if (!pp.ext.is_identity())
        throw InternalError("rational_shape: finite poles lie outside the owner field");
    ShapeData s;
    s.poly = pp.poly;
    s.parts = pp.parts;
    return s;
}

RationalFunction shape_to_function(const FieldPtr& F, const ShapeData& s) {
    RationalFunction acc(s.poly);
    for (const auto& part : s.parts) {
        Polynomial lin(F, {-part.point.value, FieldElement::one(F)});
        for (std::size_t j = 0; j < part.coeffs.size(); ++j)
            if (!part.coeffs[j].is_zero())
                acc = acc + RationalFunction(Polynomial::constant(part.coeffs[j]),
                                             lin.pow(static_cast<int>(j) + 1));
    }
    return acc;
}

// order finite parts: 0 first, then 1, then the rest by canonical key
void sort_parts(std::vector<PrincipalPart>& parts) {
    std::sort(parts.begin(), parts.end(), [](const PrincipalPart& a, const PrincipalPart& b) {
        auto rank = [](const PrincipalPart& x) {
            if (x.point.value.is_zero()) return 0;
            if (x.point.value.is_one()) return 1;
            return 2;
        };
        int ra = rank(a), rb = rank(b);
        if (ra != rb) return ra < rb;
        if (ra < 2) return false;
        return canonical_key(a.point.value) < canonical_key(b.point.value);
    });
}

}  // namespace

// ---- eliminate_p_powers -----------------------------------------------------

std::pair<RationalFunction, RationalFunction> eliminate_p_powers(const RationalFunction& f) {
    const FieldPtr& F = f.field();
    std::int64_t p = F->characteristic();
    ShapeData s = rational_shape(f);
    RationalFunction h = RationalFunction::zero(F);

    // polynomial part, largest exponents first
    std::vector<FieldElement> poly(s.poly.coeffs());
    for (int k = s.poly.degree() / static_cast<int>(p); k >= 1; --k) {
        std::size_t kp = static_cast<std::size_t>(k) * static_cast<std::size_t>(p);
        if (kp >= poly.size() || poly[kp].is_zero()) continue;
        FieldElement u = frobenius_inverse(poly[kp]);
        poly[kp] = FieldElement::zero(F);
        poly[static_cast<std::size_t>(k)] = poly[static_cast<std::size_t>(k)] + u;
        h = h + RationalFunction(Polynomial::monomial(u, k));
    }
    s.poly = Polynomial(F, poly);

    for (auto& part : s.parts) {
        Polynomial lin(F, {-part.point.value, FieldElement::one(F)});
        int m = static_cast<int>(part.coeffs.size());
        for (int k = m / static_cast<int>(p); k >= 1; --k) {
            std::size_t kp = static_cast<std::size_t>(k) * static_cast<std::size_t>(p);
            if (kp > part.coeffs.size() || part.coeffs[kp - 1].is_zero()) continue;
            FieldElement u = frobenius_inverse(part.coeffs[kp - 1]);
            part.coeffs[kp - 1] = FieldElement::zero(F);
            part.coeffs[static_cast<std::size_t>(k) - 1] = part.coeffs[static_cast<std::size_t>(k) - 1] + u;
            h = h + RationalFunction(Polynomial::constant(u), lin.pow(k));
        }
        while (!part.coeffs.empty() && part.coeffs.back().is_zero()) part.coeffs.pop_back();
    }
    s.parts.erase(std::remove_if(s.parts.begin(), s.parts.end(),
                                 [](const PrincipalPart& x) { return x.coeffs.empty(); }),
                  s.parts.end());
    return {shape_to_function(F, s), h};
}

// ---- normalize_single_pole ---------------------------------------------------

SinglePoleNormalization normalize_single_pole(std::int64_t p, const Polynomial& f) {
    if (f.is_zero() || !f.is_monic()) throw NotMonicError("single-pole normalization needs a monic input");
    int d = f.degree();
    if (d <= 1) throw Error(ErrorKind::Validation, "single-pole normalization needs degree > 1");
    if (d % p == 0) throw DegreeDivisibleByPError("pole order divisible by p");
    int big_m = d / static_cast<int>(p);
    if (big_m / static_cast<int>(p) > 0)
        throw UnsupportedNestingError("single-pole normalization limited to degree < p^2");

    const FieldPtr& F = f.field();
    // condition polynomial in beta: f'(beta) = 0 when d < p, else
    // f'(beta)^p + u_p(beta) = 0 where u_p is the x^p coefficient of f(x+beta)
    Polynomial cond = f.derivative();
    if (big_m >= 1) {
        auto binom = pascal_mod(d, p);
        std::vector<FieldElement> up(static_cast<std::size_t>(d - p) + 1, FieldElement::zero(F));
        for (int j = static_cast<int>(p); j <= d; ++j) {
            std::int64_t b = binom[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)];
            if (b == 0) continue;
            up[static_cast<std::size_t>(j - p)] =
                up[static_cast<std::size_t>(j - p)] + f.coeff(j) * FieldElement::from_int(F, b);
        }
        cond = cond.pow(static_cast<int>(p)) + Polynomial(F, up);
    }
    auto [beta, ext] = min_root(cond);
    Polynomial f2 = ext.is_identity() ? f : embed(f, ext);
    const FieldPtr& F2 = beta.field();
    Polynomial shifted = f2.compose(Polynomial(F2, {beta, FieldElement::one(F2)}));

    std::vector<FieldElement> bcoef(static_cast<std::size_t>(big_m) + 1, FieldElement::zero(F2));
    for (int i = 1; i <= big_m; ++i)
        bcoef[static_cast<std::size_t>(i)] = frobenius_inverse(shifted.coeff(i * static_cast<int>(p)));
    auto [gamma, ext2] = solve_wp(shifted.coeff(0));

    // g = shifted - (h^p - h), assembled by coefficient surgery
    std::vector<FieldElement> gc(shifted.coeffs());
    gc[0] = FieldElement::zero(F2);
    for (int i = 1; i <= big_m; ++i) {
        gc[static_cast<std::size_t>(i) * static_cast<std::size_t>(p)] = FieldElement::zero(F2);
        gc[static_cast<std::size_t>(i)] = gc[static_cast<std::size_t>(i)] + bcoef[static_cast<std::size_t>(i)];
    }
    Polynomial g(F2, gc);
    if (!g.coeff(1).is_zero()) throw InternalError("single-pole normalization: linear term survived");

    const FieldPtr& FH = gamma.field();
    std::vector<FieldElement> hc(static_cast<std::size_t>(big_m) + 1, FieldElement::zero(FH));
    hc[0] = gamma;
    for (int i = 1; i <= big_m; ++i)
        hc[static_cast<std::size_t>(i)] = ext2.is_identity() ? bcoef[static_cast<std::size_t>(i)]
                                                             : embed(bcoef[static_cast<std::size_t>(i)], ext2);
    return SinglePoleNormalization{g, beta, Polynomial(FH, hc), ext};
}

// ---- standardize -------------------------------------------------------------

namespace {

struct PipelineState {
    RationalFunction f;
    IsomorphismRecord rec;
    ExtensionMap net;  // original field -> current field
};

void extend_state(PipelineState& st, const ExtensionMap& e) {
    if (e.is_identity()) return;
    st.f = embed(st.f, e);
    st.rec = IsomorphismRecord{embed(st.rec.lambda, e), embed(st.rec.mobius, e), embed(st.rec.shift, e)};
    st.net = compose(st.net, e);
}

Polynomial conj_poly(const Polynomial& f, int j) {
    std::vector<FieldElement> c;
    for (const auto& e : f.coeffs()) c.push_back(e.frobenius(j));
    return Polynomial(f.field(), c);
}

// Chained extensions need not agree with the one-step canonical embedding of
// the original field; conjugate the whole state so that they do. Every
// operation in the pipeline commutes with field automorphisms, so the
// conjugated state is the output of a valid run.
void align_to_direct_embedding(PipelineState& st, const FieldPtr& origin) {
    const FieldPtr& F = st.f.field();
    if (origin->same_as(*F)) return;
    ExtensionMap direct = make_extension(origin, F);
    if (origin->is_prime_field()) {
        st.net = direct;
        return;
    }
    FieldElement u = st.net.generator_image;
    const FieldElement& v = direct.generator_image;
    int twist = -1;
    FieldElement w = u;
    for (int j = 0; j < F->degree(); ++j) {
        if (w == v) {
            twist = j;
            break;
        }
        w = w.frobenius();
    }
    if (twist < 0) throw InternalError("standardize: no conjugation aligns the embeddings");
    if (twist == 0) {
        st.net = direct;
        return;
    }
    st.f = RationalFunction(conj_poly(st.f.num(), twist), conj_poly(st.f.den(), twist));
    MobiusTransform m(st.rec.mobius.alpha().frobenius(twist), st.rec.mobius.beta().frobenius(twist),
                      st.rec.mobius.gamma().frobenius(twist), st.rec.mobius.delta().frobenius(twist));
    st.rec = IsomorphismRecord{
        st.rec.lambda.frobenius(twist), m,
        RationalFunction(conj_poly(st.rec.shift.num(), twist), conj_poly(st.rec.shift.den(), twist))};
    st.net = direct;
}

void push_step(PipelineState& st, const IsomorphismRecord& step) {
    st.rec = compose(st.rec, step);
}

MobiusTransform pole_moving_matrix(const FieldPtr& F, const std::vector<ProjectivePoint>& chosen) {
    FieldElement one = FieldElement::one(F), zero = FieldElement::zero(F);
    auto val = [&](const ProjectivePoint& pt) { return pt.value; };
    if (chosen.size() == 1) {
        if (chosen[0].infinite) return MobiusTransform::identity(F);
        return MobiusTransform(val(chosen[0]), -one, one, zero);
    }
    if (chosen.size() == 2) {
        if (chosen[0].infinite) return MobiusTransform(one, val(chosen[1]), zero, one);
        if (chosen[1].infinite) return MobiusTransform(val(chosen[0]), one, one, zero);
        return MobiusTransform(val(chosen[0]), val(chosen[1]), one, one);
    }
    const ProjectivePoint &p1 = chosen[0], &p2 = chosen[1], &p3 = chosen[2];
    if (p1.infinite) return MobiusTransform(val(p3) - val(p2), val(p2), zero, one);
    if (p2.infinite) return MobiusTransform(val(p1), val(p3) - val(p1), one, zero);
    if (p3.infinite) return MobiusTransform(-val(p1), val(p2), -one, one);
    return MobiusTransform(val(p1) * (val(p3) - val(p2)), val(p2) * (val(p1) - val(p3)),
                           val(p3) - val(p2), val(p1) - val(p3));
}

std::vector<std::vector<std::size_t>> admissible_assignments(const PoleProfile& profile) {
    const auto& e = profile.entries;
    std::size_t n = e.size();
    int want = n >= 3 ? 3 : static_cast<int>(n);
    std::vector<std::vector<std::size_t>> out;
    if (want == 1) {
        for (std::size_t i = 0; i < n; ++i)
            if (e[i].order == e[0].order) out.push_back({i});
        return out;
    }
    int d1 = e[0].order, d2 = e[1].order, d3 = want == 3 ? e[2].order : 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (e[i].order != d1) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || e[j].order != d2) continue;
            if (want == 2) {
                out.push_back({i, j});
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j || e[k].order != d3) continue;
                out.push_back({i, j, k});
            }
        }
    }
    return out;
}

// serialized coefficient tuple of a shape, for deterministic candidate choice
std::vector<CanonicalKey> shape_key(const ShapeData& s) {
    std::vector<CanonicalKey> key;
    for (int i = 1; i <= s.poly.degree(); ++i) key.push_back(canonical_key(s.poly.coeff(i)));
    for (const auto& part : s.parts) {
        key.push_back(canonical_key(part.point.value));
        for (const auto& c : part.coeffs) key.push_back(canonical_key(c));
    }
    return key;
}

struct Candidate {
    PipelineState st;
    ShapeData shape;
    std::vector<CanonicalKey> key;
};

}  // namespace

FieldElement StandardFormCurve::coefficient(const std::string& name) const {
    for (const auto& [n, v] : coefficients)
        if (n == name) return v;
    throw Error(ErrorKind::Validation, "no standard coefficient named " + name);
}

std::string StandardFormCurve::shape_name() const {
    if (stratum == make_stratum(3, std::vector<int>{5})) return "x^4+a*x^2";
    if (stratum == make_stratum(3, std::vector<int>{3, 2})) return "x^2+a*x+b/x";
    if (stratum == make_stratum(7, std::vector<int>{3})) return "x^2";
    if (stratum == make_stratum(3, std::vector<int>{6})) return "x^5+c*x^4+d*x^2";
    if (stratum == make_stratum(3, std::vector<int>{3, 3})) return "x^2+a*x+b/x+c/x^2";
    if (stratum == make_stratum(3, std::vector<int>{2, 2, 2})) return "a*x+b/x+c/(x-1)";
    if (stratum == make_stratum(5, std::vector<int>{4})) return "x^3+a*x^2";
    if (stratum == make_stratum(5, std::vector<int>{2, 2})) return "x+a/x";
    return curve.f().to_string();
}

int free_coefficient_count(const StandardFormCurve& s) {
    std::int64_t p = s.stratum.p;
    int r = static_cast<int>(s.stratum.partition.size()) - 1;
    int count = 0;
    int d1 = s.stratum.partition[0] - 1;
    // polynomial part: exponents not divisible by p, minus the monic leading
    // coefficient (one or two poles) and the absent linear term (one pole)
    for (int i = 1; i <= d1; ++i) {
        if (i % p == 0) continue;
        if (r <= 1 && i == d1) continue;
        if (r == 0 && i == 1) continue;
        ++count;
    }
    for (std::size_t k = 1; k < s.stratum.partition.size(); ++k) {
        if (k >= 3) ++count;  // position of an extra pole
        int dk = s.stratum.partition[k] - 1;
        for (int j = 1; j <= dk; ++j)
            if (j % p != 0) ++count;
    }
    return count;
}

void validate_standard_shape(std::int64_t p, const StandardFormCurve& s) {
    int r = static_cast<int>(s.stratum.partition.size()) - 1;
    int d1 = s.stratum.partition[0] - 1;
    const Polynomial& poly = s.poly;
    if (poly.degree() != d1) throw InternalError("standard shape: wrong degree at infinity");
    if (!poly.coeff(0).is_zero()) throw InternalError("standard shape: constant term present");
    for (int i = static_cast<int>(p); i <= poly.degree(); i += static_cast<int>(p))
        if (!poly.coeff(i).is_zero()) throw InternalError("standard shape: p-divisible exponent");
    if (r <= 1 && !poly.is_monic()) throw InternalError("standard shape: top part not monic");
    if (r == 0 && d1 > 1 && !poly.coeff(1).is_zero())
        throw InternalError("standard shape: linear term present");
    if (static_cast<int>(s.parts.size()) != r) throw InternalError("standard shape: wrong pole count");
    std::vector<int> orders;
    for (int idx = 0; idx < r; ++idx) {
        const auto& part = s.parts[static_cast<std::size_t>(idx)];
        orders.push_back(static_cast<int>(part.coeffs.size()) + 1);
        if (idx == 0 && !part.point.value.is_zero()) throw InternalError("standard shape: pole not at 0");
        if (idx == 1 && !part.point.value.is_one()) throw InternalError("standard shape: pole not at 1");
        if (idx >= 2 && (part.point.value.is_zero() || part.point.value.is_one()))
            throw InternalError("standard shape: extra pole collides with 0 or 1");
        if (part.coeffs.empty() || part.coeffs.back().is_zero())
            throw InternalError("standard shape: pole order mismatch");
        for (int j = static_cast<int>(p); j <= static_cast<int>(part.coeffs.size()); j += static_cast<int>(p))
            if (!part.coeffs[static_cast<std::size_t>(j) - 1].is_zero())
                throw InternalError("standard shape: p-divisible pole exponent");
    }
    // finite pole orders match the partition (the two distinguished poles
    // carry the second and third largest orders)
    std::vector<int> expect(s.stratum.partition.begin() + 1, s.stratum.partition.end());
    if (r >= 1 && orders[0] != expect[0]) throw InternalError("standard shape: pole at 0 has wrong order");
    if (r >= 2 && orders[1] != expect[1]) throw InternalError("standard shape: pole at 1 has wrong order");
    std::sort(orders.begin(), orders.end(), std::greater<int>());
    std::sort(expect.begin(), expect.end(), std::greater<int>());
    if (orders != expect) throw InternalError("standard shape: pole orders do not match the partition");
}

namespace {

std::vector<std::pair<std::string, FieldElement>> named_coefficients(const StratumDescriptor& st,
                                                                     const ShapeData& s,
                                                                     const FieldPtr& F) {
    std::vector<std::pair<std::string, FieldElement>> out;
    auto part_coeff = [&](std::size_t part_idx, int j) {
        if (part_idx >= s.parts.size()) return FieldElement::zero(F);
        const auto& c = s.parts[part_idx].coeffs;
        if (j < 1 || j > static_cast<int>(c.size())) return FieldElement::zero(F);
        return c[static_cast<std::size_t>(j) - 1];
    };
    if (st == make_stratum(3, std::vector<int>{5})) {
        out.emplace_back("a", s.poly.coeff(2));
    } else if (st == make_stratum(3, std::vector<int>{3, 2})) {
        out.emplace_back("a", s.poly.coeff(1));
        out.emplace_back("b", part_coeff(0, 1));
    } else if (st == make_stratum(7, std::vector<int>{3})) {
        // no free coefficients
    } else if (st == make_stratum(3, std::vector<int>{6})) {
        out.emplace_back("c", s.poly.coeff(4));
        out.emplace_back("d", s.poly.coeff(2));
    } else if (st == make_stratum(3, std::vector<int>{3, 3})) {
        out.emplace_back("a", s.poly.coeff(1));
        out.emplace_back("b", part_coeff(0, 1));
        out.emplace_back("c", part_coeff(0, 2));
    } else if (st == make_stratum(3, std::vector<int>{2, 2, 2})) {
        out.emplace_back("a", s.poly.coeff(1));
        out.emplace_back("b", part_coeff(0, 1));
        out.emplace_back("c", part_coeff(1, 1));
    } else if (st == make_stratum(5, std::vector<int>{4})) {
        out.emplace_back("a", s.poly.coeff(2));
    } else if (st == make_stratum(5, std::vector<int>{2, 2})) {
        out.emplace_back("a", part_coeff(0, 1));
    }
    return out;
}

}  // namespace

StandardFormCurve standard_form_from_coefficients(const StratumDescriptor& st,
                                                  std::vector<FieldElement> coeffs) {
    if (!is_reference_stratum(st))
        throw UnsupportedStratumError("no named coefficient shape for " + st.to_string());
    // unify all coefficient fields
    FieldPtr F = coeffs.empty() ? Field::canonical(st.p, 1) : coeffs[0].field();
    for (const auto& e : coeffs) F = common_field(F, e.field()).field;
    for (auto& e : coeffs)
        if (!e.field()->same_as(*F)) e = embed(e, make_extension(e.field(), F));

    FieldElement one = FieldElement::one(F), zero = FieldElement::zero(F);
    ShapeData s;
    auto pole = [&](const FieldElement& at, std::vector<FieldElement> cs) {
        PrincipalPart part;
        part.point = ProjectivePoint::finite(at);
        part.coeffs = std::move(cs);
        s.parts.push_back(std::move(part));
    };
    if (st == make_stratum(3, std::vector<int>{5})) {
        s.poly = Polynomial(F, {zero, zero, coeffs.at(0), zero, one});
    } else if (st == make_stratum(3, std::vector<int>{3, 2})) {
        s.poly = Polynomial(F, {zero, coeffs.at(0), one});
        pole(zero, {coeffs.at(1)});
    } else if (st == make_stratum(7, std::vector<int>{3})) {
        s.poly = Polynomial(F, {zero, zero, one});
    } else if (st == make_stratum(3, std::vector<int>{6})) {
        s.poly = Polynomial(F, {zero, zero, coeffs.at(1), zero, coeffs.at(0), one});
    } else if (st == make_stratum(3, std::vector<int>{3, 3})) {
        s.poly = Polynomial(F, {zero, coeffs.at(0), one});
        pole(zero, {coeffs.at(1), coeffs.at(2)});
    } else if (st == make_stratum(3, std::vector<int>{2, 2, 2})) {
        s.poly = Polynomial(F, {zero, coeffs.at(0)});
        pole(zero, {coeffs.at(1)});
        pole(one, {coeffs.at(2)});
    } else if (st == make_stratum(5, std::vector<int>{4})) {
        s.poly = Polynomial(F, {zero, zero, coeffs.at(0), one});
    } else {  // (5, {2,2})
        s.poly = Polynomial(F, {zero, one});
        pole(zero, {coeffs.at(0)});
    }

    StandardFormCurve out;
    out.curve = ArtinSchreierCurve::make(st.p, shape_to_function(F, s));
    out.stratum = out.curve.stratum();
    if (!(out.stratum == st))
        throw InconsistentValuesError("coefficients do not realize the stratum " + st.to_string());
    out.poly = s.poly;
    out.parts = s.parts;
    out.coefficients = named_coefficients(st, s, F);
    validate_standard_shape(st.p, out);
    return out;
}

StandardizeResult standardize(const ArtinSchreierCurve& c) {
    std::int64_t p = c.p();
    const PoleProfile& profile = c.profile();
    if (profile.entries.empty()) throw InternalError("standardize: curve without poles");
    int r = static_cast<int>(profile.entries.size()) - 1;

    // move into the splitting field of the poles
    RationalFunction f0 = profile.ext.is_identity() ? c.f() : embed(c.f(), profile.ext);
    const FieldPtr& F0 = f0.field();

    std::vector<Candidate> candidates;
    for (const auto& assignment : admissible_assignments(profile)) {
        PipelineState st{f0, IsomorphismRecord::identity(F0),
                         profile.ext.is_identity() ? ExtensionMap::identity(c.field()) : profile.ext};
        std::vector<ProjectivePoint> chosen;
        for (auto idx : assignment) chosen.push_back(profile.entries[idx].point);

        MobiusTransform m0 = pole_moving_matrix(F0, chosen);
        st.f = mobius_apply(m0, st.f);
        push_step(st, IsomorphismRecord{FieldElement::one(F0), m0, RationalFunction::zero(F0)});

        int d1 = profile.entries[assignment[0]].order;
        if (r <= 1) {
            // monic scaling by a d1-th root of the inverse leading coefficient
            auto [poly, rest] = st.f.split_polynomial_part();
            if (poly.degree() != d1) throw InternalError("standardize: wrong degree after pole move");
            auto [alpha, ext] = nth_root(poly.leading().inv(), d1);
            extend_state(st, ext);
            MobiusTransform m1 = MobiusTransform::scaling(alpha);
            st.f = mobius_apply(m1, st.f);
            push_step(st, IsomorphismRecord{FieldElement::one(alpha.field()), m1,
                                            RationalFunction::zero(alpha.field())});
        }

        if (r == 0) {
            auto [poly, rest] = st.f.split_polynomial_part();
            if (!rest.is_zero()) throw InternalError("standardize: single-pole curve not polynomial");
            if (d1 == 1) {
                auto [gamma, ext] = solve_wp(poly.coeff(0));
                extend_state(st, ext);
                const FieldPtr& F = gamma.field();
                push_step(st, IsomorphismRecord{FieldElement::one(F), MobiusTransform::identity(F),
                                                RationalFunction::constant(gamma)});
                st.f = st.f - RationalFunction::constant(embed(poly.coeff(0),
                                                               ext.is_identity()
                                                                   ? ExtensionMap::identity(F)
                                                                   : ext));
            } else {
                auto norm = normalize_single_pole(p, poly);
                extend_state(st, norm.ext);
                const FieldPtr& FB = norm.beta.field();
                // the h part may live in a further extension
                if (!norm.h.field()->same_as(*FB)) {
                    ExtensionMap up = make_extension(FB, norm.h.field());
                    extend_state(st, up);
                }
                const FieldPtr& FH = st.f.field();
                MobiusTransform shift = MobiusTransform::translation(
                    FB->same_as(*FH) ? norm.beta : embed(norm.beta, make_extension(FB, FH)));
                Polynomial h = norm.h.field()->same_as(*FH)
                                   ? norm.h
                                   : embed(norm.h, make_extension(norm.h.field(), FH));
                push_step(st, IsomorphismRecord{FieldElement::one(FH), shift, RationalFunction(h)});
                Polynomial g = norm.g.field()->same_as(*FH)
                                   ? norm.g
                                   : embed(norm.g, make_extension(norm.g.field(), FH));
                st.f = RationalFunction(g);
            }
        } else {
            auto [g, h] = eliminate_p_powers(st.f);
            const FieldPtr& F = st.f.field();
            if (!h.is_zero())
                push_step(st, IsomorphismRecord{FieldElement::one(F), MobiusTransform::identity(F), h});
            st.f = g;
            auto [poly, rest] = st.f.split_polynomial_part();
            FieldElement c0 = poly.coeff(0);
            if (!c0.is_zero()) {
                auto [gamma, ext] = solve_wp(c0);
                extend_state(st, ext);
                const FieldPtr& FG = gamma.field();
                push_step(st, IsomorphismRecord{FieldElement::one(FG), MobiusTransform::identity(FG),
                                                RationalFunction::constant(gamma)});
                st.f = st.f - RationalFunction::constant(ext.is_identity() ? c0 : embed(c0, ext));
            }
        }

        align_to_direct_embedding(st, c.field());

        Candidate cand;
        cand.shape = rational_shape(st.f);
        sort_parts(cand.shape.parts);
        cand.key = shape_key(cand.shape);
        cand.st = std::move(st);
        candidates.push_back(std::move(cand));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].key < candidates[best].key) best = i;
    Candidate& win = candidates[best];

    // descend the standard form to the least canonical field containing all
    // shape coefficients and pole positions
    ShapeData shape = win.shape;
    {
        int j = 1;
        for (int i = 0; i <= shape.poly.degree(); ++i) j = std::lcm(j, canonical_key(shape.poly.coeff(i)).degree);
        for (const auto& part : shape.parts) {
            j = std::lcm(j, canonical_key(part.point.value).degree);
            for (const auto& e : part.coeffs) j = std::lcm(j, canonical_key(e).degree);
        }
        const FieldPtr& FB = win.st.f.field();
        if (j < FB->degree()) {
            FieldPtr sub = Field::canonical(p, j);
            ShapeData down;
            std::vector<FieldElement> pc;
            bool ok = true;
            for (int i = 0; ok && i <= shape.poly.degree(); ++i) {
                auto dd = descend(shape.poly.coeff(i), sub);
                if (!dd) ok = false;
                else pc.push_back(*dd);
            }
            if (ok) down.poly = Polynomial(sub, pc);
            for (const auto& part : shape.parts) {
                if (!ok) break;
                PrincipalPart np;
                auto dp = descend(part.point.value, sub);
                if (!dp) { ok = false; break; }
                np.point = ProjectivePoint::finite(*dp);
                for (const auto& e : part.coeffs) {
                    auto de = descend(e, sub);
                    if (!de) { ok = false; break; }
                    np.coeffs.push_back(*de);
                }
                down.parts.push_back(std::move(np));
            }
            if (ok) shape = std::move(down);
        }
    }
    RationalFunction fstd = shape_to_function(shape.poly.field(), shape);

    StandardizeResult out;
    out.form.curve = ArtinSchreierCurve::make(p, fstd);
    out.form.stratum = out.form.curve.stratum();
    out.form.poly = shape.poly;
    out.form.parts = shape.parts;
    out.form.coefficients = named_coefficients(out.form.stratum, shape, fstd.field());
    out.transcript = win.st.rec;
    out.net = win.st.net;

    validate_standard_shape(p, out.form);
    if (!same_curve(apply_isomorphism(out.transcript, c), out.form.curve)) {
#ifdef ASCURVES_DEBUG_STD
        auto got = apply_isomorphism(out.transcript, c);
        fprintf(stderr, "GOT : %s over %s\n", got.f().to_string().c_str(), got.field()->description().c_str());
        fprintf(stderr, "WANT: %s over %s\n", out.form.curve.f().to_string().c_str(), out.form.curve.field()->description().c_str());
        fprintf(stderr, "net: %s -> %s img %s\n", out.net.source->description().c_str(), out.net.target->description().c_str(), out.net.generator_image.to_string().c_str());
        fprintf(stderr, "rec: %s\n", out.transcript.to_string().c_str());
        ArtinSchreierCurve cnet = ArtinSchreierCurve::make(p, embed(c.f(), out.net));
        auto got2 = apply_isomorphism(out.transcript, cnet);
        fprintf(stderr, "GOT2: %s over %s\n", got2.f().to_string().c_str(), got2.field()->description().c_str());
#endif
        throw InternalError("standardize: transcript does not reproduce the standard form");
    }
    return out;
}

}  // namespace ascurves
