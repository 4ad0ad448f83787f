#include "ascurves/curve.hpp"

#include <algorithm>
#include <sstream>

namespace ascurves {

namespace {

struct UnifiedPair {
    RationalFunction a;
    RationalFunction b;
};

UnifiedPair unify(const RationalFunction& a, const RationalFunction& b) {
    if (a.field()->same_as(*b.field())) {
        if (a.field().get() == b.field().get()) return {a, b};
        CommonField c = common_field(a.field(), b.field());
        return {embed(a, c.from_a), embed(b, c.from_b)};
    }
    CommonField c = common_field(a.field(), b.field());
    return {c.from_a.is_identity() ? a : embed(a, c.from_a),
            c.from_b.is_identity() ? b : embed(b, c.from_b)};
}

// extended Euclid: inverse of a modulo q (q irreducible, gcd(a, q) = 1)
Polynomial poly_inverse_mod(const Polynomial& a, const Polynomial& q) {
    Polynomial r0 = q, r1 = a % q;
    Polynomial s0 = Polynomial::zero(q.field());
    Polynomial s1 = Polynomial::constant(FieldElement::one(q.field()));
    while (!r1.is_zero()) {
        auto [quot, rem] = r0.divrem(r1);
        Polynomial s2 = s0 - quot * s1;
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (r0.degree() != 0) throw InternalError("poly_inverse_mod: arguments not coprime");
    return (s0.scale(r0.leading().inv())) % q;
}

// z -> z^(1/p) in the residue field F[x]/(q)
Polynomial residue_field_pth_root(const Polynomial& z, const Polynomial& q) {
    int steps = q.field()->degree() * q.degree() - 1;
    Polynomial r = z % q;
    std::int64_t p = q.field()->characteristic();
    for (int i = 0; i < steps; ++i) {
        // r <- r^p mod q
        Polynomial acc = Polynomial::constant(FieldElement::one(q.field()));
        Polynomial base = r;
        std::int64_t e = p;
        while (e > 0) {
            if (e & 1) acc = (acc * base) % q;
            base = (base * base) % q;
            e >>= 1;
        }
        r = acc;
    }
    return r;
}

RationalFunction wp(const RationalFunction& h) {
    std::int64_t p = h.field()->characteristic();
    return h.pow(static_cast<int>(p)) - h;
}

}  // namespace

// ---- MobiusTransform ------------------------------------------------------

MobiusTransform::MobiusTransform(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (!a_.field()->same_as(*b_.field()) || !a_.field()->same_as(*c_.field()) ||
        !a_.field()->same_as(*d_.field()))
        throw FieldMismatchError("Mobius entries in different fields");
    if (det().is_zero()) throw SingularMatrixError("Mobius transform with zero determinant");
    // canonical scaling: first nonzero of (a, b, c, d) becomes 1
    FieldElement pivot = !a_.is_zero() ? a_ : (!b_.is_zero() ? b_ : (!c_.is_zero() ? c_ : d_));
    FieldElement s = pivot.inv();
    a_ = a_ * s;
    b_ = b_ * s;
    c_ = c_ * s;
    d_ = d_ * s;
}

MobiusTransform MobiusTransform::identity(const FieldPtr& f) {
    return MobiusTransform(FieldElement::one(f), FieldElement::zero(f), FieldElement::zero(f),
                           FieldElement::one(f));
}

MobiusTransform MobiusTransform::scaling(const FieldElement& alpha) {
    const FieldPtr& f = alpha.field();
    return MobiusTransform(alpha, FieldElement::zero(f), FieldElement::zero(f), FieldElement::one(f));
}

MobiusTransform MobiusTransform::translation(const FieldElement& beta) {
    const FieldPtr& f = beta.field();
    return MobiusTransform(FieldElement::one(f), beta, FieldElement::zero(f), FieldElement::one(f));
}

MobiusTransform MobiusTransform::operator*(const MobiusTransform& o) const {
    FieldPtr f = field();
    MobiusTransform lhs = *this, rhs = o;
    if (!f->same_as(*o.field())) {
        CommonField c = common_field(field(), o.field());
        lhs = ascurves::embed(*this, c.from_a);
        rhs = ascurves::embed(o, c.from_b);
    }
    return MobiusTransform(lhs.a_ * rhs.a_ + lhs.b_ * rhs.c_, lhs.a_ * rhs.b_ + lhs.b_ * rhs.d_,
                           lhs.c_ * rhs.a_ + lhs.d_ * rhs.c_, lhs.c_ * rhs.b_ + lhs.d_ * rhs.d_);
}

MobiusTransform MobiusTransform::inverse() const {
    return MobiusTransform(d_, -b_, -c_, a_);
}

bool MobiusTransform::operator==(const MobiusTransform& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

bool MobiusTransform::is_identity() const {
    return a_.is_one() && b_.is_zero() && c_.is_zero() && d_.is_one();
}

std::string MobiusTransform::to_string() const {
    std::ostringstream os;
    os << "[[" << a_.to_string() << "," << b_.to_string() << "],[" << c_.to_string() << ","
       << d_.to_string() << "]]";
    return os.str();
}

MobiusTransform embed(const MobiusTransform& m, const ExtensionMap& via) {
    return MobiusTransform(embed(m.alpha(), via), embed(m.beta(), via), embed(m.gamma(), via),
                           embed(m.delta(), via));
}

RationalFunction mobius_apply(const MobiusTransform& m, const RationalFunction& f) {
    MobiusTransform mm = m;
    RationalFunction ff = f;
    if (!m.field()->same_as(*f.field())) {
        CommonField c = common_field(m.field(), f.field());
        mm = embed(m, c.from_a);
        ff = embed(f, c.from_b);
    }
    if (ff.is_zero() || (ff.num().degree() <= 0 && ff.den().degree() == 0)) return ff;
    const FieldPtr& F = mm.field();
    Polynomial A(F, {mm.beta(), mm.alpha()});   // alpha x + beta
    Polynomial C(F, {mm.delta(), mm.gamma()});  // gamma x + delta
    auto homogenize = [&](const Polynomial& poly) {
        int d = poly.degree();
        Polynomial acc = Polynomial::zero(F);
        for (int i = 0; i <= d; ++i) {
            if (poly.coeff(i).is_zero()) continue;
            acc = acc + (A.pow(i) * C.pow(d - i)).scale(poly.coeff(i));
        }
        return acc;
    };
    Polynomial nh = homogenize(ff.num());
    Polynomial dh = homogenize(ff.den());
    int dn = ff.num().degree(), dd = ff.den().degree();
    if (dd >= dn) return RationalFunction(nh * C.pow(dd - dn), dh);
    return RationalFunction(nh, dh * C.pow(dn - dd));
}

ProjectivePoint pole_image(const MobiusTransform& m, const ProjectivePoint& point) {
    if (point.infinite) {
        if (m.gamma().is_zero()) return ProjectivePoint::at_infinity();
        return ProjectivePoint::finite(-(m.delta() / m.gamma()));
    }
    MobiusTransform mm = m;
    FieldElement mu = point.value;
    if (!m.field()->same_as(*mu.field())) {
        CommonField c = common_field(m.field(), mu.field());
        mm = embed(m, c.from_a);
        mu = embed(mu, c.from_b);
    }
    FieldElement den = mm.alpha() - mm.gamma() * mu;
    if (den.is_zero()) return ProjectivePoint::at_infinity();
    return ProjectivePoint::finite((mm.delta() * mu - mm.beta()) / den);
}

// ---- IsomorphismRecord ------------------------------------------------------

IsomorphismRecord IsomorphismRecord::identity(const FieldPtr& f) {
    return IsomorphismRecord{FieldElement::one(f), MobiusTransform::identity(f),
                             RationalFunction::zero(f)};
}

std::string IsomorphismRecord::to_string() const {
    std::ostringstream os;
    os << "lambda=" << lambda.to_string() << "; M=" << mobius.to_string()
       << "; h=" << shift.to_string();
    return os.str();
}

IsomorphismRecord compose(const IsomorphismRecord& first, const IsomorphismRecord& then) {
    // (f o M1M2 - wp(h1 o M2 + l1 h2)) / (l1 l2)
    FieldPtr fa = first.lambda.field(), fb = then.lambda.field();
    IsomorphismRecord a = first, b = then;
    if (!fa->same_as(*fb)) {
        CommonField c = common_field(fa, fb);
        a = IsomorphismRecord{embed(first.lambda, c.from_a), embed(first.mobius, c.from_a),
                              embed(first.shift, c.from_a)};
        b = IsomorphismRecord{embed(then.lambda, c.from_b), embed(then.mobius, c.from_b),
                              embed(then.shift, c.from_b)};
    }
    return IsomorphismRecord{a.lambda * b.lambda, a.mobius * b.mobius,
                             mobius_apply(b.mobius, a.shift) + b.shift.scale(a.lambda)};
}

IsomorphismRecord inverse(const IsomorphismRecord& r) {
    MobiusTransform minv = r.mobius.inverse();
    FieldElement linv = r.lambda.inv();
    return IsomorphismRecord{linv, minv, mobius_apply(minv, r.shift).scale(-linv)};
}

// ---- reduction ------------------------------------------------------

AsReduction as_reduce(std::int64_t p, const RationalFunction& f) {
    if (f.is_zero()) throw TrivialCoverError("zero right-hand side");
    if (f.field()->characteristic() != p) throw FieldMismatchError("curve characteristic mismatch");
    const FieldPtr& F = f.field();
    RationalFunction cur = f;
    RationalFunction h = RationalFunction::zero(F);
    while (true) {
        if (cur.is_zero()) throw TrivialCoverError("right-hand side is h^p - h");
        auto [poly, proper] = cur.split_polynomial_part();
        if (poly.degree() >= 1 && poly.degree() % p == 0) {
            RationalFunction w(
                Polynomial::monomial(frobenius_inverse(poly.leading()), poly.degree() / static_cast<int>(p)));
            cur = cur - wp(w);
            h = h + w;
            continue;
        }
        if (proper.is_zero()) break;
        // look for a denominator factor with multiplicity divisible by p
        auto fac = factorize(cur.den());
        bool changed = false;
        for (const auto& [q, mult] : fac.factors) {
            if (mult % p != 0) continue;
            // leading q-adic digit of cur at q: num * (den/q^mult)^{-1} mod q
            Polynomial rest = cur.den() / q.pow(mult);
            Polynomial s = (cur.num() % q) * poly_inverse_mod(rest, q) % q;
            Polynomial u = residue_field_pth_root(s, q);
            RationalFunction w(u, q.pow(mult / static_cast<int>(p)));
            cur = cur - wp(w);
            h = h + w;
            changed = true;
            break;
        }
        if (!changed) break;
    }
    if (cur.is_zero()) throw TrivialCoverError("right-hand side is h^p - h");
    return AsReduction{cur, h};
}

// ---- ArtinSchreierCurve ------------------------------------------------------

ArtinSchreierCurve ArtinSchreierCurve::make(std::int64_t p, const RationalFunction& f) {
    if (p < 3) throw EvenCharacteristicError("characteristic must be an odd prime");
    AsReduction red = as_reduce(p, f);
    RationalFunction g = red.reduced;
    RationalFunction h = red.witness;
    // remove the constant term of the polynomial part
    auto [poly, proper] = g.split_polynomial_part();
    FieldElement c0 = poly.coeff(0);
    if (!c0.is_zero()) {
        auto [gamma, ext] = solve_wp(c0);
        g = g - RationalFunction::constant(c0);
        RationalFunction hg = ext.is_identity() ? h : embed(h, ext);
        h = hg + RationalFunction::constant(gamma);
    }
    if (g.is_zero()) throw TrivialCoverError("right-hand side is h^p - h");

    ArtinSchreierCurve c;
    c.p_ = p;
    c.f_ = g;
    c.witness_ = h;
    c.profile_ = pole_profile(g);
    long D = -2;
    for (const auto& e : c.profile_.entries) {
        if (e.order % p == 0) throw InternalError("reduced curve has a pole order divisible by p");
        c.partition_.push_back(e.order + 1);
        D += e.order + 1;
    }
    std::sort(c.partition_.begin(), c.partition_.end(), std::greater<int>());
    c.genus_ = (p - 1) / 2 * D;
    c.p_rank_ = (static_cast<long>(c.profile_.entries.size()) - 1) * (p - 1);
    return c;
}

std::string ArtinSchreierCurve::to_string() const {
    std::ostringstream os;
    os << "p=" << p_ << "; field=";
    if (!field()->is_prime_field())
        os << Polynomial::from_ints(Field::canonical(p_, 1), field()->modulus())
                  .to_string(field()->generator_name());
    os << "; f=" << f_.to_string();
    return os.str();
}

ArtinSchreierCurve apply_isomorphism(const IsomorphismRecord& r, const ArtinSchreierCurve& c) {
    if (r.lambda.is_zero() || r.lambda.min_subfield_degree() != 1)
        throw Error(ErrorKind::Validation, "lambda must lie in the prime field and be nonzero");
    auto [f, h] = unify(c.f(), r.shift);
    MobiusTransform m = r.mobius;
    if (!m.field()->same_as(*f.field())) {
        CommonField cf = common_field(m.field(), f.field());
        m = embed(m, cf.from_a);
        f = embed(f, cf.from_b);
        h = embed(h, cf.from_b);
    }
    FieldElement lambda = FieldElement::from_int(f.field(), r.lambda.coeffs()[0]);
    RationalFunction fnew = (mobius_apply(m, f) - wp(h)).scale(lambda.inv());
    ArtinSchreierCurve out = ArtinSchreierCurve::make(c.p(), fnew);
    if (out.genus() != c.genus() || out.p_rank() != c.p_rank() || out.partition() != c.partition())
        throw InternalError("isomorphism did not preserve genus/p-rank/partition");
    return out;
}

bool same_curve(const ArtinSchreierCurve& a, const ArtinSchreierCurve& b) {
    if (a.p() != b.p()) return false;
    auto [fa, fb] = unify(a.f(), b.f());
    return fa == fb;
}

std::string ExceptionalClass::to_string() const {
    switch (kind) {
        case Kind::TypeA:
            return "TypeA(a=" + a.to_string() + ")";
        case Kind::TypeB:
            return "TypeB(lambda=" + std::to_string(lambda) + ")";
        default:
            return "none";
    }
}

}  // namespace ascurves
