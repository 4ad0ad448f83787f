#include "doctest.h"

#include <random>

#include "ascurves/curve.hpp"

using namespace ascurves;

namespace {

FieldElement rand_elem(const FieldPtr& f, std::mt19937_64& g) {
    std::uniform_int_distribution<std::int64_t> d(0, f->characteristic() - 1);
    std::vector<std::int64_t> c(static_cast<std::size_t>(f->degree()));
    for (auto& v : c) v = d(g);
    return FieldElement::from_coeffs(f, c);
}

MobiusTransform rand_mobius(const FieldPtr& f, std::mt19937_64& g) {
    while (true) {
        auto a = rand_elem(f, g), b = rand_elem(f, g), c = rand_elem(f, g), d = rand_elem(f, g);
        if (!(a * d - b * c).is_zero()) return MobiusTransform(a, b, c, d);
    }
}

RationalFunction rf(const FieldPtr& f, const std::vector<std::int64_t>& num,
                    const std::vector<std::int64_t>& den = {1}) {
    return RationalFunction(Polynomial::from_ints(f, num), Polynomial::from_ints(f, den));
}

}  // namespace

TEST_CASE("mobius_apply basics") {
    FieldPtr f3 = Field::canonical(3, 1);
    RationalFunction x2 = rf(f3, {0, 0, 1});

    CHECK(mobius_apply(MobiusTransform::identity(f3), x2) == x2);

    // x -> x+1 on x^2 gives x^2+2x+1
    auto m = MobiusTransform::translation(FieldElement::one(f3));
    CHECK(mobius_apply(m, x2) == rf(f3, {1, 2, 1}));

    // x -> 1/x swaps 1/x and x
    auto w = MobiusTransform(FieldElement::zero(f3), FieldElement::one(f3), FieldElement::one(f3),
                             FieldElement::zero(f3));
    CHECK(mobius_apply(w, rf(f3, {1}, {0, 1})) == rf(f3, {0, 1}));

    CHECK_THROWS_AS(MobiusTransform(FieldElement::one(f3), FieldElement::one(f3),
                                    FieldElement::one(f3), FieldElement::one(f3)),
                    SingularMatrixError);
}

TEST_CASE("mobius action law and pole images") {
    FieldPtr f9 = Field::canonical(3, 2);
    std::mt19937_64 g(51);
    for (int i = 0; i < 25; ++i) {
        auto m1 = rand_mobius(f9, g), m2 = rand_mobius(f9, g);
        Polynomial n(f9, {rand_elem(f9, g), rand_elem(f9, g), rand_elem(f9, g)});
        Polynomial d(f9, {rand_elem(f9, g), FieldElement::one(f9)});
        if (n.is_zero()) continue;
        RationalFunction f(n, d);
        CHECK(mobius_apply(m1, mobius_apply(m2, f)) == mobius_apply(m2 * m1, f));
        CHECK((m1 * m1.inverse()).is_identity());
    }

    // (mu,-1;1,0) sends P_mu to infinity
    auto mu = FieldElement::from_int(f9, 2);
    MobiusTransform mm(mu, -FieldElement::one(f9), FieldElement::one(f9), FieldElement::zero(f9));
    CHECK(pole_image(mm, ProjectivePoint::finite(mu)).infinite);

    // identity fixes poles
    CHECK(same_point(pole_image(MobiusTransform::identity(f9), ProjectivePoint::finite(mu)),
                     ProjectivePoint::finite(mu)));

    // x -> 1/x swaps P_0 and P_inf
    MobiusTransform w(FieldElement::zero(f9), FieldElement::one(f9), FieldElement::one(f9),
                      FieldElement::zero(f9));
    CHECK(pole_image(w, ProjectivePoint::finite(FieldElement::zero(f9))).infinite);
    CHECK(pole_image(w, ProjectivePoint::at_infinity()).value.is_zero());

    // pole_image commutes with pole_profile under mobius_apply
    for (int i = 0; i < 15; ++i) {
        auto m = rand_mobius(f9, g);
        Polynomial den(f9, {rand_elem(f9, g), rand_elem(f9, g), FieldElement::one(f9)});
        Polynomial num(f9, {FieldElement::one(f9), rand_elem(f9, g), rand_elem(f9, g), rand_elem(f9, g)});
        RationalFunction f(num, den);
        if (f.is_zero() || f.den().degree() < 1) continue;
        auto before = pole_profile(f);
        auto after = pole_profile(mobius_apply(m, f));
        REQUIRE(before.entries.size() == after.entries.size());
        for (const auto& e : before.entries) {
            ProjectivePoint target = e.point.infinite
                                         ? pole_image(m, e.point)
                                         : pole_image(m, ProjectivePoint::finite(e.point.value));
            bool found = false;
            for (const auto& a : after.entries) {
                if (a.order != e.order) continue;
                if (a.point.infinite && target.infinite) found = true;
                if (!a.point.infinite && !target.infinite &&
                    canonical_key(a.point.value) == canonical_key(target.value))
                    found = true;
            }
            CHECK(found);
        }
    }
}

TEST_CASE("as_reduce") {
    FieldPtr f3 = Field::canonical(3, 1);

    auto r1 = as_reduce(3, rf(f3, {0, 1, 0, 1}));  // x^3 + x
    CHECK(r1.reduced == rf(f3, {0, 2}));
    CHECK(r1.witness == rf(f3, {0, 1}));

    auto r2 = as_reduce(3, rf(f3, {1, 0, 1}, {0, 0, 0, 1}));  // 1/x^3 + 1/x
    CHECK(r2.reduced == rf(f3, {2}, {0, 1}));
    CHECK(r2.witness == rf(f3, {1}, {0, 1}));

    CHECK_THROWS_AS(as_reduce(3, rf(f3, {0, 2, 0, 1})), TrivialCoverError);  // x^3 - x

    // idempotence and the witness identity on random inputs
    std::mt19937_64 g(53);
    FieldPtr f9 = Field::canonical(3, 2);
    for (int i = 0; i < 25; ++i) {
        Polynomial n(f9, {rand_elem(f9, g), rand_elem(f9, g), rand_elem(f9, g), rand_elem(f9, g),
                          rand_elem(f9, g)});
        Polynomial d(f9, {rand_elem(f9, g), rand_elem(f9, g), FieldElement::one(f9)});
        if (n.is_zero()) continue;
        RationalFunction f(n, d);
        if (f.is_zero()) continue;
        AsReduction red;
        try {
            red = as_reduce(3, f);
        } catch (const TrivialCoverError&) {
            continue;
        }
        CHECK(red.reduced + (red.witness.pow(3) - red.witness) == f);
        for (const auto& e : pole_profile(red.reduced).entries) CHECK(e.order % 3 != 0);
        auto again = as_reduce(3, red.reduced);
        CHECK(again.reduced == red.reduced);
        CHECK(again.witness.is_zero());
    }
}

TEST_CASE("make_curve genus and p-rank") {
    FieldPtr f3 = Field::canonical(3, 1);
    auto c1 = ArtinSchreierCurve::make(3, rf(f3, {0, 0, 1, 0, 1}));  // x^4 + x^2
    CHECK(c1.genus() == 3);
    CHECK(c1.p_rank() == 0);
    CHECK(c1.partition() == std::vector<int>{5});

    FieldPtr f5 = Field::canonical(5, 1);
    auto c2 = ArtinSchreierCurve::make(5, rf(f5, {1, 0, 1}, {0, 1}));  // x + 1/x
    CHECK(c2.genus() == 4);
    CHECK(c2.p_rank() == 4);
    CHECK(c2.partition() == std::vector<int>{2, 2});

    FieldPtr f7 = Field::canonical(7, 1);
    auto c3 = ArtinSchreierCurve::make(7, rf(f7, {0, 0, 1}));  // x^2
    CHECK(c3.genus() == 3);
    CHECK(c3.p_rank() == 0);
    CHECK(c3.partition() == std::vector<int>{3});

    // 2*genus = (p-1)*D and p_rank = (poles-1)(p-1), exactly
    std::mt19937_64 g(59);
    for (int i = 0; i < 20; ++i) {
        Polynomial n(f3, {rand_elem(f3, g), rand_elem(f3, g), rand_elem(f3, g), rand_elem(f3, g),
                          FieldElement::one(f3)});
        Polynomial d(f3, {rand_elem(f3, g), rand_elem(f3, g), FieldElement::one(f3)});
        RationalFunction f(n, d);
        ArtinSchreierCurve c;
        try {
            c = ArtinSchreierCurve::make(3, f);
        } catch (const TrivialCoverError&) {
            continue;
        }
        long D = -2;
        for (const auto& e : c.profile().entries) D += e.order + 1;
        CHECK(2 * c.genus() == (3 - 1) * D);
        CHECK(c.p_rank() == (static_cast<long>(c.profile().entries.size()) - 1) * 2);
        // stored f is constant-free
        auto [poly, rest] = c.f().split_polynomial_part();
        CHECK(poly.coeff(0).is_zero());
    }
}

TEST_CASE("record composition and inversion") {
    FieldPtr f9 = Field::canonical(3, 2);
    std::mt19937_64 g(61);
    RationalFunction base = rf(f9, {0, 1, 0, 0, 1});  // x^4 + x
    auto c = ArtinSchreierCurve::make(3, base);
    for (int i = 0; i < 12; ++i) {
        IsomorphismRecord r1{FieldElement::from_int(f9, 1 + (i % 2)), rand_mobius(f9, g),
                             RationalFunction(Polynomial(f9, {rand_elem(f9, g), rand_elem(f9, g)}))};
        IsomorphismRecord r2{FieldElement::from_int(f9, 1 + ((i + 1) % 2)), rand_mobius(f9, g),
                             RationalFunction(Polynomial(f9, {rand_elem(f9, g)}))};
        auto one_by_one = apply_isomorphism(r2, apply_isomorphism(r1, c));
        auto composite = apply_isomorphism(compose(r1, r2), c);
        CHECK(same_curve(one_by_one, composite));
        auto back = apply_isomorphism(inverse(r1), apply_isomorphism(r1, c));
        CHECK(same_curve(back, c));
        CHECK(same_curve(apply_isomorphism(IsomorphismRecord::identity(f9), c), c));
    }
}

TEST_CASE("apply_isomorphism worked example") {
    // x^4 - x^2 with scaling by t (t^2 = 2) gives x^4 + x^2
    FieldPtr f9 = Field::canonical(3, 2);
    auto c = ArtinSchreierCurve::make(3, rf(f9, {0, 0, 2, 0, 1}));  // x^4 - x^2
    auto t = FieldElement::generator(f9);
    IsomorphismRecord r{FieldElement::one(f9), MobiusTransform::scaling(t), RationalFunction::zero(f9)};
    auto out = apply_isomorphism(r, c);
    CHECK(out.f() == rf(f9, {0, 0, 1, 0, 1}));
    CHECK(out.genus() == 3);
}
