#include "doctest.h"

#include <random>

#include "ascurves/standard.hpp"

using namespace ascurves;

namespace {

FieldElement rand_elem(const FieldPtr& f, std::mt19937_64& g) {
    std::uniform_int_distribution<std::int64_t> d(0, f->characteristic() - 1);
    std::vector<std::int64_t> c(static_cast<std::size_t>(f->degree()));
    for (auto& v : c) v = d(g);
    return FieldElement::from_coeffs(f, c);
}

RationalFunction rf(const FieldPtr& f, const std::vector<std::int64_t>& num,
                    const std::vector<std::int64_t>& den = {1}) {
    return RationalFunction(Polynomial::from_ints(f, num), Polynomial::from_ints(f, den));
}

}  // namespace

TEST_CASE("eliminate_p_powers") {
    FieldPtr f3 = Field::canonical(3, 1);

    auto [g1, h1] = eliminate_p_powers(rf(f3, {0, 1, 0, 1, 1}));  // x^4+x^3+x
    CHECK(g1 == rf(f3, {0, 2, 0, 0, 1}));                         // x^4+2x
    CHECK(h1 == rf(f3, {0, 1}));                                   // x

    auto [g2, h2] = eliminate_p_powers(rf(f3, {0, 0, 0, 0, 1}));  // x^4
    CHECK(g2 == rf(f3, {0, 0, 0, 0, 1}));
    CHECK(h2.is_zero());

    // x^2 + 1/x^3 + 1/x = (x^5 + x^2 + 1)/x^3
    auto [g3, h3] = eliminate_p_powers(rf(f3, {1, 0, 1, 0, 0, 1}, {0, 0, 0, 1}));
    CHECK(g3 == rf(f3, {2, 0, 0, 1}, {0, 1}));  // x^2 + 2/x
    CHECK(h3 == rf(f3, {1}, {0, 1}));            // 1/x

    // identity g = f - (h^p - h) on random inputs with poles at infinity
    // (order 4) and at 0 (order at most 2)
    std::mt19937_64 rg(67);
    for (int i = 0; i < 20; ++i) {
        Polynomial poly(f3, {FieldElement::zero(f3), rand_elem(f3, rg), rand_elem(f3, rg),
                             rand_elem(f3, rg), FieldElement::one(f3)});
        RationalFunction f =
            RationalFunction(poly) +
            RationalFunction(Polynomial(f3, {rand_elem(f3, rg), rand_elem(f3, rg)}),
                             Polynomial::from_ints(f3, {0, 0, 1}));
        auto [g, h] = eliminate_p_powers(f);
        CHECK(g + (h.pow(3) - h) == f);
        auto pp = principal_parts(g);
        for (int e = 3; e <= pp.poly.degree(); e += 3) CHECK(pp.poly.coeff(e).is_zero());
        for (const auto& part : pp.parts)
            for (std::size_t j = 3; j <= part.coeffs.size(); j += 3) CHECK(part.coeffs[j - 1].is_zero());
    }
}

TEST_CASE("normalize_single_pole") {
    FieldPtr f3 = Field::canonical(3, 1);

    // x^4+x^3: g = x^4, beta = 1, h = 2x + b0 with b0^3-b0 = 2
    auto n1 = normalize_single_pole(3, Polynomial::from_ints(f3, {0, 0, 0, 1, 1}));
    CHECK(n1.beta == FieldElement::one(f3));
    CHECK(n1.g == Polynomial::from_ints(f3, {0, 0, 0, 0, 1}));
    CHECK(n1.h.coeff(1) == FieldElement::from_int(n1.h.field(), 2));
    FieldElement b0 = n1.h.coeff(0);
    CHECK(b0.pow(3) - b0 == FieldElement::from_int(b0.field(), 2));
    CHECK(n1.h.field()->degree() == 3);  // b0 needs the cubic extension

    // x^4+x^2 is already normalized: beta = 0
    auto n2 = normalize_single_pole(3, Polynomial::from_ints(f3, {0, 0, 1, 0, 1}));
    CHECK(n2.beta.is_zero());
    CHECK(n2.g == Polynomial::from_ints(f3, {0, 0, 1, 0, 1}));

    // p = 7: complete the square on x^2+x
    FieldPtr f7 = Field::canonical(7, 1);
    auto n3 = normalize_single_pole(7, Polynomial::from_ints(f7, {0, 1, 1}));
    CHECK(n3.beta == FieldElement::from_int(f7, 3));  // -1/2 mod 7
    CHECK(n3.g == Polynomial::from_ints(f7, {0, 0, 1}));
    CHECK(n3.h.degree() <= 0);

    CHECK_THROWS_AS(normalize_single_pole(3, Polynomial::from_ints(f3, {1, 0, 0, 0, 1}).scale(
                                                 FieldElement::from_int(f3, 2))),
                    NotMonicError);
    CHECK_THROWS_AS(normalize_single_pole(3, Polynomial::from_ints(f3, {1, 0, 0, 1})),
                    DegreeDivisibleByPError);
    // degree >= p^2 is gated
    std::vector<std::int64_t> big(11, 0);
    big[10] = 1;
    big[1] = 1;
    CHECK_THROWS_AS(normalize_single_pole(3, Polynomial::from_ints(f3, big)), UnsupportedNestingError);

    // defining identity g = f(x+beta) - (h^p - h) on random monic inputs
    std::mt19937_64 rg(71);
    FieldPtr f9 = Field::canonical(3, 2);
    for (int i = 0; i < 15; ++i) {
        std::vector<FieldElement> c;
        for (int j = 0; j < 5; ++j) c.push_back(rand_elem(f9, rg));
        c.push_back(FieldElement::one(f9));
        Polynomial f(f9, c);  // monic degree 5
        auto n = normalize_single_pole(3, f);
        const FieldPtr& FH = n.h.field();
        Polynomial fe = embed(f, n.ext);
        if (!fe.field()->same_as(*FH)) fe = embed(fe, make_extension(fe.field(), FH));
        Polynomial beta_x(FH, {n.beta.field()->same_as(*FH)
                                   ? n.beta
                                   : embed(n.beta, make_extension(n.beta.field(), FH)),
                               FieldElement::one(FH)});
        Polynomial ge = n.g.field()->same_as(*FH) ? n.g : embed(n.g, make_extension(n.g.field(), FH));
        CHECK(fe.compose(beta_x) - (n.h.pow(3) - n.h) == ge);
        CHECK(ge.coeff(1).is_zero());
        CHECK(ge.coeff(0).is_zero());
        CHECK(ge.coeff(3).is_zero());
        CHECK(ge.is_monic());
    }
}

TEST_CASE("standardize worked examples") {
    FieldPtr f3 = Field::canonical(3, 1);

    // 1/(x-1)^4 standardizes to x^4 with a = 0
    auto s1 = standardize(ArtinSchreierCurve::make(3, rf(f3, {1}, {1, 2, 0, 2, 1})));  // (x-1)^4
    CHECK(s1.form.stratum == make_stratum(3, {5}));
    CHECK(s1.form.curve.f() == rf(Field::canonical(3, 1), {0, 0, 0, 0, 1}));
    CHECK(s1.form.coefficient("a").is_zero());

    // 2x^2+x+1/x standardizes to x^2 + t x + 2t/x over F_9
    auto s2 = standardize(ArtinSchreierCurve::make(3, rf(f3, {1, 0, 1, 2}, {0, 1})));
    CHECK(s2.form.stratum == make_stratum(3, {3, 2}));
    FieldPtr f9 = s2.form.curve.field();
    CHECK(f9->degree() == 2);
    auto t = FieldElement::generator(f9);
    CHECK(s2.form.coefficient("a") == t);
    CHECK(s2.form.coefficient("b") == t + t);

    // x^4+x^3 standardizes to x^4
    auto s3 = standardize(ArtinSchreierCurve::make(3, rf(f3, {0, 0, 0, 1, 1})));
    CHECK(s3.form.curve.f() == rf(Field::canonical(3, 1), {0, 0, 0, 0, 1}));

    // x^4+x^2 is already standard
    auto s4 = standardize(ArtinSchreierCurve::make(3, rf(f3, {0, 0, 1, 0, 1})));
    CHECK(s4.form.curve.f() == rf(f3, {0, 0, 1, 0, 1}));
    CHECK(s4.form.coefficient("a").is_one());
    CHECK(s4.transcript.mobius.is_identity());

    // x + 1/x over F_5
    FieldPtr f5 = Field::canonical(5, 1);
    auto s5 = standardize(ArtinSchreierCurve::make(5, rf(f5, {1, 0, 1}, {0, 1})));
    CHECK(s5.form.stratum == make_stratum(5, {2, 2}));
    CHECK(s5.form.coefficient("a").is_one());
}

TEST_CASE("free coefficient counts equal stratum dimensions") {
    // one sample standard form per reference stratum
    FieldPtr f3 = Field::canonical(3, 1);
    FieldPtr f5 = Field::canonical(5, 1);
    FieldPtr f7 = Field::canonical(7, 1);
    auto one3 = FieldElement::one(f3);
    auto one5 = FieldElement::one(f5);
    auto two3 = FieldElement::from_int(f3, 2);

    std::vector<StandardFormCurve> samples = {
        standard_form_from_coefficients(make_stratum(3, {5}), {one3}),
        standard_form_from_coefficients(make_stratum(3, {3, 2}), {one3, one3}),
        standard_form_from_coefficients(make_stratum(7, {3}), {}),
        standard_form_from_coefficients(make_stratum(3, {6}), {one3, two3}),
        standard_form_from_coefficients(make_stratum(3, {3, 3}), {one3, one3, two3}),
        standard_form_from_coefficients(make_stratum(3, {2, 2, 2}), {two3, one3, one3}),
        standard_form_from_coefficients(make_stratum(5, {4}), {one5}),
        standard_form_from_coefficients(make_stratum(5, {2, 2}), {one5}),
    };
    for (const auto& s : samples) {
        CHECK(free_coefficient_count(s) == s.stratum.dimension);
        validate_standard_shape(s.stratum.p, s);
    }
    // structurally supported beyond the tabulated strata as well
    CHECK_THROWS_AS(standard_form_from_coefficients(make_stratum(3, {8}), {one3, one3, one3}),
                    UnsupportedStratumError);
}

TEST_CASE("standardize on random curves keeps the transcript honest") {
    std::mt19937_64 rg(73);
    FieldPtr f9 = Field::canonical(3, 2);
    int done = 0;
    for (int i = 0; i < 40 && done < 20; ++i) {
        Polynomial num(f9, {rand_elem(f9, rg), rand_elem(f9, rg), rand_elem(f9, rg), rand_elem(f9, rg),
                            rand_elem(f9, rg)});
        Polynomial den(f9, {rand_elem(f9, rg), rand_elem(f9, rg), FieldElement::one(f9)});
        RationalFunction f(num, den);
        if (f.is_zero()) continue;
        ArtinSchreierCurve c;
        try {
            c = ArtinSchreierCurve::make(3, f);
        } catch (const TrivialCoverError&) {
            continue;
        }
        // standardize verifies shape and transcript internally
        auto s = standardize(c);
        CHECK(s.form.stratum == c.stratum());
        CHECK(same_curve(apply_isomorphism(s.transcript, c), s.form.curve));
        // determinism
        auto s2 = standardize(c);
        CHECK(s.form.curve.f() == s2.form.curve.f());
        ++done;
    }
    CHECK(done >= 10);
}
