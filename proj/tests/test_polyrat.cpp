#include "doctest.h"

#include <algorithm>
#include <random>

#include "ascurves/polyrat.hpp"

using namespace ascurves;

namespace {

FieldElement rand_elem(const FieldPtr& f, std::mt19937_64& g) {
    std::uniform_int_distribution<std::int64_t> d(0, f->characteristic() - 1);
    std::vector<std::int64_t> c(static_cast<std::size_t>(f->degree()));
    for (auto& v : c) v = d(g);
    return FieldElement::from_coeffs(f, c);
}

Polynomial rand_poly(const FieldPtr& f, int deg, std::mt19937_64& g) {
    std::vector<FieldElement> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rand_elem(f, g));
    return Polynomial(f, std::move(c));
}

// Exhaustive root oracle for small fields.
std::vector<FieldElement> brute_roots(const Polynomial& f) {
    std::vector<FieldElement> out;
    const FieldPtr& F = f.field();
    std::vector<std::int64_t> c(static_cast<std::size_t>(F->degree()), 0);
    while (true) {
        auto x = FieldElement::from_coeffs(F, c);
        if (f.eval(x).is_zero()) out.push_back(x);
        int i = 0;
        while (i < F->degree()) {
            if (++c[static_cast<std::size_t>(i)] < F->characteristic()) break;
            c[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == F->degree()) break;
    }
    std::sort(out.begin(), out.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.coeffs() < b.coeffs(); });
    return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    FieldPtr f3 = Field::canonical(3, 1);
    // gcd(x^2-1, x^2+x) = x+1; both factor by exhaustive root search
    Polynomial a = Polynomial::from_ints(f3, {-1, 0, 1});
    Polynomial b = Polynomial::from_ints(f3, {0, 1, 1});
    CHECK(gcd(a, b) == Polynomial::from_ints(f3, {1, 1}));

    // derivative of x^4+x^3 over F_3 is x^3 (4x^3 + 3x^2 = x^3)
    Polynomial c = Polynomial::from_ints(f3, {0, 0, 0, 1, 1});
    CHECK(c.derivative() == Polynomial::from_ints(f3, {0, 0, 0, 1}));

    // eval x^2+1 at t in F_9 is 0
    FieldPtr f9 = Field::canonical(3, 2);
    Polynomial d = Polynomial::from_ints(f9, {1, 0, 1});
    CHECK(d.eval(FieldElement::generator(f9)).is_zero());

    // divrem contract
    std::mt19937_64 g(3);
    for (int i = 0; i < 40; ++i) {
        Polynomial u = rand_poly(f9, 6, g);
        Polynomial v = rand_poly(f9, 3, g);
        if (v.is_zero()) continue;
        auto [q, r] = u.divrem(v);
        CHECK(q * v + r == u);
        CHECK(r.degree() < v.degree());
    }
    CHECK_THROWS_AS(a.divrem(Polynomial::zero(f3)), DivisionByZeroError);

    // compose
    Polynomial xp1 = Polynomial::from_ints(f3, {1, 1});
    CHECK(Polynomial::from_ints(f3, {0, 0, 1}).compose(xp1) == Polynomial::from_ints(f3, {1, 2, 1}));
}

TEST_CASE("rational function reduction invariants") {
    FieldPtr f3 = Field::canonical(3, 1);
    // (x^2-1)/(x+1) reduces to x-1
    RationalFunction r(Polynomial::from_ints(f3, {-1, 0, 1}), Polynomial::from_ints(f3, {1, 1}));
    CHECK(r.den().degree() == 0);
    CHECK(r.num() == Polynomial::from_ints(f3, {-1, 1}));

    // denominator is always monic
    RationalFunction s(Polynomial::from_ints(f3, {1}), Polynomial::from_ints(f3, {0, 2}));
    CHECK(s.den().is_monic());
    CHECK(s.num() == Polynomial::from_ints(f3, {2}));  // 1/(2x) = 2/x

    CHECK_THROWS_AS(RationalFunction(Polynomial::from_ints(f3, {1}), Polynomial::zero(f3)),
                    DivisionByZeroError);

    std::mt19937_64 g(5);
    FieldPtr f9 = Field::canonical(3, 2);
    for (int i = 0; i < 40; ++i) {
        Polynomial n1 = rand_poly(f9, 4, g), d1 = rand_poly(f9, 3, g);
        if (d1.is_zero()) continue;
        RationalFunction u(n1, d1);
        CHECK(u.den().is_monic());
        if (!u.is_zero()) CHECK(gcd(u.num(), u.den()).degree() == 0);
        // field arithmetic identity: u - u = 0, u * inv(u) = 1
        CHECK((u - u).is_zero());
        if (!u.is_zero()) CHECK(u / u == RationalFunction::constant(FieldElement::one(f9)));
    }
}

TEST_CASE("roots_with_multiplicity") {
    FieldPtr f3 = Field::canonical(3, 1);
    Polynomial x2p1 = Polynomial::from_ints(f3, {1, 0, 1});

    // no roots in F_3 (exhaustive check is the oracle)
    CHECK(brute_roots(x2p1).empty());
    auto r0 = roots_with_multiplicity(x2p1, false);
    CHECK(r0.roots.empty());

    // with extension: {(t,1),(2t,1)} in F_9
    auto r1 = roots_with_multiplicity(x2p1, true);
    REQUIRE(r1.roots.size() == 2);
    CHECK(r1.ext.target->degree() == 2);
    CHECK(r1.roots[0].first == FieldElement::generator(r1.ext.target));
    CHECK(r1.roots[0].second == 1);
    CHECK(r1.roots[1].second == 1);

    // x^2 has the double root 0
    auto r2 = roots_with_multiplicity(Polynomial::from_ints(f3, {0, 0, 1}), false);
    REQUIRE(r2.roots.size() == 1);
    CHECK(r2.roots[0].first.is_zero());
    CHECK(r2.roots[0].second == 2);

    CHECK_THROWS_AS(roots_with_multiplicity(Polynomial::zero(f3), false), ZeroPolynomialError);

    // engine agrees with the exhaustive oracle on random polynomials
    std::mt19937_64 g(7);
    for (const auto& F : {Field::canonical(3, 1), Field::canonical(3, 2), Field::canonical(5, 1)}) {
        for (int i = 0; i < 25; ++i) {
            Polynomial f = rand_poly(F, 5, g);
            if (f.is_zero()) continue;
            auto oracle = brute_roots(f);
            auto got = roots_with_multiplicity(f, false);
            REQUIRE(got.roots.size() == oracle.size());
            for (std::size_t j = 0; j < oracle.size(); ++j) CHECK(got.roots[j].first == oracle[j]);
        }
    }

    // splitting-field reconstruction: product of (x-r)^m times lead equals f
    for (int i = 0; i < 15; ++i) {
        FieldPtr F = Field::canonical(3, 1);
        Polynomial f = rand_poly(F, 6, g);
        if (f.degree() < 1) continue;
        auto rr = roots_with_multiplicity(f, true);
        Polynomial fe = rr.ext.is_identity() ? f : embed(f, rr.ext);
        Polynomial prod = Polynomial::constant(fe.leading());
        int total = 0;
        for (const auto& [root, mult] : rr.roots) {
            Polynomial lin(fe.field(), {-root, FieldElement::one(fe.field())});
            prod = prod * lin.pow(mult);
            total += mult;
        }
        CHECK(total == f.degree());
        CHECK(prod == fe);
    }
}

TEST_CASE("factorize reassembles and finds irreducibles") {
    std::mt19937_64 g(31);
    for (const auto& F : {Field::canonical(3, 1), Field::canonical(3, 2), Field::canonical(7, 1)}) {
        for (int i = 0; i < 25; ++i) {
            Polynomial f = rand_poly(F, 7, g);
            if (f.degree() < 1) continue;
            auto fac = factorize(f);
            Polynomial prod = Polynomial::constant(fac.lead);
            for (const auto& [q, m] : fac.factors) {
                CHECK(q.is_monic());
                prod = prod * q.pow(m);
            }
            CHECK(prod == f);
        }
    }
    // a p-th power factors correctly
    FieldPtr f3 = Field::canonical(3, 1);
    Polynomial q = Polynomial::from_ints(f3, {1, 0, 1});  // irreducible
    auto fac = factorize(q.pow(3));
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].first == q);
    CHECK(fac.factors[0].second == 3);
}

TEST_CASE("pole_profile") {
    FieldPtr f3 = Field::canonical(3, 1);

    // x^4+x^2: single pole at infinity of order 4
    RationalFunction f1(Polynomial::from_ints(f3, {0, 0, 1, 0, 1}));
    auto p1 = pole_profile(f1);
    REQUIRE(p1.entries.size() == 1);
    CHECK(p1.entries[0].point.infinite);
    CHECK(p1.entries[0].order == 4);

    // (x^3+1)/x^2 = (x+1)^3/x^2: poles P_0 order 2 and P_inf order 1
    RationalFunction f2(Polynomial::from_ints(f3, {1, 0, 0, 1}), Polynomial::from_ints(f3, {0, 0, 1}));
    auto p2 = pole_profile(f2);
    REQUIRE(p2.entries.size() == 2);
    CHECK(!p2.entries[0].point.infinite);
    CHECK(p2.entries[0].point.value.is_zero());
    CHECK(p2.entries[0].order == 2);
    CHECK(p2.entries[1].point.infinite);
    CHECK(p2.entries[1].order == 1);

    // constants have an empty profile
    auto p3 = pole_profile(RationalFunction::constant(FieldElement::one(f3)));
    CHECK(p3.entries.empty());

    // order bookkeeping on random inputs
    std::mt19937_64 g(41);
    for (int i = 0; i < 20; ++i) {
        Polynomial n = rand_poly(f3, 5, g), d = rand_poly(f3, 3, g);
        if (n.is_zero() || d.is_zero()) continue;
        RationalFunction f(n, d);
        if (f.is_zero()) continue;
        auto prof = pole_profile(f);
        int inf_order = std::max(0, f.num().degree() - f.den().degree());
        CHECK(prof.total_finite_order() == f.den().degree());
        int got_inf = 0;
        for (const auto& e : prof.entries)
            if (e.point.infinite) got_inf = e.order;
        CHECK(got_inf == inf_order);
    }
}

TEST_CASE("principal_parts") {
    FieldPtr f3 = Field::canonical(3, 1);

    // 1/(x^3-x) = -1/x + 2/(x-1) + 2/(x+1) over F_3
    RationalFunction f1(Polynomial::from_ints(f3, {1}), Polynomial::from_ints(f3, {0, -1, 0, 1}));
    auto pp1 = principal_parts(f1);
    CHECK(pp1.poly.is_zero());
    REQUIRE(pp1.parts.size() == 3);
    // parts sorted by point: 0, 1, 2
    CHECK(pp1.parts[0].point.value.is_zero());
    CHECK(pp1.parts[0].coeffs == std::vector<FieldElement>{FieldElement::from_int(f3, 2)});
    CHECK(pp1.parts[1].point.value == FieldElement::one(f3));
    CHECK(pp1.parts[1].coeffs == std::vector<FieldElement>{FieldElement::from_int(f3, 2)});
    CHECK(pp1.parts[2].point.value == FieldElement::from_int(f3, 2));
    CHECK(pp1.parts[2].coeffs == std::vector<FieldElement>{FieldElement::from_int(f3, 2)});
    CHECK(pp1.recombine() == f1);

    // x^2 + 1/x
    RationalFunction f2(Polynomial::from_ints(f3, {1, 0, 0, 1}), Polynomial::from_ints(f3, {0, 1}));
    auto pp2 = principal_parts(f2);
    CHECK(pp2.poly == Polynomial::from_ints(f3, {0, 0, 1}));
    REQUIRE(pp2.parts.size() == 1);
    CHECK(pp2.parts[0].coeffs == std::vector<FieldElement>{FieldElement::one(f3)});

    // (x^2+1)/x^2 -> poly part 1, part 1/x^2
    RationalFunction f3r(Polynomial::from_ints(f3, {1, 0, 1}), Polynomial::from_ints(f3, {0, 0, 1}));
    auto pp3 = principal_parts(f3r);
    CHECK(pp3.poly == Polynomial::from_ints(f3, {1}));
    REQUIRE(pp3.parts.size() == 1);
    REQUIRE(pp3.parts[0].coeffs.size() == 2);
    CHECK(pp3.parts[0].coeffs[0].is_zero());
    CHECK(pp3.parts[0].coeffs[1].is_one());

    // reconstruction property on random inputs (including irrational poles)
    std::mt19937_64 g(43);
    FieldPtr f9 = Field::canonical(3, 2);
    for (const auto& F : {f3, f9}) {
        for (int i = 0; i < 20; ++i) {
            Polynomial n = rand_poly(F, 4, g), d = rand_poly(F, 4, g);
            if (n.is_zero() || d.is_zero()) continue;
            RationalFunction f(n, d);
            if (f.is_zero()) continue;
            auto pp = principal_parts(f);
            RationalFunction fe = pp.ext.is_identity() ? f : embed(f, pp.ext);
            CHECK(pp.recombine() == fe);
        }
    }
}

TEST_CASE("roots of unity") {
    FieldPtr f9 = Field::canonical(3, 2);
    auto mu4 = roots_of_unity(f9, 4);
    REQUIRE(mu4.size() == 4);
    for (const auto& z : mu4) CHECK(z.pow(4).is_one());
    CHECK(splitting_degree_for_roots_of_unity(Field::canonical(3, 1), 4) == 2);
    CHECK(splitting_degree_for_roots_of_unity(Field::canonical(3, 1), 10) == 4);
    CHECK(splitting_degree_for_roots_of_unity(Field::canonical(5, 1), 12) == 2);
}
