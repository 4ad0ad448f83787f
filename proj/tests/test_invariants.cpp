#include "doctest.h"

#include <random>

#include "ascurves/invariants.hpp"

using namespace ascurves;

namespace {

FieldElement rand_elem(const FieldPtr& f, std::mt19937_64& g) {
    std::uniform_int_distribution<std::int64_t> d(0, f->characteristic() - 1);
    std::vector<std::int64_t> c(static_cast<std::size_t>(f->degree()));
    for (auto& v : c) v = d(g);
    return FieldElement::from_coeffs(f, c);
}

FieldElement rand_nonzero(const FieldPtr& f, std::mt19937_64& g) {
    while (true) {
        auto e = rand_elem(f, g);
        if (!e.is_zero()) return e;
    }
}

// admissible random coefficient tuple for a reference stratum
std::vector<FieldElement> rand_tuple(const StratumDescriptor& st, const FieldPtr& f,
                                     std::mt19937_64& g) {
    if (st == make_stratum(3, std::vector<int>{5})) return {rand_elem(f, g)};
    if (st == make_stratum(3, std::vector<int>{3, 2})) return {rand_elem(f, g), rand_nonzero(f, g)};
    if (st == make_stratum(7, std::vector<int>{3})) return {};
    if (st == make_stratum(3, std::vector<int>{6})) return {rand_elem(f, g), rand_elem(f, g)};
    if (st == make_stratum(3, std::vector<int>{3, 3}))
        return {rand_elem(f, g), rand_elem(f, g), rand_nonzero(f, g)};
    if (st == make_stratum(3, std::vector<int>{2, 2, 2}))
        return {rand_nonzero(f, g), rand_nonzero(f, g), rand_nonzero(f, g)};
    if (st == make_stratum(5, std::vector<int>{4})) return {rand_elem(f, g)};
    return {rand_nonzero(f, g)};
}

std::vector<StratumDescriptor> reference_strata() {
    return {make_stratum(3, {5}),    make_stratum(3, {3, 2}),    make_stratum(7, {3}),
            make_stratum(3, {6}),    make_stratum(3, {3, 3}),    make_stratum(3, {2, 2, 2}),
            make_stratum(5, {4}),    make_stratum(5, {2, 2})};
}

}  // namespace

TEST_CASE("invariant values match the table") {
    FieldPtr f3 = Field::canonical(3, 1);
    auto one = FieldElement::one(f3);
    auto two = FieldElement::from_int(f3, 2);

    // single pole of order 4, a = 1 and a = 2 share I1 = 1
    auto v1 = invariant_values(make_stratum(3, {5}), {one});
    CHECK(v1[0].second.is_one());
    auto v2 = invariant_values(make_stratum(3, {5}), {two});
    CHECK(v2[0].second.is_one());  // 16 = 1 mod 3

    // single pole of order 5, (c,d) = (0,1): reduced pair (1,0), vector (1,0,0)
    auto v3 = invariant_values(make_stratum(3, {6}), {FieldElement::zero(f3), one});
    CHECK(v3[0].second.is_one());
    CHECK(v3[1].second.is_zero());
    CHECK(v3[2].second.is_zero());

    // three poles of order 1, (2,1,1): all of I2, I3, I4 vanish
    auto v4 = invariant_values(make_stratum(3, {2, 2, 2}), {two, one, one});
    CHECK(v4[0].second.is_one());   // (abc)^2 = 4 = 1
    CHECK(v4[1].second.is_zero());
    CHECK(v4[2].second.is_zero());
    CHECK(v4[3].second.is_zero());
}

TEST_CASE("check_relations") {
    FieldPtr f3 = Field::canonical(3, 1);
    auto one = FieldElement::one(f3);
    auto two = FieldElement::from_int(f3, 2);

    auto s32 = make_stratum(3, {3, 2});
    CHECK(check_relations(make_invariants(s32, {{"I1", one}, {"I2", one}, {"I3", one}})));
    CHECK(!check_relations(make_invariants(s32, {{"I1", one}, {"I2", one}, {"I3", two}})));

    auto s222 = make_stratum(3, {2, 2, 2});
    auto v = invariant_values(s222, {one, one, two});
    CHECK(check_relations(make_invariants(s222, v)));

    // identities hold on random tuples, exactly
    std::mt19937_64 g(101);
    for (const auto& st : reference_strata()) {
        FieldPtr f = Field::canonical(st.p, 2);
        for (int i = 0; i < 100; ++i) {
            auto tuple = rand_tuple(st, f, g);
            CHECK(check_relations(make_invariants(st, invariant_values(st, tuple))));
        }
    }
}

TEST_CASE("reconstruction worked examples") {
    FieldPtr f3 = Field::canonical(3, 1);
    FieldPtr f5 = Field::canonical(5, 1);
    auto one3 = FieldElement::one(f3);

    auto st1 = make_stratum(3, {5});
    auto s1 = reconstruct(st1, make_invariants(st1, {{"I1", one3}}));
    CHECK(s1.coefficient("a").pow(4).is_one());

    auto st2 = make_stratum(3, {3, 2});
    auto s2 = reconstruct(st2, make_invariants(st2, {{"I1", one3}, {"I2", one3}, {"I3", one3}}));
    CHECK(s2.coefficient("a").is_one());
    CHECK(s2.coefficient("b").is_one());

    auto st3 = make_stratum(5, {2, 2});
    auto s3 = reconstruct(st3, make_invariants(st3, {{"I1", FieldElement::from_int(f5, 4)}}));
    CHECK(s3.coefficient("a") == FieldElement::from_int(s3.curve.field(), 2));

    // inconsistent values are rejected
    CHECK_THROWS_AS(reconstruct(st2, make_invariants(st2, {{"I1", one3},
                                                           {"I2", one3},
                                                           {"I3", FieldElement::from_int(f3, 2)}})),
                    InconsistentValuesError);
}

TEST_CASE("reconstruction soundness on random vectors") {
    std::mt19937_64 g(103);
    for (const auto& st : reference_strata()) {
        FieldPtr f = Field::canonical(st.p, 2);
        for (int i = 0; i < 12; ++i) {
            auto tuple = rand_tuple(st, f, g);
            StandardFormCurve s;
            try {
                s = standard_form_from_coefficients(st, tuple);
            } catch (const InconsistentValuesError&) {
                continue;  // degenerate tuple fell out of the stratum
            }
            InvariantVector v = invariants_of(s);
            StandardFormCurve back = reconstruct(st, v);
            CHECK(same_invariants(invariants_of(back), v));
        }
    }
}
