#include "doctest.h"

#include <fstream>
#include <sstream>

#include "ascurves/report.hpp"

using namespace ascurves;

namespace {

std::string golden(const std::string& name) {
    std::ifstream in(std::string(ASCURVES_TEST_DIR) + "/golden/" + name);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("parse_curve basics") {
    auto s1 = parse_curve("p=3\nf=x^4+2*x^2");
    CHECK(s1.p == 3);
    CHECK(s1.field->is_prime_field());
    CHECK(s1.f == RationalFunction(Polynomial::from_ints(s1.field, {0, 0, 2, 0, 1})));

    auto s2 = parse_curve("p=3\nfield=t^2+1\nf=(x^2+t)/(x-t)");
    CHECK(s2.field->degree() == 2);
    CHECK(s2.f.den().degree() == 1);

    CHECK_THROWS_AS(parse_curve("p=4\nf=x"), NotPrimeError);
    CHECK_THROWS_AS(parse_curve("p=3\nf=t+x"), UndeclaredGeneratorError);
    CHECK_THROWS_AS(parse_curve("p=3\nfield=t^2+t\nf=x"), NotIrreducibleError);
    CHECK_THROWS_AS(parse_curve("p=3\nf=x+*2"), ParseError);
    CHECK_THROWS_AS(parse_curve("f=x"), ParseError);

    // comments and separators
    auto s3 = parse_curve("# a curve\np=3  # odd\nf = x^2 + 1/x");
    CHECK(s3.f.den() == Polynomial::from_ints(s3.field, {0, 1}));

    // factored denominators
    auto s4 = parse_curve("p=3\nf=1/((x-1)^2*(x+1))");
    CHECK(s4.f.den().degree() == 3);
}

TEST_CASE("parse, print, parse is the identity") {
    for (const char* text : {"p=3\nf=x^4+x^2", "p=3\nfield=t^2+1\nf=(x^2+t*x)/(x^2+1)",
                             "p=5\nf=x+2/x", "p=7\nf=x^2"}) {
        auto a = parse_curve(text);
        auto b = parse_curve(a.to_string());
        CHECK(a.p == b.p);
        CHECK(a.field->same_as(*b.field));
        CHECK(a.f == b.f);
        CHECK(a.to_string() == b.to_string());
    }
}

TEST_CASE("strata golden fixtures") {
    CHECK(report_strata(3, 3, false) == golden("strata_g3_p3.txt"));
    CHECK(report_strata(3, 7, false) == golden("strata_g3_p7.txt"));
    CHECK(report_strata(4, 3, false) == golden("strata_g4_p3.txt"));
    CHECK(report_strata(4, 5, false) == golden("strata_g4_p5.txt"));
}

TEST_CASE("classify report") {
    auto spec = parse_curve("p=3\nf=x^4+x^2");
    std::string text = report_classify(spec, false);
    CHECK(text.find("stratum: g=3 p=3 s=0 E={5} dim=1") != std::string::npos);
    CHECK(text.find("a=1") != std::string::npos);
    CHECK(text.find("I1=1") != std::string::npos);
    CHECK(text.find("exceptional: none") != std::string::npos);

    std::string j = report_classify(spec, true);
    CHECK(j.find("\"I1\": \"1\"") != std::string::npos);

    // strata subcommand example: two rows for (4, 5)
    std::string s = report_strata(4, 5, false);
    CHECK(s.find("E={4} dim=1") != std::string::npos);
    CHECK(s.find("E={2,2} dim=1") != std::string::npos);
}

TEST_CASE("isomorphic report") {
    auto a = parse_curve("p=3\nf=x^4-x^2");
    auto b = parse_curve("p=3\nf=x^4+x^2");
    std::string text = report_isomorphic(a, b, false);
    CHECK(text.find("isomorphic: yes") != std::string::npos);
    CHECK(text.find("witness:") != std::string::npos);
}
