#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bigrade/grading.hpp>

using namespace bigrade;

TEST_CASE("pair monoid addition") {
    auto inst = MonoidInstance::n2_usual();
    CHECK(monoid_add(inst, GradeIndex::pair(1, 0), GradeIndex::pair(0, 1)) == GradeIndex::pair(1, 1));
    CHECK(monoid_add(inst, GradeIndex::pair(0, 0), GradeIndex::pair(3, 2)) == GradeIndex::pair(3, 2));
    CHECK_THROWS_AS(monoid_add(inst, GradeIndex::nat(1), GradeIndex::pair(0, 1)), InvalidIndex);
    CHECK_THROWS_AS(monoid_add(inst, GradeIndex::pair(-1, 0), GradeIndex::pair(0, 1)), InvalidIndex);
}

TEST_CASE("pair order variants") {
    auto usual = MonoidInstance::n2_usual();
    CHECK(monoid_leq(usual, GradeIndex::pair(1, 0), GradeIndex::pair(1, 2)) == OrderVerdict::LE);
    CHECK(monoid_leq(usual, GradeIndex::pair(1, 0), GradeIndex::pair(0, 1)) == OrderVerdict::Incomparable);
    CHECK(monoid_leq(usual, GradeIndex::pair(2, 2), GradeIndex::pair(2, 2)) == OrderVerdict::EQ);
    CHECK(monoid_leq(usual, GradeIndex::pair(3, 1), GradeIndex::pair(1, 1)) == OrderVerdict::GE);

    auto lex = MonoidInstance::n2_lex();
    CHECK(monoid_leq(lex, GradeIndex::pair(0, 5), GradeIndex::pair(1, 0)) == OrderVerdict::LE);
    CHECK(monoid_leq(lex, GradeIndex::pair(1, 1), GradeIndex::pair(1, 0)) == OrderVerdict::GE);

    auto total = MonoidInstance::n2_total();
    CHECK(monoid_leq(total, GradeIndex::pair(1, 2), GradeIndex::pair(2, 1)) == OrderVerdict::Incomparable);
    CHECK(monoid_leq(total, GradeIndex::pair(1, 1), GradeIndex::pair(2, 1)) == OrderVerdict::LE);
    CHECK(monoid_leq(total, GradeIndex::pair(1, 1), GradeIndex::pair(1, 1)) == OrderVerdict::EQ);
}

TEST_CASE("ordinal parsing and printing") {
    CHECK(parse_ordinal("w^2*3 + w*1 + 5").str() == "w^2*3 + w*1 + 5");
    CHECK(parse_ordinal("0").str() == "0");
    CHECK(parse_ordinal("7").str() == "7");
    CHECK(parse_ordinal("w").str() == "w*1");
    CHECK(parse_ordinal("w^(w*1)*2 + 1").str() == "w^(w*1)*2 + 1");
    CHECK(parse_ordinal("w^(w^2*1 + 1)*4").str() == "w^(w^2*1 + 1)*4");

    CHECK_THROWS_AS(parse_ordinal("w*1 + w*1"), ParseError);   // like terms not merged
    CHECK_THROWS_AS(parse_ordinal("1 + w*1"), ParseError);     // increasing exponents
    CHECK_THROWS_AS(parse_ordinal("w^2*0"), ParseError);       // zero coefficient
    CHECK_THROWS_AS(parse_ordinal("w^"), ParseError);
    CHECK_THROWS_AS(parse_ordinal("w*2 junk"), ParseError);
}

TEST_CASE("hessenberg sum") {
    auto o = [](const char* s) { return parse_ordinal(s); };
    CHECK(hessenberg_sum(o("0"), o("w^2*1 + 3")) == o("w^2*1 + 3"));
    CHECK(hessenberg_sum(o("w^2*1 + 3"), o("0")) == o("w^2*1 + 3"));
    CHECK(hessenberg_sum(o("w^2*1"), o("w*3 + 1")) == o("w^2*1 + w*3 + 1"));
    CHECK(hessenberg_sum(o("w"), o("w")) == o("w*2"));
    CHECK(hessenberg_sum(o("w*2 + 3"), o("w*1 + 4")) == o("w*3 + 7"));

    auto inst = MonoidInstance::ordinal();
    CHECK(monoid_add(inst, GradeIndex::ordinal(o("w*2 + 3")), GradeIndex::ordinal(o("w*1 + 4"))) ==
          GradeIndex::ordinal(o("w*3 + 7")));

    // commutative + associative + cancellative over the default sample
    auto sample = default_sample(inst);
    for (const auto& a : sample)
        for (const auto& b : sample) {
            CHECK(hessenberg_sum(a.ord, b.ord) == hessenberg_sum(b.ord, a.ord));
            for (const auto& c : sample) {
                CHECK(hessenberg_sum(hessenberg_sum(a.ord, b.ord), c.ord) ==
                      hessenberg_sum(a.ord, hessenberg_sum(b.ord, c.ord)));
                // cancellation: a#b = c#b => a = c
                if (hessenberg_sum(a.ord, b.ord) == hessenberg_sum(c.ord, b.ord)) CHECK(a.ord == c.ord);
            }
        }
}

TEST_CASE("ordinal order is total and dominated by leading terms") {
    auto o = [](const char* s) { return parse_ordinal(s); };
    CHECK(o("5") < o("w"));
    CHECK(o("w*5 + 100") < o("w^2*1"));
    CHECK(o("w^2*1") < o("w^2*1 + 1"));
    CHECK(o("w^2*1 + 1") < o("w^2*2"));
    CHECK(o("w^(w*1)*1") < o("w^(w*1 + 1)*1"));

    auto inst = MonoidInstance::ordinal();
    auto sample = default_sample(inst);
    for (const auto& a : sample)
        for (const auto& b : sample)
            CHECK(monoid_leq(inst, a, b) != OrderVerdict::Incomparable);
}

TEST_CASE("good-order axiom checker") {
    for (auto inst : {MonoidInstance::nat(), MonoidInstance::n2_usual(), MonoidInstance::n2_lex(),
                      MonoidInstance::n2_total(), MonoidInstance::ordinal()}) {
        auto rep = check_good_axioms(inst, default_sample(inst));
        std::string first = rep.violations.empty() ? std::string() : rep.violations.front();
        INFO(first);
        CHECK(rep.good());
    }

    auto rep = check_good_axioms(MonoidInstance::z_test(), default_sample(MonoidInstance::z_test()));
    CHECK_FALSE(rep.good());
    bool zero_min_flagged = false;
    for (const auto& v : rep.violations)
        if (v.find("0 <=") != std::string::npos) zero_min_flagged = true;
    CHECK(zero_min_flagged);
}

TEST_CASE("extended pairs clamp at -1") {
    CHECK(ExtPair(-3, 2) == ExtPair(-1, 2));
    CHECK(ExtPair(-1, -5) == ExtPair(-1, -1));
    CHECK(ExtPair(2, 3).interior());
    CHECK_FALSE(ExtPair(-1, 3).interior());
    CHECK(ExtPair(1, -1).cn() == 0);
    CHECK(ExtPair(1, -1).cm() == 1);
    CHECK(ExtPair(1, -1).str() == "(1,-1)");
}
