#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bigrade/filtration.hpp"

#include <random>

using namespace bigrade;

namespace {

// Lie-side value of a letter arrangement, bracketed the same right-nested way
// as the group commutator word.
LieElement lie_multibracket(LieContext& ctx, const std::vector<int>& letters) {
    LieElement acc = lie_generator(ctx, letters.back());
    for (int i = static_cast<int>(letters.size()) - 2; i >= 0; --i)
        acc = lie_bracket(ctx, lie_generator(ctx, letters[i]), acc);
    return acc;
}

Word random_mn_word(LieContext& ctx, int m, int n, std::mt19937& rng) {
    auto comms = enumerate_mn_commutators(ctx.alpha(), m, n, true);
    std::uniform_int_distribution<size_t> pick(0, comms.size() - 1);
    std::uniform_int_distribution<int> reps(1, 2);
    Word w;
    int k = reps(rng);
    for (int i = 0; i < k; ++i) w = word_mul(w, comms[pick(rng)].word);
    return w;
}

Word random_conjugator(LieContext& ctx, std::mt19937& rng) {
    std::uniform_int_distribution<int> len(0, 4);
    std::uniform_int_distribution<int> sym(1, ctx.alpha().size());
    std::uniform_int_distribution<int> sign(0, 1);
    Word raw;
    int L = len(rng);
    for (int i = 0; i < L; ++i) raw.push_back(sym(rng) * (sign(rng) ? 1 : -1));
    return reduce(ctx.alpha(), raw);
}

}  // namespace

TEST_CASE("leading terms of commutator words") {
    LieContext ctx(AlphabetSpec(2, 2));
    LieElement a1 = lie_generator(ctx, 1);
    LieElement b1 = lie_generator(ctx, 3);

    Word xy = commutator(Word{1}, Word{3});
    LeadingTerm lt = leading_term(ctx, xy, Bidegree{1, 1}, 3);
    CHECK(lt.verdict.verified);
    CHECK(lt.value == lie_bracket(ctx, a1, b1));

    LeadingTerm eps = leading_term(ctx, Word{}, Bidegree{1, 1}, 3);
    CHECK(eps.verdict.verified);
    CHECK(eps.value.is_zero());

    LeadingTerm ref = leading_term(ctx, Word{1}, Bidegree{1, 1}, 3);
    CHECK(!ref.verdict.verified);
    CHECK(mono_str(ref.verdict.witness, ctx.alpha()) == "X1");
    CHECK(ref.value.is_zero());

    CHECK_THROWS_AS(leading_term(ctx, xy, Bidegree{1, 1}, 2), BoundError);
    CHECK_THROWS_AS(leading_term(ctx, xy, Bidegree{0, 0}, 3), InvalidDegree);
}

TEST_CASE("leading term of a commutator arrangement is the matching lie bracket") {
    for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
        LieContext ctx(AlphabetSpec(p, q));
        for (int total = 1; total <= 4; ++total)
            for (int m = 0; m <= total; ++m) {
                int n = total - m;
                for (const MnCommutator& c : enumerate_mn_commutators(ctx.alpha(), m, n)) {
                    LeadingTerm lt = leading_term(ctx, c.word, Bidegree{m, n}, total + 1);
                    REQUIRE(lt.verdict.verified);
                    CHECK(lt.value == lie_multibracket(ctx, c.letters));
                }
            }
    }
}

TEST_CASE("leading terms add over products, negate over inverses, ignore conjugation") {
    LieContext ctx(AlphabetSpec(2, 2));
    std::mt19937 rng(1120);
    for (auto [m, n] : {std::pair{1, 1}, {2, 1}}) {
        int bound = m + n + 1;
        for (int trial = 0; trial < 12; ++trial) {
            Word w = random_mn_word(ctx, m, n, rng);
            Word w2 = random_mn_word(ctx, m, n, rng);
            LeadingTerm lt = leading_term(ctx, w, Bidegree{m, n}, bound);
            LeadingTerm lt2 = leading_term(ctx, w2, Bidegree{m, n}, bound);
            REQUIRE(lt.verdict.verified);
            REQUIRE(lt2.verdict.verified);

            LeadingTerm prod =
                leading_term(ctx, word_mul(w, w2), Bidegree{m, n}, bound);
            CHECK(prod.verdict.verified);
            CHECK(prod.value == lie_add(lt.value, lt2.value));

            LeadingTerm inv = leading_term(ctx, word_inv(w), Bidegree{m, n}, bound);
            CHECK(inv.verdict.verified);
            CHECK(inv.value == lie_neg(lt.value));

            Word u = random_conjugator(ctx, rng);
            LeadingTerm conj =
                leading_term(ctx, word_conj(u, w), Bidegree{m, n}, bound);
            CHECK(conj.verdict.verified);
            CHECK(conj.value == lt.value);
        }
    }
}

TEST_CASE("graded span checks") {
    LieContext g2(AlphabetSpec(2, 2));
    SpanReport r11 = graded_span_check(g2, Bidegree{1, 1});
    CHECK(r11.rank_expected == 4);
    CHECK(r11.rank_found == 4);
    CHECK(r11.witnesses.size() == 8);
    CHECK(r11.spanned);
    for (const Int& d : r11.elementary_divisors) CHECK(d == 1);

    SpanReport r21 = graded_span_check(g2, Bidegree{2, 1});
    CHECK(r21.rank_expected == 8);
    CHECK(r21.rank_found == 8);
    CHECK(r21.spanned);

    SpanReport r01 = graded_span_check(g2, Bidegree{0, 1});
    CHECK(r01.rank_expected == 2);
    CHECK(r01.spanned);

    LieContext torus(AlphabetSpec(1, 1));
    SpanReport r20 = graded_span_check(torus, Bidegree{2, 0});
    CHECK(r20.rank_expected == 0);
    CHECK(r20.witnesses.empty());
    CHECK(r20.spanned);

    CHECK_THROWS_AS(graded_span_check(g2, Bidegree{0, 0}), InvalidDegree);
}

TEST_CASE("bigraded slices assemble the whole degree slice") {
    LieContext torus(AlphabetSpec(1, 1));
    GammaDecompositionReport g1m2 = gamma_decomposition_check(torus, 2);
    CHECK(g1m2.rank_total == 1);
    CHECK(g1m2.ranks_bigraded == std::vector<int>{0, 1, 0});
    CHECK(g1m2.assembled);
    GammaDecompositionReport g1m1 = gamma_decomposition_check(torus, 1);
    CHECK(g1m1.rank_total == 2);
    CHECK(g1m1.ranks_bigraded == std::vector<int>{1, 1});
    CHECK(g1m1.assembled);

    LieContext g2(AlphabetSpec(2, 2));
    GammaDecompositionReport g2m2 = gamma_decomposition_check(g2, 2);
    CHECK(g2m2.rank_total == 6);
    CHECK(g2m2.ranks_bigraded == std::vector<int>{1, 4, 1});
    CHECK(g2m2.assembled);
    for (int m = 1; m <= 5; ++m) CHECK(gamma_decomposition_check(g2, m).assembled);

    CHECK_THROWS_AS(gamma_decomposition_check(g2, 0), InvalidDegree);
}

TEST_CASE("intersection evidence reports stay descriptive") {
    LieContext g2(AlphabetSpec(2, 2));
    IntersectionEvidenceReport r = conjecture2_evidence(g2, Bidegree{1, 1}, 3);
    CHECK(r.commutators_checked == 8);
    CHECK(r.easy_inclusions_pass);
    CHECK(r.failures.empty());
    CHECK(r.monomial_intersection_rank == 8);  // X_i Y_j and Y_j X_i
    CHECK(r.lie_span_rank == 4);
    CHECK(!r.note.empty());

    LieContext torus(AlphabetSpec(1, 1));
    IntersectionEvidenceReport r21 = conjecture2_evidence(torus, Bidegree{2, 1}, 4);
    CHECK(r21.commutators_checked == 3);
    CHECK(r21.easy_inclusions_pass);

    CHECK_THROWS_AS(conjecture2_evidence(g2, Bidegree{1, 0}, 3), InvalidDegree);
    CHECK_THROWS_AS(conjecture2_evidence(g2, Bidegree{0, 2}, 3), InvalidDegree);
}
