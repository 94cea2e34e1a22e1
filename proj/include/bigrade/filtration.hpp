#pragma once

#include "bigrade/freelie.hpp"

#include <string>
#include <vector>

namespace bigrade {

// ---------------------------------------------------------------------------
// Leading terms of words along the double lower central series: the bidegree
// (m,n) component of the Magnus expansion, projected onto the Lyndon basis of
// the free bigraded Lie algebra.  The membership verdict records whether the
// expansion is consistent with the word sitting at level (m,n) up to the
// scanned bound; the projected value is only meaningful in that case.
// ---------------------------------------------------------------------------

struct LeadingTerm {
    Word word;
    Bidegree grade{0, 0};
    LieElement value;
    MembershipVerdict verdict;
};

inline LeadingTerm leading_term(LieContext& ctx, const Word& w, Bidegree mn, int bound) {
    if (mn.x_count < 0 || mn.y_count < 0 || mn.x_count + mn.y_count < 1)
        throw InvalidDegree("leading terms live at bidegrees with m+n >= 1");
    if (bound < mn.x_count + mn.y_count + 1)
        throw BoundError("leading-term extraction needs bound >= m+n+1");
    LeadingTerm out;
    out.word = reduce(ctx.alpha(), w);
    out.grade = mn;
    LieGrade g = LieGrade::bidegree(mn.x_count, mn.y_count);
    out.verdict = dmn_membership(ctx.alpha(), out.word, mn.x_count, mn.y_count, bound);
    if (out.verdict.verified) {
        TruncatedSeries d =
            delta_component(ctx.alpha(), out.word, mn.x_count, mn.y_count, bound);
        out.value = lie_project_series(ctx, d, g);
    } else {
        out.value = lie_zero(ctx, g);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spanning evidence: the leading terms of the (m,n)-commutators should span
// the whole Lie slice over the integers.  Reports carry the Smith data so a
// failure is inspectable.
// ---------------------------------------------------------------------------

struct SpanReport {
    Bidegree grade{0, 0};
    int rank_expected = 0;
    int rank_found = 0;
    std::vector<Int> elementary_divisors;
    std::vector<Word> witnesses;
    bool all_verified = true;
    bool spanned = false;
};

inline SpanReport graded_span_check(LieContext& ctx, Bidegree mn) {
    if (mn.x_count < 0 || mn.y_count < 0 || mn.x_count + mn.y_count < 1)
        throw InvalidDegree("span checks need m+n >= 1");
    SpanReport rep;
    rep.grade = mn;
    LieGrade g = LieGrade::bidegree(mn.x_count, mn.y_count);
    rep.rank_expected = ctx.rank(g);
    int bound = mn.x_count + mn.y_count + 1;
    std::vector<Vec> cols;
    for (const MnCommutator& c :
         enumerate_mn_commutators(ctx.alpha(), mn.x_count, mn.y_count, true)) {
        LeadingTerm lt = leading_term(ctx, c.word, mn, bound);
        if (!lt.verdict.verified) {
            rep.all_verified = false;
            continue;
        }
        cols.push_back(lt.value.coords);
        rep.witnesses.push_back(c.word);
    }
    SmithForm s = smith_normal_form(mat_from_columns(rep.rank_expected, cols));
    rep.rank_found = s.rank;
    rep.elementary_divisors = s.divisors;
    bool unit = true;
    for (const Int& d : s.divisors)
        if (d != 1) unit = false;
    rep.spanned = rep.all_verified && rep.rank_found == rep.rank_expected && unit;
    return rep;
}

// ---------------------------------------------------------------------------
// The degree-m slice of the free Lie algebra on the joint alphabet decomposes
// as the direct sum of the bidegree slices with i+j = m; the shared Lyndon
// basis makes the regraded bases assemble to a basis on the nose.
// ---------------------------------------------------------------------------

struct GammaDecompositionReport {
    int m = 0;
    int rank_total = 0;
    std::vector<int> ranks_bigraded;  // (0,m), (1,m-1), ..., (m,0)
    std::vector<Int> elementary_divisors;
    bool assembled = false;
};

inline GammaDecompositionReport gamma_decomposition_check(LieContext& ctx, int m) {
    if (m < 1) throw InvalidDegree("decomposition degree must be >= 1");
    GammaDecompositionReport rep;
    rep.m = m;
    rep.rank_total = ctx.rank(LieGrade::total(m));
    std::vector<Vec> cols;
    int sum = 0;
    for (int i = 0; i <= m; ++i) {
        LieGrade g = LieGrade::bidegree(i, m - i);
        int r = ctx.rank(g);
        rep.ranks_bigraded.push_back(r);
        sum += r;
        for (int t = 0; t < r; ++t) {
            LieElement u = lie_zero(ctx, g);
            u.coords[t] = 1;
            cols.push_back(regrade_total(ctx, u).coords);
        }
    }
    SmithForm s = smith_normal_form(mat_from_columns(rep.rank_total, cols));
    rep.elementary_divisors = s.divisors;
    bool unit = true;
    for (const Int& d : s.divisors)
        if (d != 1) unit = false;
    rep.assembled = sum == rep.rank_total && s.rank == rep.rank_total && unit;
    return rep;
}

// ---------------------------------------------------------------------------
// Evidence around the intersection question K_{m,n} =? K_{m,0} cap K_{0,n}.
// Part (a) is the easy inclusion checked on commutator words.  Part (b)
// records why the monomial model cannot settle the question: at the monomial
// level the two conditions literally coincide, so the report only contrasts
// the size of the monomial slice with the Lie span and never renders a
// verdict on the group-level statement.
// ---------------------------------------------------------------------------

struct IntersectionEvidenceReport {
    Bidegree grade{0, 0};
    int commutators_checked = 0;
    std::vector<Word> failures;
    bool easy_inclusions_pass = false;
    Int monomial_intersection_rank;
    int lie_span_rank = 0;
    std::string note;
};

inline IntersectionEvidenceReport conjecture2_evidence(LieContext& ctx, Bidegree mn,
                                                       int bound) {
    int m = mn.x_count, n = mn.y_count;
    if (m < 1 || n < 1) throw InvalidDegree("the intersection question concerns m,n >= 1");
    if (bound < m + n) throw BoundError("membership bound must be at least m+n");
    IntersectionEvidenceReport rep;
    rep.grade = mn;
    for (const MnCommutator& c : enumerate_mn_commutators(ctx.alpha(), m, n)) {
        ++rep.commutators_checked;
        TruncatedSeries s = magnus_expand(ctx.alpha(), c.word, bound);
        if (!dmn_check(s, m, 0).verified || !dmn_check(s, 0, n).verified)
            rep.failures.push_back(c.word);
    }
    rep.easy_inclusions_pass = rep.failures.empty();

    // number of degree-(m+n) monomials with >= m x-symbols and >= n y-symbols:
    // exactly the bidegree-(m,n) monomials, C(m+n,m) p^m q^n of them
    Int binom = 1;
    for (int i = 1; i <= m; ++i) binom = binom * (m + n - i + 1) / i;
    Int count = binom;
    for (int i = 0; i < m; ++i) count *= ctx.alpha().p;
    for (int i = 0; i < n; ++i) count *= ctx.alpha().q;
    rep.monomial_intersection_rank = count;
    rep.lie_span_rank = graded_span_check(ctx, mn).rank_found;
    rep.note =
        "monomial-level conditions for the two sides coincide at this grade; "
        "no conclusion about the group-level intersection";
    return rep;
}

}  // namespace bigrade
