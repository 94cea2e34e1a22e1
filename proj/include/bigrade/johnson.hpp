#pragma once

#include "bigrade/filtration.hpp"

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace bigrade {

// [h, w] = h(w) w^-1, the twisted commutator of an automorphism and a word
inline Word aut_word_commutator(const FreeGroupAut& h, const Word& w) {
    return word_mul(h.apply(w), word_inv(w));
}

enum class TauKind { Classical, Double, Edge, Alternative };

struct TauValue {
    TauKind kind = TauKind::Classical;
    ExtPair level{0, 0};  // Double and Edge
    int degree = 0;       // Classical n and Alternative m
    DerivationElement value;
    bool symplectic_ok = false;
};

struct ProbeRefutation {
    ExtPair level{0, 0};
    Word test_word;         // w with [h^eps, w] violating the level
    bool on_inverse = false;
    MonoKey witness = 0;
};

struct ProbeResult {
    int max_total = 0;
    int bound = 0;
    int battery_size = 0;
    unsigned seed = 0;
    std::vector<ExtPair> verified_levels;  // maximal antichain of the verified set
    std::vector<ProbeRefutation> refutations;
};

// the verified set is downward closed, so the antichain describes it fully
inline bool probe_verified_at(const ProbeResult& r, const ExtPair& lv) {
    for (const ExtPair& e : r.verified_levels)
        if (lv.m <= e.m && lv.n <= e.n) return true;
    return false;
}

namespace detail {

inline TruncatedSeries series_component_total(const TruncatedSeries& s, int k) {
    TruncatedSeries out(s.alpha, s.bound, s.wx, s.wy);
    for (const auto& [key, c] : s.terms)
        if (mono_len(key) == k) out.terms.push_back({key, c});
    return out;
}

inline TruncatedSeries series_component_weighted(const TruncatedSeries& s, long k) {
    TruncatedSeries out(s.alpha, s.bound, s.wx, s.wy);
    for (const auto& [key, c] : s.terms)
        if (mono_weight(key, s.alpha, s.wx, s.wy) == k) out.terms.push_back({key, c});
    return out;
}

inline std::vector<Word> battery_conjugators(const AlphabetSpec& alpha, int battery_size,
                                             unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<int> sym(1, alpha.size());
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<Word> out;
    for (int t = 0; t < battery_size; ++t) {
        Word raw;
        int L = len(rng);
        for (int i = 0; i < L; ++i) raw.push_back(sym(rng) * (sign(rng) ? 1 : -1));
        out.push_back(reduce(alpha, raw));
    }
    return out;
}

// bidegrees present in a series, each with its minimal monomial witness
struct BidegreeProfile {
    struct Entry {
        int bx, by;
        MonoKey key;
    };
    std::vector<Entry> entries;
};

inline BidegreeProfile profile_of(const TruncatedSeries& s) {
    std::map<std::pair<int, int>, MonoKey> best;
    for (const auto& [key, c] : s.terms) {
        Bidegree d = mono_bidegree(key, s.alpha);
        auto it = best.find({d.x_count, d.y_count});
        if (it == best.end() || key < it->second) best[{d.x_count, d.y_count}] = key;
    }
    BidegreeProfile p;
    for (const auto& [bd, key] : best) p.entries.push_back({bd.first, bd.second, key});
    return p;
}

// minimal (total degree, monomial) violating "bidegree >= (rx, ry)", if any
inline std::optional<MonoKey> violation_witness(const BidegreeProfile& p, int rx, int ry) {
    std::optional<MonoKey> best;
    for (const auto& e : p.entries) {
        if (e.bx >= rx && e.by >= ry) continue;
        if (!best || e.bx + e.by < mono_len(*best) ||
            (e.bx + e.by == mono_len(*best) && e.key < *best))
            best = e.key;
    }
    return best;
}

struct LevelTestSet {
    struct Test {
        Word w;
        bool x_type;
        bool on_inverse;
        BidegreeProfile profile;
    };
    std::vector<Test> tests;
};

inline LevelTestSet expand_level_tests(const FreeGroupAut& h, int bound, int battery_size,
                                       unsigned seed) {
    const AlphabetSpec& alpha = h.alpha;
    std::vector<Word> conj{Word{}};
    for (Word& u : battery_conjugators(alpha, battery_size, seed)) conj.push_back(std::move(u));
    LevelTestSet out;
    for (int inv = 0; inv < 2; ++inv)
        for (const Word& u : conj)
            for (int id = 1; id <= alpha.size(); ++id) {
                Word w = word_conj(u, Word{id});
                Word c = inv ? word_mul(h.apply_inverse(w), word_inv(w))
                             : word_mul(h.apply(w), word_inv(w));
                out.tests.push_back({w, alpha.is_x(id), inv == 1,
                                     profile_of(magnus_expand(alpha, c, bound))});
            }
    return out;
}

// first test violating the necessary conditions of the extended level, if any
inline std::optional<ProbeRefutation> check_level(const LevelTestSet& set, const ExtPair& lv) {
    ExtPair xreq(lv.m + 1, lv.n), yreq(lv.m, lv.n + 1);
    for (const auto& t : set.tests) {
        const ExtPair& req = t.x_type ? xreq : yreq;
        if (auto w = violation_witness(t.profile, req.cm(), req.cn()))
            return ProbeRefutation{lv, t.w, t.on_inverse, *w};
    }
    return std::nullopt;
}

inline std::string refutation_message(const AlphabetSpec& alpha, const ProbeRefutation& r) {
    std::string h = r.on_inverse ? "[h^-1, " : "[h, ";
    return h + word_str(alpha, r.test_word) + "] has monomial " + mono_str(r.witness, alpha) +
           " violating level " + r.level.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classical Johnson homomorphisms.  The lower-central-series pre-check is an
// exact decision, so a NotInLevel here is a theorem, not a semi-decision.
// ---------------------------------------------------------------------------

inline TauValue tau_classical(LieContext& ctx, const FreeGroupAut& h, int n, int bound) {
    const AlphabetSpec& alpha = ctx.alpha();
    alpha.genus();
    if (!(alpha == h.alpha)) throw GradeMismatch("tau: alphabet mismatch");
    if (n < 1) throw InvalidIndex("classical tau needs degree >= 1");
    if (bound < n + 2) throw BoundError("classical tau needs bound >= n+2");

    for (int id = 1; id <= alpha.size(); ++id) {
        Word c = aut_word_commutator(h, Word{id});
        if (!gamma_membership(alpha, c, n + 1))
            throw NotInLevel("[h, " + alpha.letter_name(id) + "] is not in lower central term " +
                             std::to_string(n + 1));
    }

    TauValue out;
    out.kind = TauKind::Classical;
    out.degree = n;
    out.value = derivation_zero(ctx, LieGrade::total(n));
    LieGrade vg = LieGrade::total(n + 1);
    for (int i = 1; i <= alpha.genus(); ++i) {
        TruncatedSeries sx =
            magnus_expand(alpha, aut_word_commutator(h, Word{alpha.x(i)}), bound);
        TruncatedSeries sy =
            magnus_expand(alpha, aut_word_commutator(h, Word{alpha.y(i)}), bound);
        out.value.a_values[i - 1] =
            lie_project_series(ctx, detail::series_component_total(sx, n + 1), vg);
        out.value.b_values[i - 1] =
            lie_project_series(ctx, detail::series_component_total(sy, n + 1), vg);
    }
    out.symplectic_ok = xi_contract(ctx, out.value).is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// Double Johnson homomorphisms.  The membership pre-check is the necessary
// battery at the requested level (on h and h^-1); refutations are sound,
// passing is bound- and battery-relative.
// ---------------------------------------------------------------------------

inline TauValue tau_double(LieContext& ctx, const FreeGroupAut& h, Bidegree mn, int bound,
                           int battery_size = 8, unsigned seed = 0) {
    const AlphabetSpec& alpha = ctx.alpha();
    alpha.genus();
    if (!(alpha == h.alpha)) throw GradeMismatch("tau: alphabet mismatch");
    int m = mn.x_count, n = mn.y_count;
    if (m < 0 || n < 0 || m + n < 1) throw InvalidDegree("double tau needs m,n >= 0, m+n >= 1");
    if (bound < m + n + 2) throw BoundError("double tau needs bound >= m+n+2");

    detail::LevelTestSet tests = detail::expand_level_tests(h, bound, battery_size, seed);
    if (auto r = detail::check_level(tests, ExtPair(m, n)))
        throw NotInLevel(detail::refutation_message(alpha, *r));

    TauValue out;
    out.kind = TauKind::Double;
    out.level = ExtPair(m, n);
    out.value = derivation_zero(ctx, LieGrade::bidegree(m, n));
    for (int i = 1; i <= alpha.genus(); ++i) {
        LeadingTerm ax = leading_term(ctx, aut_word_commutator(h, Word{alpha.x(i)}),
                                      Bidegree{m + 1, n}, bound);
        LeadingTerm by = leading_term(ctx, aut_word_commutator(h, Word{alpha.y(i)}),
                                      Bidegree{m, n + 1}, bound);
        if (!ax.verdict.verified || !by.verdict.verified)
            throw NotInLevel("generator commutator escapes level " + ExtPair(m, n).str());
        out.value.a_values[i - 1] = ax.value;
        out.value.b_values[i - 1] = by.value;
    }
    out.symplectic_ok = xi_contract(ctx, out.value).is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// Edge evaluations: the classical homomorphism restricted to the boundary
// levels (m,-1) and (-1,n), with the value constrained to the one-sided
// subalgebra.
// ---------------------------------------------------------------------------

inline TauValue tau_edge(LieContext& ctx, const FreeGroupAut& h, const ExtPair& level,
                         int bound, int battery_size = 8, unsigned seed = 0) {
    const AlphabetSpec& alpha = ctx.alpha();
    alpha.genus();
    if (!(alpha == h.alpha)) throw GradeMismatch("tau: alphabet mismatch");
    bool x_side = level.n == -1 && level.m >= 2;
    bool y_side = level.m == -1 && level.n >= 2;
    if (!x_side && !y_side)
        throw InvalidIndex("edge tau lives at (m,-1) with m >= 2 or (-1,n) with n >= 2");

    detail::LevelTestSet tests = detail::expand_level_tests(h, bound, battery_size, seed);
    if (auto r = detail::check_level(tests, level))
        throw NotInLevel(detail::refutation_message(alpha, *r));

    int k = (x_side ? level.m : level.n) - 1;
    TauValue out = tau_classical(ctx, h, k, bound);
    out.kind = TauKind::Edge;
    out.level = level;

    const auto& basis = ctx.slice(LieGrade::total(k + 1)).elems;
    auto pure = [&](const LieElement& v, bool want_x) {
        for (size_t t = 0; t < v.coords.size(); ++t) {
            if (v.coords[t] == 0) continue;
            for (int s : basis[t].word)
                if (alpha.is_x(s) != want_x) return false;
        }
        return true;
    };
    bool ok = true;
    for (int i = 0; i < alpha.genus(); ++i) {
        if (x_side)
            ok = ok && out.value.a_values[i].is_zero() && pure(out.value.b_values[i], true);
        else
            ok = ok && out.value.b_values[i].is_zero() && pure(out.value.a_values[i], false);
    }
    if (!ok)
        throw NotInLevel("value escapes the one-sided target of level " + level.str());
    return out;
}

// ---------------------------------------------------------------------------
// Alternative Johnson homomorphisms: the weighted filtration with x-letters
// of weight 2 and y-letters of weight 1.  Level checks compare the minimal
// weight present in the expansions of the generator commutators.
// ---------------------------------------------------------------------------

inline TauValue tau_alt(LieContext& ctx, const FreeGroupAut& h, int m, int bound) {
    const AlphabetSpec& alpha = ctx.alpha();
    alpha.genus();
    if (!(alpha == h.alpha)) throw GradeMismatch("tau: alphabet mismatch");
    if (m < 1) throw InvalidIndex("alternative tau needs degree >= 1");
    if (bound < m + 3) throw BoundError("alternative tau needs weighted bound >= m+3");

    TauValue out;
    out.kind = TauKind::Alternative;
    out.degree = m;
    out.value = derivation_zero(ctx, LieGrade::weighted(m));
    for (int i = 1; i <= alpha.genus(); ++i) {
        TruncatedSeries sx =
            magnus_expand(alpha, aut_word_commutator(h, Word{alpha.x(i)}), bound, 2, 1);
        TruncatedSeries sy =
            magnus_expand(alpha, aut_word_commutator(h, Word{alpha.y(i)}), bound, 2, 1);
        std::optional<long> lx = weighted_level_of(sx), ly = weighted_level_of(sy);
        if (ly && *ly < m + 1)
            throw NotInLevel("[h, " + alpha.letter_name(alpha.y(i)) + "] has weight " +
                             std::to_string(*ly) + " below " + std::to_string(m + 1));
        if (lx && *lx < m + 2)
            throw NotInLevel("[h, " + alpha.letter_name(alpha.x(i)) + "] has weight " +
                             std::to_string(*lx) + " below " + std::to_string(m + 2));
        out.value.b_values[i - 1] = lie_project_series(
            ctx, detail::series_component_weighted(sy, m + 1), LieGrade::weighted(m + 1));
        out.value.a_values[i - 1] = lie_project_series(
            ctx, detail::series_component_weighted(sx, m + 2), LieGrade::weighted(m + 2));
    }
    out.symplectic_ok = xi_contract(ctx, out.value).is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// Filtration probe: run the necessary membership battery over every extended
// level in a triangle and report the maximal verified levels plus sound
// refutation witnesses.
// ---------------------------------------------------------------------------

inline ProbeResult probe(const FreeGroupAut& h, int max_total, int bound, int battery_size = 8,
                         unsigned seed = 0) {
    if (bound < max_total + 2) throw BoundError("probe needs bound >= max_total+2");

    ProbeResult out;
    out.max_total = max_total;
    out.bound = bound;
    out.battery_size = battery_size;
    out.seed = seed;

    detail::LevelTestSet tests = detail::expand_level_tests(h, bound, battery_size, seed);
    std::vector<ExtPair> verified;
    for (int m = -1; m <= max_total + 1; ++m)
        for (int n = -1; m + n <= max_total; ++n) {
            ExtPair lv(m, n);
            if (auto r = detail::check_level(tests, lv))
                out.refutations.push_back(*r);
            else
                verified.push_back(lv);
        }
    for (const ExtPair& lv : verified) {
        bool maximal = true;
        for (const ExtPair& other : verified)
            if (!(other == lv) && lv.m <= other.m && lv.n <= other.n) maximal = false;
        if (maximal) out.verified_levels.push_back(lv);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quadrant split of wedge coordinates along H = A + B, the target shapes of
// the four edge/double restrictions of the first Johnson homomorphism.
// ---------------------------------------------------------------------------

struct Wedge3Split {
    Vec aaa, aab, abb, bbb;  // each over the full wedge basis
};

inline Wedge3Split wedge3_quadrant_split(const AlphabetSpec& alpha, const Vec& coords) {
    std::vector<std::array<int, 3>> basis = wedge3_basis(alpha);
    if (coords.size() != basis.size()) throw GradeMismatch("wedge coordinate length mismatch");
    Wedge3Split out{Vec(coords.size()), Vec(coords.size()), Vec(coords.size()),
                    Vec(coords.size())};
    for (size_t t = 0; t < basis.size(); ++t) {
        int ys = 0;
        for (int s : basis[t])
            if (alpha.is_y(s)) ++ys;
        Vec& slot = ys == 0 ? out.aaa : ys == 1 ? out.aab : ys == 2 ? out.abb : out.bbb;
        slot[t] = coords[t];
    }
    return out;
}

}  // namespace bigrade
