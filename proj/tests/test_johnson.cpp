#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bigrade/johnson.hpp"

using namespace bigrade;

namespace {

std::vector<Word> identity_table(const AlphabetSpec& alpha) {
    std::vector<Word> t;
    for (int id = 1; id <= alpha.size(); ++id) t.push_back(Word{id});
    return t;
}

// Dehn twist along the i-th meridian: y_i -> x_i y_i
FreeGroupAut twist_x(const AlphabetSpec& alpha, int i) {
    auto fwd = identity_table(alpha);
    auto inv = fwd;
    fwd[alpha.y(i) - 1] = {alpha.x(i), alpha.y(i)};
    inv[alpha.y(i) - 1] = {-alpha.x(i), alpha.y(i)};
    return {alpha, fwd, inv};
}

// Dehn twist along the i-th longitude: x_i -> y_i^-1 x_i
FreeGroupAut twist_y(const AlphabetSpec& alpha, int i) {
    auto fwd = identity_table(alpha);
    auto inv = fwd;
    fwd[alpha.x(i) - 1] = {-alpha.y(i), alpha.x(i)};
    inv[alpha.x(i) - 1] = {alpha.y(i), alpha.x(i)};
    return {alpha, fwd, inv};
}

// Half twist of the j-th handle; inverts the handle's homology classes.
FreeGroupAut knob_twist(const AlphabetSpec& alpha, int j) {
    int X = alpha.x(j), Y = alpha.y(j);
    auto fwd = identity_table(alpha);
    auto inv = fwd;
    fwd[X - 1] = {-Y, -X, Y};
    fwd[Y - 1] = {-Y, -X, -Y, X, Y};
    inv[X - 1] = {-X, -Y, -X, Y, X};
    inv[Y - 1] = {-X, -Y, X};
    return {alpha, fwd, inv};
}

// Twist along a curve parallel to the boundary of the first handle:
// conjugates x_1, y_1 by [x_1^-1, y_1^-1] and fixes the other handles.
FreeGroupAut handle_boundary_twist(const AlphabetSpec& alpha) {
    Word w = commutator(Word{-alpha.x(1)}, Word{-alpha.y(1)});
    auto fwd = identity_table(alpha);
    auto inv = fwd;
    fwd[alpha.x(1) - 1] = word_conj(w, Word{alpha.x(1)});
    fwd[alpha.y(1) - 1] = word_conj(w, Word{alpha.y(1)});
    Word wi = word_inv(w);
    inv[alpha.x(1) - 1] = word_conj(wi, Word{alpha.x(1)});
    inv[alpha.y(1) - 1] = word_conj(wi, Word{alpha.y(1)});
    return {alpha, fwd, inv};
}

// y_i -> c y_i for a word c in the x-letters only (which the map fixes)
FreeGroupAut transvect_y(const AlphabetSpec& alpha, int i, const Word& c) {
    auto fwd = identity_table(alpha);
    auto inv = fwd;
    fwd[alpha.y(i) - 1] = word_mul(c, Word{alpha.y(i)});
    inv[alpha.y(i) - 1] = word_mul(word_inv(c), Word{alpha.y(i)});
    return {alpha, fwd, inv};
}

// x_i -> c x_i for a word c in the y-letters only
FreeGroupAut transvect_x(const AlphabetSpec& alpha, int i, const Word& c) {
    auto fwd = identity_table(alpha);
    auto inv = fwd;
    fwd[alpha.x(i) - 1] = word_mul(c, Word{alpha.x(i)});
    inv[alpha.x(i) - 1] = word_mul(word_inv(c), Word{alpha.x(i)});
    return {alpha, fwd, inv};
}

std::vector<ExtPair> antichain(const ProbeResult& r) { return r.verified_levels; }

}  // namespace

TEST_CASE("twisted commutators of automorphisms") {
    AlphabetSpec alpha{1, 1};
    FreeGroupAut id = FreeGroupAut::identity(alpha);
    CHECK(aut_word_commutator(id, Word{1, 2, -1}).empty());

    FreeGroupAut tx = twist_x(alpha, 1);
    CHECK(aut_word_commutator(tx, Word{2}) == Word{1});
    CHECK(aut_word_commutator(tx, Word{1}).empty());

    // conjugation moves every generator by the same group commutator
    Word w{1, 2};
    FreeGroupAut inner = aut_inner(alpha, w);
    for (int id_ = 1; id_ <= 2; ++id_)
        CHECK(aut_word_commutator(inner, Word{id_}) == commutator(w, Word{id_}));
    CHECK(fixes_boundary(handle_boundary_twist(alpha)));
    CHECK(fixes_boundary(twist_x(alpha, 1)));
    CHECK(fixes_boundary(knob_twist(alpha, 1)));
}

TEST_CASE("knob twist decomposes as a conjugation after inversion") {
    AlphabetSpec alpha{1, 1};
    // rho inverts both generators; conjugating by u = y^-1 x^-1 then gives
    // the knob table
    FreeGroupAut rho(alpha, {{-1}, {-2}}, {{-1}, {-2}});
    FreeGroupAut composed = compose(aut_inner(alpha, Word{-2, -1}), rho);
    CHECK(composed == knob_twist(alpha, 1));

    AlphabetSpec alpha2{2, 2};
    FreeGroupAut k2 = knob_twist(alpha2, 2);
    CHECK(fixes_boundary(k2));
    CHECK(k2.image(alpha2.x(1)) == Word{alpha2.x(1)});
    CHECK(k2.image(alpha2.y(1)) == Word{alpha2.y(1)});
}

TEST_CASE("classical evaluations and their exact level gate") {
    AlphabetSpec alpha{1, 1};
    LieContext ctx(alpha);
    FreeGroupAut tx = twist_x(alpha, 1);

    // a meridian twist acts nontrivially on homology
    CHECK_THROWS_AS(tau_classical(ctx, tx, 1, 6), NotInLevel);

    FreeGroupAut td = handle_boundary_twist(alpha);
    TauValue t1 = tau_classical(ctx, td, 1, 6);
    CHECK(t1.value.is_zero());
    CHECK(t1.symplectic_ok);

    TauValue t2 = tau_classical(ctx, td, 2, 6);
    CHECK_FALSE(t2.value.is_zero());
    CHECK(t2.symplectic_ok);
    // d(a) = [[a,b],a] and d(b) = [[a,b],b] in the length grading
    LieElement a = lie_generator(ctx, 1, LieGrade::Kind::Total);
    LieElement b = lie_generator(ctx, 2, LieGrade::Kind::Total);
    LieElement ab = lie_bracket(ctx, a, b);
    CHECK(t2.value.a_values[0] == lie_bracket(ctx, ab, a));
    CHECK(t2.value.b_values[0] == lie_bracket(ctx, ab, b));

    CHECK_THROWS_AS(tau_classical(ctx, td, 0, 6), InvalidIndex);
    CHECK_THROWS_AS(tau_classical(ctx, td, 2, 3), BoundError);
    AlphabetSpec alpha2{2, 2};
    CHECK_THROWS_AS(tau_classical(ctx, twist_x(alpha2, 1), 1, 6), GradeMismatch);
}

TEST_CASE("probe recovers the handlebody-side and knob levels") {
    AlphabetSpec alpha{1, 1};
    FreeGroupAut tx = twist_x(alpha, 1);
    FreeGroupAut ty = twist_y(alpha, 1);
    FreeGroupAut knob = knob_twist(alpha, 1);
    FreeGroupAut td = handle_boundary_twist(alpha);

    ProbeResult rx = probe(tx, 2, 5);
    CHECK(antichain(rx) == std::vector<ExtPair>{ExtPair(1, -1)});
    CHECK(probe_verified_at(rx, ExtPair(0, -1)));
    CHECK(probe_verified_at(rx, ExtPair(-1, -1)));
    CHECK_FALSE(probe_verified_at(rx, ExtPair(0, 0)));
    CHECK_FALSE(probe_verified_at(rx, ExtPair(2, -1)));

    // the first refutation of the trivial level: [h, y] = x has a pure-x
    // monomial, violating the y-side requirement
    bool found = false;
    for (const ProbeRefutation& r : rx.refutations)
        if (r.level == ExtPair(0, 0)) {
            CHECK(r.test_word == Word{2});
            CHECK_FALSE(r.on_inverse);
            CHECK(mono_str(r.witness, alpha) == "X1");
            found = true;
            break;
        }
    CHECK(found);

    ProbeResult ry = probe(ty, 2, 5);
    CHECK(antichain(ry) == std::vector<ExtPair>{ExtPair(-1, 1)});

    ProbeResult rk = probe(knob, 2, 5);
    CHECK(antichain(rk) == std::vector<ExtPair>{ExtPair(0, 0)});
    CHECK(probe_verified_at(rk, ExtPair(0, -1)));
    CHECK_FALSE(probe_verified_at(rk, ExtPair(1, -1)));
    CHECK_FALSE(probe_verified_at(rk, ExtPair(-1, 1)));

    ProbeResult rd = probe(td, 2, 5);
    CHECK(antichain(rd) == std::vector<ExtPair>{ExtPair(1, 1)});

    // conjugation by a single meridian sits one step below the boundary twist
    ProbeResult ri = probe(aut_inner(alpha, Word{1}), 2, 5);
    CHECK(antichain(ri) == std::vector<ExtPair>{ExtPair(1, 0)});

    ProbeResult rid = probe(FreeGroupAut::identity(alpha), 2, 5);
    CHECK(rid.refutations.empty());
    CHECK(antichain(rid) == std::vector<ExtPair>{ExtPair(-1, 3), ExtPair(0, 2), ExtPair(1, 1),
                                                 ExtPair(2, 0), ExtPair(3, -1)});

    CHECK_THROWS_AS(probe(tx, 4, 5), BoundError);
}

TEST_CASE("double evaluation at the first interior level") {
    AlphabetSpec alpha{1, 1};
    LieContext ctx(alpha);
    FreeGroupAut td = handle_boundary_twist(alpha);
    Word w = commutator(Word{-1}, Word{-2});

    TauValue t = tau_double(ctx, td, Bidegree{1, 1}, 6);
    CHECK(t.kind == TauKind::Double);
    CHECK(t.level == ExtPair(1, 1));
    CHECK(t.symplectic_ok);

    // values are brackets of the conjugator's leading term with the letters
    LieElement lt_w = leading_term(ctx, w, Bidegree{1, 1}, 4).value;
    CHECK(t.value.a_values[0] == lie_bracket(ctx, lt_w, lie_generator(ctx, 1)));
    CHECK(t.value.b_values[0] == lie_bracket(ctx, lt_w, lie_generator(ctx, 2)));

    // one level down the evaluation vanishes
    CHECK(tau_double(ctx, td, Bidegree{0, 1}, 6).value.is_zero());
    CHECK(tau_double(ctx, td, Bidegree{1, 0}, 6).value.is_zero());

    // additivity on the square
    TauValue t_sq = tau_double(ctx, aut_pow(td, 2), Bidegree{1, 1}, 6);
    CHECK(t_sq.value.a_values[0] == lie_scale(t.value.a_values[0], 2));
    CHECK(t_sq.value.b_values[0] == lie_scale(t.value.b_values[0], 2));

    // level gate, degree gate, bound gate
    CHECK_THROWS_AS(tau_double(ctx, twist_x(alpha, 1), Bidegree{1, 1}, 6), NotInLevel);
    CHECK_THROWS_AS(tau_double(ctx, td, Bidegree{0, 0}, 6), InvalidDegree);
    CHECK_THROWS_AS(tau_double(ctx, td, Bidegree{1, 1}, 3), BoundError);

    TauValue tid = tau_double(ctx, FreeGroupAut::identity(alpha), Bidegree{1, 1}, 6);
    CHECK(tid.value.is_zero());
    CHECK(tid.symplectic_ok);
}

TEST_CASE("edge evaluations take one-sided values") {
    AlphabetSpec alpha{2, 2};
    LieContext ctx(alpha);

    // y_1 -> [x_1, x_2] y_1 preserves homology and lies at level (2,-1)
    FreeGroupAut h = transvect_y(alpha, 1, commutator(Word{1}, Word{2}));
    ProbeResult r = probe(h, 2, 5);
    CHECK(antichain(r) == std::vector<ExtPair>{ExtPair(2, -1)});

    TauValue t = tau_edge(ctx, h, ExtPair(2, -1), 6);
    CHECK(t.kind == TauKind::Edge);
    CHECK(t.level == ExtPair(2, -1));
    LieElement a1 = lie_generator(ctx, 1, LieGrade::Kind::Total);
    LieElement a2 = lie_generator(ctx, 2, LieGrade::Kind::Total);
    CHECK(t.value.b_values[0] == lie_bracket(ctx, a1, a2));
    CHECK(t.value.b_values[1].is_zero());
    for (const LieElement& v : t.value.a_values) CHECK(v.is_zero());

    // mirror: x_1 -> [y_1, y_2] x_1 at level (-1,2)
    FreeGroupAut hm = transvect_x(alpha, 1, commutator(Word{3}, Word{4}));
    CHECK(antichain(probe(hm, 2, 5)) == std::vector<ExtPair>{ExtPair(-1, 2)});
    TauValue tm = tau_edge(ctx, hm, ExtPair(-1, 2), 6);
    LieElement b1 = lie_generator(ctx, 3, LieGrade::Kind::Total);
    LieElement b2 = lie_generator(ctx, 4, LieGrade::Kind::Total);
    CHECK(tm.value.a_values[0] == lie_bracket(ctx, b1, b2));
    for (const LieElement& v : tm.value.b_values) CHECK(v.is_zero());

    // a meridian twist is one level too shallow for the (2,-1) evaluation
    AlphabetSpec a1g{1, 1};
    LieContext ctx1(a1g);
    CHECK_THROWS_AS(tau_edge(ctx1, twist_x(a1g, 1), ExtPair(2, -1), 6), NotInLevel);
    CHECK_THROWS_AS(tau_edge(ctx1, twist_x(a1g, 1), ExtPair(1, -1), 6), InvalidIndex);
    CHECK_THROWS_AS(tau_edge(ctx1, twist_x(a1g, 1), ExtPair(1, 1), 6), InvalidIndex);
}

TEST_CASE("weighted evaluations and their level gate") {
    AlphabetSpec alpha{1, 1};
    LieContext ctx(alpha);
    FreeGroupAut tx = twist_x(alpha, 1);
    FreeGroupAut ty = twist_y(alpha, 1);
    FreeGroupAut knob = knob_twist(alpha, 1);
    FreeGroupAut td = handle_boundary_twist(alpha);

    // [t_x, y] = x has weight 2, enough for the first weighted level
    TauValue t = tau_alt(ctx, tx, 1, 6);
    CHECK(t.kind == TauKind::Alternative);
    CHECK(t.value.b_values[0] == lie_generator(ctx, 1, LieGrade::Kind::Weighted));
    CHECK(t.value.a_values[0].is_zero());
    CHECK(t.symplectic_ok);

    // [t_y, x] = y^-1 has weight 1 < 3; [knob, y] has weight 1 < 2
    CHECK_THROWS_AS(tau_alt(ctx, ty, 1, 6), NotInLevel);
    CHECK_THROWS_AS(tau_alt(ctx, knob, 1, 6), NotInLevel);

    // the boundary twist first shows up at weighted level 3
    CHECK(tau_alt(ctx, td, 2, 6).value.is_zero());
    TauValue t3 = tau_alt(ctx, td, 3, 6);
    CHECK_FALSE(t3.value.is_zero());
    CHECK(t3.symplectic_ok);

    CHECK_THROWS_AS(tau_alt(ctx, tx, 0, 6), InvalidIndex);
    CHECK_THROWS_AS(tau_alt(ctx, tx, 1, 3), BoundError);
}

TEST_CASE("length and weight regradings intertwine the evaluations") {
    AlphabetSpec alpha{1, 1};
    LieContext ctx(alpha);
    FreeGroupAut td = handle_boundary_twist(alpha);

    TauValue dbl = tau_double(ctx, td, Bidegree{1, 1}, 6);
    CHECK(j_map(ctx, dbl.value) == tau_classical(ctx, td, 2, 6).value);
    CHECK(ja_map(ctx, dbl.value) == tau_alt(ctx, td, 3, 6).value);

    AlphabetSpec alpha2{2, 2};
    LieContext ctx2(alpha2);
    FreeGroupAut td2 = handle_boundary_twist(alpha2);
    TauValue dbl2 = tau_double(ctx2, td2, Bidegree{1, 1}, 6);
    CHECK(j_map(ctx2, dbl2.value) == tau_classical(ctx2, td2, 2, 6).value);
    CHECK(ja_map(ctx2, dbl2.value) == tau_alt(ctx2, td2, 3, 6).value);
    CHECK(dbl2.value.a_values[1].is_zero());
    CHECK(dbl2.value.b_values[1].is_zero());
}

TEST_CASE("wedge quadrant split partitions the coordinates") {
    AlphabetSpec alpha{2, 2};
    auto basis = wedge3_basis(alpha);
    Vec coords(basis.size());
    for (size_t t = 0; t < coords.size(); ++t) coords[t] = Int(static_cast<long>(t) + 1);
    Wedge3Split s = wedge3_quadrant_split(alpha, coords);
    for (size_t t = 0; t < basis.size(); ++t) {
        CHECK(s.aaa[t] + s.aab[t] + s.abb[t] + s.bbb[t] == coords[t]);
        int ys = 0;
        for (int sym : basis[t])
            if (alpha.is_y(sym)) ++ys;
        CHECK(s.aaa[t] == (ys == 0 ? coords[t] : Int(0)));
        CHECK(s.bbb[t] == (ys == 3 ? coords[t] : Int(0)));
    }
    // three distinct letters of one type need genus three
    for (size_t t = 0; t < basis.size(); ++t) {
        CHECK(s.aaa[t] == 0);
        CHECK(s.bbb[t] == 0);
    }
    CHECK_THROWS_AS(wedge3_quadrant_split(alpha, Vec(2)), GradeMismatch);
}
