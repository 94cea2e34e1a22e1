#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bigrade/catalog.hpp"

#include <sstream>

using namespace bigrade;

namespace {

std::string tau1_str(const AlphabetSpec& alpha, const FreeGroupAut& h) {
    LieContext ctx(alpha);
    return wedge3_str(alpha, wedge3_decode(ctx, tau_classical(ctx, h, 1, 4).value));
}

// image tables derived independently of the builders (curve-by-curve, in a
// separate program) and frozen here; fwd images only, genus = size/2
struct FrozenTable {
    const char* name;
    std::vector<Word> fwd;
};

const std::vector<FrozenTable> frozen_tables = {
    {"t_x12", {{2, 1, -2}, {2, 1, 2, -1, -2}, {2, 1, 3, 1, 2, -1, -2}, {2, 1, 4}}},
    {"t_y12", {{-4, -3, 1}, {-4, -3, 2, -3, -4, 3, 4}, {-4, 3, 4}, {-4, -3, 4, 3, 4}}},
    {"g3 t_x12",
     {{2, 1, -2}, {2, 1, 2, -1, -2}, {3}, {2, 1, 4, 1, 2, -1, -2}, {2, 1, 5}, {6}}},
    {"g3 t_x13",
     {{3, 1, -3}, {3, 1, -3, -1, 2, 1, 3, -1, -3}, {3, 1, 3, -1, -3}, {3, 1, 4, 1, 3, -1, -3},
      {3, 1, -3, -1, 5, 1, 3, -1, -3}, {3, 1, 6}}},
    {"g3 t_x23",
     {{1}, {3, 2, -3}, {3, 2, 3, -2, -3}, {4}, {3, 2, 5, 2, 3, -2, -3}, {3, 2, 6}}},
    {"g3 t_y12",
     {{-5, -4, 1}, {-5, -4, 2, -4, -5, 4, 5}, {3}, {-5, 4, 5}, {-5, -4, 5, 4, 5}, {6}}},
    {"g3 t_y13",
     {{-6, -4, 1}, {-6, -4, 6, 4, 2, -4, -6, 4, 6}, {-6, -4, 3, -4, -6, 4, 6}, {-6, 4, 6},
      {-6, -4, 6, 4, 5, -4, -6, 4, 6}, {-6, -4, 6, 4, 6}}},
    {"g3 t_y23",
     {{1}, {-6, -5, 2}, {-6, -5, 3, -5, -6, 5, 6}, {4}, {-6, 5, 6}, {-6, -5, 6, 5, 6}}},
    {"phi_12", {{-4, 1, 4}, {-4, 1, 4, 2, 1, -4, -1, 4}, {-4, 3, 1, -4, -1, 4}, {-4, 1, 4, -1, 4}}},
    {"phi_21", {{2, 1}, {2, -3, 2, 3, -2}, {2, 3, -2}, {2, -3, -2, 4}}},
    {"g3 phi_12",
     {{-5, 1, 5}, {-5, 1, 5, 2, 1, -5, -1, 5}, {3}, {-5, 4, 1, -5, -1, 5}, {-5, 1, 5, -1, 5}, {6}}},
    {"g3 phi_21", {{2, 1}, {2, -4, 2, 4, -2}, {3}, {2, 4, -2}, {2, -4, -2, 5}, {6}}},
    {"g3 phi_13",
     {{-6, 1, 6}, {-6, 1, 6, -1, 2, 1, -6, -1, 6}, {-6, 1, 6, 3, 1, -6, -1, 6},
      {-6, 4, 1, -6, -1, 6}, {-6, 1, 6, -1, 5, 1, -6, -1, 6}, {-6, 1, 6, -1, 6}}},
    {"g3 phi_31",
     {{3, 1}, {3, -4, -3, 4, 2, -4, 3, 4, -3}, {3, -4, 3, 4, -3}, {3, 4, -3},
      {3, -4, -3, 4, 5, -4, 3, 4, -3}, {3, -4, -3, 6}}},
    {"g3 phi_23",
     {{1}, {-6, 2, 6}, {-6, 2, 6, 3, 2, -6, -2, 6}, {4}, {-6, 5, 2, -6, -2, 6}, {-6, 2, 6, -2, 6}}},
    {"g3 phi_32", {{1}, {3, 2}, {3, -5, 3, 5, -3}, {4}, {3, 5, -3}, {3, -5, -3, 6}}},
};

}  // namespace

TEST_CASE("symplectic matrices and the homology action") {
    AlphabetSpec a(1, 1);
    Mat j = SymplecticMatrix::standard_form(2);
    CHECK(j.at(0, 2) == 1);
    CHECK(j.at(3, 1) == -1);

    SymplecticMatrix sx = sigma(twist_x(a, 1));
    CHECK(sx.m.at(0, 0) == 1);
    CHECK(sx.m.at(0, 1) == 1);
    CHECK(sx.m.at(1, 0) == 0);
    CHECK(sx.m.at(1, 1) == 1);
    SymplecticMatrix sy = sigma(twist_y(a, 1));
    CHECK(sy.m.at(1, 0) == -1);

    // commutator of the two twists acts by [[1,1],[1,2]]
    SymplecticMatrix sc = sigma(aut_commutator(twist_x(a, 1), twist_y(a, 1)));
    Mat want(2, 2);
    want.at(0, 0) = 1;
    want.at(0, 1) = 1;
    want.at(1, 0) = 1;
    want.at(1, 1) = 2;
    CHECK(sc.m == want);
    CHECK(block_shape_classify(sc) == BlockShape::None);

    // a non-symplectic integer matrix is rejected
    Mat bad = Mat::identity(2);
    bad.at(0, 1) = 1;
    bad.at(1, 0) = 1;  // det 0, cannot satisfy M^T J M = J
    CHECK_THROWS_AS(SymplecticMatrix(1, bad), SymplecticCheckFailed);

    // sigma demands a boundary-fixing automorphism
    std::vector<Word> fwd{{2}, {1}}, inv{{2}, {1}};
    CHECK_THROWS_AS(sigma(FreeGroupAut(a, fwd, inv)), SymplecticCheckFailed);
}

TEST_CASE("block shape classification") {
    auto classify = [](int g, Mat m) { return block_shape_classify(SymplecticMatrix(g, m)); };
    CHECK(classify(2, Mat::identity(4)) == BlockShape::TShape);  // ties break toward T

    Mat t = Mat::identity(4);
    t.at(0, 2) = 1;
    t.at(0, 3) = 2;
    t.at(1, 2) = 2;  // symmetric Q
    CHECK(classify(2, t) == BlockShape::TShape);
    Mat tp = Mat::identity(4);
    tp.at(2, 1) = 5;
    tp.at(3, 0) = 5;
    CHECK(classify(2, tp) == BlockShape::TPrimeShape);

    Mat gsh = Mat::identity(4);
    gsh.at(0, 0) = 2;
    gsh.at(0, 1) = 1;
    gsh.at(1, 0) = 1;
    gsh.at(1, 1) = 1;  // P = [[2,1],[1,1]], D = (P^T)^-1
    gsh.at(2, 2) = 1;
    gsh.at(2, 3) = -1;
    gsh.at(3, 2) = -1;
    gsh.at(3, 3) = 2;
    CHECK(classify(2, gsh) == BlockShape::GShape);

    Mat h = gsh;
    h.at(0, 2) = 2;
    h.at(1, 2) = 1;  // Q = P * S for symmetric S = e11
    CHECK(classify(2, h) == BlockShape::HShape);

    Mat hp = gsh;
    hp.at(2, 0) = 3;
    hp.at(2, 1) = 2;
    hp.at(3, 0) = 2;
    hp.at(3, 1) = 1;  // P^T Q symmetric
    CHECK(classify(2, hp) == BlockShape::HPrimeShape);

    CHECK(block_shape_from_name("H'-shape") == BlockShape::HPrimeShape);
    CHECK(block_shape_from_name("nonsense") == std::nullopt);
    CHECK(block_shape_name(BlockShape::None) == "none");
}

TEST_CASE("builder tables match the independently derived images") {
    for (const FrozenTable& f : frozen_tables) {
        CAPTURE(f.name);
        int g = static_cast<int>(f.fwd.size()) / 2;
        AlphabetSpec a(g, g);
        std::string n = f.name;
        if (n.rfind("g3 ", 0) == 0) n = n.substr(3);
        FreeGroupAut h = n[0] == 'p' ? phi_map(a, n[4] - '0', n[5] - '0')
                         : n[2] == 'x' ? twist_x_pair(a, n[3] - '0', n[4] - '0')
                                       : twist_y_pair(a, n[3] - '0', n[4] - '0');
        CHECK(h.fwd_table() == f.fwd);
    }
}

TEST_CASE("twist levels and homology blocks across the surface catalog") {
    AlphabetSpec a(2, 2);
    ProbeResult knob = probe(knob_twist(a, 1), 1, 6);
    REQUIRE(knob.verified_levels.size() == 1);
    CHECK(knob.verified_levels[0] == ExtPair(0, 0));
    SymplecticMatrix ks = sigma(knob_twist(a, 1));
    CHECK(ks.m.at(0, 0) == -1);
    CHECK(ks.m.at(2, 2) == -1);
    CHECK(ks.m.at(1, 1) == 1);
    CHECK(block_shape_classify(ks) == BlockShape::GShape);

    // the eyeglass twist already fails the weakest one-sided conditions
    ProbeResult eg = probe(eyeglass_twist(a, 1, 2), 1, 6);
    REQUIRE(eg.verified_levels.size() == 1);
    CHECK(eg.verified_levels[0] == ExtPair(-1, -1));

    // removing its one-band factors lands in the conjugation-level group
    ProbeResult ph = probe(phi_map(a, 1, 2), 1, 6);
    REQUIRE(ph.verified_levels.size() == 1);
    CHECK(ph.verified_levels[0] == ExtPair(0, 0));
    SymplecticMatrix ps = sigma(phi_map(a, 1, 2));
    Mat want = Mat::identity(4);
    want.at(0, 1) = 1;
    want.at(3, 2) = -1;  // a_2 -> a_2 + a_1, b_1 -> b_1 - b_2
    CHECK(ps.m == want);
    CHECK(block_shape_classify(ps) == BlockShape::GShape);

    // composing the one-band twists back recovers the eyeglass twist
    FreeGroupAut back = compose(compose(phi_map(a, 1, 2), twist_x(a, 1)), twist_y(a, 2));
    CHECK(back == eyeglass_twist(a, 1, 2));
}

TEST_CASE("degree-one values of the bounding pair maps and their mirrors") {
    AlphabetSpec g2(2, 2), g3(3, 3);
    CHECK(tau1_str(g2, bp_map(g2, 1, 2)) == "a1^a2^b1");
    CHECK(tau1_str(g2, bp_map(g2, 2, 1)) == "-a1^a2^b2");
    CHECK(tau1_str(g2, bp_mirror_map(g2, 1, 2)) == "a1^b1^b2");
    CHECK(tau1_str(g2, bp_mirror_map(g2, 2, 1)) == "-a2^b1^b2");
    CHECK(tau1_str(g3, bp_map(g3, 1, 3)) == "a1^a3^b1");
    CHECK(tau1_str(g3, bp_map(g3, 3, 1)) == "-a1^a3^b3");
    CHECK(tau1_str(g3, bp_map(g3, 2, 3)) == "a2^a3^b2");
    CHECK(tau1_str(g3, bp_map(g3, 3, 2)) == "-a2^a3^b3");
    CHECK(tau1_str(g3, bp_mirror_map(g3, 1, 3)) == "a1^b1^b3");
    CHECK(tau1_str(g3, bp_mirror_map(g3, 3, 1)) == "-a3^b1^b3");
    CHECK(tau1_str(g3, bp_mirror_map(g3, 2, 3)) == "a2^b2^b3");
    CHECK(tau1_str(g3, bp_mirror_map(g3, 3, 2)) == "-a3^b2^b3");

    // pure-side triples from waist-twist commutators
    CHECK(tau1_str(g3, aut_commutator(twist_x_pair(g3, 1, 3), twist_x_pair(g3, 1, 2))) ==
          "a1^a2^a3");
    CHECK(tau1_str(g3, aut_commutator(twist_y_pair(g3, 1, 3), twist_y_pair(g3, 1, 2))) ==
          "-b1^b2^b3");

    // conjugate-commutator realizers for the remaining mixed triples
    CHECK(tau1_str(g3, aut_commutator(inverse(phi_map(g3, 1, 3)), bp_map(g3, 1, 2))) ==
          "a1^a2^b3");
    CHECK(tau1_str(g3, aut_commutator(phi_map(g3, 3, 1), bp_mirror_map(g3, 1, 2))) ==
          "a3^b1^b2");
}

TEST_CASE("wedge realizers cover the whole basis with unit values") {
    for (int g = 2; g <= 3; ++g) {
        AlphabetSpec a(g, g);
        LieContext ctx(a);
        std::vector<WedgeRealizer> rs = wedge_realizers(a);
        std::vector<std::array<int, 3>> basis = wedge3_basis(a);
        REQUIRE(rs.size() == basis.size());
        for (size_t t = 0; t < rs.size(); ++t) {
            CAPTURE(rs[t].name);
            Vec v = wedge3_decode(ctx, tau_classical(ctx, rs[t].aut, 1, 4).value);
            for (size_t s = 0; s < v.size(); ++s) {
                if (s == t)
                    CHECK((v[s] == 1 || v[s] == -1));
                else
                    CHECK(v[s] == 0);
            }
        }
    }
    CHECK(wedge_realizers(AlphabetSpec(1, 1)).empty());
}

TEST_CASE("default catalog composition") {
    std::vector<CatalogEntry> cat = default_catalog();
    CHECK(cat.size() == 190);
    CHECK(surface_catalog(1).size() == 5);
    CHECK(surface_catalog(2).size() == 19);
    CHECK(surface_catalog(3).size() == 43);
    CHECK(magnus_generators(2, 1).size() == 9);
    CHECK(magnus_generators(2, 2).size() == 24);
    CHECK(magnus_generators(3, 3).size() == 90);
    CHECK_THROWS_AS(magnus_generators(1, 1), InvalidIndex);
    CHECK_THROWS_AS(surface_catalog(4), InvalidIndex);

    const CatalogEntry* e = catalog_find(cat, "phi_x1y2y2");
    CHECK(e == nullptr);  // commutator moves need distinct second and third letters
    e = catalog_find(cat, "phi_x1y1y2");
    REQUIRE(e != nullptr);
    CHECK(e->claims.level == ExtPair(-1, 2));
    CHECK(e->alpha.p == 2);

    // names are unique within one alphabet
    for (size_t i = 0; i < cat.size(); ++i)
        for (size_t j = i + 1; j < cat.size(); ++j)
            if (cat[i].name == cat[j].name)
                CHECK(!(cat[i].alpha.p == cat[j].alpha.p && cat[i].alpha.q == cat[j].alpha.q));
}

TEST_CASE("every shipped entry passes validation at bound 6") {
    int checked = 0;
    for (const CatalogEntry& e : default_catalog()) {
        ValidationReport r = validate(e, 6);
        CAPTURE(e.name);
        for (const ValidationIssue& i : r.failures) {
            CAPTURE(i.claim);
            CAPTURE(i.detail);
            CHECK(false);
        }
        CHECK(r.ok());
        ++checked;
    }
    CHECK(checked == 190);
}

TEST_CASE("validation pinpoints corrupted entries by claim") {
    std::vector<CatalogEntry> cat = surface_catalog(2);

    // flip one letter inside a stored image: the inverse check catches it
    CatalogEntry broken = *catalog_find(cat, "h_12");
    broken.fwd[0][2] = -broken.fwd[0][2];
    ValidationReport r = validate(broken, 6);
    REQUIRE(!r.ok());
    CHECK(r.failures[0].claim == "inverse-table");

    // wrong degree-one expectation
    CatalogEntry wrong_tau = *catalog_find(cat, "h_12");
    wrong_tau.claims.tau_values["tau1"] = {{"a1^a2^b1", -1}};
    r = validate(wrong_tau, 6);
    REQUIRE(!r.ok());
    CHECK(r.failures[0].claim == "tau1");
    CHECK(r.failures[0].detail.find("a1^a2^b1") != std::string::npos);

    // wrong level: the twist cannot sit in the conjugation-level group
    CatalogEntry wrong_level = *catalog_find(cat, "t_x1");
    wrong_level.claims.level = ExtPair(0, 0);
    r = validate(wrong_level, 6);
    REQUIRE(!r.ok());
    CHECK(r.failures[0].claim == "level");
    CHECK(r.failures[0].detail.find("violating level") != std::string::npos);

    // wrong homology claim
    CatalogEntry wrong_sigma = *catalog_find(cat, "t_x1");
    wrong_sigma.claims.sigma->matrix = Mat::identity(4);
    r = validate(wrong_sigma, 6);
    REQUIRE(!r.ok());
    CHECK(r.failures[0].claim == "sigma-matrix");

    // wrong boundary claim: a conjugation move does not fix the boundary word
    std::vector<CatalogEntry> ia = magnus_generators(2, 2);
    CatalogEntry wrong_bdry = *catalog_find(ia, "phi_x1x2");
    wrong_bdry.surface_mode = true;
    wrong_bdry.claims.fixes_boundary = true;
    r = validate(wrong_bdry, 6);
    REQUIRE(!r.ok());
    CHECK(r.failures[0].claim == "boundary");
}

TEST_CASE("torelli elements factor through the four quadrant pieces") {
    for (int g = 1; g <= 3; ++g) {
        AlphabetSpec a(g, g);
        LieContext ctx(a);
        for (const CatalogEntry& e : surface_catalog(g)) {
            if (!e.claims.sigma || !e.claims.sigma->matrix ||
                !(*e.claims.sigma->matrix == Mat::identity(2 * g)))
                continue;
            CAPTURE(e.name);
            TorelliFactorization f = torelli_reconstruct(ctx, e.aut(), 6);
            CHECK(f.exact);
            REQUIRE(f.parts.size() == 4);
            for (const Int& v : f.residual) CHECK(v == 0);
        }
    }
}

TEST_CASE("catalog json round trip and error reporting") {
    std::vector<CatalogEntry> cat = default_catalog();
    std::ostringstream os;
    save_catalog(os, cat);
    std::istringstream is(os.str());
    std::vector<CatalogEntry> back = load_catalog(is);
    REQUIRE(back.size() == cat.size());
    for (size_t i = 0; i < cat.size(); ++i) {
        CAPTURE(cat[i].name);
        CHECK(back[i].name == cat[i].name);
        CHECK(back[i].fwd == cat[i].fwd);
        CHECK(back[i].inv == cat[i].inv);
        CHECK(back[i].surface_mode == cat[i].surface_mode);
        CHECK(back[i].claims.fixes_boundary == cat[i].claims.fixes_boundary);
        CHECK(back[i].claims.level == cat[i].claims.level);
        CHECK(back[i].claims.tau_values == cat[i].claims.tau_values);
        CHECK(back[i].claims.sigma.has_value() == cat[i].claims.sigma.has_value());
        if (back[i].claims.sigma && cat[i].claims.sigma) {
            CHECK(back[i].claims.sigma->matrix == cat[i].claims.sigma->matrix);
            CHECK(back[i].claims.sigma->shape == cat[i].claims.sigma->shape);
        }
    }

    std::istringstream junk("{\"entries\": 3}");
    CHECK_THROWS_AS(load_catalog(junk), CatalogError);
    std::istringstream notjson("]o[");
    CHECK_THROWS_AS(load_catalog(notjson), CatalogError);
    std::istringstream missing(R"([{"name":"z","p":1,"q":1,"mode":"surface","fwd":{"x1":"x1"}}])");
    CHECK_THROWS_AS(load_catalog(missing), CatalogError);
    std::istringstream badmode(
        R"([{"name":"z","p":1,"q":1,"mode":"torus","fwd":{"x1":"x1","y1":"y1"},"inv":{"x1":"x1","y1":"y1"}}])");
    CHECK_THROWS_AS(load_catalog(badmode), CatalogError);
    CHECK_THROWS_AS(load_catalog_file("/nonexistent/catalog.json"), CatalogError);

    // word syntax in files follows the text form
    nlohmann::ordered_json j = entry_to_json(*catalog_find(cat, "t_x1"));
    CHECK(j["fwd"]["y1"] == "x1 y1");
    CHECK(j["claims"]["level"][0] == 1);
    CHECK(j["claims"]["level"][1] == -1);
    CHECK(j["claims"]["shape"] == "T-shape");
}
