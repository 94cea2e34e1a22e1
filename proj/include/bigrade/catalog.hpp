#pragma once

#include "bigrade/johnson.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bigrade {

struct SymplecticCheckFailed : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Symplectic matrices over the integers, written in the homology basis
// (a_1..a_g, b_1..b_g) where a_i, b_i are the classes of x_i, y_i.
// ---------------------------------------------------------------------------

struct SymplecticMatrix {
    int g = 0;
    Mat m;

    SymplecticMatrix(int genus, Mat mat) : g(genus), m(std::move(mat)) {
        if (g < 1 || m.rows != 2 * g || m.cols != 2 * g)
            throw SymplecticCheckFailed("matrix size does not match genus");
        Mat j = standard_form(g);
        if (!(mat_mul(mat_transpose(m), mat_mul(j, m)) == j))
            throw SymplecticCheckFailed("M^T J M != J");
    }

    // J = [[0, I], [-I, 0]]
    static Mat standard_form(int g) {
        Mat j(2 * g, 2 * g);
        for (int i = 0; i < g; ++i) {
            j.at(i, g + i) = 1;
            j.at(g + i, i) = -1;
        }
        return j;
    }

    bool operator==(const SymplecticMatrix& o) const { return g == o.g && m == o.m; }
};

// Induced map on first homology: column c holds the signed letter counts of
// the image of generator c.  Requires surface mode and a boundary-fixing
// automorphism; a failed symplectic check signals a bad table.
inline SymplecticMatrix sigma(const FreeGroupAut& h) {
    int g = h.alpha.genus();
    if (!fixes_boundary(h))
        throw SymplecticCheckFailed("automorphism does not fix the boundary word");
    Mat m(2 * g, 2 * g);
    for (int c = 1; c <= 2 * g; ++c)
        for (int l : h.image(c)) m.at(std::abs(l) - 1, c - 1) += l > 0 ? 1 : -1;
    return SymplecticMatrix(g, std::move(m));
}

// ---------------------------------------------------------------------------
// Block-shape classification of symplectic matrices into the five standard
// upper/lower/diagonal patterns, most specific tag first.
// ---------------------------------------------------------------------------

enum class BlockShape { TShape, TPrimeShape, GShape, HShape, HPrimeShape, None };

inline std::string block_shape_name(BlockShape s) {
    switch (s) {
        case BlockShape::TShape: return "T-shape";
        case BlockShape::TPrimeShape: return "T'-shape";
        case BlockShape::GShape: return "G-shape";
        case BlockShape::HShape: return "H-shape";
        case BlockShape::HPrimeShape: return "H'-shape";
        default: return "none";
    }
}

inline std::optional<BlockShape> block_shape_from_name(const std::string& s) {
    for (BlockShape b : {BlockShape::TShape, BlockShape::TPrimeShape, BlockShape::GShape,
                         BlockShape::HShape, BlockShape::HPrimeShape, BlockShape::None})
        if (block_shape_name(b) == s) return b;
    return std::nullopt;
}

namespace detail {

inline Mat mat_block(const Mat& m, int g, int r0, int c0) {
    Mat out(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
    return out;
}

inline bool mat_is_zero(const Mat& m) {
    for (const Int& v : m.a)
        if (v != 0) return false;
    return true;
}

inline bool mat_is_symmetric(const Mat& m) {
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (m.at(i, j) != m.at(j, i)) return false;
    return true;
}

// inverse of a matrix with determinant +-1 (adjugate divided by det)
inline std::optional<Mat> unimodular_inverse(const Mat& a) {
    if (a.rows != a.cols) return std::nullopt;
    int n = a.rows;
    Int d = det(a);
    if (d != 1 && d != -1) return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(rr, cc++) = a.at(r, c);
                }
                ++rr;
            }
            Int cof = (n == 1) ? Int(1) : det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv.at(i, j) = cof * d;  // d = 1/d for d = +-1
        }
    return inv;
}

}  // namespace detail

inline BlockShape block_shape_classify(const SymplecticMatrix& s) {
    int g = s.g;
    Mat a = detail::mat_block(s.m, g, 0, 0), b = detail::mat_block(s.m, g, 0, g);
    Mat c = detail::mat_block(s.m, g, g, 0), d = detail::mat_block(s.m, g, g, g);
    bool ai = a == Mat::identity(g), di = d == Mat::identity(g);
    bool bz = detail::mat_is_zero(b), cz = detail::mat_is_zero(c);
    if (ai && di && cz && detail::mat_is_symmetric(b)) return BlockShape::TShape;
    if (ai && di && bz && detail::mat_is_symmetric(c)) return BlockShape::TPrimeShape;
    std::optional<Mat> ainv = detail::unimodular_inverse(a);
    if (ainv && d == mat_transpose(*ainv)) {
        if (bz && cz) return BlockShape::GShape;
        if (cz && detail::mat_is_symmetric(mat_mul(*ainv, b))) return BlockShape::HShape;
        if (bz && detail::mat_is_symmetric(mat_mul(mat_transpose(a), c))) return BlockShape::HPrimeShape;
    }
    return BlockShape::None;
}

// ---------------------------------------------------------------------------
// Catalog entries: named automorphism tables plus the claims the validation
// suite must confirm.
// ---------------------------------------------------------------------------

struct SigmaClaim {
    std::optional<Mat> matrix;
    std::optional<BlockShape> shape;
};

struct EntryClaims {
    bool fixes_boundary = false;
    ExtPair level{-1, -1};
    std::optional<SigmaClaim> sigma;
    // expectation key -> decoded wedge value as {monomial "a1^a2^b1" -> coefficient};
    // an empty map claims the value vanishes. Only "tau1" is understood.
    std::map<std::string, std::map<std::string, long>> tau_values;
};

struct CatalogEntry {
    std::string name;
    AlphabetSpec alpha;
    bool surface_mode = false;
    std::vector<Word> fwd, inv;
    EntryClaims claims;

    FreeGroupAut aut() const { return FreeGroupAut(alpha, fwd, inv); }
};

// ---------------------------------------------------------------------------
// Generator builders.  All conventions below are pinned by the validation
// suite: boundary fixation, the claimed homology action, the claimed
// filtration levels and the decoded degree-one values.
// ---------------------------------------------------------------------------

// twist along the k-th meridian: y_k -> x_k y_k
inline FreeGroupAut twist_x(const AlphabetSpec& alpha, int k) {
    int g = alpha.genus();
    if (k < 1 || k > g) throw InvalidIndex("twist index out of range");
    std::vector<Word> fwd, inv;
    for (int id = 1; id <= 2 * g; ++id) {
        if (id == alpha.y(k)) {
            fwd.push_back({alpha.x(k), alpha.y(k)});
            inv.push_back({-alpha.x(k), alpha.y(k)});
        } else {
            fwd.push_back({id});
            inv.push_back({id});
        }
    }
    return FreeGroupAut(alpha, fwd, inv);
}

// twist along the k-th parallel: x_k -> y_k^-1 x_k
inline FreeGroupAut twist_y(const AlphabetSpec& alpha, int k) {
    int g = alpha.genus();
    if (k < 1 || k > g) throw InvalidIndex("twist index out of range");
    std::vector<Word> fwd, inv;
    for (int id = 1; id <= 2 * g; ++id) {
        if (id == alpha.x(k)) {
            fwd.push_back({-alpha.y(k), alpha.x(k)});
            inv.push_back({alpha.y(k), alpha.x(k)});
        } else {
            fwd.push_back({id});
            inv.push_back({id});
        }
    }
    return FreeGroupAut(alpha, fwd, inv);
}

// twist along the curve that encircles meridians i and j (i < j), reading
// x_j x_i on the surface
inline FreeGroupAut twist_x_pair(const AlphabetSpec& alpha, int i, int j) {
    int g = alpha.genus();
    if (i < 1 || j <= i || j > g) throw InvalidIndex("twist pair needs 1 <= i < j <= g");
    Word gam{alpha.x(j), alpha.x(i)}, gami = word_inv(gam);
    Word mid = commutator({alpha.x(j)}, {alpha.x(i)});
    Word midi = commutator({-alpha.x(i)}, {-alpha.x(j)});
    std::vector<Word> fwd, inv;
    for (int id = 1; id <= 2 * g; ++id) {
        if (id == alpha.x(i) || id == alpha.x(j)) {
            fwd.push_back(word_conj(gam, {id}));
            inv.push_back(word_conj(gami, {id}));
        } else if (id == alpha.y(i)) {
            fwd.push_back(word_mul(word_mul(gam, {id}), commutator({alpha.x(i)}, {alpha.x(j)})));
            inv.push_back(word_mul(word_mul(gami, {id}), commutator({-alpha.x(j)}, {-alpha.x(i)})));
        } else if (id == alpha.y(j)) {
            fwd.push_back(word_mul(gam, {id}));
            inv.push_back(word_mul(gami, {id}));
        } else if (std::abs(id) > i && std::abs(id) < j && alpha.is_x(id)) {
            fwd.push_back(word_conj(mid, {id}));
            inv.push_back(word_conj(midi, {id}));
        } else if (alpha.is_y(id) && id - g > i && id - g < j) {
            fwd.push_back(word_conj(mid, {id}));
            inv.push_back(word_conj(midi, {id}));
        } else {
            fwd.push_back({id});
            inv.push_back({id});
        }
    }
    return FreeGroupAut(alpha, fwd, inv);
}

// mirror of twist_x_pair along the curve encircling parallels i and j
inline FreeGroupAut twist_y_pair(const AlphabetSpec& alpha, int i, int j) {
    int g = alpha.genus();
    if (i < 1 || j <= i || j > g) throw InvalidIndex("twist pair needs 1 <= i < j <= g");
    Word gam{-alpha.y(j), -alpha.y(i)}, gami = word_inv(gam);
    Word mid = commutator({-alpha.y(j)}, {-alpha.y(i)});
    Word midi = commutator({alpha.y(i)}, {alpha.y(j)});
    std::vector<Word> fwd, inv;
    for (int id = 1; id <= 2 * g; ++id) {
        if (id == alpha.y(i) || id == alpha.y(j)) {
            fwd.push_back(word_conj(gam, {id}));
            inv.push_back(word_conj(gami, {id}));
        } else if (id == alpha.x(i)) {
            fwd.push_back(word_mul(gam, {id}));
            inv.push_back(word_mul(gami, {id}));
        } else if (id == alpha.x(j)) {
            fwd.push_back(word_mul(word_mul(gam, {id}), commutator({-alpha.y(i)}, {-alpha.y(j)})));
            inv.push_back(word_mul(word_mul(gami, {id}), commutator({alpha.y(j)}, {alpha.y(i)})));
        } else if (alpha.is_x(id) && id > i && id < j) {
            fwd.push_back(word_conj(mid, {id}));
            inv.push_back(word_conj(midi, {id}));
        } else if (alpha.is_y(id) && id - g > i && id - g < j) {
            fwd.push_back(word_conj(mid, {id}));
            inv.push_back(word_conj(midi, {id}));
        } else {
            fwd.push_back({id});
            inv.push_back({id});
        }
    }
    return FreeGroupAut(alpha, fwd, inv);
}

// twist along the separating curve around handle l: conjugates that handle's
// generators by [x_l^-1, y_l^-1] and fixes the others
inline FreeGroupAut separating_twist(const AlphabetSpec& alpha, int l) {
    int g = alpha.genus();
    if (l < 1 || l > g) throw InvalidIndex("handle index out of range");
    Word v = commutator({-alpha.x(l)}, {-alpha.y(l)});
    Word vi = word_inv(v);
    std::vector<Word> fwd, inv;
    for (int id = 1; id <= 2 * g; ++id) {
        if (id == alpha.x(l) || id == alpha.y(l)) {
            fwd.push_back(word_conj(v, {id}));
            inv.push_back(word_conj(vi, {id}));
        } else {
            fwd.push_back({id});
            inv.push_back({id});
        }
    }
    return FreeGroupAut(alpha, fwd, inv);
}

// twist along a curve parallel to the boundary: conjugation by the boundary word
inline FreeGroupAut boundary_twist(const AlphabetSpec& alpha) {
    return aut_inner(alpha, boundary_word(alpha));
}

// half rotation of handle j; the square of the three-twist braid move, acting
// on homology as -1 on the handle's two classes
inline FreeGroupAut knob_twist(const AlphabetSpec& alpha, int j) {
    FreeGroupAut s = compose(twist_x(alpha, j), compose(twist_y(alpha, j), twist_x(alpha, j)));
    return compose(s, s);
}

namespace detail {

struct RawTable {
    const char* name;
    std::vector<Word> fwd, inv;
};

// Stored image tables for the twists along curves that cross handles, derived
// from an embedded-curve model of the surface and pinned by the validation
// suite (homology action, boundary fixation, filtration level, degree-one
// values).  t_gamma_ik rides meridian i and parallel k; h_ij slides handle
// j's meridian around handle i's separating curve, hp_ij is its mirror.
inline const std::vector<RawTable>& stored_curve_tables(int g) {
    static const std::vector<RawTable> tables_g2 = {
        {"t_gamma_12",
         {{-4, 1, 4}, {-4, 1, 2, 1, -4, -1, 4}, {-4, 1, 3, 1, -4, -1, 4}, {-4, 1, 4, -1, 4}},
         {{-1, 4, 1, -4, 1}, {-1, 4, 2, 4, -1, -4, 1}, {-1, 4, 3, 4, -1, -4, 1}, {-1, 4, 1}}},
        {"t_gamma_21",
         {{2, -3, 1}, {2, -3, 2, 3, -2}, {2, 3, -2}, {2, -3, 4}},
         {{3, -2, 1}, {3, 2, -3}, {3, -2, 3, 2, -3}, {3, -2, 4}}},
        {"h_12",
         {{2, -3, -1, 3, 1, -3, 1, 3, -2},
          {2, -3, -1, 3, 1, 2, -1, -3, 1, 3, -2},
          {2, -3, -1, 3, 1, 3, -1, -3, 1, 3, -2},
          {2, -3, -1, 3, 1, -2, 4}},
         {{-1, -3, 1, 3, -2, 1, 2, -3, -1, 3, 1},
          {-1, -3, 1, 3, 2, -3, -1, 3, 1},
          {-1, -3, 1, 3, -2, 3, 2, -3, -1, 3, 1},
          {-1, -3, 1, 3, 4}}},
        {"h_21",
         {{-4, -2, 4, 2, 1, -2, -4, 2, 4},
          {-4, -2, 4, 2, 1, 2, -1, -2, -4, 2, 4},
          {-4, -2, 4, 2, 3, 1, -4, -2, 4, 2, -1, -2, -4, 2, 4},
          {-4, -2, 4, 2, 1, 4, -1, -2, -4, 2, 4}},
         {{-1, -2, -4, 2, 4, 1, -4, -2, 4, 2, 1},
          {-1, -2, -4, 2, 4, 2, -4, -2, 4, 2, 1},
          {-1, -2, -4, 2, 4, 1, 3, -2, -4, 2, 4, -1, -4, -2, 4, 2, 1},
          {-1, -2, -4, 2, 4, -2, 4, 2, 1}}},
        {"hp_12",
         {{-4, -3, -1, 3, 1, -3, 1, 3, 4},
          {-4, -3, -1, 3, 1, 4, 2, -3, -1, 3, 1, -4, -1, -3, 1, 3, 4},
          {-4, -3, -1, 3, 1, 3, -1, -3, 1, 3, 4},
          {-4, -3, -1, 3, 1, 4, -1, -3, 1, 3, 4}},
         {{-1, -3, 1, 3, 4, 1, -4, -3, -1, 3, 1},
          {-1, -3, 1, 3, 2, 4, -1, -3, 1, 3, -4, -3, -1, 3, 1},
          {-1, -3, 1, 3, 4, 3, -4, -3, -1, 3, 1},
          {-1, -3, 1, 3, 4, -3, -1, 3, 1}}},
        {"hp_21",
         {{-4, -2, 4, 2, 1},
          {-4, -2, 4, 2, -3, 2, 3, -2, -4, 2, 4},
          {-4, -2, 4, 2, 3, -2, -4, 2, 4},
          {-4, -2, 4, 2, -3, 4, 3, -2, -4, 2, 4}},
         {{3, -2, -4, 2, 4, -3, 1},
          {3, -2, -4, 2, 4, 2, -4, -2, 4, 2, -3},
          {3, -2, -4, 2, 4, 3, -4, -2, 4, 2, -3},
          {3, -2, -4, 2, 4, -2, 4, 2, -3}}},
    };
    static const std::vector<RawTable> tables_g3 = {
        {"t_gamma_12",
         {{-5, 1, 5}, {-5, 1, 2, 1, -5, -1, 5}, {3}, {-5, 1, 4, 1, -5, -1, 5}, {-5, 1, 5, -1, 5}, {6}},
         {{-1, 5, 1, -5, 1}, {-1, 5, 2, 5, -1, -5, 1}, {3}, {-1, 5, 4, 5, -1, -5, 1}, {-1, 5, 1}, {6}}},
        {"t_gamma_21",
         {{2, -4, 1}, {2, -4, 2, 4, -2}, {3}, {2, 4, -2}, {2, -4, 5}, {6}},
         {{4, -2, 1}, {4, 2, -4}, {3}, {4, -2, 4, 2, -4}, {4, -2, 5}, {6}}},
        {"t_gamma_13",
         {{-6, 1, 6}, {-6, 1, 6, -1, 2, 1, -6, -1, 6}, {-6, 1, 3, 1, -6, -1, 6}, {-6, 1, 4, 1, -6, -1, 6},
          {-6, 1, 6, -1, 5, 1, -6, -1, 6}, {-6, 1, 6, -1, 6}},
         {{-1, 6, 1, -6, 1}, {-1, 6, 1, -6, 2, 6, -1, -6, 1}, {-1, 6, 3, 6, -1, -6, 1}, {-1, 6, 4, 6, -1, -6, 1},
          {-1, 6, 1, -6, 5, 6, -1, -6, 1}, {-1, 6, 1}}},
        {"t_gamma_31",
         {{3, -4, 1}, {3, -4, -3, 4, 2, -4, 3, 4, -3}, {3, -4, 3, 4, -3}, {3, 4, -3},
          {3, -4, -3, 4, 5, -4, 3, 4, -3}, {3, -4, 6}},
         {{4, -3, 1}, {4, -3, -4, 3, 2, -3, 4, 3, -4}, {4, 3, -4}, {4, -3, 4, 3, -4},
          {4, -3, -4, 3, 5, -3, 4, 3, -4}, {4, -3, 6}}},
        {"t_gamma_23",
         {{1}, {-6, 2, 6}, {-6, 2, 3, 2, -6, -2, 6}, {4}, {-6, 2, 5, 2, -6, -2, 6}, {-6, 2, 6, -2, 6}},
         {{1}, {-2, 6, 2, -6, 2}, {-2, 6, 3, 6, -2, -6, 2}, {4}, {-2, 6, 5, 6, -2, -6, 2}, {-2, 6, 2}}},
        {"t_gamma_32",
         {{1}, {3, -5, 2}, {3, -5, 3, 5, -3}, {4}, {3, 5, -3}, {3, -5, 6}},
         {{1}, {5, -3, 2}, {5, 3, -5}, {4}, {5, -3, 5, 3, -5}, {5, -3, 6}}},
        {"h_12",
         {{2, -4, -1, 4, 1, -4, 1, 4, -2}, {2, -4, -1, 4, 1, 2, -1, -4, 1, 4, -2}, {3},
          {2, -4, -1, 4, 1, 4, -1, -4, 1, 4, -2}, {2, -4, -1, 4, 1, -2, 5}, {6}},
         {{-1, -4, 1, 4, -2, 1, 2, -4, -1, 4, 1}, {-1, -4, 1, 4, 2, -4, -1, 4, 1}, {3},
          {-1, -4, 1, 4, -2, 4, 2, -4, -1, 4, 1}, {-1, -4, 1, 4, 5}, {6}}},
        {"h_21",
         {{-5, -2, 5, 2, 1, -2, -5, 2, 5}, {-5, -2, 5, 2, 1, 2, -1, -2, -5, 2, 5}, {3},
          {-5, -2, 5, 2, 4, 1, -5, -2, 5, 2, -1, -2, -5, 2, 5}, {-5, -2, 5, 2, 1, 5, -1, -2, -5, 2, 5}, {6}},
         {{-1, -2, -5, 2, 5, 1, -5, -2, 5, 2, 1}, {-1, -2, -5, 2, 5, 2, -5, -2, 5, 2, 1}, {3},
          {-1, -2, -5, 2, 5, 1, 4, -2, -5, 2, 5, -1, -5, -2, 5, 2, 1}, {-1, -2, -5, 2, 5, -2, 5, 2, 1}, {6}}},
        {"h_13",
         {{3, -4, -1, 4, 1, -4, 1, 4, -3},
          {3, -4, -1, 4, 1, -3, -1, -4, 1, 4, 2, -4, -1, 4, 1, 3, -1, -4, 1, 4, -3},
          {3, -4, -1, 4, 1, 3, -1, -4, 1, 4, -3},
          {3, -4, -1, 4, 1, 4, -1, -4, 1, 4, -3},
          {3, -4, -1, 4, 1, -3, -1, -4, 1, 4, 5, -4, -1, 4, 1, 3, -1, -4, 1, 4, -3},
          {3, -4, -1, 4, 1, -3, 6}},
         {{-1, -4, 1, 4, -3, 1, 3, -4, -1, 4, 1},
          {-1, -4, 1, 4, -3, -4, -1, 4, 1, 3, 2, -3, -1, -4, 1, 4, 3, -4, -1, 4, 1},
          {-1, -4, 1, 4, 3, -4, -1, 4, 1},
          {-1, -4, 1, 4, -3, 4, 3, -4, -1, 4, 1},
          {-1, -4, 1, 4, -3, -4, -1, 4, 1, 3, 5, -3, -1, -4, 1, 4, 3, -4, -1, 4, 1},
          {-1, -4, 1, 4, 6}}},
        {"h_31",
         {{-6, -3, 6, 3, 1, -3, -6, 3, 6},
          {-6, -3, 6, 3, 1, -3, -6, 3, 6, -1, 2, 1, -6, -3, 6, 3, -1, -3, -6, 3, 6},
          {-6, -3, 6, 3, 1, 3, -1, -3, -6, 3, 6},
          {-6, -3, 6, 3, 4, 1, -6, -3, 6, 3, -1, -3, -6, 3, 6},
          {-6, -3, 6, 3, 1, -3, -6, 3, 6, -1, 5, 1, -6, -3, 6, 3, -1, -3, -6, 3, 6},
          {-6, -3, 6, 3, 1, 6, -1, -3, -6, 3, 6}},
         {{-1, -3, -6, 3, 6, 1, -6, -3, 6, 3, 1},
          {-1, -3, -6, 3, 6, 1, -6, -3, 6, 3, 2, -3, -6, 3, 6, -1, -6, -3, 6, 3, 1},
          {-1, -3, -6, 3, 6, 3, -6, -3, 6, 3, 1},
          {-1, -3, -6, 3, 6, 1, 4, -3, -6, 3, 6, -1, -6, -3, 6, 3, 1},
          {-1, -3, -6, 3, 6, 1, -6, -3, 6, 3, 5, -3, -6, 3, 6, -1, -6, -3, 6, 3, 1},
          {-1, -3, -6, 3, 6, -3, 6, 3, 1}}},
        {"h_23",
         {{1}, {3, -5, -2, 5, 2, -5, 2, 5, -3}, {3, -5, -2, 5, 2, 3, -2, -5, 2, 5, -3}, {4},
          {3, -5, -2, 5, 2, 5, -2, -5, 2, 5, -3}, {3, -5, -2, 5, 2, -3, 6}},
         {{1}, {-2, -5, 2, 5, -3, 2, 3, -5, -2, 5, 2}, {-2, -5, 2, 5, 3, -5, -2, 5, 2}, {4},
          {-2, -5, 2, 5, -3, 5, 3, -5, -2, 5, 2}, {-2, -5, 2, 5, 6}}},
        {"h_32",
         {{1}, {-6, -3, 6, 3, 2, -3, -6, 3, 6}, {-6, -3, 6, 3, 2, 3, -2, -3, -6, 3, 6}, {4},
          {-6, -3, 6, 3, 5, 2, -6, -3, 6, 3, -2, -3, -6, 3, 6}, {-6, -3, 6, 3, 2, 6, -2, -3, -6, 3, 6}},
         {{1}, {-2, -3, -6, 3, 6, 2, -6, -3, 6, 3, 2}, {-2, -3, -6, 3, 6, 3, -6, -3, 6, 3, 2}, {4},
          {-2, -3, -6, 3, 6, 2, 5, -3, -6, 3, 6, -2, -6, -3, 6, 3, 2}, {-2, -3, -6, 3, 6, -3, 6, 3, 2}}},
        {"hp_12",
         {{-5, -4, -1, 4, 1, -4, 1, 4, 5},
          {-5, -4, -1, 4, 1, 5, 2, -4, -1, 4, 1, -5, -1, -4, 1, 4, 5},
          {3},
          {-5, -4, -1, 4, 1, 4, -1, -4, 1, 4, 5},
          {-5, -4, -1, 4, 1, 5, -1, -4, 1, 4, 5},
          {6}},
         {{-1, -4, 1, 4, 5, 1, -5, -4, -1, 4, 1},
          {-1, -4, 1, 4, 2, 5, -1, -4, 1, 4, -5, -4, -1, 4, 1},
          {3},
          {-1, -4, 1, 4, 5, 4, -5, -4, -1, 4, 1},
          {-1, -4, 1, 4, 5, -4, -1, 4, 1},
          {6}}},
        {"hp_21",
         {{-5, -2, 5, 2, 1},
          {-5, -2, 5, 2, -4, 2, 4, -2, -5, 2, 5},
          {3},
          {-5, -2, 5, 2, 4, -2, -5, 2, 5},
          {-5, -2, 5, 2, -4, 5, 4, -2, -5, 2, 5},
          {6}},
         {{4, -2, -5, 2, 5, -4, 1},
          {4, -2, -5, 2, 5, 2, -5, -2, 5, 2, -4},
          {3},
          {4, -2, -5, 2, 5, 4, -5, -2, 5, 2, -4},
          {4, -2, -5, 2, 5, -2, 5, 2, -4},
          {6}}},
        {"hp_13",
         {{-6, -4, -1, 4, 1, -4, 1, 4, 6},
          {-6, -4, -1, 4, 1, 6, -1, -4, 1, 4, 2, -4, -1, 4, 1, -6, -1, -4, 1, 4, 6},
          {-6, -4, -1, 4, 1, 6, 3, -4, -1, 4, 1, -6, -1, -4, 1, 4, 6},
          {-6, -4, -1, 4, 1, 4, -1, -4, 1, 4, 6},
          {-6, -4, -1, 4, 1, 6, -1, -4, 1, 4, 5, -4, -1, 4, 1, -6, -1, -4, 1, 4, 6},
          {-6, -4, -1, 4, 1, 6, -1, -4, 1, 4, 6}},
         {{-1, -4, 1, 4, 6, 1, -6, -4, -1, 4, 1},
          {-1, -4, 1, 4, 6, -4, -1, 4, 1, -6, 2, 6, -1, -4, 1, 4, -6, -4, -1, 4, 1},
          {-1, -4, 1, 4, 3, 6, -1, -4, 1, 4, -6, -4, -1, 4, 1},
          {-1, -4, 1, 4, 6, 4, -6, -4, -1, 4, 1},
          {-1, -4, 1, 4, 6, -4, -1, 4, 1, -6, 5, 6, -1, -4, 1, 4, -6, -4, -1, 4, 1},
          {-1, -4, 1, 4, 6, -4, -1, 4, 1}}},
        {"hp_31",
         {{-6, -3, 6, 3, 1},
          {-6, -3, 6, 3, -4, -3, -6, 3, 6, 4, 2, -4, -6, -3, 6, 3, 4, -3, -6, 3, 6},
          {-6, -3, 6, 3, -4, 3, 4, -3, -6, 3, 6},
          {-6, -3, 6, 3, 4, -3, -6, 3, 6},
          {-6, -3, 6, 3, -4, -3, -6, 3, 6, 4, 5, -4, -6, -3, 6, 3, 4, -3, -6, 3, 6},
          {-6, -3, 6, 3, -4, 6, 4, -3, -6, 3, 6}},
         {{4, -3, -6, 3, 6, -4, 1},
          {4, -3, -6, 3, 6, -4, -6, -3, 6, 3, 2, -3, -6, 3, 6, 4, -6, -3, 6, 3, -4},
          {4, -3, -6, 3, 6, 3, -6, -3, 6, 3, -4},
          {4, -3, -6, 3, 6, 4, -6, -3, 6, 3, -4},
          {4, -3, -6, 3, 6, -4, -6, -3, 6, 3, 5, -3, -6, 3, 6, 4, -6, -3, 6, 3, -4},
          {4, -3, -6, 3, 6, -3, 6, 3, -4}}},
        {"hp_23",
         {{1},
          {-6, -5, -2, 5, 2, -5, 2, 5, 6},
          {-6, -5, -2, 5, 2, 6, 3, -5, -2, 5, 2, -6, -2, -5, 2, 5, 6},
          {4},
          {-6, -5, -2, 5, 2, 5, -2, -5, 2, 5, 6},
          {-6, -5, -2, 5, 2, 6, -2, -5, 2, 5, 6}},
         {{1},
          {-2, -5, 2, 5, 6, 2, -6, -5, -2, 5, 2},
          {-2, -5, 2, 5, 3, 6, -2, -5, 2, 5, -6, -5, -2, 5, 2},
          {4},
          {-2, -5, 2, 5, 6, 5, -6, -5, -2, 5, 2},
          {-2, -5, 2, 5, 6, -5, -2, 5, 2}}},
        {"hp_32",
         {{1},
          {-6, -3, 6, 3, 2},
          {-6, -3, 6, 3, -5, 3, 5, -3, -6, 3, 6},
          {4},
          {-6, -3, 6, 3, 5, -3, -6, 3, 6},
          {-6, -3, 6, 3, -5, 6, 5, -3, -6, 3, 6}},
         {{1},
          {5, -3, -6, 3, 6, -5, 2},
          {5, -3, -6, 3, 6, 3, -6, -3, 6, 3, -5},
          {4},
          {5, -3, -6, 3, 6, 5, -6, -3, 6, 3, -5},
          {5, -3, -6, 3, 6, -3, 6, 3, -5}}},
    };
    static const std::vector<RawTable> none;
    switch (g) {
        case 2: return tables_g2;
        case 3: return tables_g3;
        default: return none;
    }
}

inline const RawTable& find_curve_table(int g, const std::string& name) {
    for (const RawTable& t : stored_curve_tables(g))
        if (name == t.name) return t;
    throw CatalogError("no stored curve table '" + name + "' at genus " + std::to_string(g));
}

}  // namespace detail

// twist along the eyeglass curve riding meridian i and parallel k (i != k)
inline FreeGroupAut eyeglass_twist(const AlphabetSpec& alpha, int i, int k) {
    int g = alpha.genus();
    const detail::RawTable& t =
        detail::find_curve_table(g, "t_gamma_" + std::to_string(i) + std::to_string(k));
    return FreeGroupAut(alpha, t.fwd, t.inv);
}

// eyeglass twist with its one-handle twist factors removed; acts on homology
// by the elementary move a_k -> a_k + a_i, b_i -> b_i - b_k
inline FreeGroupAut phi_map(const AlphabetSpec& alpha, int i, int k) {
    return compose(compose(eyeglass_twist(alpha, i, k), inverse(twist_y(alpha, k))),
                   inverse(twist_x(alpha, i)));
}

// bounding pair map sliding handle j's meridian around handle i (tau_1 value
// b_i ^ a_i ^ a_j)
inline FreeGroupAut bp_map(const AlphabetSpec& alpha, int i, int j) {
    int g = alpha.genus();
    const detail::RawTable& t =
        detail::find_curve_table(g, "h_" + std::to_string(i) + std::to_string(j));
    return FreeGroupAut(alpha, t.fwd, t.inv);
}

// mirror bounding pair map (tau_1 value a_i ^ b_i ^ b_j)
inline FreeGroupAut bp_mirror_map(const AlphabetSpec& alpha, int i, int j) {
    int g = alpha.genus();
    const detail::RawTable& t =
        detail::find_curve_table(g, "hp_" + std::to_string(i) + std::to_string(j));
    return FreeGroupAut(alpha, t.fwd, t.inv);
}

// ---------------------------------------------------------------------------
// Shipped catalogs.
// ---------------------------------------------------------------------------

namespace detail {

inline Mat sigma_taux(int g, int k) {
    Mat m = Mat::identity(2 * g);
    m.at(k - 1, g + k - 1) = 1;
    return m;
}

inline Mat sigma_tauy(int g, int k) {
    Mat m = Mat::identity(2 * g);
    m.at(g + k - 1, k - 1) = -1;
    return m;
}

inline Mat sigma_taux_pair(int g, int i, int j) {
    Mat m = Mat::identity(2 * g);
    m.at(i - 1, g + i - 1) = m.at(i - 1, g + j - 1) = 1;
    m.at(j - 1, g + i - 1) = m.at(j - 1, g + j - 1) = 1;
    return m;
}

inline Mat sigma_tauy_pair(int g, int i, int j) {
    Mat m = Mat::identity(2 * g);
    m.at(g + i - 1, i - 1) = m.at(g + i - 1, j - 1) = -1;
    m.at(g + j - 1, i - 1) = m.at(g + j - 1, j - 1) = -1;
    return m;
}

inline Mat sigma_knob(int g, int j) {
    Mat m = Mat::identity(2 * g);
    m.at(j - 1, j - 1) = -1;
    m.at(g + j - 1, g + j - 1) = -1;
    return m;
}

inline Mat sigma_phi(int g, int i, int k) {
    Mat m = Mat::identity(2 * g);
    m.at(i - 1, k - 1) = 1;
    m.at(g + k - 1, g + i - 1) = -1;
    return m;
}

inline Mat sigma_eyeglass(int g, int i, int k) {
    Mat m = Mat::identity(2 * g);
    m.at(i - 1, k - 1) = 1;
    m.at(g + k - 1, k - 1) = -1;
    m.at(i - 1, g + i - 1) = 1;
    m.at(g + k - 1, g + i - 1) = -1;
    return m;
}

inline SigmaClaim sigma_claim(Mat m, std::optional<BlockShape> shape) {
    SigmaClaim c;
    c.matrix = std::move(m);
    c.shape = shape;
    return c;
}

inline std::string wedge_mono(int a1, int a2, int b) {
    return "a" + std::to_string(std::min(a1, a2)) + "^a" + std::to_string(std::max(a1, a2)) +
           "^b" + std::to_string(b);
}

inline std::string wedge_mono_y(int a, int b1, int b2) {
    return "a" + std::to_string(a) + "^b" + std::to_string(std::min(b1, b2)) + "^b" +
           std::to_string(std::max(b1, b2));
}

}  // namespace detail

// Mapping-class generator catalog for a genus-g surface with one boundary
// component; stored curve tables limit g to 1..3.
inline std::vector<CatalogEntry> surface_catalog(int g) {
    if (g < 1 || g > 3) throw InvalidIndex("stored surface catalog covers genus 1..3");
    AlphabetSpec alpha(g, g);
    std::vector<CatalogEntry> out;
    auto add = [&](std::string name, const FreeGroupAut& h, EntryClaims claims) {
        claims.fixes_boundary = true;
        out.push_back(
            {std::move(name), alpha, true, h.fwd_table(), h.inv_table(), std::move(claims)});
    };
    auto claims = [&](ExtPair level, std::optional<SigmaClaim> sc) {
        EntryClaims c;
        c.level = level;
        c.sigma = std::move(sc);
        return c;
    };

    for (int k = 1; k <= g; ++k) {
        add("t_x" + std::to_string(k), twist_x(alpha, k),
            claims({1, -1}, detail::sigma_claim(detail::sigma_taux(g, k), BlockShape::TShape)));
        add("t_y" + std::to_string(k), twist_y(alpha, k),
            claims({-1, 1}, detail::sigma_claim(detail::sigma_tauy(g, k), BlockShape::TPrimeShape)));
    }
    for (int i = 1; i <= g; ++i)
        for (int j = i + 1; j <= g; ++j) {
            add("t_x" + std::to_string(i) + std::to_string(j), twist_x_pair(alpha, i, j),
                claims({1, -1},
                       detail::sigma_claim(detail::sigma_taux_pair(g, i, j), BlockShape::TShape)));
            add("t_y" + std::to_string(i) + std::to_string(j), twist_y_pair(alpha, i, j),
                claims({-1, 1}, detail::sigma_claim(detail::sigma_tauy_pair(g, i, j),
                                                    BlockShape::TPrimeShape)));
        }
    for (int l = 1; l <= g; ++l) {
        EntryClaims c = claims({1, 1}, detail::sigma_claim(Mat::identity(2 * g), std::nullopt));
        c.tau_values["tau1"] = {};  // degree-one value vanishes
        add("t_delta" + std::to_string(l), separating_twist(alpha, l), std::move(c));
    }
    {
        EntryClaims c = claims({1, 1}, detail::sigma_claim(Mat::identity(2 * g), std::nullopt));
        c.tau_values["tau1"] = {};
        add("t_boundary", boundary_twist(alpha), std::move(c));
    }
    for (int j = 1; j <= g; ++j)
        add("h_" + std::to_string(j), knob_twist(alpha, j),
            claims({0, 0}, detail::sigma_claim(detail::sigma_knob(g, j), BlockShape::GShape)));
    if (g >= 2)
        for (int i = 1; i <= g; ++i)
            for (int k = 1; k <= g; ++k) {
                if (i == k) continue;
                std::string ik = std::to_string(i) + std::to_string(k);
                add("t_gamma_" + ik, eyeglass_twist(alpha, i, k),
                    claims({-1, -1},
                           detail::sigma_claim(detail::sigma_eyeglass(g, i, k), std::nullopt)));
                add("phi_" + ik, phi_map(alpha, i, k),
                    claims({0, 0},
                           detail::sigma_claim(detail::sigma_phi(g, i, k), BlockShape::GShape)));
            }
    if (g >= 2)
        for (int i = 1; i <= g; ++i)
            for (int j = 1; j <= g; ++j) {
                if (i == j) continue;
                std::string ij = std::to_string(i) + std::to_string(j);
                EntryClaims cx =
                    claims({1, 0}, detail::sigma_claim(Mat::identity(2 * g), std::nullopt));
                cx.tau_values["tau1"] = {{detail::wedge_mono(i, j, i), i < j ? 1 : -1}};
                add("h_" + ij, bp_map(alpha, i, j), std::move(cx));
                EntryClaims cy =
                    claims({0, 1}, detail::sigma_claim(Mat::identity(2 * g), std::nullopt));
                cy.tau_values["tau1"] = {{detail::wedge_mono_y(i, i, j), i < j ? 1 : -1}};
                add("hp_" + ij, bp_mirror_map(alpha, i, j), std::move(cy));
            }
    return out;
}

// The standard finite generating set of the IA-automorphism group of the free
// group on {x_1..x_p, y_1..y_q}: conjugation moves a -> b^-1 a b and
// commutator moves a -> a [b,c], with the level each family verifies.
inline std::vector<CatalogEntry> magnus_generators(int p, int q) {
    if (p + q < 3) throw InvalidIndex("the IA generating set needs p+q >= 3");
    AlphabetSpec alpha(p, q);
    std::vector<CatalogEntry> out;
    auto conj_entry = [&](int a, int b, ExtPair level) {
        std::vector<Word> fwd, inv;
        for (int id = 1; id <= alpha.size(); ++id) {
            if (id == a) {
                fwd.push_back({-b, a, b});
                inv.push_back({b, a, -b});
            } else {
                fwd.push_back({id});
                inv.push_back({id});
            }
        }
        EntryClaims c;
        c.level = level;
        out.push_back({"phi_" + alpha.letter_name(a) + alpha.letter_name(b), alpha, false,
                       std::move(fwd), std::move(inv), std::move(c)});
    };
    auto comm_entry = [&](int a, int b, int c, ExtPair level) {
        std::vector<Word> fwd, inv;
        for (int id = 1; id <= alpha.size(); ++id) {
            if (id == a) {
                fwd.push_back(word_mul({a}, commutator({b}, {c})));
                inv.push_back(word_mul({a}, commutator({c}, {b})));
            } else {
                fwd.push_back({id});
                inv.push_back({id});
            }
        }
        EntryClaims cl;
        cl.level = level;
        out.push_back(
            {"phi_" + alpha.letter_name(a) + alpha.letter_name(b) + alpha.letter_name(c), alpha,
             false, std::move(fwd), std::move(inv), std::move(cl)});
    };

    for (int i = 1; i <= p; ++i)  // (1)
        for (int j = 1; j <= p; ++j)
            if (i != j) conj_entry(alpha.x(i), alpha.x(j), {1, 0});
    for (int i = 1; i <= q; ++i)  // (2)
        for (int j = 1; j <= q; ++j)
            if (i != j) conj_entry(alpha.y(i), alpha.y(j), {0, 1});
    for (int i = 1; i <= p; ++i)  // (3)
        for (int j = 1; j <= q; ++j) conj_entry(alpha.x(i), alpha.y(j), {0, 1});
    for (int i = 1; i <= q; ++i)  // (4)
        for (int j = 1; j <= p; ++j) conj_entry(alpha.y(i), alpha.x(j), {1, 0});
    for (int i = 1; i <= p; ++i)  // (5)
        for (int j = 1; j <= p; ++j)
            for (int k = j + 1; k <= p; ++k)
                if (i != j && i != k) comm_entry(alpha.x(i), alpha.x(j), alpha.x(k), {1, 0});
    for (int i = 1; i <= p; ++i)  // (6)
        for (int j = 1; j <= p; ++j)
            if (i != j)
                for (int k = 1; k <= q; ++k) comm_entry(alpha.x(i), alpha.x(j), alpha.y(k), {0, 1});
    for (int i = 1; i <= p; ++i)  // (7)
        for (int j = 1; j <= q; ++j)
            for (int k = j + 1; k <= q; ++k) comm_entry(alpha.x(i), alpha.y(j), alpha.y(k), {-1, 2});
    for (int i = 1; i <= q; ++i)  // (8)
        for (int j = 1; j <= q; ++j)
            for (int k = j + 1; k <= q; ++k)
                if (i != j && i != k) comm_entry(alpha.y(i), alpha.y(j), alpha.y(k), {0, 1});
    for (int i = 1; i <= q; ++i)  // (9)
        for (int k = 1; k <= q; ++k)
            if (i != k)
                for (int j = 1; j <= p; ++j) comm_entry(alpha.y(i), alpha.x(j), alpha.y(k), {1, 0});
    for (int i = 1; i <= q; ++i)  // (10)
        for (int j = 1; j <= p; ++j)
            for (int k = j + 1; k <= p; ++k) comm_entry(alpha.y(i), alpha.x(j), alpha.x(k), {2, -1});
    return out;
}

// Everything the library ships: surface catalogs for g = 1..3 and the IA
// generating sets at (p,q) = (2,1), (2,2), (3,3).
inline std::vector<CatalogEntry> default_catalog() {
    std::vector<CatalogEntry> out;
    for (int g = 1; g <= 3; ++g)
        for (CatalogEntry& e : surface_catalog(g)) out.push_back(std::move(e));
    for (auto [p, q] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 3}})
        for (CatalogEntry& e : magnus_generators(p, q)) out.push_back(std::move(e));
    return out;
}

inline const CatalogEntry* catalog_find(const std::vector<CatalogEntry>& entries,
                                        const std::string& name) {
    for (const CatalogEntry& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Validation: every claim an entry makes is checked mechanically; failures
// name the claim.
// ---------------------------------------------------------------------------

struct ValidationIssue {
    std::string claim;
    std::string detail;
};

struct ValidationReport {
    std::string entry;
    int bound = 0;
    std::vector<std::string> passed;
    std::vector<ValidationIssue> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

// parse "a1^a2^b1" into wedge coordinates (sorted triple with sign)
inline void add_wedge_mono(const AlphabetSpec& alpha, Vec& coords, const std::string& mono,
                           long coeff) {
    std::vector<int> ids;
    std::istringstream is(mono);
    std::string tok;
    while (std::getline(is, tok, '^')) {
        if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'b'))
            throw CatalogError("bad wedge monomial '" + mono + "'");
        int idx = 0;
        try {
            idx = std::stoi(tok.substr(1));
        } catch (const std::exception&) {
            throw CatalogError("bad wedge monomial '" + mono + "'");
        }
        ids.push_back(tok[0] == 'a' ? alpha.x(idx) : alpha.y(idx));
    }
    if (ids.size() != 3) throw CatalogError("wedge monomial '" + mono + "' needs three factors");
    long sign = 1;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j) {
            if (ids[i] == ids[j]) throw CatalogError("repeated factor in '" + mono + "'");
            if (ids[i] > ids[j]) {
                std::swap(ids[i], ids[j]);
                sign = -sign;
            }
        }
    std::vector<std::array<int, 3>> basis = wedge3_basis(alpha);
    for (size_t t = 0; t < basis.size(); ++t)
        if (basis[t][0] == ids[0] && basis[t][1] == ids[1] && basis[t][2] == ids[2]) {
            coords[t] += sign * coeff;
            return;
        }
    throw CatalogError("wedge monomial '" + mono + "' outside the basis");
}

inline Vec wedge_coords(const AlphabetSpec& alpha, const std::map<std::string, long>& value) {
    Vec coords(wedge3_basis(alpha).size());
    for (const auto& [mono, coeff] : value) add_wedge_mono(alpha, coords, mono, coeff);
    return coords;
}

}  // namespace detail

inline ValidationReport validate(const CatalogEntry& e, int bound) {
    ValidationReport rep;
    rep.entry = e.name;
    rep.bound = bound;
    auto fail = [&](std::string claim, std::string detail) {
        rep.failures.push_back({std::move(claim), std::move(detail)});
    };
    auto pass = [&](const char* claim) { rep.passed.push_back(claim); };

    std::optional<FreeGroupAut> h;
    try {
        h = e.aut();
        pass("inverse-table");
    } catch (const Error& err) {
        fail("inverse-table", err.what());
        return rep;  // nothing else is computable
    }

    if (e.surface_mode) {
        bool fb = fixes_boundary(*h);
        if (fb != e.claims.fixes_boundary)
            fail("boundary", fb ? "fixes the boundary word but the claim says otherwise"
                                : "moves the boundary word");
        else
            pass("boundary");
    } else if (e.claims.fixes_boundary) {
        fail("boundary", "free-mode entry cannot claim a fixed boundary");
    }

    if (e.claims.sigma) {
        if (!e.surface_mode) {
            fail("sigma", "homology-action claims need surface mode");
        } else {
            try {
                SymplecticMatrix s = sigma(*h);
                if (e.claims.sigma->matrix) {
                    if (s.m == *e.claims.sigma->matrix)
                        pass("sigma-matrix");
                    else
                        fail("sigma-matrix", "computed homology action differs from the claim");
                }
                if (e.claims.sigma->shape) {
                    BlockShape got = block_shape_classify(s);
                    if (got == *e.claims.sigma->shape)
                        pass("sigma-shape");
                    else
                        fail("sigma-shape", "classified as " + block_shape_name(got) +
                                                ", claimed " +
                                                block_shape_name(*e.claims.sigma->shape));
                }
            } catch (const SymplecticCheckFailed& err) {
                fail("sigma", err.what());
            }
        }
    }

    try {
        const ExtPair lv = e.claims.level;
        int mt = std::max({1, lv.m + lv.n, lv.m, lv.n});
        ProbeResult pr = probe(*h, mt, bound, 8, 0);
        if (probe_verified_at(pr, lv)) {
            pass("level");
        } else {
            std::string detail = "not verified within bound and battery";
            for (const ProbeRefutation& r : pr.refutations)
                if (r.level.m <= lv.m && r.level.n <= lv.n) {
                    detail = detail::refutation_message(e.alpha, r);
                    break;
                }
            fail("level", detail);
        }
        // the twist-group levels come with exact commutator conditions on the
        // generators; check them directly
        if (e.surface_mode && lv == ExtPair(1, -1)) {
            bool ok = true;
            for (int k = 1; k <= e.alpha.genus() && ok; ++k)
                ok = dmn_membership(e.alpha, aut_word_commutator(*h, {e.alpha.y(k)}), 1, 0, bound)
                         .verified &&
                     dmn_membership(e.alpha, aut_word_commutator(*h, {e.alpha.x(k)}), 2, 0, bound)
                         .verified;
            if (ok)
                pass("twist-commutators");
            else
                fail("twist-commutators", "generator commutator left the expected level");
        }
        if (e.surface_mode && lv == ExtPair(-1, 1)) {
            bool ok = true;
            for (int k = 1; k <= e.alpha.genus() && ok; ++k)
                ok = dmn_membership(e.alpha, aut_word_commutator(*h, {e.alpha.x(k)}), 0, 1, bound)
                         .verified &&
                     dmn_membership(e.alpha, aut_word_commutator(*h, {e.alpha.y(k)}), 0, 2, bound)
                         .verified;
            if (ok)
                pass("twist-commutators");
            else
                fail("twist-commutators", "generator commutator left the expected level");
        }
    } catch (const Error& err) {
        fail("level", err.what());
    }

    for (const auto& [key, want] : e.claims.tau_values) {
        if (key != "tau1") {
            fail("tau", "unsupported expectation key '" + key + "'");
            continue;
        }
        try {
            LieContext ctx(e.alpha);
            TauValue tv = tau_classical(ctx, *h, 1, std::max(bound, 2));
            Vec got = wedge3_decode(ctx, tv.value);
            Vec expect = detail::wedge_coords(e.alpha, want);
            if (got == expect)
                pass("tau1");
            else
                fail("tau1", "decoded " + wedge3_str(e.alpha, got) + ", expected " +
                                 wedge3_str(e.alpha, expect));
        } catch (const Error& err) {
            fail("tau1", err.what());
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Degree-one realizers: mapping classes whose decoded degree-one values run
// through the wedge basis, quadrant by quadrant, and the factorization of a
// Torelli element they induce.
// ---------------------------------------------------------------------------

struct WedgeRealizer {
    std::string name;
    FreeGroupAut aut;
};

// For each wedge basis triple (in basis order) one mapping class whose
// degree-one value is +-that triple.  Covers g in {1,2,3}; at g = 1 the
// basis is empty.
inline std::vector<WedgeRealizer> wedge_realizers(const AlphabetSpec& alpha) {
    int g = alpha.genus();
    std::vector<WedgeRealizer> out;
    for (const std::array<int, 3>& t : wedge3_basis(alpha)) {
        int nx = 0;
        for (int id : t) nx += alpha.is_x(id) ? 1 : 0;
        auto num = [&](int pos) { return std::to_string(alpha.is_x(t[pos]) ? t[pos] : t[pos] - g); };
        if (nx == 3) {
            // a_i ^ a_j ^ a_k from a commutator of meridian-pair twists
            int i = t[0], j = t[1], k = t[2];
            out.push_back({"[t_x" + std::to_string(i) + std::to_string(k) + ",t_x" +
                               std::to_string(i) + std::to_string(j) + "]",
                           aut_commutator(twist_x_pair(alpha, i, k), twist_x_pair(alpha, i, j))});
        } else if (nx == 2) {
            // a_i ^ a_j ^ b_k
            int i = t[0], j = t[1], k = t[2] - g;
            if (k == i)
                out.push_back({"h_" + num(0) + num(1), bp_map(alpha, i, j)});
            else if (k == j)
                out.push_back({"h_" + num(1) + num(0), bp_map(alpha, j, i)});
            else
                out.push_back({"[phi_" + std::to_string(i) + std::to_string(k) + "^-1,h_" +
                                   std::to_string(i) + std::to_string(j) + "]",
                               aut_commutator(inverse(phi_map(alpha, i, k)), bp_map(alpha, i, j))});
        } else if (nx == 1) {
            // a_k ^ b_i ^ b_j
            int k = t[0], i = t[1] - g, j = t[2] - g;
            if (k == i)
                out.push_back({"hp_" + num(1) + num(2), bp_mirror_map(alpha, i, j)});
            else if (k == j)
                out.push_back({"hp_" + num(2) + num(1), bp_mirror_map(alpha, j, i)});
            else
                out.push_back(
                    {"[phi_" + std::to_string(k) + std::to_string(i) + ",hp_" + std::to_string(i) +
                         std::to_string(j) + "]",
                     aut_commutator(phi_map(alpha, k, i), bp_mirror_map(alpha, i, j))});
        } else {
            // b_i ^ b_j ^ b_k from a commutator of parallel-pair twists
            int i = t[0] - g, j = t[1] - g, k = t[2] - g;
            out.push_back({"[t_y" + std::to_string(i) + std::to_string(k) + ",t_y" +
                               std::to_string(i) + std::to_string(j) + "]",
                           aut_commutator(twist_y_pair(alpha, i, k), twist_y_pair(alpha, i, j))});
        }
    }
    return out;
}

struct TorelliFactorization {
    // factors sorted by quadrant of their degree-one support: pure x-side
    // triples, two-x, one-x, pure y-side
    std::vector<FreeGroupAut> parts;
    Vec residual;  // decoded degree-one value of parts-product^-1 . h
    bool exact = false;
};

// Split h's degree-one value along the four wedge quadrants, realize each part
// by catalog elements, and verify the degree-one value of the quotient
// vanishes.
inline TorelliFactorization torelli_reconstruct(LieContext& ctx, const FreeGroupAut& h,
                                                int bound) {
    const AlphabetSpec& alpha = ctx.alpha();
    int g = alpha.genus();
    TauValue tv = tau_classical(ctx, h, 1, bound);
    Vec coords = wedge3_decode(ctx, tv.value);
    std::vector<WedgeRealizer> gens = wedge_realizers(alpha);
    std::vector<Vec> gen_coords;
    for (const WedgeRealizer& w : gens)
        gen_coords.push_back(wedge3_decode(ctx, tau_classical(ctx, w.aut, 1, bound).value));

    std::vector<std::array<int, 3>> basis = wedge3_basis(alpha);
    TorelliFactorization out;
    for (int want_nx = 3; want_nx >= 0; --want_nx) {
        std::vector<int> idx;
        for (size_t t = 0; t < basis.size(); ++t) {
            int nx = 0;
            for (int id : basis[t]) nx += alpha.is_x(id) ? 1 : 0;
            if (nx == want_nx) idx.push_back(static_cast<int>(t));
        }
        FreeGroupAut part = FreeGroupAut::identity(alpha);
        if (!idx.empty()) {
            Mat m(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
            Vec rhs(idx.size());
            for (size_t r = 0; r < idx.size(); ++r) {
                rhs[r] = coords[static_cast<size_t>(idx[r])];
                for (size_t c = 0; c < idx.size(); ++c)
                    m.at(static_cast<int>(r), static_cast<int>(c)) =
                        gen_coords[static_cast<size_t>(idx[c])][static_cast<size_t>(idx[r])];
            }
            std::optional<Vec> z = solve_integer(m, rhs);
            if (!z) {
                out.residual = coords;
                return out;  // exact stays false
            }
            for (size_t c = 0; c < idx.size(); ++c)
                part = compose(part, aut_pow(gens[static_cast<size_t>(idx[c])].aut,
                                             checked_long((*z)[c], "torelli factor exponent")));
        }
        out.parts.push_back(std::move(part));
    }
    FreeGroupAut prod = FreeGroupAut::identity(alpha);
    for (const FreeGroupAut& p : out.parts) prod = compose(prod, p);
    FreeGroupAut rest = compose(inverse(prod), h);
    out.residual = wedge3_decode(ctx, tau_classical(ctx, rest, 1, bound).value);
    out.exact = true;
    for (const Int& v : out.residual)
        if (v != 0) out.exact = false;
    (void)g;
    return out;
}

// ---------------------------------------------------------------------------
// JSON catalog files: an array of entries
//   {name, p, q, mode, fwd: {gen: word}, inv: {gen: word}, claims: {...}}
// with words in the text syntax of parse_word.
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json entry_to_json(const CatalogEntry& e) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["p"] = e.alpha.p;
    j["q"] = e.alpha.q;
    j["mode"] = e.surface_mode ? "surface" : "free";
    nlohmann::ordered_json fwd, inv;
    for (int id = 1; id <= e.alpha.size(); ++id) {
        fwd[e.alpha.letter_name(id)] = word_str(e.alpha, e.fwd[static_cast<size_t>(id) - 1]);
        inv[e.alpha.letter_name(id)] = word_str(e.alpha, e.inv[static_cast<size_t>(id) - 1]);
    }
    j["fwd"] = std::move(fwd);
    j["inv"] = std::move(inv);
    nlohmann::ordered_json claims;
    claims["fixes_boundary"] = e.claims.fixes_boundary;
    claims["level"] = {e.claims.level.m, e.claims.level.n};
    if (e.claims.sigma) {
        if (e.claims.sigma->matrix) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            const Mat& m = *e.claims.sigma->matrix;
            for (int r = 0; r < m.rows; ++r) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (int c = 0; c < m.cols; ++c)
                    row.push_back(checked_long(m.at(r, c), "sigma claim entry"));
                rows.push_back(std::move(row));
            }
            claims["sigma"] = std::move(rows);
        } else if (e.claims.sigma->shape) {
            claims["sigma"] = block_shape_name(*e.claims.sigma->shape);
        }
        if (e.claims.sigma->matrix && e.claims.sigma->shape)
            claims["shape"] = block_shape_name(*e.claims.sigma->shape);
    }
    if (!e.claims.tau_values.empty()) {
        nlohmann::ordered_json tj;
        for (const auto& [key, val] : e.claims.tau_values) {
            nlohmann::ordered_json vj = nlohmann::ordered_json::object();
            for (const auto& [mono, coeff] : val) vj[mono] = coeff;
            tj[key] = std::move(vj);
        }
        claims["tau_values"] = std::move(tj);
    }
    j["claims"] = std::move(claims);
    return j;
}

inline CatalogEntry entry_from_json(const nlohmann::json& j) {
    try {
        CatalogEntry e;
        e.name = j.at("name").get<std::string>();
        int p = j.at("p").get<int>(), q = j.at("q").get<int>();
        e.alpha = AlphabetSpec(p, q);
        std::string mode = j.at("mode").get<std::string>();
        if (mode != "surface" && mode != "free")
            throw CatalogError("entry '" + e.name + "': unknown mode '" + mode + "'");
        e.surface_mode = mode == "surface";
        if (e.surface_mode && !e.alpha.surface())
            throw CatalogError("entry '" + e.name + "': surface mode needs p = q");
        auto read_table = [&](const char* key) {
            std::vector<Word> table;
            const nlohmann::json& tj = j.at(key);
            for (int id = 1; id <= e.alpha.size(); ++id) {
                std::string gen = e.alpha.letter_name(id);
                if (!tj.contains(gen))
                    throw CatalogError("entry '" + e.name + "': missing image of " + gen);
                table.push_back(parse_word(e.alpha, tj.at(gen).get<std::string>()));
            }
            return table;
        };
        e.fwd = read_table("fwd");
        e.inv = read_table("inv");
        if (j.contains("claims")) {
            const nlohmann::json& cj = j.at("claims");
            if (cj.contains("fixes_boundary"))
                e.claims.fixes_boundary = cj.at("fixes_boundary").get<bool>();
            if (cj.contains("level")) {
                const nlohmann::json& lv = cj.at("level");
                if (!lv.is_array() || lv.size() != 2)
                    throw CatalogError("entry '" + e.name + "': level must be [m, n]");
                e.claims.level = ExtPair(lv[0].get<int>(), lv[1].get<int>());
            }
            SigmaClaim sc;
            if (cj.contains("sigma")) {
                const nlohmann::json& sj = cj.at("sigma");
                if (sj.is_string()) {
                    std::optional<BlockShape> b = block_shape_from_name(sj.get<std::string>());
                    if (!b)
                        throw CatalogError("entry '" + e.name + "': unknown block shape '" +
                                           sj.get<std::string>() + "'");
                    sc.shape = b;
                } else if (sj.is_array()) {
                    int n = static_cast<int>(sj.size());
                    Mat m(n, n);
                    for (int r = 0; r < n; ++r) {
                        if (!sj[static_cast<size_t>(r)].is_array() ||
                            static_cast<int>(sj[static_cast<size_t>(r)].size()) != n)
                            throw CatalogError("entry '" + e.name + "': sigma claim must be square");
                        for (int c = 0; c < n; ++c)
                            m.at(r, c) = sj[static_cast<size_t>(r)][static_cast<size_t>(c)].get<long>();
                    }
                    sc.matrix = std::move(m);
                } else {
                    throw CatalogError("entry '" + e.name + "': sigma claim must be matrix or tag");
                }
            }
            if (cj.contains("shape")) {
                std::optional<BlockShape> b =
                    block_shape_from_name(cj.at("shape").get<std::string>());
                if (!b)
                    throw CatalogError("entry '" + e.name + "': unknown block shape '" +
                                       cj.at("shape").get<std::string>() + "'");
                sc.shape = b;
            }
            if (sc.matrix || sc.shape) e.claims.sigma = std::move(sc);
            if (cj.contains("tau_values")) {
                for (const auto& [key, vj] : cj.at("tau_values").items()) {
                    std::map<std::string, long> val;
                    for (const auto& [mono, coeff] : vj.items()) val[mono] = coeff.get<long>();
                    e.claims.tau_values[key] = std::move(val);
                }
            }
        }
        return e;
    } catch (const nlohmann::json::exception& err) {
        throw CatalogError(std::string("catalog entry parse: ") + err.what());
    }
}

inline std::vector<CatalogEntry> load_catalog(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& err) {
        throw CatalogError(std::string("catalog file parse: ") + err.what());
    }
    const nlohmann::json* arr = &j;
    if (j.is_object() && j.contains("entries")) arr = &j.at("entries");
    if (!arr->is_array()) throw CatalogError("catalog file must hold an array of entries");
    std::vector<CatalogEntry> out;
    for (const nlohmann::json& ej : *arr) out.push_back(entry_from_json(ej));
    return out;
}

inline std::vector<CatalogEntry> load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file '" + path + "'");
    return load_catalog(in);
}

inline void save_catalog(std::ostream& out, const std::vector<CatalogEntry>& entries) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CatalogEntry& e : entries) arr.push_back(entry_to_json(e));
    out << arr.dump(2) << "\n";
}

inline void save_catalog_file(const std::string& path, const std::vector<CatalogEntry>& entries) {
    std::ofstream out(path);
    if (!out) throw CatalogError("cannot write catalog file '" + path + "'");
    save_catalog(out, entries);
}

}  // namespace bigrade
