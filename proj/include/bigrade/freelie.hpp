#pragma once

#include "bigrade/grading.hpp"
#include "bigrade/linalg.hpp"
#include "bigrade/magnus.hpp"

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace bigrade {

// ---------------------------------------------------------------------------
// The free Lie algebra over Z on the symbols a1..ap, b1..bq, graded three
// ways over one shared Lyndon basis:
//   Bidegree  - by (a-count, b-count), the (m,n)-graded pieces;
//   Total     - by word length, the classical grading of Lie(H);
//   Weighted  - by 2*(a-count) + (b-count), the grading with a-symbols of
//               weight two and b-symbols of weight one.
// A grade slice is the list of Lyndon words matching the grade, each with its
// standard bracketing and mu-image (a_i -> X_i, b_j -> Y_j, brackets to ring
// commutators).  mu is triangular: the least monomial of a basis image is the
// word itself with coefficient one, which makes exact integer projection
// possible.
// ---------------------------------------------------------------------------

struct LieGrade {
    enum class Kind { Bidegree, Total, Weighted };
    Kind kind = Kind::Bidegree;
    int m = 0, n = 0;  // Bidegree components (may be negative: empty slice)
    int k = 0;         // Total or Weighted degree

    static LieGrade bidegree(int m, int n) { return {Kind::Bidegree, m, n, 0}; }
    static LieGrade total(int k) { return {Kind::Total, 0, 0, k}; }
    static LieGrade weighted(int k) { return {Kind::Weighted, 0, 0, k}; }

    bool operator==(const LieGrade&) const = default;
    bool operator<(const LieGrade& o) const {
        return std::tie(kind, m, n, k) < std::tie(o.kind, o.m, o.n, o.k);
    }

    LieGrade plus(const LieGrade& o) const {
        if (kind != o.kind) throw GradeMismatch("cannot add grades of different kinds");
        LieGrade out = *this;
        out.m += o.m;
        out.n += o.n;
        out.k += o.k;
        return out;
    }

    std::string str() const {
        switch (kind) {
            case Kind::Bidegree:
                return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
            case Kind::Total:
                return std::to_string(k);
            default:
                return "w" + std::to_string(k);
        }
    }
};

// Homogeneous integer polynomial in the X/Y symbols: nonzero coefficients,
// sorted by (length, key), i.e. by total degree then lexicographically.
using LiePoly = std::vector<std::pair<MonoKey, Int>>;

inline bool mono_before(MonoKey a, MonoKey b) {
    int la = mono_len(a), lb = mono_len(b);
    return la != lb ? la < lb : a < b;
}

namespace detail {

inline void poly_normalize(LiePoly& p) {
    std::sort(p.begin(), p.end(),
              [](const auto& a, const auto& b) { return mono_before(a.first, b.first); });
    size_t out = 0;
    for (size_t i = 0; i < p.size();) {
        MonoKey k = p[i].first;
        Int c = std::move(p[i].second);
        for (++i; i < p.size() && p[i].first == k; ++i) c += p[i].second;
        if (c != 0) p[out++] = {k, std::move(c)};
    }
    p.resize(out);
}

}  // namespace detail

inline LiePoly poly_add(const LiePoly& a, const LiePoly& b) {
    LiePoly out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && mono_before(ia->first, ib->first))) {
            out.push_back(*ia++);
        } else if (ia == a.end() || mono_before(ib->first, ia->first)) {
            out.push_back(*ib++);
        } else {
            Int c = ia->second + ib->second;
            if (c != 0) out.emplace_back(ia->first, std::move(c));
            ++ia, ++ib;
        }
    }
    return out;
}

inline LiePoly poly_scale(const LiePoly& a, const Int& c) {
    if (c == 0) return {};
    LiePoly out = a;
    for (auto& t : out) t.second *= c;
    return out;
}

inline LiePoly poly_neg(const LiePoly& a) { return poly_scale(a, Int(-1)); }

inline LiePoly poly_sub(const LiePoly& a, const LiePoly& b) { return poly_add(a, poly_neg(b)); }

inline LiePoly poly_mul(const LiePoly& a, const LiePoly& b) {
    LiePoly out;
    out.reserve(a.size() * b.size());
    for (const auto& [ka, ca] : a) {
        int la = mono_len(ka);
        for (const auto& [kb, cb] : b) {
            if (la + mono_len(kb) > mono_capacity)
                throw BoundError("polynomial degree above packed monomial capacity");
            out.emplace_back(mono_concat(ka, kb, la), ca * cb);
        }
    }
    detail::poly_normalize(out);
    return out;
}

struct BTreeNode {
    int sym = -1;  // >= 1 for a leaf
    int left = -1, right = -1;
};

struct LieBasisElement {
    std::vector<int> word;  // Lyndon word over symbols 1..p+q
    Bidegree bid;
    std::vector<BTreeNode> nodes;  // standard bracketing, arena form
    int root = -1;
    LiePoly mu;
};

struct LieElement {
    LieGrade grade;
    Vec coords;

    bool operator==(const LieElement&) const = default;
    bool is_zero() const {
        for (const Int& c : coords)
            if (c != 0) return false;
        return true;
    }
};

// Generator values of a derivation: a_values[i] = d(a_{i+1}), b_values[j] =
// d(b_{j+1}), with grades fixed by the derivation grade (see value targets
// below).  Sides whose target grade is empty hold zero elements.
struct DerivationElement {
    LieGrade grade;
    std::vector<LieElement> a_values, b_values;

    bool operator==(const DerivationElement&) const = default;
    bool is_zero() const {
        for (const LieElement& v : a_values)
            if (!v.is_zero()) return false;
        for (const LieElement& v : b_values)
            if (!v.is_zero()) return false;
        return true;
    }
};

// Grade of d(a_i) for a derivation of the given grade.
inline LieGrade derivation_a_target(const LieGrade& g) {
    switch (g.kind) {
        case LieGrade::Kind::Bidegree:
            return LieGrade::bidegree(g.m + 1, g.n);
        case LieGrade::Kind::Total:
            return LieGrade::total(g.k + 1);
        default:
            return LieGrade::weighted(g.k + 2);
    }
}

// Grade of d(b_j).
inline LieGrade derivation_b_target(const LieGrade& g) {
    switch (g.kind) {
        case LieGrade::Kind::Bidegree:
            return LieGrade::bidegree(g.m, g.n + 1);
        case LieGrade::Kind::Total:
            return LieGrade::total(g.k + 1);
        default:
            return LieGrade::weighted(g.k + 1);
    }
}

// Grade of the contraction value.
inline LieGrade xi_target(const LieGrade& g) {
    switch (g.kind) {
        case LieGrade::Kind::Bidegree:
            return LieGrade::bidegree(g.m + 1, g.n + 1);
        case LieGrade::Kind::Total:
            return LieGrade::total(g.k + 2);
        default:
            return LieGrade::weighted(g.k + 3);
    }
}

class LieContext {
public:
    struct Basis {
        std::vector<LieBasisElement> elems;      // lexicographic word order
        std::map<std::vector<int>, int> index;   // word -> position
    };

    explicit LieContext(const AlphabetSpec& a) : alpha_(a) {
        if (a.size() > 15)
            throw InvalidLetter("at most 15 symbols fit the packed monomial encoding");
    }

    const AlphabetSpec& alpha() const { return alpha_; }

    const Basis& slice(const LieGrade& g) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = slices_.find(g);
        if (it != slices_.end()) return it->second;
        return slices_.emplace(g, build_slice(g)).first->second;
    }

    int rank(const LieGrade& g) { return static_cast<int>(slice(g).elems.size()); }

private:
    AlphabetSpec alpha_;
    std::mutex mu_;
    std::map<LieGrade, Basis> slices_;
    std::map<int, std::vector<LieBasisElement>> lengths_;

    static bool is_lyndon(const std::vector<int>& w, int lo, int hi) {
        int n = hi - lo;
        if (n <= 0) return false;
        for (int r = 1; r < n; ++r) {
            // compare w[lo..hi) against the rotation starting at lo+r
            bool smaller = false, larger = false;
            for (int i = 0; i < n; ++i) {
                int x = w[lo + i];
                int y = w[lo + (i + r) % n];
                if (x != y) {
                    smaller = x < y;
                    larger = x > y;
                    break;
                }
            }
            if (larger || (!smaller && !larger)) return false;  // rotation <= word
        }
        return true;
    }

    static int build_tree(const std::vector<int>& w, int lo, int hi,
                          std::vector<BTreeNode>& nodes) {
        if (hi - lo == 1) {
            nodes.push_back({w[lo], -1, -1});
            return static_cast<int>(nodes.size()) - 1;
        }
        int split = -1;  // longest proper suffix that is Lyndon
        for (int s = lo + 1; s < hi; ++s)
            if (is_lyndon(w, s, hi)) {
                split = s;
                break;
            }
        int l = build_tree(w, lo, split, nodes);
        int r = build_tree(w, split, hi, nodes);
        nodes.push_back({-1, l, r});
        return static_cast<int>(nodes.size()) - 1;
    }

    static LiePoly tree_poly(const std::vector<BTreeNode>& nodes, int at) {
        const BTreeNode& nd = nodes[at];
        if (nd.sym >= 1) return {{mono_append(0, nd.sym, 0), Int(1)}};
        LiePoly l = tree_poly(nodes, nd.left);
        LiePoly r = tree_poly(nodes, nd.right);
        return poly_sub(poly_mul(l, r), poly_mul(r, l));
    }

    // All Lyndon words of exact length L in lexicographic order (Duval).
    const std::vector<LieBasisElement>& length_list(int L) {
        auto it = lengths_.find(L);
        if (it != lengths_.end()) return it->second;
        if (L > mono_capacity) throw BoundError("Lie degree above packed monomial capacity");
        std::vector<LieBasisElement> out;
        int s = alpha_.size();
        std::vector<int> w{0};
        for (;;) {
            if (static_cast<int>(w.size()) == L) {
                LieBasisElement e;
                e.word.reserve(L);
                for (int c : w) e.word.push_back(c + 1);
                for (int c : e.word) alpha_.is_x(c) ? ++e.bid.x_count : ++e.bid.y_count;
                e.root = build_tree(e.word, 0, L, e.nodes);
                e.mu = tree_poly(e.nodes, e.root);
                out.push_back(std::move(e));
            }
            std::vector<int> v;
            for (int i = 0; i < L; ++i) v.push_back(w[i % w.size()]);
            while (!v.empty() && v.back() == s - 1) v.pop_back();
            if (v.empty()) break;
            ++v.back();
            w = std::move(v);
        }
        return lengths_.emplace(L, std::move(out)).first->second;
    }

    Basis build_slice(const LieGrade& g) {
        Basis b;
        auto take = [&](int L, int want_x, bool filter) {
            if (L < 1) return;
            for (const LieBasisElement& e : length_list(L)) {
                if (filter && e.bid.x_count != want_x) continue;
                b.index.emplace(e.word, static_cast<int>(b.elems.size()));
                b.elems.push_back(e);
            }
        };
        switch (g.kind) {
            case LieGrade::Kind::Bidegree:
                if (g.m >= 0 && g.n >= 0 && g.m + g.n >= 1) take(g.m + g.n, g.m, true);
                break;
            case LieGrade::Kind::Total:
                take(g.k, 0, false);
                break;
            default:  // Weighted: bidegrees (m, k-2m), ascending m
                for (int m = 0; 2 * m <= g.k; ++m) take(g.k - m, m, true);
                break;
        }
        return b;
    }
};

inline LieElement lie_zero(LieContext& ctx, const LieGrade& g) {
    return {g, Vec(ctx.slice(g).elems.size())};
}

inline LieElement lie_generator(LieContext& ctx, int letter,
                                LieGrade::Kind kind = LieGrade::Kind::Bidegree) {
    ctx.alpha().check_letter(letter);
    if (letter < 0) throw InvalidLetter("generators are positive letters");
    LieGrade g;
    bool isx = ctx.alpha().is_x(letter);
    switch (kind) {
        case LieGrade::Kind::Bidegree:
            g = isx ? LieGrade::bidegree(1, 0) : LieGrade::bidegree(0, 1);
            break;
        case LieGrade::Kind::Total:
            g = LieGrade::total(1);
            break;
        default:
            g = LieGrade::weighted(isx ? 2 : 1);
            break;
    }
    LieElement out = lie_zero(ctx, g);
    out.coords[ctx.slice(g).index.at({letter})] = 1;
    return out;
}

inline LieElement lie_add(const LieElement& a, const LieElement& b) {
    if (a.grade != b.grade) throw GradeMismatch("cannot add Lie elements of different grades");
    LieElement out = a;
    for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
    return out;
}

inline LieElement lie_scale(const LieElement& a, const Int& c) {
    LieElement out = a;
    for (Int& v : out.coords) v *= c;
    return out;
}

inline LieElement lie_neg(const LieElement& a) { return lie_scale(a, Int(-1)); }

inline LieElement lie_sub(const LieElement& a, const LieElement& b) {
    return lie_add(a, lie_neg(b));
}

inline LiePoly mu_embed(LieContext& ctx, const LieElement& u) {
    const LieContext::Basis& b = ctx.slice(u.grade);
    if (u.coords.size() != b.elems.size()) throw GradeMismatch("coordinate length mismatch");
    LiePoly out;
    for (size_t i = 0; i < u.coords.size(); ++i)
        if (u.coords[i] != 0) out = poly_add(out, poly_scale(b.elems[i].mu, u.coords[i]));
    return out;
}

namespace detail {

inline bool poly_grade_matches(const AlphabetSpec& alpha, MonoKey k, const LieGrade& g) {
    Bidegree d = mono_bidegree(k, alpha);
    switch (g.kind) {
        case LieGrade::Kind::Bidegree:
            return d.x_count == g.m && d.y_count == g.n;
        case LieGrade::Kind::Total:
            return d.x_count + d.y_count == g.k;
        default:
            return 2 * d.x_count + d.y_count == g.k;
    }
}

}  // namespace detail

// Unique preimage under mu, by triangular elimination: repeatedly strip the
// least remaining monomial, which must be a Lyndon basis word of the grade.
inline LieElement lie_project(LieContext& ctx, LiePoly p, const LieGrade& g) {
    const LieContext::Basis& b = ctx.slice(g);
    for (const auto& [k, c] : p)
        if (!detail::poly_grade_matches(ctx.alpha(), k, g))
            throw GradeMismatch("polynomial term " + mono_str(k, ctx.alpha()) +
                                " is not of grade " + g.str());
    LieElement out{g, Vec(b.elems.size())};
    while (!p.empty()) {
        MonoKey k = p.front().first;
        std::vector<int> word;
        for (int i = 0; i < mono_len(k); ++i) word.push_back(mono_symbol(k, i));
        auto it = b.index.find(word);
        if (it == b.index.end())
            throw NotALieElement("leading monomial " + mono_str(k, ctx.alpha()) +
                                 " is not a Lyndon basis word; polynomial is not a Lie element");
        Int c = p.front().second;
        out.coords[it->second] += c;
        p = poly_sub(p, poly_scale(b.elems[it->second].mu, c));
    }
    return out;
}

inline LieElement lie_bracket(LieContext& ctx, const LieElement& u, const LieElement& v) {
    LiePoly pu = mu_embed(ctx, u);
    LiePoly pv = mu_embed(ctx, v);
    return lie_project(ctx, poly_sub(poly_mul(pu, pv), poly_mul(pv, pu)),
                       u.grade.plus(v.grade));
}

// Rendering: `3*[a1,[a1,b2]] - [a2,b1]`, terms in basis order.
inline std::string lie_symbol_name(const AlphabetSpec& alpha, int sym) {
    return alpha.is_x(sym) ? "a" + std::to_string(sym) : "b" + std::to_string(sym - alpha.p);
}

namespace detail {

inline std::string bracket_str(const AlphabetSpec& alpha, const LieBasisElement& e, int at) {
    const BTreeNode& nd = e.nodes[at];
    if (nd.sym >= 1) return lie_symbol_name(alpha, nd.sym);
    return "[" + bracket_str(alpha, e, nd.left) + "," + bracket_str(alpha, e, nd.right) + "]";
}

}  // namespace detail

inline std::string lie_str(LieContext& ctx, const LieElement& u) {
    const LieContext::Basis& b = ctx.slice(u.grade);
    std::string out;
    for (size_t i = 0; i < u.coords.size(); ++i) {
        const Int& c = u.coords[i];
        if (c == 0) continue;
        bool neg = c < 0;
        Int mag = neg ? Int(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (mag != 1) out += mag.str() + "*";
        out += detail::bracket_str(ctx.alpha(), b.elems[i], b.elems[i].root);
    }
    return out.empty() ? "0" : out;
}

// mu image as a truncated series (for comparisons against expansions).
inline TruncatedSeries mu_series(LieContext& ctx, const LieElement& u, int bound, int wx = 1,
                                 int wy = 1) {
    TruncatedSeries s(ctx.alpha(), bound, wx, wy);
    LiePoly p = mu_embed(ctx, u);
    for (auto& [k, c] : p) {
        if (mono_weight(k, ctx.alpha(), wx, wy) > bound)
            throw BoundError("mu image exceeds the requested bound");
        s.terms.emplace_back(k, std::move(c));
    }
    std::sort(s.terms.begin(), s.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return s;
}

inline LieElement lie_project_series(LieContext& ctx, const TruncatedSeries& s,
                                     const LieGrade& g) {
    if (!(s.alpha == ctx.alpha())) throw GradeMismatch("series alphabet mismatch");
    LiePoly p(s.terms.begin(), s.terms.end());
    std::sort(p.begin(), p.end(),
              [](const auto& a, const auto& b) { return mono_before(a.first, b.first); });
    if (s.constant != 0)
        throw NotALieElement("series has a constant term");
    return lie_project(ctx, std::move(p), g);
}

inline LieElement omega(LieContext& ctx, LieGrade::Kind kind = LieGrade::Kind::Bidegree) {
    int g = ctx.alpha().genus();
    LieGrade target;
    switch (kind) {
        case LieGrade::Kind::Bidegree:
            target = LieGrade::bidegree(1, 1);
            break;
        case LieGrade::Kind::Total:
            target = LieGrade::total(2);
            break;
        default:
            target = LieGrade::weighted(3);
            break;
    }
    LieElement out = lie_zero(ctx, target);
    for (int i = 1; i <= g; ++i)
        out = lie_add(out, lie_bracket(ctx, lie_generator(ctx, ctx.alpha().x(i), kind),
                                       lie_generator(ctx, ctx.alpha().y(i), kind)));
    return out;
}

inline DerivationElement derivation_zero(LieContext& ctx, const LieGrade& g) {
    DerivationElement d;
    d.grade = g;
    d.a_values.assign(ctx.alpha().p, lie_zero(ctx, derivation_a_target(g)));
    d.b_values.assign(ctx.alpha().q, lie_zero(ctx, derivation_b_target(g)));
    return d;
}

inline DerivationElement derivation_add(const DerivationElement& x, const DerivationElement& y) {
    if (x.grade != y.grade) throw GradeMismatch("cannot add derivations of different grades");
    DerivationElement out = x;
    for (size_t i = 0; i < out.a_values.size(); ++i)
        out.a_values[i] = lie_add(out.a_values[i], y.a_values[i]);
    for (size_t i = 0; i < out.b_values.size(); ++i)
        out.b_values[i] = lie_add(out.b_values[i], y.b_values[i]);
    return out;
}

inline DerivationElement derivation_scale(const DerivationElement& x, const Int& c) {
    DerivationElement out = x;
    for (LieElement& v : out.a_values) v = lie_scale(v, c);
    for (LieElement& v : out.b_values) v = lie_scale(v, c);
    return out;
}

inline DerivationElement derivation_sub(const DerivationElement& x, const DerivationElement& y) {
    return derivation_add(x, derivation_scale(y, Int(-1)));
}

namespace detail {

inline LieElement tree_element(LieContext& ctx, const LieBasisElement& e, int at,
                               LieGrade::Kind kind) {
    const BTreeNode& nd = e.nodes[at];
    if (nd.sym >= 1) return lie_generator(ctx, nd.sym, kind);
    return lie_bracket(ctx, tree_element(ctx, e, nd.left, kind),
                       tree_element(ctx, e, nd.right, kind));
}

inline LieElement derive_tree(LieContext& ctx, const DerivationElement& d,
                              const LieBasisElement& e, int at) {
    const BTreeNode& nd = e.nodes[at];
    if (nd.sym >= 1) {
        const AlphabetSpec& alpha = ctx.alpha();
        return alpha.is_x(nd.sym) ? d.a_values[nd.sym - 1]
                                  : d.b_values[nd.sym - alpha.p - 1];
    }
    LieElement l = tree_element(ctx, e, nd.left, d.grade.kind);
    LieElement r = tree_element(ctx, e, nd.right, d.grade.kind);
    LieElement dl = derive_tree(ctx, d, e, nd.left);
    LieElement dr = derive_tree(ctx, d, e, nd.right);
    return lie_add(lie_bracket(ctx, dl, r), lie_bracket(ctx, l, dr));
}

}  // namespace detail

// Leibniz extension of the generator values.
inline LieElement derivation_apply(LieContext& ctx, const DerivationElement& d,
                                   const LieElement& u) {
    if (u.grade.kind != d.grade.kind)
        throw GradeMismatch("derivation and argument use different grading modes");
    LieGrade target = [&] {
        // the argument grade shifted by the derivation grade
        switch (d.grade.kind) {
            case LieGrade::Kind::Bidegree:
                return LieGrade::bidegree(u.grade.m + d.grade.m, u.grade.n + d.grade.n);
            case LieGrade::Kind::Total:
                return LieGrade::total(u.grade.k + d.grade.k);
            default:
                return LieGrade::weighted(u.grade.k + d.grade.k);
        }
    }();
    const LieContext::Basis& b = ctx.slice(u.grade);
    LieElement out = lie_zero(ctx, target);
    for (size_t i = 0; i < u.coords.size(); ++i) {
        if (u.coords[i] == 0) continue;
        out = lie_add(out, lie_scale(detail::derive_tree(ctx, d, b.elems[i], b.elems[i].root),
                                     u.coords[i]));
    }
    return out;
}

// Contraction sum [a_i, d(b_i)] - [b_i, d(a_i)]; equals d(Omega).
inline LieElement xi_contract(LieContext& ctx, const DerivationElement& d) {
    int g = ctx.alpha().genus();
    LieElement out = lie_zero(ctx, xi_target(d.grade));
    for (int i = 1; i <= g; ++i) {
        LieElement ai = lie_generator(ctx, ctx.alpha().x(i), d.grade.kind);
        LieElement bi = lie_generator(ctx, ctx.alpha().y(i), d.grade.kind);
        out = lie_add(out, lie_bracket(ctx, ai, d.b_values[i - 1]));
        out = lie_sub(out, lie_bracket(ctx, bi, d.a_values[i - 1]));
    }
    return out;
}

inline std::string derivation_str(LieContext& ctx, const DerivationElement& d) {
    std::string out;
    const AlphabetSpec& alpha = ctx.alpha();
    for (int i = 1; i <= alpha.p; ++i) {
        if (!out.empty()) out += "; ";
        out += "d(a" + std::to_string(i) + ")=" + lie_str(ctx, d.a_values[i - 1]);
    }
    for (int j = 1; j <= alpha.q; ++j) {
        if (!out.empty()) out += "; ";
        out += "d(b" + std::to_string(j) + ")=" + lie_str(ctx, d.b_values[j - 1]);
    }
    return out;
}

// Kernel of the contraction: a basis of the derivation space at the grade.
inline std::vector<DerivationElement> derivation_kernel(LieContext& ctx, const LieGrade& g) {
    int genus = ctx.alpha().genus();
    const LieGrade ga = derivation_a_target(g);
    const LieGrade gb = derivation_b_target(g);
    const LieGrade gt = xi_target(g);
    int na = ctx.rank(ga), nb = ctx.rank(gb), nt = ctx.rank(gt);

    struct Slot {
        bool a_side;
        int gen;  // 0-based
        int idx;
    };
    std::vector<Slot> slots;
    for (int i = 0; i < genus; ++i)
        for (int t = 0; t < na; ++t) slots.push_back({true, i, t});
    for (int j = 0; j < genus; ++j)
        for (int t = 0; t < nb; ++t) slots.push_back({false, j, t});

    Mat M(nt, static_cast<int>(slots.size()));
    for (size_t s = 0; s < slots.size(); ++s) {
        const Slot& sl = slots[s];
        LieGrade vg = sl.a_side ? ga : gb;
        LieElement unit = lie_zero(ctx, vg);
        unit.coords[sl.idx] = 1;
        // xi of the unit derivation: [a_j, d(b_j)] for a b-side slot and
        // -[b_i, d(a_i)] for an a-side one, so bracket with the partner letter.
        int letter = sl.a_side ? ctx.alpha().y(sl.gen + 1) : ctx.alpha().x(sl.gen + 1);
        LieElement gen = lie_generator(ctx, letter, g.kind);
        LieElement col = lie_bracket(ctx, gen, unit);
        if (sl.a_side) col = lie_neg(col);
        for (int r = 0; r < nt; ++r) M.at(r, static_cast<int>(s)) = col.coords[r];
    }

    std::vector<DerivationElement> out;
    for (const Vec& v : kernel_basis(M)) {
        DerivationElement d = derivation_zero(ctx, g);
        for (size_t s = 0; s < slots.size(); ++s) {
            const Slot& sl = slots[s];
            LieElement& tgt = sl.a_side ? d.a_values[sl.gen] : d.b_values[sl.gen];
            tgt.coords[sl.idx] += v[s];
        }
        out.push_back(std::move(d));
    }
    return out;
}

inline std::vector<DerivationElement> dmn_kernel(LieContext& ctx, const ExtPair& mn) {
    if (mn.m + mn.n < 1) throw InvalidIndex("derivation grade must have m+n >= 1");
    return derivation_kernel(ctx, LieGrade::bidegree(mn.m, mn.n));
}

inline std::vector<DerivationElement> dn_kernel(LieContext& ctx, int n) {
    if (n < 1) throw InvalidIndex("derivation grade must be >= 1");
    return derivation_kernel(ctx, LieGrade::total(n));
}

inline std::vector<DerivationElement> da_kernel(LieContext& ctx, int k) {
    if (k < 1) throw InvalidIndex("derivation grade must be >= 1");
    return derivation_kernel(ctx, LieGrade::weighted(k));
}

// Regrading along the shared Lyndon basis: bidegree slices include into the
// total-degree and weighted slices word by word.
inline LieElement regrade(LieContext& ctx, const LieElement& u, LieGrade::Kind target_kind) {
    if (u.grade.kind != LieGrade::Kind::Bidegree)
        throw GradeMismatch("regrading starts from the bidegree grading");
    LieGrade tg = target_kind == LieGrade::Kind::Total
                      ? LieGrade::total(u.grade.m + u.grade.n)
                      : LieGrade::weighted(2 * u.grade.m + u.grade.n);
    const LieContext::Basis& src = ctx.slice(u.grade);
    const LieContext::Basis& dst = ctx.slice(tg);
    LieElement out{tg, Vec(dst.elems.size())};
    for (size_t i = 0; i < u.coords.size(); ++i) {
        if (u.coords[i] == 0) continue;
        out.coords[dst.index.at(src.elems[i].word)] += u.coords[i];
    }
    return out;
}

inline LieElement regrade_total(LieContext& ctx, const LieElement& u) {
    return regrade(ctx, u, LieGrade::Kind::Total);
}

inline LieElement regrade_weighted(LieContext& ctx, const LieElement& u) {
    return regrade(ctx, u, LieGrade::Kind::Weighted);
}

inline DerivationElement j_map(LieContext& ctx, const DerivationElement& d) {
    if (d.grade.kind != LieGrade::Kind::Bidegree)
        throw GradeMismatch("j starts from the bidegree grading");
    DerivationElement out;
    out.grade = LieGrade::total(d.grade.m + d.grade.n);
    for (const LieElement& v : d.a_values) out.a_values.push_back(regrade_total(ctx, v));
    for (const LieElement& v : d.b_values) out.b_values.push_back(regrade_total(ctx, v));
    return out;
}

inline DerivationElement ja_map(LieContext& ctx, const DerivationElement& d) {
    if (d.grade.kind != LieGrade::Kind::Bidegree)
        throw GradeMismatch("the weighted comparison starts from the bidegree grading");
    DerivationElement out;
    out.grade = LieGrade::weighted(2 * d.grade.m + d.grade.n);
    for (const LieElement& v : d.a_values) out.a_values.push_back(regrade_weighted(ctx, v));
    for (const LieElement& v : d.b_values) out.b_values.push_back(regrade_weighted(ctx, v));
    return out;
}

// ---------------------------------------------------------------------------
// Degree-one derivations of Lie(H) and the third exterior power: the map
// x^y^z -> x@[y,z] + y@[z,x] + z@[x,y] identifies wedge3 coordinates with
// D_1(H).  Tensors h@w translate to generator values via the convention
// Psi(d) = sum_i a_i @ d(b_i) - sum_j b_j @ d(a_j).
// ---------------------------------------------------------------------------

inline std::vector<std::array<int, 3>> wedge3_basis(const AlphabetSpec& alpha) {
    int s = alpha.size();
    std::vector<std::array<int, 3>> out;
    for (int i = 1; i <= s; ++i)
        for (int j = i + 1; j <= s; ++j)
            for (int k = j + 1; k <= s; ++k) out.push_back({i, j, k});
    return out;
}

inline std::string wedge3_str(const AlphabetSpec& alpha, const Vec& coords) {
    std::vector<std::array<int, 3>> basis = wedge3_basis(alpha);
    if (coords.size() != basis.size()) throw GradeMismatch("wedge coordinate length mismatch");
    std::string out;
    for (size_t t = 0; t < basis.size(); ++t) {
        const Int& c = coords[t];
        if (c == 0) continue;
        bool neg = c < 0;
        Int mag = neg ? Int(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (mag != 1) out += mag.str() + "*";
        out += lie_symbol_name(alpha, basis[t][0]) + "^" + lie_symbol_name(alpha, basis[t][1]) +
               "^" + lie_symbol_name(alpha, basis[t][2]);
    }
    return out.empty() ? "0" : out;
}

namespace detail {

// Add c * (h @ w) to the generator values of d.
inline void add_tensor_term(LieContext& ctx, DerivationElement& d, int h, const LieElement& w,
                            const Int& c) {
    const AlphabetSpec& alpha = ctx.alpha();
    if (alpha.is_x(h))
        d.b_values[h - 1] = lie_add(d.b_values[h - 1], lie_scale(w, c));
    else
        d.a_values[h - alpha.p - 1] = lie_sub(d.a_values[h - alpha.p - 1], lie_scale(w, c));
}

}  // namespace detail

inline DerivationElement wedge3_encode(LieContext& ctx, const Vec& coords) {
    std::vector<std::array<int, 3>> basis = wedge3_basis(ctx.alpha());
    if (coords.size() != basis.size()) throw GradeMismatch("wedge coordinate length mismatch");
    DerivationElement d = derivation_zero(ctx, LieGrade::total(1));
    auto gen = [&](int s) { return lie_generator(ctx, s, LieGrade::Kind::Total); };
    for (size_t t = 0; t < basis.size(); ++t) {
        if (coords[t] == 0) continue;
        auto [x, y, z] = basis[t];
        detail::add_tensor_term(ctx, d, x, lie_bracket(ctx, gen(y), gen(z)), coords[t]);
        detail::add_tensor_term(ctx, d, y, lie_bracket(ctx, gen(z), gen(x)), coords[t]);
        detail::add_tensor_term(ctx, d, z, lie_bracket(ctx, gen(x), gen(y)), coords[t]);
    }
    return d;
}

inline Vec wedge3_decode(LieContext& ctx, const DerivationElement& d) {
    if (d.grade != LieGrade::total(1))
        throw GradeMismatch("wedge decoding expects a degree-one derivation of Lie(H)");
    if (!xi_contract(ctx, d).is_zero())
        throw NotInImage("derivation has nonzero contraction; not in the wedge image");
    int s = ctx.alpha().size();
    int r2 = ctx.rank(LieGrade::total(2));
    auto tensor_coords = [&](const DerivationElement& e) {
        Vec t(static_cast<size_t>(s) * r2);
        const AlphabetSpec& alpha = ctx.alpha();
        for (int i = 0; i < alpha.p; ++i)
            for (int c = 0; c < r2; ++c) t[static_cast<size_t>(i) * r2 + c] = e.b_values[i].coords[c];
        for (int j = 0; j < alpha.q; ++j)
            for (int c = 0; c < r2; ++c)
                t[static_cast<size_t>(alpha.p + j) * r2 + c] = -e.a_values[j].coords[c];
        return t;
    };
    std::vector<std::array<int, 3>> basis = wedge3_basis(ctx.alpha());
    std::vector<Vec> cols;
    for (size_t t = 0; t < basis.size(); ++t) {
        Vec unit(basis.size());
        unit[t] = 1;
        cols.push_back(tensor_coords(wedge3_encode(ctx, unit)));
    }
    Mat E = mat_from_columns(s * r2, cols);
    std::optional<Vec> sol = solve_integer(E, tensor_coords(d));
    if (!sol) throw NotInImage("derivation is not in the image of the wedge map");
    return *sol;
}

}  // namespace bigrade
