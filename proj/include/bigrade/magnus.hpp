#pragma once

#include "bigrade/words.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>

namespace bigrade {

// ---------------------------------------------------------------------------
// Monomials in the noncommuting symbols X1..Xp, Y1..Yq, packed into a u64:
// sixteen 4-bit slots, first symbol in the top nibble, unused slots zero.
// Symbol codes reuse the positive letter ids of AlphabetSpec (x(i) = i,
// y(j) = p+j), so codes fit a nibble whenever p+q <= 15.  Within one length
// class the numeric order of keys is the lexicographic order of monomials,
// and a monomial always precedes its proper extensions.
// ---------------------------------------------------------------------------

using MonoKey = std::uint64_t;

inline constexpr int mono_capacity = 16;

inline int mono_len(MonoKey k) {
    if (k == 0) return 0;
    return mono_capacity - static_cast<int>(std::countr_zero(k)) / 4;
}

inline int mono_symbol(MonoKey k, int pos) {
    return static_cast<int>((k >> (4 * (mono_capacity - 1 - pos))) & 0xFULL);
}

inline MonoKey mono_append(MonoKey k, int sym, int len) {
    return k | (static_cast<MonoKey>(sym) << (4 * (mono_capacity - 1 - len)));
}

inline MonoKey mono_concat(MonoKey a, MonoKey b, int len_a) {
    if (len_a <= 0) return b;
    if (len_a >= mono_capacity) return a;  // b must be empty to fit
    return a | (b >> (4 * len_a));
}

inline Bidegree mono_bidegree(MonoKey k, const AlphabetSpec& alpha) {
    Bidegree d;
    int len = mono_len(k);
    for (int i = 0; i < len; ++i) {
        if (alpha.is_x(mono_symbol(k, i)))
            ++d.x_count;
        else
            ++d.y_count;
    }
    return d;
}

inline long mono_weight(MonoKey k, const AlphabetSpec& alpha, int wx, int wy) {
    Bidegree d = mono_bidegree(k, alpha);
    return static_cast<long>(d.x_count) * wx + static_cast<long>(d.y_count) * wy;
}

inline std::string mono_str(MonoKey k, const AlphabetSpec& alpha) {
    int len = mono_len(k);
    if (len == 0) return "1";
    std::string out;
    int i = 0;
    while (i < len) {
        int sym = mono_symbol(k, i);
        int run = 1;
        while (i + run < len && mono_symbol(k, i + run) == sym) ++run;
        if (!out.empty()) out += "*";
        out += alpha.is_x(sym) ? "X" + std::to_string(sym) : "Y" + std::to_string(sym - alpha.p);
        if (run > 1) out += "^" + std::to_string(run);
        i += run;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Truncated integer power series.  Terms are key-sorted with nonzero
// coefficients; the constant term lives in its own field.  The bound caps the
// weighted total degree (weights (1,1) unless a weighted mode is requested),
// and every operation truncates so that results agree with computing at any
// larger bound and discarding.
// ---------------------------------------------------------------------------

class TruncatedSeries {
public:
    AlphabetSpec alpha;
    int bound;
    int wx, wy;
    Int constant;
    std::vector<std::pair<MonoKey, Int>> terms;

    TruncatedSeries(const AlphabetSpec& a, int bound_, int wx_ = 1, int wy_ = 1)
        : alpha(a), bound(bound_), wx(wx_), wy(wy_), constant(0) {
        if (bound_ < 0) throw BoundError("series bound must be >= 0");
        if (wx_ < 1 || wy_ < 1) throw BoundError("series weights must be >= 1");
        if (a.size() > 15)
            throw InvalidLetter("at most 15 symbols fit the packed monomial encoding");
        if (bound_ / std::min(wx_, wy_) > mono_capacity)
            throw BoundError("bound admits monomials longer than the packed capacity of 16");
    }

    static TruncatedSeries one(const AlphabetSpec& a, int bound, int wx = 1, int wy = 1) {
        TruncatedSeries s(a, bound, wx, wy);
        s.constant = 1;
        return s;
    }

    bool is_zero() const { return constant == 0 && terms.empty(); }

    bool operator==(const TruncatedSeries& o) const {
        return alpha == o.alpha && bound == o.bound && wx == o.wx && wy == o.wy &&
               constant == o.constant && terms == o.terms;
    }

    Int coeff(MonoKey k) const {
        if (k == 0) return constant;
        auto it = std::lower_bound(terms.begin(), terms.end(), k,
                                   [](const auto& t, MonoKey key) { return t.first < key; });
        return it != terms.end() && it->first == k ? it->second : Int(0);
    }
};

namespace detail {

inline void check_same_frame(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!(a.alpha == b.alpha)) throw GradeMismatch("series alphabets differ");
    if (a.bound != b.bound || a.wx != b.wx || a.wy != b.wy)
        throw BoundError("series bounds or weights differ");
}

// Sort a flat term list, merge duplicate keys into `out.terms`, and fold any
// empty-monomial entries into `out.constant`.
inline void combine_terms(std::vector<std::pair<MonoKey, Int>>& flat, TruncatedSeries& out) {
    std::sort(flat.begin(), flat.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.terms.clear();
    for (auto& [k, c] : flat) {
        if (k == 0) {
            out.constant += c;
        } else if (!out.terms.empty() && out.terms.back().first == k) {
            out.terms.back().second += c;
        } else {
            out.terms.emplace_back(k, std::move(c));
        }
    }
    std::erase_if(out.terms, [](const auto& t) { return t.second == 0; });
}

}  // namespace detail

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::check_same_frame(a, b);
    TruncatedSeries out(a.alpha, a.bound, a.wx, a.wy);
    out.constant = a.constant + b.constant;
    auto ia = a.terms.begin(), ib = b.terms.begin();
    while (ia != a.terms.end() || ib != b.terms.end()) {
        if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
            out.terms.push_back(*ia++);
        } else if (ia == a.terms.end() || ib->first < ia->first) {
            out.terms.push_back(*ib++);
        } else {
            Int c = ia->second + ib->second;
            if (c != 0) out.terms.emplace_back(ia->first, std::move(c));
            ++ia, ++ib;
        }
    }
    return out;
}

inline TruncatedSeries series_neg(const TruncatedSeries& a) {
    TruncatedSeries out = a;
    out.constant = -out.constant;
    for (auto& t : out.terms) t.second = -t.second;
    return out;
}

inline TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return series_add(a, series_neg(b));
}

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::check_same_frame(a, b);
    TruncatedSeries out(a.alpha, a.bound, a.wx, a.wy);
    out.constant = a.constant * b.constant;
    std::vector<std::pair<MonoKey, Int>> flat;
    flat.reserve((a.terms.size() + 1) * (b.terms.size() + 1) / 4 + 8);
    if (b.constant != 0)
        for (const auto& [k, c] : a.terms) flat.emplace_back(k, c * b.constant);
    if (a.constant != 0)
        for (const auto& [k, c] : b.terms) flat.emplace_back(k, a.constant * c);
    if (!a.terms.empty() && !b.terms.empty()) {
        std::vector<int> alen(a.terms.size());
        std::vector<long> awt(a.terms.size());
        for (size_t i = 0; i < a.terms.size(); ++i) {
            alen[i] = mono_len(a.terms[i].first);
            awt[i] = mono_weight(a.terms[i].first, a.alpha, a.wx, a.wy);
        }
        for (const auto& [kb, cb] : b.terms) {
            long bwt = mono_weight(kb, b.alpha, b.wx, b.wy);
            for (size_t i = 0; i < a.terms.size(); ++i) {
                if (awt[i] + bwt > out.bound) continue;
                flat.emplace_back(mono_concat(a.terms[i].first, kb, alen[i]),
                                  a.terms[i].second * cb);
            }
        }
    }
    detail::combine_terms(flat, out);
    return out;
}

namespace detail {

// Right-multiply in place by the expansion of one letter: 1 + S for a
// positive letter, the truncated geometric series 1 - S + S^2 - ... for its
// inverse.
inline void mul_letter_inplace(TruncatedSeries& s, int letter) {
    const int sym = letter > 0 ? letter : -letter;
    const long sw = s.alpha.is_x(sym) ? s.wx : s.wy;
    const bool inverse = letter < 0;
    std::vector<std::pair<MonoKey, Int>> flat;
    flat.reserve(s.terms.size() * 2 + 4);
    auto extend = [&](MonoKey k, int len, long w, const Int& c) {
        if (k != 0) flat.emplace_back(k, c);
        Int cc = c;
        for (;;) {
            w += sw;
            if (w > s.bound || len >= mono_capacity) break;
            k = mono_append(k, sym, len++);
            if (inverse) cc = -cc;
            flat.emplace_back(k, cc);
            if (!inverse) break;
        }
    };
    if (s.constant != 0) extend(0, 0, 0, s.constant);
    for (const auto& [k, c] : s.terms)
        extend(k, mono_len(k), mono_weight(k, s.alpha, s.wx, s.wy), c);
    TruncatedSeries out(s.alpha, s.bound, s.wx, s.wy);
    out.constant = s.constant;
    combine_terms(flat, out);
    s = std::move(out);
}

}  // namespace detail

// theta: x_i -> 1 + X_i, y_j -> 1 + Y_j, extended multiplicatively, with
// inverse letters expanded by truncated geometric series.
inline TruncatedSeries magnus_expand(const AlphabetSpec& alpha, const Word& w, int bound,
                                     int wx = 1, int wy = 1) {
    TruncatedSeries acc = TruncatedSeries::one(alpha, bound, wx, wy);
    for (int letter : w) {
        alpha.check_letter(letter);
        detail::mul_letter_inplace(acc, letter);
    }
    return acc;
}

inline TruncatedSeries truncate_to(const TruncatedSeries& s, int new_bound) {
    if (new_bound > s.bound) throw BoundError("cannot raise a series bound after truncation");
    TruncatedSeries out(s.alpha, new_bound, s.wx, s.wy);
    out.constant = s.constant;
    for (const auto& [k, c] : s.terms)
        if (mono_weight(k, s.alpha, s.wx, s.wy) <= new_bound) out.terms.emplace_back(k, c);
    return out;
}

// The homogeneous part of exact monomial bidegree (m,n).
inline TruncatedSeries delta_of(const TruncatedSeries& s, int m, int n) {
    if (m < 0 || n < 0) throw InvalidIndex("bidegree components must be >= 0");
    if (static_cast<long>(m) * s.wx + static_cast<long>(n) * s.wy > s.bound)
        throw BoundError("requested bidegree exceeds the series bound");
    TruncatedSeries out(s.alpha, s.bound, s.wx, s.wy);
    for (const auto& [k, c] : s.terms) {
        Bidegree d = mono_bidegree(k, s.alpha);
        if (d.x_count == m && d.y_count == n) out.terms.emplace_back(k, c);
    }
    return out;
}

inline TruncatedSeries delta_component(const AlphabetSpec& alpha, const Word& w, int m, int n,
                                       int bound) {
    return delta_of(magnus_expand(alpha, w, bound), m, n);
}

// Verdict of the monomial-bidegree membership model: Verified means every
// nonconstant monomial within the bound has bidegree >= (m,n) componentwise
// (a necessary-condition pass, not a membership proof); Refuted carries a
// minimal-total-degree witness monomial and is a sound non-membership
// certificate.
struct MembershipVerdict {
    bool verified = true;
    int bound = 0;
    MonoKey witness = 0;
    Int witness_coeff = 0;
    explicit operator bool() const { return verified; }
};

inline MembershipVerdict dmn_check(const TruncatedSeries& s, int m, int n) {
    if (m < 0 || n < 0) throw InvalidIndex("bidegree components must be >= 0");
    if (s.wx != 1 || s.wy != 1)
        throw GradeMismatch("bidegree membership scans run on unweighted expansions");
    MembershipVerdict v;
    v.bound = s.bound;
    int best_len = 0;
    for (const auto& [k, c] : s.terms) {
        Bidegree d = mono_bidegree(k, s.alpha);
        if (d.x_count >= m && d.y_count >= n) continue;
        int len = d.x_count + d.y_count;
        if (v.verified || len < best_len || (len == best_len && k < v.witness)) {
            v.verified = false;
            v.witness = k;
            v.witness_coeff = c;
            best_len = len;
        }
    }
    return v;
}

inline MembershipVerdict dmn_membership(const AlphabetSpec& alpha, const Word& w, int m, int n,
                                        int bound) {
    if (bound < m + n) throw BoundError("membership bound must be at least m+n");
    return dmn_check(magnus_expand(alpha, w, bound), m, n);
}

// Exact decision of lower central series membership in the free group: w lies
// in Gamma_k iff its expansion has no nonconstant term of total degree < k.
inline bool gamma_membership(const AlphabetSpec& alpha, const Word& w, int k) {
    if (k < 1) throw InvalidIndex("lower central series index must be >= 1");
    if (k == 1) return true;
    if (k - 1 > mono_capacity) throw BoundError("exact lower-central decision supports k <= 17");
    return magnus_expand(alpha, w, k - 1).terms.empty();
}

// Smallest weighted total degree among nonconstant monomials; empty when the
// expansion is trivial within the bound.
inline std::optional<long> weighted_level_of(const TruncatedSeries& s) {
    std::optional<long> best;
    for (const auto& [k, c] : s.terms) {
        long w = mono_weight(k, s.alpha, s.wx, s.wy);
        if (!best || w < *best) best = w;
    }
    return best;
}

inline std::optional<long> weighted_filtration_level(const AlphabetSpec& alpha, const Word& w,
                                                     int wx, int wy, int bound) {
    return weighted_level_of(magnus_expand(alpha, w, bound, wx, wy));
}

// Text rendering: terms sorted by (total degree, lexicographic), e.g.
// `1 - X1 + X1^2 - X1^3` or `X1*Y1 - Y1*X1`.
inline std::string series_str(const TruncatedSeries& s) {
    std::vector<std::pair<MonoKey, Int>> items(s.terms.begin(), s.terms.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        int la = mono_len(a.first), lb = mono_len(b.first);
        return la != lb ? la < lb : a.first < b.first;
    });
    std::string out;
    auto emit = [&](const Int& c, const std::string& mono) {
        bool neg = c < 0;
        Int mag = neg ? Int(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (mono.empty())
            out += mag.str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.str() + "*" + mono;
    };
    if (s.constant != 0) emit(s.constant, "");
    for (const auto& [k, c] : items) emit(c, mono_str(k, s.alpha));
    return out.empty() ? "0" : out;
}

}  // namespace bigrade
