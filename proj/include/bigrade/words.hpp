#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"

namespace bigrade {

// Split alphabet {x_1..x_p, y_1..y_q}. Letter ids are 1..p for x's and
// p+1..p+q for y's; a negative id is the inverse letter.
struct AlphabetSpec {
    int p = 0, q = 0;

    AlphabetSpec() = default;
    AlphabetSpec(int p_, int q_) : p(p_), q(q_) {
        if (p < 0 || q < 0 || p + q < 1) throw InvalidLetter("alphabet needs p,q >= 0 and p+q >= 1");
    }

    int size() const { return p + q; }
    bool surface() const { return p == q && p >= 1; }
    int genus() const {
        if (!surface()) throw InvalidLetter("not in surface mode (requires p = q = g >= 1)");
        return p;
    }

    int x(int i) const {
        if (i < 1 || i > p) throw InvalidLetter("x index out of range: " + std::to_string(i));
        return i;
    }
    int y(int j) const {
        if (j < 1 || j > q) throw InvalidLetter("y index out of range: " + std::to_string(j));
        return p + j;
    }
    bool is_x(int id) const { return std::abs(id) >= 1 && std::abs(id) <= p; }
    bool is_y(int id) const { return std::abs(id) > p && std::abs(id) <= p + q; }

    void check_letter(int id) const {
        int a = std::abs(id);
        if (a < 1 || a > p + q) throw InvalidLetter("letter id out of range: " + std::to_string(id));
    }

    std::string letter_name(int id) const {
        check_letter(id);
        int a = std::abs(id);
        std::string base = a <= p ? "x" + std::to_string(a) : "y" + std::to_string(a - p);
        return base;
    }

    bool operator==(const AlphabetSpec& o) const { return p == o.p && q == o.q; }
};

using Word = std::vector<int>;  // freely reduced signed letter sequence

inline void append_reduced(Word& w, int letter) {
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}

inline Word reduce(const AlphabetSpec& alpha, const Word& raw) {
    Word out;
    out.reserve(raw.size());
    for (int l : raw) {
        alpha.check_letter(l);
        append_reduced(out, l);
    }
    return out;
}

inline Word word_mul(const Word& a, const Word& b) {
    Word out = a;
    out.reserve(a.size() + b.size());
    for (int l : b) append_reduced(out, l);
    return out;
}

inline Word word_inv(const Word& a) {
    Word out;
    out.reserve(a.size());
    for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(-*it);
    return out;
}

// a b a^-1
inline Word word_conj(const Word& a, const Word& b) { return word_mul(word_mul(a, b), word_inv(a)); }

// [a,b] = a b a^-1 b^-1
inline Word commutator(const Word& a, const Word& b) {
    return word_mul(word_mul(a, b), word_mul(word_inv(a), word_inv(b)));
}

// [u1,[u2,[...,[u_{r-1},u_r]...]; singleton list gives u1
inline Word multibracket(const std::vector<Word>& us) {
    if (us.empty()) throw EmptyBracket("multibracket of empty list");
    Word acc = us.back();
    for (size_t i = us.size() - 1; i-- > 0;) acc = commutator(us[i], acc);
    return acc;
}

struct Bidegree {
    int x_count = 0, y_count = 0;
};

inline Bidegree word_bidegree(const AlphabetSpec& alpha, const Word& w) {
    Bidegree d;
    for (int l : w) {
        if (alpha.is_x(l))
            ++d.x_count;
        else
            ++d.y_count;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Word text syntax: `x1 y2^-1 x1`, whitespace separated, optional `^k`.
// ---------------------------------------------------------------------------

inline Word parse_word(const AlphabetSpec& alpha, const std::string& text) {
    Word out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "1" || tok == "e" || tok == "eps") continue;  // identity token
        size_t caret = tok.find('^');
        std::string base = tok.substr(0, caret == std::string::npos ? tok.size() : caret);
        long exp = 1;
        if (caret != std::string::npos) {
            try {
                exp = std::stol(tok.substr(caret + 1));
            } catch (const std::exception&) {
                throw ParseError("word: bad exponent in token '" + tok + "'");
            }
        }
        if (base.size() < 2 || (base[0] != 'x' && base[0] != 'y'))
            throw ParseError("word: bad letter token '" + tok + "'");
        int idx = 0;
        try {
            idx = std::stoi(base.substr(1));
        } catch (const std::exception&) {
            throw ParseError("word: bad letter token '" + tok + "'");
        }
        int id = base[0] == 'x' ? alpha.x(idx) : alpha.y(idx);
        int step = exp >= 0 ? id : -id;
        for (long k = 0; k < std::labs(exp); ++k) append_reduced(out, step);
    }
    return out;
}

inline std::string word_str(const AlphabetSpec& alpha, const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        long run = static_cast<long>(j - i);
        long exp = w[i] > 0 ? run : -run;
        if (!first) os << " ";
        first = false;
        os << alpha.letter_name(w[i]);
        if (exp != 1) os << "^" << exp;
        i = j;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// (m,n)-commutator enumeration: every arrangement of m positive x-letters and
// n positive y-letters, right-bracketed.
// ---------------------------------------------------------------------------

struct MnCommutator {
    std::vector<int> letters;  // positive ids, length m+n
    Word word;                 // reduced multibracket
};

inline void enumerate_letters_rec(const AlphabetSpec& alpha, int m, int n, std::vector<int>& cur,
                                  std::vector<std::vector<int>>& out) {
    if (m == 0 && n == 0) {
        out.push_back(cur);
        return;
    }
    if (m > 0) {
        for (int i = 1; i <= alpha.p; ++i) {
            cur.push_back(alpha.x(i));
            enumerate_letters_rec(alpha, m - 1, n, cur, out);
            cur.pop_back();
        }
    }
    if (n > 0) {
        for (int j = 1; j <= alpha.q; ++j) {
            cur.push_back(alpha.y(j));
            enumerate_letters_rec(alpha, m, n - 1, cur, out);
            cur.pop_back();
        }
    }
}

inline std::vector<MnCommutator> enumerate_mn_commutators(const AlphabetSpec& alpha, int m, int n,
                                                          bool nontrivial_only = false) {
    if (m < 0 || n < 0 || m + n < 1) throw InvalidDegree("enumerate_mn_commutators needs (m,n) in N^2, m+n >= 1");
    std::vector<std::vector<int>> seqs;
    std::vector<int> cur;
    enumerate_letters_rec(alpha, m, n, cur, seqs);
    std::vector<MnCommutator> out;
    for (auto& seq : seqs) {
        std::vector<Word> us;
        us.reserve(seq.size());
        for (int l : seq) us.push_back(Word{l});
        Word w = multibracket(us);
        if (nontrivial_only && w.empty()) continue;
        out.push_back({seq, std::move(w)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Automorphisms as generator-image tables. The inverse table is caller
// supplied and verified at construction.
// ---------------------------------------------------------------------------

class FreeGroupAut {
   public:
    AlphabetSpec alpha;

    FreeGroupAut(AlphabetSpec a, std::vector<Word> fwd, std::vector<Word> inv)
        : alpha(a), fwd_(std::move(fwd)), inv_(std::move(inv)) {
        size_t n = static_cast<size_t>(alpha.size());
        if (fwd_.size() != n || inv_.size() != n)
            throw NotAnAutomorphism("table size mismatch with alphabet");
        for (auto& w : fwd_) w = reduce(alpha, w);
        for (auto& w : inv_) w = reduce(alpha, w);
        for (int id = 1; id <= alpha.size(); ++id) {
            Word gen{id};
            if (apply_table(inv_, apply_table(fwd_, gen)) != gen ||
                apply_table(fwd_, apply_table(inv_, gen)) != gen)
                throw NotAnAutomorphism("inverse table does not invert on generator " +
                                        alpha.letter_name(id));
        }
    }

    static FreeGroupAut identity(AlphabetSpec a) {
        std::vector<Word> t;
        for (int id = 1; id <= a.size(); ++id) t.push_back(Word{id});
        return FreeGroupAut(a, t, t);
    }

    const Word& image(int id) const {
        alpha.check_letter(id);
        return fwd_[static_cast<size_t>(std::abs(id)) - 1];
    }
    const Word& inverse_image(int id) const {
        alpha.check_letter(id);
        return inv_[static_cast<size_t>(std::abs(id)) - 1];
    }
    const std::vector<Word>& fwd_table() const { return fwd_; }
    const std::vector<Word>& inv_table() const { return inv_; }

    Word apply(const Word& w) const { return apply_table(fwd_, w); }
    Word apply_inverse(const Word& w) const { return apply_table(inv_, w); }

    bool is_identity() const {
        for (int id = 1; id <= alpha.size(); ++id)
            if (fwd_[static_cast<size_t>(id) - 1] != Word{id}) return false;
        return true;
    }

    bool operator==(const FreeGroupAut& o) const { return alpha == o.alpha && fwd_ == o.fwd_; }

   private:
    std::vector<Word> fwd_, inv_;

    static Word apply_table(const std::vector<Word>& table, const Word& w) {
        Word out;
        for (int l : w) {
            const Word& img = table[static_cast<size_t>(std::abs(l)) - 1];
            if (l > 0)
                for (int m : img) append_reduced(out, m);
            else
                for (auto it = img.rbegin(); it != img.rend(); ++it) append_reduced(out, -*it);
        }
        return out;
    }
};

inline Word apply_aut(const FreeGroupAut& h, const Word& w) { return h.apply(w); }

// (g . h)(w) = g(h(w))
inline FreeGroupAut compose(const FreeGroupAut& g, const FreeGroupAut& h) {
    if (!(g.alpha == h.alpha)) throw NotAnAutomorphism("compose: alphabet mismatch");
    std::vector<Word> fwd, inv;
    for (int id = 1; id <= g.alpha.size(); ++id) {
        fwd.push_back(g.apply(h.image(id)));
        inv.push_back(h.apply_inverse(g.inverse_image(id)));
    }
    return FreeGroupAut(g.alpha, fwd, inv);
}

inline FreeGroupAut inverse(const FreeGroupAut& h) {
    return FreeGroupAut(h.alpha, h.inv_table(), h.fwd_table());
}

// h1 h2 h1^-1 h2^-1
inline FreeGroupAut aut_commutator(const FreeGroupAut& h1, const FreeGroupAut& h2) {
    return compose(compose(h1, h2), compose(inverse(h1), inverse(h2)));
}

inline FreeGroupAut aut_conjugate(const FreeGroupAut& f, const FreeGroupAut& h) {
    // f h f^-1
    return compose(compose(f, h), inverse(f));
}

// Image of w under the quotient map killing the x-generators (erase_x) or the
// y-generators; the result is a reduced word in the surviving letters.  The
// kernel of the quotient is the normal closure of the erased side, so w lies
// in that closure iff its image is empty.
inline Word erase_side(const AlphabetSpec& alpha, const Word& w, bool erase_x) {
    Word out;
    for (int l : w) {
        alpha.check_letter(l);
        if (alpha.is_x(l) == erase_x) continue;
        append_reduced(out, l);
    }
    return out;
}

inline bool in_closure_x(const AlphabetSpec& alpha, const Word& w) {
    return erase_side(alpha, w, true).empty();
}

inline bool in_closure_y(const AlphabetSpec& alpha, const Word& w) {
    return erase_side(alpha, w, false).empty();
}

// conjugation by w: g -> w g w^-1
inline FreeGroupAut aut_inner(const AlphabetSpec& alpha, const Word& w) {
    Word c = reduce(alpha, w), ci = word_inv(c);
    std::vector<Word> fwd, inv;
    for (int id = 1; id <= alpha.size(); ++id) {
        fwd.push_back(word_conj(c, Word{id}));
        inv.push_back(word_conj(ci, Word{id}));
    }
    return FreeGroupAut(alpha, fwd, inv);
}

inline FreeGroupAut aut_pow(const FreeGroupAut& h, long e) {
    FreeGroupAut acc = FreeGroupAut::identity(h.alpha);
    FreeGroupAut base = e >= 0 ? h : inverse(h);
    for (long k = 0; k < std::labs(e); ++k) acc = compose(acc, base);
    return acc;
}

// boundary word of the genus-g surface with one boundary component
inline Word boundary_word(const AlphabetSpec& alpha) {
    int g = alpha.genus();
    Word out;
    for (int i = 1; i <= g; ++i) {
        Word f = commutator(Word{-alpha.x(i)}, Word{-alpha.y(i)});
        out = word_mul(out, f);
    }
    return out;
}

inline bool fixes_boundary(const FreeGroupAut& h) {
    Word b = boundary_word(h.alpha);
    return h.apply(b) == b;
}

}  // namespace bigrade
