#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

#include "common.hpp"

namespace bigrade {

// ---------------------------------------------------------------------------
// Ordinals below epsilon_0 in Cantor normal form.
// terms = [(exponent, coefficient), ...] with strictly decreasing exponents,
// coefficients >= 1. Empty term list encodes 0. The finite part is the term
// with exponent 0.
// ---------------------------------------------------------------------------

class OrdinalCNF {
   public:
    struct Term;
    std::vector<Term> terms;

    OrdinalCNF() = default;
    static OrdinalCNF finite(const Int& n);
    static OrdinalCNF omega();  // w

    bool is_zero() const { return terms.empty(); }
    bool operator==(const OrdinalCNF& o) const;
    bool operator<(const OrdinalCNF& o) const;
    bool operator<=(const OrdinalCNF& o) const { return *this == o || *this < o; }

    void validate() const;  // throws InvalidIndex on CNF violations
    std::string str() const;
};

struct OrdinalCNF::Term {
    OrdinalCNF exp;
    Int coeff;
};

inline OrdinalCNF OrdinalCNF::finite(const Int& n) {
    if (n < 0) throw InvalidIndex("ordinal finite part must be nonnegative");
    OrdinalCNF o;
    if (n > 0) o.terms.push_back({OrdinalCNF{}, n});
    return o;
}

inline OrdinalCNF OrdinalCNF::omega() {
    OrdinalCNF o;
    o.terms.push_back({finite(1), 1});
    return o;
}

inline bool OrdinalCNF::operator==(const OrdinalCNF& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (size_t i = 0; i < terms.size(); ++i)
        if (!(terms[i].exp == o.terms[i].exp) || terms[i].coeff != o.terms[i].coeff) return false;
    return true;
}

inline bool OrdinalCNF::operator<(const OrdinalCNF& o) const {
    // leading terms dominate
    size_t n = std::min(terms.size(), o.terms.size());
    for (size_t i = 0; i < n; ++i) {
        const Term& s = terms[i];
        const Term& t = o.terms[i];
        if (!(s.exp == t.exp)) return s.exp < t.exp;
        if (s.coeff != t.coeff) return s.coeff < t.coeff;
    }
    return terms.size() < o.terms.size();
}

inline void OrdinalCNF::validate() const {
    for (size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff < 1) throw InvalidIndex("ordinal coefficient must be >= 1");
        terms[i].exp.validate();
        if (i + 1 < terms.size() && !(terms[i + 1].exp < terms[i].exp))
            throw InvalidIndex("ordinal exponents must strictly decrease");
    }
}

// Natural (Hessenberg) sum: merge terms with equal exponents, adding coefficients.
inline OrdinalCNF hessenberg_sum(const OrdinalCNF& a, const OrdinalCNF& b) {
    OrdinalCNF out;
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (i == a.terms.size()) {
            out.terms.push_back(b.terms[j++]);
        } else if (j == b.terms.size()) {
            out.terms.push_back(a.terms[i++]);
        } else if (a.terms[i].exp == b.terms[j].exp) {
            out.terms.push_back({a.terms[i].exp, a.terms[i].coeff + b.terms[j].coeff});
            ++i, ++j;
        } else if (b.terms[j].exp < a.terms[i].exp) {
            out.terms.push_back(a.terms[i++]);
        } else {
            out.terms.push_back(b.terms[j++]);
        }
    }
    return out;
}

inline std::string OrdinalCNF::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms) {
        if (!first) os << " + ";
        first = false;
        if (t.exp.is_zero()) {
            os << t.coeff;
            continue;
        }
        os << "w";
        bool exp_is_one = t.exp.terms.size() == 1 && t.exp.terms[0].exp.is_zero() && t.exp.terms[0].coeff == 1;
        if (!exp_is_one) {
            bool exp_finite = t.exp.terms.size() == 1 && t.exp.terms[0].exp.is_zero();
            if (exp_finite)
                os << "^" << t.exp.terms[0].coeff;
            else
                os << "^(" << t.exp.str() << ")";
        }
        os << "*" << t.coeff;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Ordinal text syntax: "w^2*3 + w*1 + 5", exponents numeric or parenthesized
// ordinals, terms in strictly decreasing exponent order.
// ---------------------------------------------------------------------------

namespace detail {

class OrdinalParser {
   public:
    explicit OrdinalParser(const std::string& s) : s_(s) {}

    OrdinalCNF parse() {
        OrdinalCNF o = parse_ordinal();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("ordinal: trailing input at position " + std::to_string(pos_));
        return o;
    }

   private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Int parse_number() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("ordinal: expected number at position " + std::to_string(start));
        return Int(s_.substr(start, pos_ - start));
    }

    OrdinalCNF parse_ordinal() {
        OrdinalCNF o;
        do {
            OrdinalCNF::Term t = parse_term();
            if (t.exp.is_zero() && t.coeff == 0) {
                if (!o.terms.empty()) throw ParseError("ordinal: '+ 0' is not canonical");
                break;  // bare literal 0
            }
            o.terms.push_back(t);
        } while (eat('+'));
        // canonical form required
        try {
            o.validate();
        } catch (const InvalidIndex& e) {
            throw ParseError(std::string("ordinal: not in Cantor normal form: ") + e.what());
        }
        return o;
    }

    OrdinalCNF::Term parse_term() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == 'w') {
            ++pos_;
            OrdinalCNF exp = OrdinalCNF::finite(1);
            if (eat('^')) {
                skip_ws();
                if (eat('(')) {
                    exp = parse_ordinal();
                    if (!eat(')')) throw ParseError("ordinal: expected ')'");
                } else if (pos_ < s_.size() && s_[pos_] == 'w') {
                    ++pos_;
                    exp = OrdinalCNF::omega();
                } else {
                    exp = OrdinalCNF::finite(parse_number());
                }
            }
            Int coeff = 1;
            if (eat('*')) coeff = parse_number();
            return {exp, coeff};
        }
        return {OrdinalCNF{}, parse_number()};
    }
};

}  // namespace detail

inline OrdinalCNF parse_ordinal(const std::string& s) { return detail::OrdinalParser(s).parse(); }

// ---------------------------------------------------------------------------
// Grade indices and monoid instances.
// ---------------------------------------------------------------------------

struct GradeIndex {
    enum class Kind { Nat, Pair, Ord };
    Kind kind = Kind::Nat;
    long a = 0, b = 0;  // Nat uses a; Pair uses (a,b)
    OrdinalCNF ord;

    static GradeIndex nat(long n) { return GradeIndex{Kind::Nat, n, 0, {}}; }
    static GradeIndex pair(long m, long n) { return GradeIndex{Kind::Pair, m, n, {}}; }
    static GradeIndex ordinal(OrdinalCNF o) { return GradeIndex{Kind::Ord, 0, 0, std::move(o)}; }

    bool operator==(const GradeIndex& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case Kind::Nat: return a == o.a;
            case Kind::Pair: return a == o.a && b == o.b;
            case Kind::Ord: return ord == o.ord;
        }
        return false;
    }

    std::string str() const {
        switch (kind) {
            case Kind::Nat: return std::to_string(a);
            case Kind::Pair: return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            case Kind::Ord: return ord.str();
        }
        return "";
    }
};

enum class OrderVerdict { LE, GE, EQ, Incomparable };

inline std::string to_string(OrderVerdict v) {
    switch (v) {
        case OrderVerdict::LE: return "LE";
        case OrderVerdict::GE: return "GE";
        case OrderVerdict::EQ: return "EQ";
        case OrderVerdict::Incomparable: return "Incomparable";
    }
    return "";
}

struct MonoidInstance {
    enum class Kind { N, N2_usual, N2_lex, N2_total, Weighted_N, Ordinal, Z_test };
    Kind kind = Kind::N;
    long weight_x = 1, weight_y = 1;  // Weighted_N: weights per symbol class

    static MonoidInstance nat() { return {Kind::N, 1, 1}; }
    static MonoidInstance n2_usual() { return {Kind::N2_usual, 1, 1}; }
    static MonoidInstance n2_lex() { return {Kind::N2_lex, 1, 1}; }
    static MonoidInstance n2_total() { return {Kind::N2_total, 1, 1}; }
    static MonoidInstance weighted(long wx, long wy) { return {Kind::Weighted_N, wx, wy}; }
    static MonoidInstance ordinal() { return {Kind::Ordinal, 1, 1}; }
    // Z_test deliberately violates the good-order axioms (negatives allowed);
    // it exists only so the axiom checker has something to flag.
    static MonoidInstance z_test() { return {Kind::Z_test, 1, 1}; }

    static MonoidInstance by_name(const std::string& name) {
        if (name == "N" || name == "n") return nat();
        if (name == "N2" || name == "N2_usual" || name == "n2-usual") return n2_usual();
        if (name == "N2_lex" || name == "n2-lex") return n2_lex();
        if (name == "N2_total" || name == "n2-total") return n2_total();
        if (name == "ordinal") return ordinal();
        if (name == "Z_test" || name == "z-test") return z_test();
        throw ParseError("unknown monoid instance: " + name);
    }

    bool pair_kind() const {
        return kind == Kind::N2_usual || kind == Kind::N2_lex || kind == Kind::N2_total;
    }

    void check_valid(const GradeIndex& g) const {
        switch (kind) {
            case Kind::N:
            case Kind::Weighted_N:
                if (g.kind != GradeIndex::Kind::Nat) throw InvalidIndex("expected Nat index");
                if (g.a < 0) throw InvalidIndex("negative Nat index");
                return;
            case Kind::Z_test:
                if (g.kind != GradeIndex::Kind::Nat) throw InvalidIndex("expected Nat index");
                return;  // negatives deliberately allowed
            case Kind::N2_usual:
            case Kind::N2_lex:
            case Kind::N2_total:
                if (g.kind != GradeIndex::Kind::Pair) throw InvalidIndex("expected Pair index");
                if (g.a < 0 || g.b < 0) throw InvalidIndex("negative Pair component");
                return;
            case Kind::Ordinal:
                if (g.kind != GradeIndex::Kind::Ord) throw InvalidIndex("expected Ordinal index");
                g.ord.validate();
                return;
        }
    }

    GradeIndex zero() const {
        if (pair_kind()) return GradeIndex::pair(0, 0);
        if (kind == Kind::Ordinal) return GradeIndex::ordinal({});
        return GradeIndex::nat(0);
    }
};

inline GradeIndex monoid_add(const MonoidInstance& inst, const GradeIndex& x, const GradeIndex& y) {
    inst.check_valid(x);
    inst.check_valid(y);
    switch (inst.kind) {
        case MonoidInstance::Kind::N:
        case MonoidInstance::Kind::Weighted_N:
        case MonoidInstance::Kind::Z_test: return GradeIndex::nat(x.a + y.a);
        case MonoidInstance::Kind::N2_usual:
        case MonoidInstance::Kind::N2_lex:
        case MonoidInstance::Kind::N2_total: return GradeIndex::pair(x.a + y.a, x.b + y.b);
        case MonoidInstance::Kind::Ordinal: return GradeIndex::ordinal(hessenberg_sum(x.ord, y.ord));
    }
    throw InvalidIndex("bad monoid kind");
}

inline OrderVerdict monoid_leq(const MonoidInstance& inst, const GradeIndex& x, const GradeIndex& y) {
    inst.check_valid(x);
    inst.check_valid(y);
    auto of_ints = [](long p, long q) {
        if (p == q) return OrderVerdict::EQ;
        return p < q ? OrderVerdict::LE : OrderVerdict::GE;
    };
    switch (inst.kind) {
        case MonoidInstance::Kind::N:
        case MonoidInstance::Kind::Weighted_N:
        case MonoidInstance::Kind::Z_test: return of_ints(x.a, y.a);
        case MonoidInstance::Kind::N2_usual: {
            if (x.a == y.a && x.b == y.b) return OrderVerdict::EQ;
            if (x.a <= y.a && x.b <= y.b) return OrderVerdict::LE;
            if (x.a >= y.a && x.b >= y.b) return OrderVerdict::GE;
            return OrderVerdict::Incomparable;
        }
        case MonoidInstance::Kind::N2_lex: {
            if (x.a != y.a) return of_ints(x.a, y.a);
            return of_ints(x.b, y.b);
        }
        case MonoidInstance::Kind::N2_total: {
            // equal, or compare total degree; distinct pairs of equal total are incomparable
            if (x.a == y.a && x.b == y.b) return OrderVerdict::EQ;
            if (x.a + x.b == y.a + y.b) return OrderVerdict::Incomparable;
            return of_ints(x.a + x.b, y.a + y.b);
        }
        case MonoidInstance::Kind::Ordinal: {
            if (x.ord == y.ord) return OrderVerdict::EQ;
            return x.ord < y.ord ? OrderVerdict::LE : OrderVerdict::GE;
        }
    }
    throw InvalidIndex("bad monoid kind");
}

inline bool monoid_le(const MonoidInstance& inst, const GradeIndex& x, const GradeIndex& y) {
    OrderVerdict v = monoid_leq(inst, x, y);
    return v == OrderVerdict::LE || v == OrderVerdict::EQ;
}

// ---------------------------------------------------------------------------
// Good-order axiom checker. Violations are report entries, not exceptions.
// ---------------------------------------------------------------------------

struct AxiomReport {
    std::vector<std::string> violations;
    bool good() const { return violations.empty(); }
};

inline AxiomReport check_good_axioms(const MonoidInstance& inst, const std::vector<GradeIndex>& sample) {
    AxiomReport rep;
    if (sample.empty()) throw InvalidIndex("check_good_axioms: empty sample");
    GradeIndex zero = inst.zero();
    auto le = [&](const GradeIndex& x, const GradeIndex& y) { return monoid_le(inst, x, y); };
    auto lt = [&](const GradeIndex& x, const GradeIndex& y) {
        return monoid_leq(inst, x, y) == OrderVerdict::LE;
    };
    size_t cap = 64;  // keep reports readable
    auto note = [&](const std::string& s) {
        if (rep.violations.size() < cap) rep.violations.push_back(s);
    };

    for (const GradeIndex& x : sample) {
        if (!le(zero, x)) note("0 <= " + x.str() + " fails");
        if (!le(x, x)) note("reflexivity fails at " + x.str());
    }
    for (const GradeIndex& x : sample) {
        for (const GradeIndex& y : sample) {
            if (le(x, y) && le(y, x) && !(monoid_leq(inst, x, y) == OrderVerdict::EQ))
                note("antisymmetry fails at " + x.str() + ", " + y.str());
            if (!(monoid_add(inst, x, y) == monoid_add(inst, y, x)))
                note("commutativity fails at " + x.str() + ", " + y.str());
            for (const GradeIndex& z : sample) {
                if (le(x, y) && le(y, z) && !le(x, z))
                    note("transitivity fails at " + x.str() + ", " + y.str() + ", " + z.str());
                if (!(monoid_add(inst, monoid_add(inst, x, y), z) ==
                      monoid_add(inst, x, monoid_add(inst, y, z))))
                    note("associativity fails at " + x.str() + ", " + y.str() + ", " + z.str());
                if (lt(x, y) && !lt(monoid_add(inst, x, z), monoid_add(inst, y, z)))
                    note("strict translation-invariance fails: " + x.str() + " < " + y.str() +
                         " but not after adding " + z.str());
                if (le(x, y) && !le(monoid_add(inst, x, z), monoid_add(inst, y, z)))
                    note("translation-invariance fails: " + x.str() + " <= " + y.str() +
                         " but not after adding " + z.str());
            }
        }
    }
    return rep;
}

// Default sample sets at desk scale.
inline std::vector<GradeIndex> default_sample(const MonoidInstance& inst, long limit = 3) {
    std::vector<GradeIndex> out;
    switch (inst.kind) {
        case MonoidInstance::Kind::N:
        case MonoidInstance::Kind::Weighted_N:
            for (long i = 0; i <= limit + 2; ++i) out.push_back(GradeIndex::nat(i));
            break;
        case MonoidInstance::Kind::Z_test:
            for (long i = -limit; i <= limit; ++i) out.push_back(GradeIndex::nat(i));
            break;
        case MonoidInstance::Kind::N2_usual:
        case MonoidInstance::Kind::N2_lex:
        case MonoidInstance::Kind::N2_total:
            for (long i = 0; i <= limit; ++i)
                for (long j = 0; j <= limit; ++j) out.push_back(GradeIndex::pair(i, j));
            break;
        case MonoidInstance::Kind::Ordinal: {
            std::vector<std::string> reps = {"0", "1", "3", "w*1", "w*1 + 2", "w*2", "w^2*1", "w^2*1 + w*1 + 1"};
            for (const auto& r : reps) out.push_back(GradeIndex::ordinal(parse_ordinal(r)));
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Extended bidegrees (m,n >= -1) for filtration levels; clamped at
// construction. Not a monoid element.
// ---------------------------------------------------------------------------

struct ExtPair {
    int m = 0, n = 0;

    ExtPair() = default;
    ExtPair(int mm, int nn) : m(std::max(-1, mm)), n(std::max(-1, nn)) {}

    bool interior() const { return m >= 0 && n >= 0; }
    // index clamped into N^2 for membership targets: K_{m,n} with m,n < 0 read as 0
    int cm() const { return std::max(0, m); }
    int cn() const { return std::max(0, n); }
    int total() const { return cm() + cn(); }

    bool operator==(const ExtPair& o) const { return m == o.m && n == o.n; }
    bool operator<(const ExtPair& o) const { return m != o.m ? m < o.m : n < o.n; }

    std::string str() const { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }
};

}  // namespace bigrade
