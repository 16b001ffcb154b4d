// Shared test helpers: small constructors, and a self-contained model of
// random variable-free programs with its own evaluator and brute-force
// answer-set enumeration, used as an oracle independent of the library.
#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "aspf/cli.hpp"
#include "aspf/crsolver.hpp"
#include "aspf/grounder.hpp"
#include "aspf/parser.hpp"
#include "aspf/semantics.hpp"
#include "aspf/solver.hpp"

namespace testing {

inline aspf::GroundProgram groundText(const std::string& text, const aspf::GroundOptions& opts = {}) {
    return aspf::ground(aspf::parse(text), opts);
}

inline aspf::SeedSet seeds(const std::string& text) {
    aspf::SeedSet s;
    for (const auto& l : aspf::parseSeedLiterals(text)) {
        if (!s.insert(*aspf::toSeedLiteral(l))) throw std::runtime_error("inconsistent seed text: " + text);
    }
    return s;
}

inline std::set<std::string> modelTexts(const std::vector<aspf::SeedSet>& models) {
    std::set<std::string> out;
    for (const auto& m : models) out.insert(aspf::formatModel(m));
    return out;
}

inline std::string corpusPath(const std::string& name) { return std::string(ASPF_CORPUS_DIR) + "/" + name; }

inline std::string queensFacts(int n, bool withQueens) {
    std::string out;
    for (int i = 1; i <= n; ++i) {
        if (withQueens) out += "queen(" + std::to_string(i) + "). ";
        out += "dom(" + std::to_string(i) + ").\n";
    }
    return out;
}

/// Placements with queen q in column q and one row per queen: no shared row,
/// no shared diagonal. Enumerates all n^n row vectors.
inline int bruteForceQueens(int n) {
    std::vector<int> row(n, 0);
    int count = 0;
    for (;;) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) {
            for (int b = a + 1; b < n && ok; ++b) {
                if (row[a] == row[b] || std::abs(row[a] - row[b]) == b - a) ok = false;
            }
        }
        count += ok ? 1 : 0;
        int i = 0;
        while (i < n && ++row[i] == n) row[i++] = 0;
        if (i == n) return count;
    }
}

// ---------------------------------------------------------------------------
// Random variable-free programs over atoms p,q,r,s and terms f,g,h in 0..2.

namespace rnd {

inline const char* kAtoms[] = {"p", "q", "r", "s"};
inline const char* kTerms[] = {"f", "g", "h"};
constexpr int kAtomCount = 4;
constexpr int kTermCount = 3;
constexpr int kMaxValue = 2;

struct Expr {
    enum class Kind { Num, Term, Bin, Abs } kind = Kind::Num;
    int num = 0;
    int term = 0;
    char op = '+';
    std::shared_ptr<Expr> lhs, rhs;
};
using ExprPtr = std::shared_ptr<Expr>;

struct Lit {
    enum class Kind { Atom, Assign, Cmp } kind = Kind::Atom;
    int atom = 0;
    bool strongNeg = false;
    int term = 0;
    int value = 0;
    ExprPtr lhs, rhs;
    std::string op; // = != < <= > >=
};

struct Rule {
    std::optional<Lit> head; // nullopt: constraint
    std::vector<Lit> pos, neg;
};

struct Program {
    std::vector<Rule> rules;
};

/// Atom states: 0 absent, 1 true, 2 strongly negated. Term values: -1 undefined.
struct Interp {
    std::vector<int> atoms = std::vector<int>(kAtomCount, 0);
    std::vector<int> terms = std::vector<int>(kTermCount, -1);
    bool operator==(const Interp&) const = default;
};

inline std::string text(const ExprPtr& e, bool nested = false) {
    switch (e->kind) {
    case Expr::Kind::Num: return std::to_string(e->num);
    case Expr::Kind::Term: return kTerms[e->term];
    case Expr::Kind::Abs: return "|" + text(e->lhs) + "|";
    case Expr::Kind::Bin: {
        const std::string s = text(e->lhs, true) + " " + e->op + " " + text(e->rhs, true);
        return nested ? "(" + s + ")" : s;
    }
    }
    return "";
}

inline std::string text(const Lit& l) {
    switch (l.kind) {
    case Lit::Kind::Atom: return std::string(l.strongNeg ? "-" : "") + kAtoms[l.atom];
    case Lit::Kind::Assign: return std::string(kTerms[l.term]) + " = " + std::to_string(l.value);
    case Lit::Kind::Cmp:
        // `f = g` would read g as a symbolic constant; compare the difference instead.
        if ((l.op == "=" || l.op == "!=") && l.rhs->kind == Expr::Kind::Term) {
            return "(" + text(l.lhs) + ") - " + kTerms[l.rhs->term] + " " + l.op + " 0";
        }
        return text(l.lhs) + " " + l.op + " " + text(l.rhs);
    }
    return "";
}

inline std::string text(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) {
        std::vector<std::string> body;
        for (const auto& l : r.pos) body.push_back(text(l));
        for (const auto& l : r.neg) body.push_back("not " + text(l));
        std::string b;
        for (std::size_t i = 0; i < body.size(); ++i) b += (i ? ", " : "") + body[i];
        if (!r.head) out += ":- " + b + ".\n";
        else if (b.empty()) out += text(*r.head) + ".\n";
        else out += text(*r.head) + " :- " + b + ".\n";
    }
    return out;
}

inline std::optional<long> eval(const ExprPtr& e, const Interp& s) {
    switch (e->kind) {
    case Expr::Kind::Num: return e->num;
    case Expr::Kind::Term:
        if (s.terms[e->term] < 0) return std::nullopt;
        return s.terms[e->term];
    case Expr::Kind::Abs: {
        auto v = eval(e->lhs, s);
        if (!v) return std::nullopt;
        return *v < 0 ? -*v : *v;
    }
    case Expr::Kind::Bin: break;
    }
    auto a = eval(e->lhs, s);
    auto b = eval(e->rhs, s);
    if (!a || !b) return std::nullopt;
    switch (e->op) {
    case '+': return *a + *b;
    case '-': return *a - *b;
    case '*': return *a * *b;
    default:
        if (*b == 0) return std::nullopt;
        return *a / *b; // C++ division truncates toward zero
    }
}

inline bool holds(const Lit& l, const Interp& s) {
    switch (l.kind) {
    case Lit::Kind::Atom: return s.atoms[l.atom] == (l.strongNeg ? 2 : 1);
    case Lit::Kind::Assign: return s.terms[l.term] == l.value;
    case Lit::Kind::Cmp: break;
    }
    auto a = eval(l.lhs, s);
    auto b = eval(l.rhs, s);
    if (!a || !b) return false;
    if (l.op == "=") return *a == *b;
    if (l.op == "!=") return *a != *b;
    if (l.op == "<") return *a < *b;
    if (l.op == "<=") return *a <= *b;
    if (l.op == ">") return *a > *b;
    return *a >= *b;
}

/// false on a clash with what is already there.
inline bool add(Interp& s, const Lit& head) {
    if (head.kind == Lit::Kind::Atom) {
        const int want = head.strongNeg ? 2 : 1;
        if (s.atoms[head.atom] != 0 && s.atoms[head.atom] != want) return false;
        s.atoms[head.atom] = want;
        return true;
    }
    if (s.terms[head.term] >= 0 && s.terms[head.term] != head.value) return false;
    s.terms[head.term] = head.value;
    return true;
}

/// Least model of the rules whose negative part holds in `s`, as a fresh
/// fixpoint; nullopt when it is inconsistent or fires a constraint.
inline std::optional<Interp> leastModelOfReduct(const Program& p, const Interp& s) {
    std::vector<const Rule*> reduct;
    for (const auto& r : p.rules) {
        if (std::none_of(r.neg.begin(), r.neg.end(), [&](const Lit& l) { return holds(l, s); })) reduct.push_back(&r);
    }
    Interp m;
    for (bool changed = true; changed;) {
        changed = false;
        for (const Rule* r : reduct) {
            if (!std::all_of(r->pos.begin(), r->pos.end(), [&](const Lit& l) { return holds(l, m); })) continue;
            if (!r->head) return std::nullopt;
            Interp before = m;
            if (!add(m, *r->head)) return std::nullopt;
            if (!(before == m)) changed = true;
        }
    }
    return m;
}

inline std::string modelText(const Interp& s) {
    std::vector<std::string> parts;
    for (int a = 0; a < kAtomCount; ++a) {
        if (s.atoms[a] == 1) parts.push_back(kAtoms[a]);
        if (s.atoms[a] == 2) parts.push_back(std::string("-") + kAtoms[a]);
    }
    for (int t = 0; t < kTermCount; ++t) {
        if (s.terms[t] >= 0) parts.push_back(std::string(kTerms[t]) + "=" + std::to_string(s.terms[t]));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& x : parts) out += (out.empty() ? "" : " ") + x;
    return out;
}

/// Every interpretation over the whole vocabulary, kept when it reproduces
/// itself as the least model of its reduct.
inline std::set<std::string> bruteForceAnswerSets(const Program& p) {
    std::set<std::string> out;
    Interp s;
    const int atomStates = 1 * 3 * 3 * 3 * 3;
    const int termStates = (kMaxValue + 2) * (kMaxValue + 2) * (kMaxValue + 2);
    for (int a = 0; a < atomStates; ++a) {
        for (int i = 0, x = a; i < kAtomCount; ++i, x /= 3) s.atoms[i] = x % 3;
        for (int t = 0; t < termStates; ++t) {
            for (int i = 0, x = t; i < kTermCount; ++i, x /= kMaxValue + 2) s.terms[i] = x % (kMaxValue + 2) - 1;
            auto m = leastModelOfReduct(p, s);
            if (m && *m == s) out.insert(modelText(s));
        }
    }
    return out;
}

inline bool subsetOf(const Interp& a, const Interp& b) {
    for (int i = 0; i < kAtomCount; ++i) {
        if (a.atoms[i] != 0 && a.atoms[i] != b.atoms[i]) return false;
    }
    for (int i = 0; i < kTermCount; ++i) {
        if (a.terms[i] >= 0 && a.terms[i] != b.terms[i]) return false;
    }
    return true;
}

/// For positive programs: consistent sets closed under every rule (no
/// constraint body satisfied) that have no closed proper subset.
inline std::set<std::string> bruteForceMinimalClosed(const Program& p) {
    std::vector<Interp> closed;
    Interp s;
    const int termStates = (kMaxValue + 2) * (kMaxValue + 2) * (kMaxValue + 2);
    for (int a = 0; a < 81; ++a) {
        for (int i = 0, x = a; i < kAtomCount; ++i, x /= 3) s.atoms[i] = x % 3;
        for (int t = 0; t < termStates; ++t) {
            for (int i = 0, x = t; i < kTermCount; ++i, x /= kMaxValue + 2) s.terms[i] = x % (kMaxValue + 2) - 1;
            const bool isClosed = std::all_of(p.rules.begin(), p.rules.end(), [&](const Rule& r) {
                if (!std::all_of(r.pos.begin(), r.pos.end(), [&](const Lit& l) { return holds(l, s); })) return true;
                return r.head && holds(*r.head, s);
            });
            if (isClosed) closed.push_back(s);
        }
    }
    std::set<std::string> out;
    for (const auto& c : closed) {
        const bool minimal = std::none_of(closed.begin(), closed.end(),
                                          [&](const Interp& o) { return !(o == c) && subsetOf(o, c); });
        if (minimal) out.insert(modelText(c));
    }
    return out;
}

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    /// At most `maxHeads` distinct head literals and `maxRules` rules.
    Program program(int maxHeads = 10, int maxRules = 12, bool positive = false, bool constraints = true) {
        std::vector<Lit> heads;
        const int headCount = uniform(1, maxHeads);
        while (static_cast<int>(heads.size()) < headCount) {
            heads.push_back(seedLit());
            // A second value for the same term lets defaults compete.
            if (heads.back().kind == Lit::Kind::Assign && static_cast<int>(heads.size()) < headCount && chance(50)) {
                Lit alt = heads.back();
                alt.value = (alt.value + uniform(1, kMaxValue)) % (kMaxValue + 1);
                heads.push_back(alt);
            }
        }
        Program p;
        const int ruleCount = uniform(1, maxRules);
        for (int i = 0; i < ruleCount; ++i) {
            Rule r;
            if (!(constraints && chance(10))) r.head = heads[uniform(0, headCount - 1)];
            const int posCount = uniform(r.head ? 0 : 1, positive ? 2 : 1);
            for (int k = 0; k < posCount; ++k) r.pos.push_back(bodyLit(heads));
            if (!positive) {
                const int negCount = uniform(0, 2);
                for (int k = 0; k < negCount; ++k) r.neg.push_back(bodyLit(heads));
                // Defaults such as `f = 1 :- not f != 1` give programs with several answer sets.
                if (r.head && r.head->kind == Lit::Kind::Assign && chance(80)) r.neg.push_back(otherValue(*r.head));
                if (r.head && r.head->kind == Lit::Kind::Atom && chance(50)) r.neg.push_back(heads[uniform(0, headCount - 1)]);
            }
            p.rules.push_back(std::move(r));
        }
        return p;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(int percent) { return uniform(1, 100) <= percent; }

    Lit seedLit() {
        Lit l;
        if (chance(50)) {
            l.kind = Lit::Kind::Atom;
            l.atom = uniform(0, kAtomCount - 1);
            l.strongNeg = chance(25);
        } else {
            l.kind = Lit::Kind::Assign;
            l.term = uniform(0, kTermCount - 1);
            l.value = uniform(0, kMaxValue);
        }
        return l;
    }

    ExprPtr expr(int depth) {
        auto e = std::make_shared<Expr>();
        const int pick = depth == 0 ? uniform(0, 1) : uniform(0, 3);
        if (pick == 0) {
            e->kind = Expr::Kind::Num;
            e->num = uniform(0, 3);
        } else if (pick == 1) {
            e->kind = Expr::Kind::Term;
            e->term = uniform(0, kTermCount - 1);
        } else if (pick == 2) {
            e->kind = Expr::Kind::Abs;
            e->lhs = std::make_shared<Expr>();
            e->lhs->kind = Expr::Kind::Bin;
            e->lhs->op = '-';
            e->lhs->lhs = expr(0);
            e->lhs->rhs = expr(0);
        } else {
            e->kind = Expr::Kind::Bin;
            e->op = "+-*/"[uniform(0, 3)];
            e->lhs = expr(depth - 1);
            e->rhs = expr(depth - 1);
            // A constant divisor could fold to zero, which is a grounding error.
            if (e->op == '/') {
                e->rhs = std::make_shared<Expr>();
                e->rhs->kind = Expr::Kind::Term;
                e->rhs->term = uniform(0, kTermCount - 1);
            }
        }
        return e;
    }

    Lit otherValue(const Lit& head) {
        Lit l;
        l.kind = Lit::Kind::Cmp;
        l.op = "!=";
        l.lhs = std::make_shared<Expr>();
        l.lhs->kind = Expr::Kind::Term;
        l.lhs->term = head.term;
        l.rhs = std::make_shared<Expr>();
        l.rhs->kind = Expr::Kind::Num;
        l.rhs->num = head.value;
        return l;
    }

    // Body seed literals favour head literals so that rules can fire.
    Lit bodyLit(const std::vector<Lit>& heads) {
        if (chance(60)) return chance(60) ? heads[uniform(0, static_cast<int>(heads.size()) - 1)] : seedLit();
        Lit l;
        l.kind = Lit::Kind::Cmp;
        static const char* ops[] = {"=", "!=", "<", "<=", ">", ">="};
        l.op = ops[uniform(0, 5)];
        // Keep at least one simple term so the literal is dependent.
        l.lhs = expr(1);
        if (l.lhs->kind == Expr::Kind::Num) {
            l.lhs->kind = Expr::Kind::Term;
            l.lhs->term = uniform(0, kTermCount - 1);
        }
        l.rhs = expr(1);
        return l;
    }

    std::mt19937_64 rng_;
};

} // namespace rnd

} // namespace testing
