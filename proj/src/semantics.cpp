#include "aspf/semantics.hpp"

#include <algorithm>
#include <stdexcept>

namespace aspf {

SeedLiteral SeedLiteral::atom(GroundName name, bool strongNegation) {
    SeedLiteral s;
    s.kind = Kind::Atom;
    s.name = std::move(name);
    s.strongNegation = strongNegation;
    return s;
}

SeedLiteral SeedLiteral::assign(GroundName term, Constant value) {
    SeedLiteral s;
    s.kind = Kind::Value;
    s.name = std::move(term);
    s.value = std::move(value);
    return s;
}

std::string SeedLiteral::toString() const {
    if (kind == Kind::Atom) return (strongNegation ? "-" : "") + name.toString();
    return name.toString() + "=" + value.toString();
}

std::strong_ordering SeedLiteral::operator<=>(const SeedLiteral& o) const {
    if (auto c = kind <=> o.kind; c != 0) return c;
    if (auto c = name <=> o.name; c != 0) return c;
    if (kind == Kind::Atom) return strongNegation <=> o.strongNegation;
    return value <=> o.value;
}

namespace {

GroundName groundName(const std::string& name, const std::vector<Term>& args) {
    GroundName g{name, {}};
    for (const auto& a : args) {
        if (a.kind != Term::Kind::Constant) throw EvalError("non-ground argument " + a.toString() + " of " + name);
        g.args.push_back(a.value);
    }
    return g;
}

} // namespace

std::optional<SeedLiteral> toSeedLiteral(const Literal& l) {
    if (l.isRegular()) {
        const auto& r = l.regular();
        return SeedLiteral::atom(groundName(r.atom.predicate, r.atom.args), r.strongNegation);
    }
    if (classify(l) != LiteralClass::Seed) return std::nullopt;
    const auto& t = l.tatom();
    return SeedLiteral::assign(groundName(t.lhs.name, t.lhs.args), t.rhs.value);
}

Literal toLiteral(const SeedLiteral& s) {
    std::vector<Term> args;
    for (const auto& a : s.name.args) args.push_back(Term::constant(a));
    if (s.kind == SeedLiteral::Kind::Atom) return Literal::atom(s.name.name, std::move(args), s.strongNegation);
    return Literal::tatom(Term::function(s.name.name, std::move(args)), CmpOp::Eq, Term::constant(s.value));
}

// ---------------------------------------------------------------------------
// SeedSet

bool SeedSet::insert(const SeedLiteral& l) {
    if (l.kind == SeedLiteral::Kind::Atom) {
        auto [it, fresh] = atoms_.try_emplace(l.name, l.strongNegation);
        return fresh || it->second == l.strongNegation;
    }
    auto [it, fresh] = values_.try_emplace(l.name, l.value);
    return fresh || it->second == l.value;
}

bool SeedSet::contains(const SeedLiteral& l) const {
    if (l.kind == SeedLiteral::Kind::Atom) {
        auto it = atoms_.find(l.name);
        return it != atoms_.end() && it->second == l.strongNegation;
    }
    auto it = values_.find(l.name);
    return it != values_.end() && it->second == l.value;
}

bool SeedSet::containsBottom() const { return contains(SeedLiteral::atom(GroundName{kBottom, {}})); }

std::optional<Constant> SeedSet::valueOf(const GroundName& term) const {
    auto it = values_.find(term);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::vector<SeedLiteral> SeedSet::literals() const {
    std::vector<SeedLiteral> out;
    for (const auto& [name, neg] : atoms_) out.push_back(SeedLiteral::atom(name, neg));
    for (const auto& [name, v] : values_) out.push_back(SeedLiteral::assign(name, v));
    return out;
}

std::string SeedSet::toString() const {
    std::vector<std::string> texts;
    for (const auto& l : literals()) {
        if (!isReservedName(l.name.name)) texts.push_back(l.toString());
    }
    std::sort(texts.begin(), texts.end());
    std::string out;
    for (const auto& t : texts) {
        if (!out.empty()) out += " ";
        out += t;
    }
    return out;
}

bool SeedSet::operator<(const SeedSet& o) const {
    if (atoms_ != o.atoms_) return atoms_ < o.atoms_;
    return values_ < o.values_;
}

std::optional<SeedSet> tryInsert(const SeedSet& s, const SeedLiteral& l) {
    SeedSet out = s;
    if (!out.insert(l)) return std::nullopt;
    return out;
}

// ---------------------------------------------------------------------------
// Valuation and satisfaction

Value val(const Term& t, const SeedSet& s) {
    switch (t.kind) {
    case Term::Kind::Constant: return t.value;
    case Term::Kind::Function: return s.valueOf(groundName(t.name, t.args));
    case Term::Kind::Variable:
    case Term::Kind::Compound: throw EvalError("cannot evaluate non-ground term " + t.toString());
    case Term::Kind::Arith: break;
    }
    std::vector<Value> operands;
    for (const auto& a : t.args) operands.push_back(val(a, s));
    for (const auto& o : operands) {
        if (o && o->isSymbol()) throw EvalError("ill-sorted arithmetic over symbolic value " + o->toString());
    }
    for (const auto& o : operands) {
        if (!o) return std::nullopt;
    }
    const auto v = applyArith(t.op, operands[0]->intValue(), operands.size() > 1 ? operands[1]->intValue() : 0);
    if (!v) return std::nullopt;
    return Constant::integer(*v);
}

namespace {

bool compareValues(CmpOp op, const Constant& a, const Constant& b) {
    if (a.isInteger() && b.isInteger()) return compareIntegers(op, a.intValue(), b.intValue());
    if (op == CmpOp::Eq) return a == b;
    if (op == CmpOp::Ne) return a != b;
    throw EvalError("ordering comparison over symbolic values " + a.toString() + " and " + b.toString());
}

} // namespace

bool satisfies(const SeedSet& s, const Literal& l) {
    if (auto seed = toSeedLiteral(l)) return s.contains(*seed);
    const auto& t = l.tatom();
    const Value a = val(t.lhs, s);
    const Value b = val(t.rhs, s);
    if (!a || !b) return false;
    return compareValues(t.op, *a, *b);
}

bool satisfiesExtended(const SeedSet& s, const Literal& l, bool negated) {
    return negated ? !satisfies(s, l) : satisfies(s, l);
}

bool satisfiesBody(const SeedSet& s, const std::vector<Literal>& pos, const std::vector<Literal>& neg) {
    for (const auto& l : pos) {
        if (!satisfies(s, l)) return false;
    }
    for (const auto& l : neg) {
        if (satisfies(s, l)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Fixpoint and reduct

std::optional<SeedSet> positiveAnswerSet(std::span<const Rule> rules) {
    for (const auto& r : rules) {
        if (!r.neg.empty()) throw std::invalid_argument("positiveAnswerSet: rule with negative body: " + r.toString());
    }
    SeedSet s;
    std::vector<bool> fired(rules.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            if (fired[i] || !satisfiesBody(s, rules[i].pos, {})) continue;
            fired[i] = true;
            if (rules[i].isConstraint()) return std::nullopt;
            const auto head = toSeedLiteral(rules[i].head);
            if (!head) throw EvalError("rule head is not a seed literal: " + rules[i].toString());
            if (!s.insert(*head)) return std::nullopt;
            changed = true;
        }
    }
    return s;
}

std::vector<Rule> reduct(std::span<const Rule> rules, const SeedSet& s) {
    std::vector<Rule> out;
    for (const auto& r : rules) {
        if (!satisfiesBody(s, {}, r.neg)) continue;
        Rule red = r;
        red.neg.clear();
        out.push_back(std::move(red));
    }
    return out;
}

bool checksHold(const GroundProgram& g, const SeedSet& s) {
    for (const auto& c : g.checks) {
        if (!satisfiesBody(s, c.pos, c.neg)) continue;
        const auto count = std::count_if(c.candidates.begin(), c.candidates.end(),
                                         [&](const GroundName& a) { return s.contains(SeedLiteral::atom(a)); });
        if (count < c.lower) return false;
        if (c.upper && count > *c.upper) return false;
    }
    return true;
}

bool isAnswerSet(const GroundProgram& g, const SeedSet& s) {
    if (s.containsBottom()) return false;
    const auto red = reduct(g.rules, s);
    const auto fixpoint = positiveAnswerSet(red);
    return fixpoint && *fixpoint == s && checksHold(g, s);
}

} // namespace aspf
