#include "aspf/grounder.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

namespace aspf {

std::string toString(const Substitution& s) {
    std::string out;
    for (const auto& [var, value] : s) {
        if (!out.empty()) out += ",";
        out += var + "=" + value.toString();
    }
    return out;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

// ---------------------------------------------------------------------------
// Folding

Constant foldArith(const Term& t, const std::vector<Constant>& operands, SourceLocation loc) {
    for (const auto& c : operands) {
        if (!c.isInteger()) {
            throw GroundError("ill-sorted arithmetic over symbolic constant '" + c.toString() + "' in " + t.toString(),
                              loc);
        }
    }
    std::optional<std::int64_t> v;
    try {
        v = applyArith(t.op, operands[0].intValue(), operands.size() > 1 ? operands[1].intValue() : 0);
    } catch (const EvalError& e) {
        throw GroundError(e.what(), loc);
    }
    if (!v) throw GroundError("division by zero in " + t.toString(), loc);
    return Constant::integer(*v);
}

/// Applies `s` and folds every operation whose operands are all constants.
Term fold(const Term& t, const Substitution& s, SourceLocation loc) {
    switch (t.kind) {
    case Term::Kind::Constant: return t;
    case Term::Kind::Variable: {
        auto it = s.find(t.name);
        if (it == s.end()) throw GroundError("unbound variable " + t.name, loc);
        return Term::constant(it->second);
    }
    case Term::Kind::Compound: {
        std::vector<Constant> args;
        for (const auto& a : t.args) {
            Term f = fold(a, s, loc);
            if (f.kind != Term::Kind::Constant) throw GroundError("argument " + a.toString() + " is not a constant", loc);
            args.push_back(f.value);
        }
        return Term::constant(Constant::symbol(t.name, std::move(args)));
    }
    case Term::Kind::Function: {
        std::vector<Term> args;
        for (const auto& a : t.args) {
            Term f = fold(a, s, loc);
            if (f.kind != Term::Kind::Constant) throw GroundError("argument " + a.toString() + " is not a constant", loc);
            args.push_back(std::move(f));
        }
        return Term::function(t.name, std::move(args));
    }
    case Term::Kind::Arith: break;
    }
    std::vector<Term> operands;
    bool allConstant = true;
    for (const auto& a : t.args) {
        operands.push_back(fold(a, s, loc));
        allConstant = allConstant && operands.back().kind == Term::Kind::Constant;
    }
    if (!allConstant) return Term::arith(t.op, std::move(operands));
    std::vector<Constant> values;
    for (const auto& o : operands) values.push_back(o.value);
    return Term::constant(foldArith(t, values, loc));
}

Literal fold(const Literal& l, const Substitution& s, SourceLocation loc) {
    if (l.isRegular()) {
        const auto& r = l.regular();
        std::vector<Term> args;
        for (const auto& a : r.atom.args) {
            Term f = fold(a, s, loc);
            if (f.kind != Term::Kind::Constant) throw GroundError("argument " + a.toString() + " is not a constant", loc);
            args.push_back(std::move(f));
        }
        return Literal::atom(r.atom.predicate, std::move(args), r.strongNegation);
    }
    const auto& t = l.tatom();
    return Literal::tatom(fold(t.lhs, s, loc), t.op, fold(t.rhs, s, loc));
}

/// nullopt unless both sides are constants.
std::optional<bool> staticTruth(const Literal& l, SourceLocation loc) {
    if (!l.isTAtom()) return std::nullopt;
    const auto& t = l.tatom();
    if (t.lhs.kind != Term::Kind::Constant || t.rhs.kind != Term::Kind::Constant) return std::nullopt;
    const Constant& a = t.lhs.value;
    const Constant& b = t.rhs.value;
    if (a.isInteger() && b.isInteger()) return compareIntegers(t.op, a.intValue(), b.intValue());
    if (t.op == CmpOp::Eq) return a == b;
    if (t.op == CmpOp::Ne) return a != b;
    throw GroundError("ordering comparison over symbolic constants in " + l.toString(), loc);
}

GroundName groundNameOf(const std::string& name, const std::vector<Term>& args) {
    GroundName g{name, {}};
    for (const auto& a : args) g.args.push_back(a.value);
    return g;
}

// ---------------------------------------------------------------------------
// Domain literals

struct DomainKey {
    enum class Kind { Atom, NegatedAtom, Term };
    Kind kind = Kind::Atom;
    std::string name;
    std::size_t arity = 0;
    auto operator<=>(const DomainKey&) const = default;
};

/// A positive body literal that binds variables: a regular literal, or a seed
/// t-atom `f(args) = v` matched against derivable values of f.
struct DomainLiteral {
    DomainKey key;
    std::vector<const Term*> pattern; // argument terms (plus the value for t-atoms)
};

bool isDomainLiteral(const Literal& l) {
    if (l.isBottom()) return false;
    if (l.isRegular()) return true;
    const auto& t = l.tatom();
    return t.op == CmpOp::Eq && t.lhs.kind == Term::Kind::Function && !t.rhs.containsFunction();
}

DomainLiteral domainLiteral(const Literal& l) {
    DomainLiteral d;
    if (l.isRegular()) {
        const auto& r = l.regular();
        d.key = {r.strongNegation ? DomainKey::Kind::NegatedAtom : DomainKey::Kind::Atom, r.atom.predicate,
                 r.atom.args.size()};
        for (const auto& a : r.atom.args) d.pattern.push_back(&a);
    } else {
        const auto& t = l.tatom();
        d.key = {DomainKey::Kind::Term, t.lhs.name, t.lhs.args.size()};
        for (const auto& a : t.lhs.args) d.pattern.push_back(&a);
        d.pattern.push_back(&t.rhs);
    }
    return d;
}

/// Variables a pattern can bind: those not nested in arithmetic.
void bindableVariables(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::Variable) out.insert(t.name);
    if (t.kind == Term::Kind::Compound) {
        for (const auto& a : t.args) bindableVariables(a, out);
    }
}

bool ready(const Term& t, const Substitution& s) {
    if (t.kind == Term::Kind::Arith) {
        std::set<std::string> vars;
        t.collectVariables(vars);
        return std::all_of(vars.begin(), vars.end(), [&](const auto& v) { return s.count(v); });
    }
    return std::all_of(t.args.begin(), t.args.end(), [&](const Term& a) { return ready(a, s); });
}

bool unify(const Term& pat, const Constant& c, Substitution& s, SourceLocation loc) {
    switch (pat.kind) {
    case Term::Kind::Constant: return pat.value == c;
    case Term::Kind::Variable: {
        auto [it, fresh] = s.try_emplace(pat.name, c);
        return fresh || it->second == c;
    }
    case Term::Kind::Compound:
        if (!c.isSymbol() || c.name() != pat.name || c.args().size() != pat.args.size()) return false;
        for (std::size_t i = 0; i < pat.args.size(); ++i) {
            if (!unify(pat.args[i], c.args()[i], s, loc)) return false;
        }
        return true;
    case Term::Kind::Arith: {
        const Term f = fold(pat, s, loc);
        return f.kind == Term::Kind::Constant && f.value == c;
    }
    case Term::Kind::Function: return false;
    }
    return false;
}

struct Fact {
    std::vector<Constant> tuple;
    int round = 0;
};

/// Derivable atoms and seed values, tagged with the round that produced them.
class FactStore {
public:
    bool add(const DomainKey& key, std::vector<Constant> tuple, int round) {
        if (!seen_.insert({key, tuple}).second) return false;
        facts_[key].push_back({std::move(tuple), round});
        return true;
    }

    const std::vector<Fact>& get(const DomainKey& key) const {
        static const std::vector<Fact> none;
        auto it = facts_.find(key);
        return it == facts_.end() ? none : it->second;
    }

    bool addHead(const Literal& head, int round) {
        if (head.isBottom()) return false;
        if (head.isRegular()) {
            const auto& r = head.regular();
            std::vector<Constant> tuple;
            for (const auto& a : r.atom.args) tuple.push_back(a.value);
            const DomainKey key{r.strongNegation ? DomainKey::Kind::NegatedAtom : DomainKey::Kind::Atom,
                                r.atom.predicate, tuple.size()};
            return add(key, std::move(tuple), round);
        }
        const auto& t = head.tatom();
        std::vector<Constant> tuple;
        for (const auto& a : t.lhs.args) tuple.push_back(a.value);
        const std::size_t arity = tuple.size();
        tuple.push_back(t.rhs.value);
        return add({DomainKey::Kind::Term, t.lhs.name, arity}, std::move(tuple), round);
    }

private:
    std::map<DomainKey, std::vector<Fact>> facts_;
    std::set<std::pair<DomainKey, std::vector<Constant>>> seen_;
};

/// Which facts a join position may use. Semi-naive evaluation of round r with
/// pivot p: position p uses facts of round r-1 only, earlier positions facts
/// older than r-1, later positions any fact up to r-1.
struct RoundFilter {
    int round = 0; // facts with round < `round` are visible
    int pivot = -1;

    bool admits(std::size_t position, int factRound) const {
        if (factRound >= round) return false;
        if (pivot < 0) return true;
        const auto p = static_cast<std::size_t>(pivot);
        if (position == p) return factRound == round - 1;
        if (position < p) return factRound < round - 1;
        return true;
    }
};

using Visitor = std::function<void(const Substitution&)>;

class Joiner {
public:
    Joiner(const FactStore& facts, const std::vector<DomainLiteral>& lits, SourceLocation loc)
        : facts_(facts), lits_(lits), loc_(loc), used_(lits.size(), false) {}

    void run(const RoundFilter& filter, const Substitution& start, const Visitor& visit) {
        filter_ = filter;
        Substitution s = start;
        step(0, s, visit);
    }

private:
    void step(std::size_t matched, const Substitution& s, const Visitor& visit) {
        if (matched == lits_.size()) {
            visit(s);
            return;
        }
        std::size_t pick = lits_.size();
        for (std::size_t i = 0; i < lits_.size(); ++i) {
            if (used_[i]) continue;
            const auto& pat = lits_[i].pattern;
            if (std::all_of(pat.begin(), pat.end(), [&](const Term* t) { return ready(*t, s); })) {
                pick = i;
                break;
            }
        }
        if (pick == lits_.size()) throw GroundError("unsafe rule: arithmetic over variables that cannot be bound", loc_);
        used_[pick] = true;
        const auto& lit = lits_[pick];
        // Visiting may append facts and reallocate the vector, so index a
        // snapshot of its length; appended facts are never admitted this round.
        const auto& facts = facts_.get(lit.key);
        const std::size_t count = facts.size();
        for (std::size_t f = 0; f < count; ++f) {
            const Fact& fact = facts[f];
            if (!filter_.admits(pick, fact.round)) continue;
            Substitution next = s;
            bool ok = true;
            for (std::size_t k = 0; k < lit.pattern.size() && ok; ++k) ok = unify(*lit.pattern[k], fact.tuple[k], next, loc_);
            if (ok) step(matched + 1, next, visit);
        }
        used_[pick] = false;
    }

    const FactStore& facts_;
    const std::vector<DomainLiteral>& lits_;
    SourceLocation loc_;
    std::vector<bool> used_;
    RoundFilter filter_;
};

// ---------------------------------------------------------------------------

struct PreparedRule {
    const Rule* rule = nullptr;
    std::size_t source = 0;
    std::vector<DomainLiteral> domain;
    std::vector<std::pair<Substitution, Rule>> instances;
};

struct PreparedChoice {
    const ChoiceRule* choice = nullptr;
    std::size_t source = 0;
    std::size_t index = 0;
    std::vector<DomainLiteral> body;
    std::vector<DomainLiteral> conditions;
    std::vector<std::string> intervalVariables; // locals bound only by guards
};

std::string complementName(std::size_t choiceIndex, const std::string& predicate) {
    return std::string(kReservedPrefix) + "c" + std::to_string(choiceIndex) + "_" + predicate;
}

class Grounder {
public:
    Grounder(const Program& p, const GroundOptions& opts) : program_(p), opts_(opts) {}

    GroundProgram run() {
        prepare();
        // Round 0: rules without domain literals.
        for (auto& pr : rules_) {
            if (pr.domain.empty()) instantiate(pr, Substitution{}, 0);
        }
        for (int round = 1;; ++round) {
            std::vector<Literal> derived;
            for (auto& pr : rules_) {
                if (pr.domain.empty()) continue;
                Joiner joiner(facts_, pr.domain, pr.rule->loc);
                for (std::size_t pivot = 0; pivot < pr.domain.size(); ++pivot) {
                    joiner.run({round, static_cast<int>(pivot)}, {},
                               [&](const Substitution& s) { instantiate(pr, s, round); });
                }
            }
            for (auto& pc : choices_) expandChoice(pc, round, nullptr);
            if (!grew_) break;
            grew_ = false;
        }
        return assemble();
    }

private:
    void prepare() {
        std::size_t source = 0;
        for (const auto& r : program_.rules) {
            PreparedRule pr;
            pr.rule = &r;
            pr.source = source++;
            std::set<std::string> bindable;
            for (const auto& l : r.pos) {
                if (!isDomainLiteral(l)) continue;
                pr.domain.push_back(domainLiteral(l));
                for (const Term* t : pr.domain.back().pattern) bindableVariables(*t, bindable);
            }
            for (const auto& v : r.variables()) {
                if (!bindable.count(v)) {
                    throw GroundError("unsafe rule: variable " + v + " does not occur in a positive body literal",
                                      r.loc);
                }
            }
            SourceRule info;
            info.kind = r.kind == RuleKind::Cr ? SourceRule::Kind::CrRule : SourceRule::Kind::Rule;
            info.loc = r.loc;
            info.text = r.toString();
            info.label = r.isConstraint() ? "" : r.head.toString();
            sources_.push_back(std::move(info));
            rules_.push_back(std::move(pr));
        }
        std::size_t index = 0;
        for (const auto& c : program_.choices) {
            PreparedChoice pc;
            pc.choice = &c;
            pc.source = source++;
            pc.index = index++;
            std::set<std::string> bindable;
            for (const auto& l : c.pos) {
                if (!isDomainLiteral(l)) continue;
                pc.body.push_back(domainLiteral(l));
                for (const Term* t : pc.body.back().pattern) bindableVariables(*t, bindable);
            }
            for (const auto& v : c.globalVariables()) {
                if (!bindable.count(v)) {
                    throw GroundError("unsafe choice rule: variable " + v + " does not occur in a positive body literal",
                                      c.loc);
                }
            }
            for (const auto& l : c.conditions) {
                if (!l.isRegular()) continue;
                pc.conditions.push_back(domainLiteral(l));
                for (const Term* t : pc.conditions.back().pattern) bindableVariables(*t, bindable);
            }
            for (const auto& v : c.localVariables()) {
                if (bindable.count(v)) continue;
                if (!hasBoundGuards(c, v)) {
                    throw GroundError("unsafe choice rule: local variable " + v + " is not bound by a condition", c.loc);
                }
                pc.intervalVariables.push_back(v);
            }
            sources_.push_back(SourceRule{SourceRule::Kind::Choice, c.loc, c.toString(), ""});
            choices_.push_back(std::move(pc));
        }
    }

    /// Returns the instance when it survives static guard evaluation.
    std::optional<Rule> build(const Rule& r, const Substitution& s) {
        Rule g;
        g.kind = r.kind;
        g.loc = r.loc;
        g.head = fold(r.head, s, r.loc);
        if (!g.head.isRegular() && g.head.tatom().rhs.kind != Term::Kind::Constant) {
            throw GroundError("rule head " + g.head.toString() + " does not fold to a seed literal", r.loc);
        }
        for (const auto& l : r.pos) {
            Literal f = fold(l, s, r.loc);
            if (opts_.eliminateStaticGuards) {
                if (auto truth = staticTruth(f, r.loc)) {
                    if (!*truth) return std::nullopt;
                    continue;
                }
            }
            g.pos.push_back(std::move(f));
        }
        for (const auto& l : r.neg) {
            Literal f = fold(l, s, r.loc);
            if (opts_.eliminateStaticGuards) {
                if (auto truth = staticTruth(f, r.loc)) {
                    if (*truth) return std::nullopt;
                    continue;
                }
            }
            g.neg.push_back(std::move(f));
        }
        return g;
    }

    void instantiate(PreparedRule& pr, const Substitution& s, int round) {
        auto g = build(*pr.rule, s);
        if (!g) return;
        if (facts_.addHead(g->head, round)) grew_ = true;
        pr.instances.emplace_back(s, std::move(*g));
    }

    // -- choice rules -------------------------------------------------------

    static bool mentions(const Term& t, const std::string& v) {
        std::set<std::string> vars;
        t.collectVariables(vars);
        return vars.count(v) > 0;
    }

    static bool hasBoundGuards(const ChoiceRule& c, const std::string& v) {
        bool lower = false, upper = false;
        for (const auto& l : c.conditions) {
            if (!l.isTAtom()) continue;
            const auto& t = l.tatom();
            const bool left = t.lhs.kind == Term::Kind::Variable && t.lhs.name == v && !mentions(t.rhs, v);
            const bool right = t.rhs.kind == Term::Kind::Variable && t.rhs.name == v && !mentions(t.lhs, v);
            if (!left && !right) continue;
            CmpOp op = t.op;
            if (right) {
                switch (op) {
                case CmpOp::Lt: op = CmpOp::Gt; break;
                case CmpOp::Le: op = CmpOp::Ge; break;
                case CmpOp::Gt: op = CmpOp::Lt; break;
                case CmpOp::Ge: op = CmpOp::Le; break;
                default: break;
                }
            }
            if (op == CmpOp::Eq) lower = upper = true;
            if (op == CmpOp::Gt || op == CmpOp::Ge) lower = true;
            if (op == CmpOp::Lt || op == CmpOp::Le) upper = true;
        }
        return lower && upper;
    }

    /// Integer interval for `v` implied by guards whose other side is ready.
    std::optional<std::pair<std::int64_t, std::int64_t>> bounds(const ChoiceRule& c, const std::string& v,
                                                                 const Substitution& s) const {
        std::optional<std::int64_t> lo, hi;
        for (const auto& l : c.conditions) {
            if (!l.isTAtom()) continue;
            const auto& t = l.tatom();
            const bool left = t.lhs.kind == Term::Kind::Variable && t.lhs.name == v;
            const bool right = t.rhs.kind == Term::Kind::Variable && t.rhs.name == v;
            if (left == right) continue;
            const Term& other = left ? t.rhs : t.lhs;
            std::set<std::string> vars;
            other.collectVariables(vars);
            if (!std::all_of(vars.begin(), vars.end(), [&](const auto& x) { return s.count(x); })) continue;
            const Term f = fold(other, s, c.loc);
            if (f.kind != Term::Kind::Constant || !f.value.isInteger()) continue;
            const std::int64_t x = f.value.intValue();
            CmpOp op = t.op;
            if (right) {
                switch (op) {
                case CmpOp::Lt: op = CmpOp::Gt; break;
                case CmpOp::Le: op = CmpOp::Ge; break;
                case CmpOp::Gt: op = CmpOp::Lt; break;
                case CmpOp::Ge: op = CmpOp::Le; break;
                default: break;
                }
            }
            auto raiseLo = [&](std::int64_t b) { lo = lo ? std::max(*lo, b) : b; };
            auto lowerHi = [&](std::int64_t b) { hi = hi ? std::min(*hi, b) : b; };
            switch (op) {
            case CmpOp::Eq: raiseLo(x); lowerHi(x); break;
            case CmpOp::Ge: raiseLo(x); break;
            case CmpOp::Gt: raiseLo(x + 1); break;
            case CmpOp::Le: lowerHi(x); break;
            case CmpOp::Lt: lowerHi(x - 1); break;
            case CmpOp::Ne: break;
            }
        }
        if (!lo || !hi) return std::nullopt;
        return std::make_pair(*lo, *hi);
    }

    void bindIntervals(const PreparedChoice& pc, std::size_t i, Substitution& s, const Visitor& visit) const {
        if (i == pc.intervalVariables.size()) {
            visit(s);
            return;
        }
        const auto& v = pc.intervalVariables[i];
        auto range = bounds(*pc.choice, v, s);
        if (!range) throw GroundError("choice variable " + v + " has no integer bounds", pc.choice->loc);
        if (range->second - range->first > 1'000'000) {
            throw GroundError("choice variable " + v + " ranges over more than a million values", pc.choice->loc);
        }
        for (std::int64_t x = range->first; x <= range->second; ++x) {
            s[v] = Constant::integer(x);
            bindIntervals(pc, i + 1, s, visit);
        }
        s.erase(v);
    }

    /// Enumerates the choice instances visible in `round` (all facts when
    /// `out` is set, which also emits generator rules and checks).
    void expandChoice(const PreparedChoice& pc, int round, GroundProgram* out) {
        const ChoiceRule& c = *pc.choice;
        const RoundFilter all{out ? std::numeric_limits<int>::max() : round, -1};
        std::vector<Substitution> globals;
        Joiner(facts_, pc.body, c.loc).run(all, {}, [&](const Substitution& s) { globals.push_back(s); });
        for (const auto& g : globals) {
            // Ground body of the choice; static guards decided here.
            std::vector<Literal> pos, neg;
            bool applicable = true;
            for (const auto& l : c.pos) {
                Literal f = fold(l, g, c.loc);
                if (auto truth = opts_.eliminateStaticGuards ? staticTruth(f, c.loc) : std::nullopt) {
                    applicable = applicable && *truth;
                    continue;
                }
                pos.push_back(std::move(f));
            }
            for (const auto& l : c.neg) {
                Literal f = fold(l, g, c.loc);
                if (auto truth = opts_.eliminateStaticGuards ? staticTruth(f, c.loc) : std::nullopt) {
                    applicable = applicable && !*truth;
                    continue;
                }
                neg.push_back(std::move(f));
            }
            if (!applicable) continue;

            std::vector<std::pair<Substitution, Atom>> candidates;
            std::vector<std::vector<Literal>> candidateConds;
            if (c.schema) {
                Joiner(facts_, pc.conditions, c.loc).run(all, g, [&](const Substitution& s0) {
                    Substitution s = s0;
                    bindIntervals(pc, 0, s, [&](const Substitution& s1) {
                        std::vector<Literal> conds;
                        for (const auto& l : c.conditions) {
                            Literal f = fold(l, s1, c.loc);
                            if (auto truth = staticTruth(f, c.loc)) {
                                if (!*truth) return;
                                continue;
                            }
                            if (f.isTAtom()) return; // non-static guard; cannot be a condition
                            conds.push_back(std::move(f));
                        }
                        Literal head = fold(Literal{RegularLiteral{*c.schema, false}}, s1, c.loc);
                        candidates.emplace_back(s1, head.regular().atom);
                        candidateConds.push_back(std::move(conds));
                    });
                });
            }
            if (!out) {
                for (const auto& [s, atom] : candidates) {
                    if (facts_.addHead(Literal{RegularLiteral{atom, false}}, round)) grew_ = true;
                }
                continue;
            }
            emitChoice(pc, g, pos, neg, candidates, candidateConds, *out);
        }
    }

    void emitChoice(const PreparedChoice& pc, const Substitution& global, const std::vector<Literal>& pos,
                    const std::vector<Literal>& neg, const std::vector<std::pair<Substitution, Atom>>& candidates,
                    const std::vector<std::vector<Literal>>& conds, GroundProgram& out) {
        const ChoiceRule& c = *pc.choice;
        CardinalityCheck check;
        check.lower = c.lower;
        check.upper = c.upper;
        check.pos = pos;
        check.neg = neg;
        check.source = pc.source;
        std::set<GroundName> seen;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const auto& [s, atom] = candidates[i];
            GroundName name = groundNameOf(atom.predicate, atom.args);
            if (!seen.insert(name).second) continue;
            check.candidates.push_back(name);
            Literal in = Literal{RegularLiteral{atom, false}};
            Literal outLit = Literal::atom(complementName(pc.index, atom.predicate), atom.args);
            Rule gen;
            gen.loc = c.loc;
            gen.pos = pos;
            gen.pos.insert(gen.pos.end(), conds[i].begin(), conds[i].end());
            gen.neg = neg;
            Rule comp = gen;
            gen.head = in;
            gen.neg.push_back(outLit);
            comp.head = outLit;
            comp.neg.push_back(in);
            out.rules.push_back(std::move(gen));
            out.provenance.push_back({pc.source, s});
            out.rules.push_back(std::move(comp));
            out.provenance.push_back({pc.source, s});
        }
        if (check.candidates.empty() && c.lower >= 1) {
            std::string where = global.empty() ? "" : " for " + toString(global);
            out.warnings.push_back(Diagnostic{c.loc, Diagnostic::Severity::Warning,
                                              "choice rule has no candidates" + where +
                                                  "; its lower bound can never be met"});
        }
        out.checks.push_back(std::move(check));
    }

    GroundProgram assemble() {
        GroundProgram g;
        g.sources = sources_;
        g.shows = program_.shows;
        for (auto& pr : rules_) {
            std::stable_sort(pr.instances.begin(), pr.instances.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            for (auto& [s, rule] : pr.instances) {
                if (rule.kind == RuleKind::Cr) {
                    g.crRules.push_back(std::move(rule));
                    g.crProvenance.push_back({pr.source, s});
                } else {
                    g.rules.push_back(std::move(rule));
                    g.provenance.push_back({pr.source, s});
                }
            }
        }
        for (auto& pc : choices_) expandChoice(pc, 0, &g);
        std::vector<Rule> all = g.rules;
        all.insert(all.end(), g.crRules.begin(), g.crRules.end());
        g.signature = collectSignature(all);
        return g;
    }

    const Program& program_;
    GroundOptions opts_;
    FactStore facts_;
    std::vector<PreparedRule> rules_;
    std::vector<PreparedChoice> choices_;
    std::vector<SourceRule> sources_;
    bool grew_ = false;
};

} // namespace

GroundProgram ground(const Program& p, const GroundOptions& opts) { return Grounder(p, opts).run(); }

// ---------------------------------------------------------------------------
// Statistics and printing

namespace {

std::string seedKey(const Literal& l) { return l.toString(); }

} // namespace

GroundingStats stats(const GroundProgram& g) {
    GroundingStats out;
    for (const auto& src : g.sources) {
        RuleStats rs;
        rs.loc = src.loc;
        rs.text = src.text;
        rs.hash = fnv1a(src.text);
        rs.cr = src.kind == SourceRule::Kind::CrRule;
        out.rules.push_back(std::move(rs));
    }
    for (const auto& p : g.provenance) ++out.rules[p.source].instances;
    for (const auto& p : g.crProvenance) ++out.rules[p.source].instances;
    out.totalRules = g.rules.size();
    out.totalCrRules = g.crRules.size();
    std::set<std::string> universe;
    for (const auto* rules : {&g.rules, &g.crRules}) {
        for (const auto& r : *rules) {
            if (!r.isConstraint()) universe.insert(seedKey(r.head));
        }
    }
    out.seedUniverse = universe.size();
    return out;
}

std::string statsCsv(const GroundingStats& s) {
    std::ostringstream out;
    out << "line,hash,instances\n";
    for (const auto& r : s.rules) {
        out << r.loc.line << "," << std::hex << std::setw(16) << std::setfill('0') << r.hash << std::dec << ","
            << r.instances << "\n";
    }
    return out.str();
}

std::string printGround(const GroundProgram& g) {
    std::string out;
    for (const auto& r : g.rules) out += r.toString() + "\n";
    for (const auto& r : g.crRules) out += r.toString() + "\n";
    for (const auto& c : g.checks) {
        std::string line = "% bounds " + std::to_string(c.lower) + ".." +
                           (c.upper ? std::to_string(*c.upper) : std::string("inf")) + " {";
        for (std::size_t i = 0; i < c.candidates.size(); ++i) {
            line += (i ? ", " : "") + c.candidates[i].toString();
        }
        line += "}";
        std::string b;
        for (const auto& l : c.pos) b += (b.empty() ? "" : ", ") + l.toString();
        for (const auto& l : c.neg) b += (b.empty() ? "" : ", ") + ("not " + l.toString());
        if (!b.empty()) line += " :- " + b;
        out += line + ".\n";
    }
    for (const auto& s : g.shows) out += "#show " + s.name + "/" + std::to_string(s.arity) + ".\n";
    return out;
}

} // namespace aspf
