#include "aspf/solver.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>

namespace aspf {

namespace {

enum class Tri : std::uint8_t { False, Unknown, True };

// A search variable is one simple term or one atom. Its options are the
// head-occurring seed literals on that name plus a trailing "none" option
// (undefined term, atom neither true nor strongly negated).
struct Var {
    GroundName name;
    bool term = false;
    std::vector<SeedLiteral> options; // "none" is index options.size()
    std::size_t offset = 0;           // into the flat domain array

    std::size_t width() const { return options.size() + 1; }
    std::size_t none() const { return options.size(); }
};

struct Node {
    enum class Kind { Const, Var, Op } kind = Kind::Const;
    Constant value;
    int var = -1;
    ArithOp op = ArithOp::Add;
    int lhs = -1;
    int rhs = -1;
};

struct CLit {
    bool seed = true;
    int var = -1; // seed: -1 when the literal can never hold
    int opt = -1;
    CmpOp op = CmpOp::Eq;
    int lhs = -1;
    int rhs = -1;
    std::vector<int> vars; // dependent: distinct term variables
};

struct CRule {
    int headVar = -1; // -1: bottom, or a head that can never be chosen
    int headOpt = -1;
    std::vector<CLit> pos;
    std::vector<CLit> neg;
};

struct CCheck {
    int lower = 0;
    std::optional<int> upper;
    std::vector<std::pair<int, int>> candidates; // var, option; var -1 never true
    std::vector<CLit> pos;
    std::vector<CLit> neg;
};

struct State {
    std::vector<std::uint8_t> alive;
    std::vector<int> count;
};

constexpr std::size_t kEnumerationCap = 256;

class Compiled {
public:
    explicit Compiled(const GroundProgram& g) {
        for (const auto& r : g.rules) {
            if (r.isConstraint()) continue;
            const auto head = toSeedLiteral(r.head);
            if (!head) throw EvalError("rule head is not a seed literal: " + r.toString());
            Var& v = varFor(head->name, head->kind == SeedLiteral::Kind::Value);
            if (std::find(v.options.begin(), v.options.end(), *head) == v.options.end()) v.options.push_back(*head);
        }
        for (auto& v : vars_) std::sort(v.options.begin(), v.options.end());
        for (const auto& r : g.rules) {
            CRule c;
            if (!r.isConstraint()) {
                const auto head = *toSeedLiteral(r.head);
                c.headVar = lookup(head.name, head.kind == SeedLiteral::Kind::Value);
                c.headOpt = optionOf(c.headVar, head);
            }
            for (const auto& l : r.pos) c.pos.push_back(compile(l));
            for (const auto& l : r.neg) c.neg.push_back(compile(l));
            rules_.push_back(std::move(c));
        }
        for (const auto& k : g.checks) {
            CCheck c;
            c.lower = k.lower;
            c.upper = k.upper;
            for (const auto& a : k.candidates) {
                const int v = lookup(a, false);
                const int o = optionOf(v, SeedLiteral::atom(a));
                c.candidates.emplace_back(o < 0 ? -1 : v, o);
            }
            for (const auto& l : k.pos) c.pos.push_back(compile(l));
            for (const auto& l : k.neg) c.neg.push_back(compile(l));
            checks_.push_back(std::move(c));
        }
        std::size_t offset = 0;
        for (auto& v : vars_) {
            v.offset = offset;
            offset += v.width();
        }
        width_ = offset;
    }

    const std::vector<Var>& vars() const { return vars_; }
    const std::vector<CRule>& rules() const { return rules_; }
    const std::vector<CCheck>& checks() const { return checks_; }

    State initial() const {
        State s;
        s.alive.assign(width_, 1);
        for (const auto& v : vars_) s.count.push_back(static_cast<int>(v.width()));
        return s;
    }

    bool alive(const State& s, int var, int opt) const { return s.alive[vars_[var].offset + opt] != 0; }

    // Returns false when the domain empties.
    bool kill(State& s, int var, int opt) const {
        auto& a = s.alive[vars_[var].offset + opt];
        if (!a) return true;
        a = 0;
        return --s.count[var] > 0;
    }

    void fix(State& s, int var, int opt) const {
        const Var& v = vars_[var];
        for (std::size_t o = 0; o < v.width(); ++o) s.alive[v.offset + o] = o == static_cast<std::size_t>(opt);
        s.count[var] = 1;
    }

    int singleton(const State& s, int var) const {
        const Var& v = vars_[var];
        for (std::size_t o = 0; o < v.width(); ++o) {
            if (s.alive[v.offset + o]) return static_cast<int>(o);
        }
        return -1;
    }

    Tri eval(const State& s, const CLit& l) const {
        if (l.seed) {
            if (l.var < 0 || !alive(s, l.var, l.opt)) return Tri::False;
            return s.count[l.var] == 1 ? Tri::True : Tri::Unknown;
        }
        std::size_t combos = 1;
        for (int v : l.vars) {
            // Only the "none" option left: some operand is undefined.
            if (s.count[v] == 1 && alive(s, v, static_cast<int>(vars_[v].none()))) return Tri::False;
            combos *= static_cast<std::size_t>(s.count[v]);
            if (combos > kEnumerationCap) return Tri::Unknown;
        }
        std::vector<int> assignment(vars_.size(), -1);
        bool sawTrue = false;
        bool sawFalse = false;
        enumerate(s, l, 0, assignment, sawTrue, sawFalse);
        if (sawTrue && sawFalse) return Tri::Unknown;
        return sawTrue ? Tri::True : Tri::False;
    }

    Tri evalBody(const State& s, const std::vector<CLit>& pos, const std::vector<CLit>& neg) const {
        Tri result = Tri::True;
        for (const auto& l : pos) {
            const Tri t = eval(s, l);
            if (t == Tri::False) return Tri::False;
            if (t == Tri::Unknown) result = Tri::Unknown;
        }
        for (const auto& l : neg) {
            const Tri t = eval(s, l);
            if (t == Tri::True) return Tri::False;
            if (t == Tri::Unknown) result = Tri::Unknown;
        }
        return result;
    }

    SeedSet model(const State& s) const {
        SeedSet out;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const int o = singleton(s, static_cast<int>(i));
            if (o >= 0 && static_cast<std::size_t>(o) < vars_[i].options.size()) out.insert(vars_[i].options[o]);
        }
        return out;
    }

private:
    Var& varFor(const GroundName& name, bool term) {
        auto& index = term ? terms_ : atoms_;
        auto [it, fresh] = index.try_emplace(name, static_cast<int>(vars_.size()));
        if (fresh) {
            Var v;
            v.name = name;
            v.term = term;
            vars_.push_back(std::move(v));
        }
        return vars_[it->second];
    }

    int lookup(const GroundName& name, bool term) const {
        const auto& index = term ? terms_ : atoms_;
        auto it = index.find(name);
        return it == index.end() ? -1 : it->second;
    }

    int optionOf(int var, const SeedLiteral& l) const {
        if (var < 0) return -1;
        const auto& opts = vars_[var].options;
        auto it = std::find(opts.begin(), opts.end(), l);
        return it == opts.end() ? -1 : static_cast<int>(it - opts.begin());
    }

    CLit compile(const Literal& l) {
        CLit c;
        if (auto seed = toSeedLiteral(l)) {
            c.var = lookup(seed->name, seed->kind == SeedLiteral::Kind::Value);
            c.opt = optionOf(c.var, *seed);
            if (c.opt < 0) c.var = -1;
            return c;
        }
        c.seed = false;
        c.op = l.tatom().op;
        c.lhs = compile(l.tatom().lhs, c.vars);
        c.rhs = compile(l.tatom().rhs, c.vars);
        return c;
    }

    int compile(const Term& t, std::vector<int>& used) {
        Node n;
        switch (t.kind) {
        case Term::Kind::Constant:
            n.kind = Node::Kind::Const;
            n.value = t.value;
            break;
        case Term::Kind::Function: {
            GroundName name{t.name, {}};
            for (const auto& a : t.args) {
                if (a.kind != Term::Kind::Constant) throw EvalError("non-ground argument in " + t.toString());
                name.args.push_back(a.value);
            }
            // A term never defined by any head still needs a variable so that
            // it reads as undefined.
            const int v = static_cast<int>(&varFor(name, true) - vars_.data());
            n.kind = Node::Kind::Var;
            n.var = v;
            if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
            break;
        }
        case Term::Kind::Arith:
            n.kind = Node::Kind::Op;
            n.op = t.op;
            n.lhs = compile(t.args[0], used);
            if (t.args.size() > 1) n.rhs = compile(t.args[1], used);
            break;
        default: throw EvalError("cannot evaluate non-ground term " + t.toString());
        }
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size() - 1);
    }

    std::optional<Constant> value(int node, const std::vector<int>& assignment) const {
        const Node& n = nodes_[node];
        switch (n.kind) {
        case Node::Kind::Const: return n.value;
        case Node::Kind::Var: {
            const auto& v = vars_[n.var];
            const int o = assignment[n.var];
            if (static_cast<std::size_t>(o) == v.none()) return std::nullopt;
            return v.options[o].value;
        }
        case Node::Kind::Op: break;
        }
        const auto a = value(n.lhs, assignment);
        const auto b = n.rhs >= 0 ? value(n.rhs, assignment) : std::optional<Constant>(Constant::integer(0));
        if ((a && a->isSymbol()) || (b && b->isSymbol())) throw EvalError("ill-sorted arithmetic over a symbolic value");
        if (!a || !b) return std::nullopt;
        const auto r = applyArith(n.op, a->intValue(), b->intValue());
        if (!r) return std::nullopt;
        return Constant::integer(*r);
    }

    void enumerate(const State& s, const CLit& l, std::size_t i, std::vector<int>& assignment, bool& sawTrue,
                   bool& sawFalse) const {
        if (sawTrue && sawFalse) return;
        if (i == l.vars.size()) {
            try {
                const auto a = value(l.lhs, assignment);
                const auto b = value(l.rhs, assignment);
                bool holds = false;
                if (a && b) {
                    if (a->isInteger() && b->isInteger()) holds = compareIntegers(l.op, a->intValue(), b->intValue());
                    else if (l.op == CmpOp::Eq) holds = *a == *b;
                    else if (l.op == CmpOp::Ne) holds = *a != *b;
                    else throw EvalError("ordering comparison over symbolic values");
                }
                (holds ? sawTrue : sawFalse) = true;
            } catch (const EvalError&) {
                // Left to the leaf check, which reports it.
                sawTrue = sawFalse = true;
            }
            return;
        }
        const int v = l.vars[i];
        for (std::size_t o = 0; o < vars_[v].width(); ++o) {
            if (!alive(s, v, static_cast<int>(o))) continue;
            assignment[v] = static_cast<int>(o);
            enumerate(s, l, i + 1, assignment, sawTrue, sawFalse);
        }
        assignment[v] = -1;
    }

    std::vector<Var> vars_;
    std::map<GroundName, int> terms_;
    std::map<GroundName, int> atoms_;
    std::vector<Node> nodes_;
    std::vector<CRule> rules_;
    std::vector<CCheck> checks_;
    std::size_t width_ = 0;
};

class Search {
public:
    Search(const GroundProgram& g, const Compiled& c, const ModelSink& sink, const SolveLimits& limits,
           const SolverOptions& opts)
        : g_(g), c_(c), sink_(sink), limits_(limits), opts_(opts) {
        order_.resize(c.vars().size());
        std::iota(order_.begin(), order_.end(), 0);
        if (opts.shuffleSeed) {
            std::mt19937_64 rng(*opts.shuffleSeed);
            std::shuffle(order_.begin(), order_.end(), rng);
        }
        if (limits.timeBudgetSeconds > 0) {
            deadline_ = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(limits.timeBudgetSeconds));
        }
    }

    SolveResult run() {
        descend(c_.initial());
        return result_;
    }

private:
    // Returns false to stop the whole search.
    bool descend(State s) {
        ++result_.nodes;
        if (deadline_ && (result_.nodes & 63) == 0 && std::chrono::steady_clock::now() > *deadline_) {
            result_.complete = false;
            result_.budgetExceeded = true;
            return false;
        }
        if (!(opts_.propagate ? propagate(s) : prune(s))) return true;

        int pick = -1;
        for (int v : order_) {
            if (s.count[v] > 1) {
                pick = v;
                break;
            }
        }
        if (pick < 0) return leaf(s);

        const auto& var = c_.vars()[pick];
        for (std::size_t o = 0; o < var.width(); ++o) {
            if (!c_.alive(s, pick, static_cast<int>(o))) continue;
            State child = s;
            c_.fix(child, pick, static_cast<int>(o));
            if (!descend(std::move(child))) return false;
        }
        return true;
    }

    bool leaf(const State& s) {
        SeedSet m = c_.model(s);
        if (!isAnswerSet(g_, m)) return true;
        ++emitted_;
        if (!sink_(m)) {
            result_.complete = false;
            return false;
        }
        if (limits_.maxModels && emitted_ >= limits_.maxModels) {
            result_.complete = false;
            return false;
        }
        return true;
    }

    // Without propagation: only cut on a settled constraint or a cardinality
    // upper bound already exceeded.
    bool prune(const State& s) const {
        for (const auto& r : c_.rules()) {
            if (r.headVar < 0 && c_.evalBody(s, r.pos, r.neg) == Tri::True) return false;
        }
        for (const auto& k : c_.checks()) {
            if (!k.upper || c_.evalBody(s, k.pos, k.neg) != Tri::True) continue;
            if (countTrue(s, k) > *k.upper) return false;
        }
        return true;
    }

    int countTrue(const State& s, const CCheck& k) const {
        int n = 0;
        for (auto [v, o] : k.candidates) {
            if (v >= 0 && c_.alive(s, v, o) && s.count[v] == 1) ++n;
        }
        return n;
    }

    bool propagate(State& s) const {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : c_.rules()) {
                if (c_.evalBody(s, r.pos, r.neg) != Tri::True) continue;
                if (r.headVar < 0 || r.headOpt < 0 || !c_.alive(s, r.headVar, r.headOpt)) return false;
                if (s.count[r.headVar] > 1) {
                    c_.fix(s, r.headVar, r.headOpt);
                    changed = true;
                }
            }
            for (const auto& k : c_.checks()) {
                if (c_.evalBody(s, k.pos, k.neg) != Tri::True) continue;
                if (k.upper && countTrue(s, k) > *k.upper) return false;
                int possible = 0;
                for (auto [v, o] : k.candidates) {
                    if (v >= 0 && c_.alive(s, v, o)) ++possible;
                }
                if (possible < k.lower) return false;
            }
            if (!unsupported(s, changed)) return false;
        }
        return true;
    }

    // Removes options no rule can still derive. A literal in an answer set is
    // derived by the reduct, so this over-approximation of derivability is safe.
    bool unsupported(State& s, bool& changed) const {
        const auto& vars = c_.vars();
        std::vector<std::uint8_t> supported(s.alive.size(), 0);
        auto isSupported = [&](const CLit& l) {
            if (!l.seed) return c_.eval(s, l) != Tri::False;
            return l.var >= 0 && supported[vars[l.var].offset + l.opt] != 0;
        };
        for (bool grew = true; grew;) {
            grew = false;
            for (const auto& r : c_.rules()) {
                if (r.headVar < 0 || r.headOpt < 0) continue;
                auto& mark = supported[vars[r.headVar].offset + r.headOpt];
                if (mark || !c_.alive(s, r.headVar, r.headOpt)) continue;
                if (!std::all_of(r.pos.begin(), r.pos.end(), isSupported)) continue;
                if (std::any_of(r.neg.begin(), r.neg.end(), [&](const CLit& l) { return c_.eval(s, l) == Tri::True; }))
                    continue;
                mark = 1;
                grew = true;
            }
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
            for (std::size_t o = 0; o < vars[i].options.size(); ++o) {
                const auto at = vars[i].offset + o;
                if (s.alive[at] && !supported[at]) {
                    if (!c_.kill(s, static_cast<int>(i), static_cast<int>(o))) return false;
                    changed = true;
                }
            }
        }
        return true;
    }

    const GroundProgram& g_;
    const Compiled& c_;
    const ModelSink& sink_;
    SolveLimits limits_;
    SolverOptions opts_;
    std::vector<int> order_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::size_t emitted_ = 0;
    SolveResult result_;
};

} // namespace

SolveResult solve(const GroundProgram& g, const ModelSink& sink, const SolveLimits& limits, const SolverOptions& opts) {
    const Compiled compiled(g);
    Search search(g, compiled, sink, limits, opts);
    return search.run();
}

SolveResult solve(const GroundProgram& g, const SolveLimits& limits, const SolverOptions& opts) {
    std::vector<SeedSet> models;
    SolveResult r = solve(
        g,
        [&](const SeedSet& m) {
            models.push_back(m);
            return true;
        },
        limits, opts);
    r.models = std::move(models);
    return r;
}

std::vector<SeedLiteral> headUniverse(const GroundProgram& g) {
    std::vector<SeedLiteral> out;
    for (const auto& r : g.rules) {
        if (r.isConstraint()) continue;
        if (auto l = toSeedLiteral(r.head)) out.push_back(*l);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Every subset of the universe, with inconsistent ones discarded as soon as
// the offending literal is added.
void subsets(const GroundProgram& g, const std::vector<SeedLiteral>& universe, std::size_t i, const SeedSet& s,
             std::vector<SeedSet>& out) {
    if (i == universe.size()) {
        if (isAnswerSet(g, s)) out.push_back(s);
        return;
    }
    subsets(g, universe, i + 1, s, out);
    if (auto with = tryInsert(s, universe[i])) subsets(g, universe, i + 1, *with, out);
}

} // namespace

std::vector<SeedSet> oracleSolve(const GroundProgram& g, std::size_t bound) {
    const auto universe = headUniverse(g);
    if (universe.size() > bound) {
        throw UniverseTooLarge("head universe has " + std::to_string(universe.size()) + " literals, oracle bound is " +
                               std::to_string(bound));
    }
    std::vector<SeedSet> out;
    subsets(g, universe, 0, SeedSet{}, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string toString(ModelVerdict::Kind k) {
    switch (k) {
    case ModelVerdict::Kind::AnswerSet: return "answer-set";
    case ModelVerdict::Kind::NotClosed: return "not-closed";
    case ModelVerdict::Kind::NotMinimal: return "not-minimal";
    case ModelVerdict::Kind::NotReproduced: return "not-reproduced";
    }
    return "?";
}

std::string ModelVerdict::toString() const {
    if (witness.empty()) return aspf::toString(kind);
    return aspf::toString(kind) + ": " + witness;
}

ModelVerdict checkModel(const GroundProgram& g, const SeedSet& s) {
    using Kind = ModelVerdict::Kind;
    if (s.containsBottom()) return {Kind::NotReproduced, "the set contains the reserved bottom atom"};

    const auto red = reduct(g.rules, s);
    for (const auto& r : red) {
        if (!satisfiesBody(s, r.pos, {})) continue;
        if (r.isConstraint()) return {Kind::NotClosed, "constraint violated: " + r.toString()};
        if (!satisfies(s, r.head)) return {Kind::NotClosed, r.toString()};
    }

    const auto fixpoint = positiveAnswerSet(red);
    if (!fixpoint) return {Kind::NotReproduced, "the reduct has no consistent answer set"};
    if (*fixpoint != s) {
        const bool positive = std::all_of(g.rules.begin(), g.rules.end(), [](const Rule& r) {
            return std::all_of(r.neg.begin(), r.neg.end(), [](const Literal& l) { return l.isBottom(); });
        });
        const std::string w = "{" + fixpoint->toString() + "}";
        return {positive ? Kind::NotMinimal : Kind::NotReproduced, w};
    }

    for (const auto& c : g.checks) {
        if (!satisfiesBody(s, c.pos, c.neg)) continue;
        int n = 0;
        for (const auto& a : c.candidates) n += s.contains(SeedLiteral::atom(a)) ? 1 : 0;
        if (n < c.lower || (c.upper && n > *c.upper)) {
            return {Kind::NotReproduced, "cardinality bound violated by " + std::to_string(n) + " chosen atoms (" +
                                             g.sources[c.source].text + ")"};
        }
    }
    return {Kind::AnswerSet, ""};
}

} // namespace aspf
