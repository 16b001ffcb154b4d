// Answer-set semantics of ground ASP{f} programs: consistent sets of seed
// literals, partial valuation of terms, satisfaction, closure, the answer set
// of a positive program and the reduct.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aspf/grounder.hpp"
#include "aspf/syntax.hpp"

namespace aspf {

/// A ground seed literal: `a`, `-a` or `f(c1..cn)=v`.
struct SeedLiteral {
    enum class Kind { Atom, Value };

    Kind kind = Kind::Atom;
    GroundName name;
    bool strongNegation = false; // Kind::Atom
    Constant value;              // Kind::Value

    static SeedLiteral atom(GroundName name, bool strongNegation = false);
    static SeedLiteral assign(GroundName term, Constant value);

    std::string toString() const;
    bool operator==(const SeedLiteral&) const = default;
    std::strong_ordering operator<=>(const SeedLiteral& o) const;
};

/// nullopt when `l` is a dependent t-atom. Throws EvalError if `l` is not ground.
std::optional<SeedLiteral> toSeedLiteral(const Literal& l);
Literal toLiteral(const SeedLiteral& s);

/// A consistent set of seed literals. Consistency is structural: an atom has
/// one polarity and a simple term one value.
class SeedSet {
public:
    SeedSet() = default;

    /// Adds `l`; returns false (leaving the set unchanged) if that would make
    /// the set inconsistent.
    bool insert(const SeedLiteral& l);

    bool contains(const SeedLiteral& l) const;
    bool containsBottom() const;
    std::optional<Constant> valueOf(const GroundName& term) const;

    /// Sorted by structure.
    std::vector<SeedLiteral> literals() const;
    std::size_t size() const { return atoms_.size() + values_.size(); }
    bool empty() const { return size() == 0; }

    /// Space-separated literal texts sorted lexicographically; hidden names
    /// (reserved prefix) omitted.
    std::string toString() const;

    bool operator==(const SeedSet&) const = default;
    bool operator<(const SeedSet& o) const;

private:
    std::map<GroundName, bool> atoms_; // true: strongly negated
    std::map<GroundName, Constant> values_;
};

/// Persistent flavour of SeedSet::insert.
std::optional<SeedSet> tryInsert(const SeedSet& s, const SeedLiteral& l);

using Value = std::optional<Constant>;

/// Value of a ground term w.r.t. `s`; nullopt is "undefined". Any undefined
/// operand makes an arithmetic term undefined, as does division by zero.
/// Throws EvalError for arithmetic over a defined symbolic constant.
Value val(const Term& t, const SeedSet& s);

/// Throws EvalError for an ordering comparison over symbolic constants.
bool satisfies(const SeedSet& s, const Literal& l);
bool satisfiesExtended(const SeedSet& s, const Literal& l, bool negated);
bool satisfiesBody(const SeedSet& s, const std::vector<Literal>& pos, const std::vector<Literal>& neg);

/// Least set closed under a positive program; nullopt when that set would be
/// inconsistent or contain bottom. Throws std::invalid_argument on a rule with
/// a non-empty negative body.
std::optional<SeedSet> positiveAnswerSet(std::span<const Rule> rules);

/// `head(r) <- pos(r)` for every rule whose negative part `s` satisfies.
std::vector<Rule> reduct(std::span<const Rule> rules, const SeedSet& s);

/// Cardinality checks of `g` whose body holds in `s` are within their bounds.
bool checksHold(const GroundProgram& g, const SeedSet& s);

/// `s` is the answer set of its own reduct (regular rules of `g` only), has no
/// bottom and honours every cardinality check.
bool isAnswerSet(const GroundProgram& g, const SeedSet& s);

} // namespace aspf
