// Grounding: instantiates variables over the domains carried by positive body
// literals, folds constant-only arithmetic and evaluates static comparisons.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aspf/parser.hpp"
#include "aspf/syntax.hpp"

namespace aspf {

using Substitution = std::map<std::string, Constant>;

std::string toString(const Substitution& s);

/// A source rule or choice rule as it appeared in the input.
struct SourceRule {
    enum class Kind { Rule, CrRule, Choice };

    Kind kind = Kind::Rule;
    SourceLocation loc;
    std::string text;  // canonical printed form
    std::string label; // head text, used to name cr-rules in supports
};

/// Where a ground rule came from.
struct Provenance {
    std::size_t source = 0; // index into GroundProgram::sources
    Substitution substitution;
};

/// `lower <= |{a in candidates : a true}| <= upper` whenever the body holds.
struct CardinalityCheck {
    int lower = 0;
    std::optional<int> upper;
    std::vector<GroundName> candidates;
    std::vector<Literal> pos;
    std::vector<Literal> neg;
    std::size_t source = 0;
};

struct GroundProgram {
    Signature signature;
    std::vector<Rule> rules;
    std::vector<Rule> crRules;
    std::vector<CardinalityCheck> checks;
    std::vector<Provenance> provenance;   // parallel to rules
    std::vector<Provenance> crProvenance; // parallel to crRules
    std::vector<SourceRule> sources;
    std::vector<ShowDirective> shows;
    std::vector<Diagnostic> warnings;

    bool hasCrRules() const { return !crRules.empty(); }
};

struct GroundOptions {
    /// Evaluate comparisons between constants at grounding time: drop instances
    /// with a false guard and delete true guards from the body.
    bool eliminateStaticGuards = true;
};

/// Throws GroundError on unsafe rules, static division by zero and ill-sorted
/// constant arithmetic or ordering.
GroundProgram ground(const Program& p, const GroundOptions& opts = {});

struct RuleStats {
    SourceLocation loc;
    std::string text;
    std::uint64_t hash = 0; // FNV-1a of `text`
    std::size_t instances = 0;
    bool cr = false;
};

struct GroundingStats {
    std::vector<RuleStats> rules; // one per source rule, in source order
    std::size_t totalRules = 0;
    std::size_t totalCrRules = 0;
    std::size_t seedUniverse = 0; // distinct head seed literals, bottom excluded
};

GroundingStats stats(const GroundProgram& g);

/// `line,hash,instances` rows with a header line.
std::string statsCsv(const GroundingStats& s);

/// Ground rules in concrete syntax; cardinality checks are emitted as comments.
std::string printGround(const GroundProgram& g);

std::uint64_t fnv1a(const std::string& text);

} // namespace aspf
