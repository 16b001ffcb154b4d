// Answer-set enumeration for ground ASP{f} programs: a backtracking search
// over per-term and per-atom domains, a brute-force oracle over the head
// universe, and a model checker that explains rejections.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aspf/grounder.hpp"
#include "aspf/semantics.hpp"

namespace aspf {

struct SolveLimits {
    std::size_t maxModels = 0;      // 0: all
    double timeBudgetSeconds = 0.0; // 0: unlimited
};

struct SolverOptions {
    bool propagate = true;
    /// Randomizes the branching order; the model set must not depend on it.
    std::optional<std::uint64_t> shuffleSeed;
};

struct SolveResult {
    std::vector<SeedSet> models;
    bool complete = true;        // false when a limit stopped the search
    bool budgetExceeded = false; // the time budget, specifically
    std::size_t nodes = 0;
};

/// Return false to stop the search.
using ModelSink = std::function<bool(const SeedSet&)>;

/// Streams the answer sets of `g` (cr-rules ignored) into `sink`. The
/// returned result carries no models, only completion data.
SolveResult solve(const GroundProgram& g, const ModelSink& sink, const SolveLimits& limits = {},
                  const SolverOptions& opts = {});
SolveResult solve(const GroundProgram& g, const SolveLimits& limits = {}, const SolverOptions& opts = {});

class UniverseTooLarge : public Error {
public:
    using Error::Error;
};

/// Head seed literals of the regular rules of `g`, bottom excluded, sorted.
std::vector<SeedLiteral> headUniverse(const GroundProgram& g);

/// Every consistent subset of the head universe that is an answer set,
/// sorted. Throws UniverseTooLarge above `bound` literals.
std::vector<SeedSet> oracleSolve(const GroundProgram& g, std::size_t bound = 24);

struct ModelVerdict {
    enum class Kind { AnswerSet, NotClosed, NotMinimal, NotReproduced };

    Kind kind = Kind::AnswerSet;
    std::string witness;

    bool accepted() const { return kind == Kind::AnswerSet; }
    std::string toString() const;
};

std::string toString(ModelVerdict::Kind k);

/// NotClosed names a reduct rule whose body holds but head does not.
/// NotMinimal (positive programs only) and NotReproduced name the fixpoint of
/// the reduct, or the violated constraint or cardinality bound.
ModelVerdict checkModel(const GroundProgram& g, const SeedSet& s);

} // namespace aspf
