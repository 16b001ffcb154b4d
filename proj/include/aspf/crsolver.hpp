// Consistency-restoring rules: answer sets of ASP{f,cr} programs through
// minimal abductive supports.
#pragma once

#include <string>
#include <vector>

#include "aspf/solver.hpp"

namespace aspf {

/// `r` with `:+` replaced by `:-`. Throws std::invalid_argument on a regular rule.
Rule alpha(const Rule& r);

/// The regular rules of `g` plus alpha of the chosen ground cr-rules
/// (indices into g.crRules).
GroundProgram withCrRules(const GroundProgram& g, const std::vector<std::size_t>& support);

struct AbductiveSupport {
    std::vector<std::size_t> crRules; // sorted indices into GroundProgram::crRules
    std::vector<SeedSet> witnessModels;
    bool complete = true; // witness enumeration was not cut short
};

/// Ground cr-rule identity: `head@line[X=c,...]`.
std::string supportLabel(const GroundProgram& g, std::size_t crIndex);
std::string supportLabel(const GroundProgram& g, const AbductiveSupport& s);

struct CrAnswer {
    SeedSet model;
    std::size_t support = 0; // index into CrResult::supports
};

struct CrResult {
    std::vector<AbductiveSupport> supports;
    std::vector<CrAnswer> answers;
    bool complete = true;
    bool budgetExceeded = false;
};

struct CrOptions {
    SolveLimits limits;
    SolverOptions solver;
    /// Report each distinct model once, under the first support reaching it.
    bool distinct = false;
};

/// Minimal supports in non-decreasing cardinality, each with every answer set
/// of its program (not limited by maxModels).
CrResult abductiveSupports(const GroundProgram& g, const CrOptions& opts = {});

/// Answer sets tagged with their support, honouring maxModels and distinct.
CrResult solveCr(const GroundProgram& g, const CrOptions& opts = {});

} // namespace aspf
