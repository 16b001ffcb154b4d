#include "aspf/crsolver.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

namespace aspf {

Rule alpha(const Rule& r) {
    if (r.kind != RuleKind::Cr) throw std::invalid_argument("alpha applied to a regular rule: " + r.toString());
    Rule out = r;
    out.kind = RuleKind::Regular;
    return out;
}

GroundProgram withCrRules(const GroundProgram& g, const std::vector<std::size_t>& support) {
    GroundProgram out = g;
    out.crRules.clear();
    out.crProvenance.clear();
    for (std::size_t i : support) {
        out.rules.push_back(alpha(g.crRules.at(i)));
        out.provenance.push_back(g.crProvenance.at(i));
    }
    return out;
}

std::string supportLabel(const GroundProgram& g, std::size_t crIndex) {
    const auto& p = g.crProvenance.at(crIndex);
    const auto& src = g.sources.at(p.source);
    return src.label + "@" + std::to_string(src.loc.line) + "[" + toString(p.substitution) + "]";
}

std::string supportLabel(const GroundProgram& g, const AbductiveSupport& s) {
    std::vector<std::string> labels;
    for (std::size_t i : s.crRules) labels.push_back(supportLabel(g, i));
    std::sort(labels.begin(), labels.end());
    std::string out = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? ", " : "") + labels[i];
    return out + "}";
}

namespace {

using Clock = std::chrono::steady_clock;

bool includes(const std::vector<std::size_t>& super, const std::vector<std::size_t>& sub) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// Advances `c` to the next k-combination of {0..n-1} in lexicographic order.
bool nextCombination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

CrResult abductiveSupports(const GroundProgram& g, const CrOptions& opts) {
    CrResult result;
    const std::size_t n = g.crRules.size();
    const auto start = Clock::now();

    auto remaining = [&]() -> std::optional<double> {
        if (opts.limits.timeBudgetSeconds <= 0) return 0.0;
        const double left =
            opts.limits.timeBudgetSeconds - std::chrono::duration<double>(Clock::now() - start).count();
        if (left <= 0) return std::nullopt;
        return left;
    };

    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> candidate(k);
        for (std::size_t i = 0; i < k; ++i) candidate[i] = i;
        bool anyFresh = false;
        do {
            const bool dominated = std::any_of(result.supports.begin(), result.supports.end(),
                                               [&](const AbductiveSupport& s) { return includes(candidate, s.crRules); });
            if (dominated) continue;
            anyFresh = true;

            const auto left = remaining();
            if (!left) {
                result.complete = false;
                result.budgetExceeded = true;
                return result;
            }
            SolveLimits limits;
            limits.timeBudgetSeconds = *left;
            SolveResult r = solve(withCrRules(g, candidate), limits, opts.solver);
            if (r.budgetExceeded) {
                result.complete = false;
                result.budgetExceeded = true;
                return result;
            }
            if (!r.models.empty()) result.supports.push_back({candidate, std::move(r.models), r.complete});
        } while (k > 0 && nextCombination(candidate, n));
        // Every k-subset already contains a support, hence so does every larger one.
        if (!anyFresh) break;
    }
    return result;
}

CrResult solveCr(const GroundProgram& g, const CrOptions& opts) {
    if (!g.hasCrRules()) {
        SolveResult r = solve(g, opts.limits, opts.solver);
        CrResult out;
        out.complete = r.complete;
        out.budgetExceeded = r.budgetExceeded;
        if (!r.models.empty()) {
            out.supports.push_back({{}, r.models, r.complete});
            for (auto& m : r.models) out.answers.push_back({std::move(m), 0});
        }
        return out;
    }

    CrResult out = abductiveSupports(g, opts);
    std::set<SeedSet> seen;
    for (std::size_t i = 0; i < out.supports.size(); ++i) {
        for (const auto& m : out.supports[i].witnessModels) {
            if (opts.distinct && !seen.insert(m).second) continue;
            if (opts.limits.maxModels && out.answers.size() >= opts.limits.maxModels) {
                out.complete = false;
                return out;
            }
            out.answers.push_back({m, i});
        }
    }
    return out;
}

} // namespace aspf
