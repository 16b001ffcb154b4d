// Acceptance checks: one PASS/FAIL line per criterion with its wall time.
// Exits non-zero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <sstream>

#include "../tests/support.hpp"

using namespace aspf;
using testing::groundText;
using testing::modelTexts;
using testing::seeds;

namespace {

const char* kSample = "p :- f = 2, not g = 1, not h = 0.\n"
                   "q :- p, not g != 2.\n"
                   "g = 3.\n"
                   "f = 2.\n";

std::string readCorpus(const std::string& name) {
    std::ifstream in(testing::corpusPath(name));
    if (!in) throw std::runtime_error("missing corpus file " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Collects the first failed expectation of a criterion.
struct Check {
    std::string failure;
    void expect(bool ok, const std::string& what) {
        if (!ok && failure.empty()) failure = what;
    }
};

std::size_t instancesOfLine(const GroundProgram& g, unsigned line) {
    for (const auto& r : stats(g).rules) {
        if (r.loc.line == line) return r.instances;
    }
    return 0;
}

std::string valueOf(const SeedSet& s, const std::string& fn, const std::string& arg) {
    const auto v = s.valueOf(GroundName{fn, {Constant::symbol(arg)}});
    return v ? v->toString() : "undefined";
}

void exampleProgram(Check& c) {
    const auto g = groundText(kSample);
    c.expect(modelTexts(solve(g).models) == std::set<std::string>{"f=2 g=3 p"}, "sample program does not yield exactly {f=2 g=3 p}");

    const auto red = reduct(g.rules, seeds("g=3 f=2 p q"));
    std::vector<std::string> texts;
    for (const auto& r : red) texts.push_back(r.toString());
    c.expect(texts == std::vector<std::string>{"p :- f=2.", "g=3.", "f=2."}, "reduct of the sample program differs");

    const auto v = checkModel(g, seeds("g=3 f=2 p q h=1"));
    c.expect(v.kind == ModelVerdict::Kind::NotReproduced, "verdict for the set with h=1 is " + v.toString());
}

void toyPrograms(Check& c) {
    const auto g = groundText("p :- f = 2. f = 2. q :- q.");
    c.expect(modelTexts(solve(g).models) == std::set<std::string>{"f=2 p"}, "first toy program");

    RunConfig config;
    config.inputs = {testing::corpusPath("no_answer_set.aspf")};
    const auto o = run(config);
    c.expect(o.status == exit_code::kUnsatisfiable, "exit status " + std::to_string(o.status));
    c.expect(o.out == "UNSATISFIABLE\n", "output " + o.out);
}

void oracleEquivalence(Check& c) {
    testing::rnd::Generator gen(20240601);
    int tAtoms = 0;
    int byCount[3] = {0, 0, 0};
    for (int i = 0; i < 1000; ++i) {
        const auto rp = gen.program(10, 12);
        const std::string text = testing::rnd::text(rp);
        const auto g = groundText(text);
        c.expect(headUniverse(g).size() <= 10, "more than 10 head seed literals:\n" + text);
        const auto solved = modelTexts(solve(g).models);
        c.expect(solved == modelTexts(oracleSolve(g)), "solve vs oracleSolve:\n" + text);
        c.expect(solved == testing::rnd::bruteForceAnswerSets(rp), "solve vs independent enumeration:\n" + text);
        tAtoms += text.find('=') != std::string::npos ? 1 : 0;
        ++byCount[std::min<std::size_t>(solved.size(), 2)];
    }
    std::printf("     random suite: %d unsatisfiable, %d unique, %d with several models\n", byCount[0], byCount[1], byCount[2]);
    c.expect(tAtoms > 500, "too few programs with t-atoms");
    // The suite must exercise unsatisfiable, unique and multiple-model programs.
    for (int k = 0; k < 3; ++k) c.expect(byCount[k] >= 40, "suite lacks programs with " + std::to_string(k) + " models");
}

void positiveFixpoint(Check& c) {
    testing::rnd::Generator gen(11);
    int consistent = 0;
    for (int i = 0; consistent < 250 && i < 5000; ++i) {
        const auto rp = gen.program(10, 12, true, false);
        const auto g = groundText(testing::rnd::text(rp));
        const auto fix = positiveAnswerSet(g.rules);
        const auto brute = testing::rnd::bruteForceMinimalClosed(rp);
        if (!fix) {
            c.expect(brute.empty(), "fixpoint failed but a closed set exists:\n" + testing::rnd::text(rp));
            continue;
        }
        ++consistent;
        c.expect(brute == std::set<std::string>{fix->toString()}, "fixpoint differs:\n" + testing::rnd::text(rp));
        std::mt19937_64 rng(i);
        for (int k = 0; k < 10; ++k) {
            auto shuffled = g.rules;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            c.expect(positiveAnswerSet(shuffled) == fix, "order dependence:\n" + testing::rnd::text(rp));
        }
    }
    c.expect(consistent >= 200, "only " + std::to_string(consistent) + " consistent programs");
}

void dependents(Check& c) {
    const auto d = groundText(readCorpus("dependents_default.aspf"));
    const auto models = solve(d).models;
    c.expect(models.size() == 4, "default program has " + std::to_string(models.size()) + " models");
    c.expect(modelTexts(models) == modelTexts(oracleSolve(d)), "default program differs from oracle");

    const auto one = solveCr(groundText(readCorpus("dependents_cr.aspf")));
    c.expect(one.answers.size() == 1, "cr program has " + std::to_string(one.answers.size()) + " models");
    if (one.answers.size() == 1) {
        c.expect(valueOf(one.answers[0].model, "dependents", "p1") == "3", "dependents(p1) != 3");
        c.expect(one.supports[one.answers[0].support].crRules.empty(), "support is not empty");
    }

    const auto two = solveCr(groundText(readCorpus("dependents_cr_two.aspf")));
    c.expect(two.answers.size() == 4, "second person: " + std::to_string(two.answers.size()) + " models");
    for (const auto& a : two.answers) {
        c.expect(two.supports[a.support].crRules.size() == 1, "support is not a singleton");
    }
}

void antichain(Check& c) {
    std::vector<std::string> texts;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(ASPF_CORPUS_DIR)) {
        if (entry.path().extension() != ".aspf") continue;
        texts.push_back(std::filesystem::relative(entry.path(), ASPF_CORPUS_DIR).string());
    }
    std::sort(texts.begin(), texts.end());
    int crPrograms = 0;
    for (const auto& name : texts) {
        const auto g = groundText(readCorpus(name));
        if (!g.hasCrRules()) continue;
        ++crPrograms;
        const auto r = abductiveSupports(g);
        c.expect(r.complete && !r.supports.empty(), name + ": no supports");
        for (std::size_t i = 0; i < r.supports.size(); ++i) {
            const auto& a = r.supports[i].crRules;
            for (std::size_t j = 0; j < r.supports.size(); ++j) {
                const auto& b = r.supports[j].crRules;
                if (i != j) c.expect(!std::includes(b.begin(), b.end(), a.begin(), a.end()), name + ": comparable supports");
            }
            // Every proper subset, by bitmask over the support's members.
            for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << a.size()); ++mask) {
                std::vector<std::size_t> subset;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    if (mask & (std::size_t{1} << k)) subset.push_back(a[k]);
                }
                c.expect(solve(withCrRules(g, subset), SolveLimits{1, 0.0}).models.empty(),
                         name + ": proper subset of " + supportLabel(g, r.supports[i]) + " is consistent");
            }
        }
    }
    c.expect(crPrograms >= 2, "fewer than two cr programs in the corpus");
}

void queens(Check& c) {
    for (int n : {4, 5}) {
        const auto start = std::chrono::steady_clock::now();
        const auto r = solve(groundText(readCorpus("queens_" + std::to_string(n) + ".aspf")));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto expected = static_cast<std::size_t>(testing::bruteForceQueens(n));
        c.expect(r.models.size() == expected, "n=" + std::to_string(n) + ": " + std::to_string(r.models.size()) +
                                                  " models, expected " + std::to_string(expected));
        c.expect(secs < 60.0, "n=" + std::to_string(n) + " took too long");
    }
}

void groundingSize(Check& c) {
    const std::string functional = readCorpus("grounding/queens_functional.aspf");
    const std::string relational = readCorpus("grounding/queens_relational.aspf");
    GroundOptions keep;
    keep.eliminateStaticGuards = false;
    for (int n : {4, 6, 8, 12}) {
        std::size_t pairs = 0;
        for (int a = 1; a <= n; ++a) {
            for (int b = a + 1; b <= n; ++b) ++pairs;
        }
        const auto f = instancesOfLine(groundText(functional + testing::queensFacts(n, true)), 7);
        c.expect(f == pairs, "functional n=" + std::to_string(n) + ": " + std::to_string(f));

        // queen(X1,Y1), queen(X2,Y2) over all candidate atoms with the guards kept.
        std::size_t substitutions = 0;
        for (int x1 = 1; x1 <= n; ++x1)
            for (int y1 = 1; y1 <= n; ++y1)
                for (int x2 = 1; x2 <= n; ++x2)
                    for (int y2 = 1; y2 <= n; ++y2) ++substitutions;
        const auto r = instancesOfLine(groundText(relational + testing::queensFacts(n, false), keep), 6);
        c.expect(r == substitutions, "relational n=" + std::to_string(n) + ": " + std::to_string(r));
    }
}

std::set<std::string> renamedFluents(const std::vector<SeedSet>& models) {
    static const std::regex val(R"(val\(volume\((\w+)\),(\d+)\))");
    std::set<std::string> out;
    for (const auto& m : models) {
        std::vector<std::string> tokens;
        std::istringstream in(std::regex_replace(formatModel(m), val, "volume($1,$2)"));
        for (std::string t; in >> t;) {
            if (t.rfind("num_fluent(", 0) != 0) tokens.push_back(t);
        }
        std::sort(tokens.begin(), tokens.end());
        std::string line;
        for (const auto& t : tokens) line += (line.empty() ? "" : " ") + t;
        out.insert(line);
    }
    return out;
}

void waterBuckets(Check& c) {
    const auto plain = solve(groundText(readCorpus("water_buckets.aspf"))).models;
    bool found = false;
    for (const auto& m : plain) {
        const bool poured = m.contains(SeedLiteral::atom(
            GroundName{"pour", {Constant::symbol("a"), Constant::integer(0), Constant::integer(2)}}));
        const auto a = m.valueOf(GroundName{"volume", {Constant::symbol("a"), Constant::integer(1)}});
        const auto b = m.valueOf(GroundName{"volume", {Constant::symbol("b"), Constant::integer(1)}});
        found = found || (poured && a && b && *a == *b);
    }
    c.expect(found, "no model pours 2 into a and balances");
    const auto fluent = solve(groundText(readCorpus("water_buckets_fluent.aspf"))).models;
    c.expect(renamedFluents(fluent) == renamedFluents(plain), "inertia forms give different model sets");
}

void determinism(Check& c) {
    RunConfig config;
    config.mode = Mode::Corpus;
    config.inputs = {ASPF_CORPUS_DIR};
    const auto first = run(config);
    const auto second = run(config);
    c.expect(first.status == exit_code::kSatisfiable, "corpus run failed:\n" + first.out + first.err);
    c.expect(first.out == second.out && first.err == second.err, "corpus output differs between runs");

    RunConfig solveConfig;
    solveConfig.inputs = {testing::corpusPath("queens_5.aspf")};
    c.expect(run(solveConfig).out == run(solveConfig).out, "queens output differs between runs");
}

struct Criterion {
    std::string name;
    std::function<void(Check&)> run;
    int seconds; // wall-clock limit, 0 for none
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"example program: model, reduct, rejected set", exampleProgram, 1},
        {"toy programs", toyPrograms, 1},
        {"solver equals oracle on random programs", oracleEquivalence, 300},
        {"positive fixpoint is the minimal closed set", positiveFixpoint, 120},
        {"dependents scenarios", dependents, 5},
        {"abductive supports are minimal", antichain, 30},
        {"n-queens counts", queens, 120},
        {"diagonal constraint grounding size", groundingSize, 0},
        {"water buckets", waterBuckets, 10},
        {"deterministic corpus output", determinism, 0},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criteria[i].seconds > 0 && secs > criteria[i].seconds) {
            c.expect(false, "exceeded " + std::to_string(criteria[i].seconds) + "s");
        }
        const bool ok = c.failure.empty();
        failed += ok ? 0 : 1;
        std::printf("%s %2zu %s (%.2fs)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), secs);
        if (!ok) std::printf("     %s\n", c.failure.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
