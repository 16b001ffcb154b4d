#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace aspf;
using testing::groundText;

namespace {

std::size_t instancesOfLine(const GroundProgram& g, int line) {
    for (const auto& r : stats(g).rules) {
        if (static_cast<int>(r.loc.line) == line) return r.instances;
    }
    return 0;
}

std::string readCorpus(const std::string& name) {
    std::ifstream in(testing::corpusPath(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Pairs Q1 < Q2 over 1..n, counted directly.
std::size_t orderedPairs(int n) {
    std::size_t count = 0;
    for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) count += a < b ? 1 : 0;
    }
    return count;
}

bool folded(const Term& t) {
    if (t.kind == Term::Kind::Arith) {
        if (std::all_of(t.args.begin(), t.args.end(), [](const Term& a) { return a.kind == Term::Kind::Constant; }))
            return false;
    }
    if (t.kind == Term::Kind::Variable) return false;
    return std::all_of(t.args.begin(), t.args.end(), [](const Term& a) { return folded(a); });
}

bool folded(const Literal& l) {
    if (l.isRegular()) {
        const auto& args = l.regular().atom.args;
        return std::all_of(args.begin(), args.end(), [](const Term& a) { return folded(a); });
    }
    return folded(l.tatom().lhs) && folded(l.tatom().rhs);
}

} // namespace

TEST_CASE("ground: constant arithmetic in heads folds") {
    const auto g = groundText("r(3). q(2). p(X + Y) :- r(X), q(Y).");
    REQUIRE(g.rules.size() == 3);
    CHECK(g.rules[2].toString() == "p(5) :- r(3), q(2).");
}

TEST_CASE("ground: variable-free program is unchanged") {
    const std::string text = "p :- f = 2, not g = 1, not h = 0.\nq :- p, not g != 2.\ng = 3.\nf = 2.\n";
    const auto g = groundText(text);
    const Program p = parse(text);
    REQUIRE(g.rules.size() == p.rules.size());
    for (std::size_t i = 0; i < g.rules.size(); ++i) CHECK(g.rules[i] == p.rules[i]);
}

TEST_CASE("ground: no variables and fully folded arithmetic") {
    const auto g = groundText(readCorpus("water_buckets.aspf"));
    for (const auto& r : g.rules) {
        CAPTURE(r.toString());
        CHECK(r.variables().empty());
        CHECK(folded(r.head));
        for (const auto& l : r.pos) CHECK(folded(l));
        for (const auto& l : r.neg) CHECK(folded(l));
    }
}

TEST_CASE("ground: queens diagonal constraint has one instance per ordered pair") {
    std::ifstream in(testing::corpusPath("grounding/queens_functional.aspf"));
    std::stringstream ss;
    ss << in.rdbuf();
    for (int n : {4, 8}) {
        const auto g = groundText(ss.str() + testing::queensFacts(n, true));
        CHECK(instancesOfLine(g, 7) == orderedPairs(n));
    }
}

TEST_CASE("ground: dependent arithmetic stays symbolic") {
    const auto g = groundText("person(ann). current_year = 2012. birth_year(ann) = 1970.\n"
                              "old(P) :- person(P), current_year - birth_year(P) > 40.");
    CHECK(g.rules.back().toString() == "old(ann) :- person(ann), current_year-birth_year(ann)>40.");
}

TEST_CASE("ground: seed t-atoms bind variables") {
    const auto g = groundText("f(a) = 1. f(b) = 2. p(X, V) :- f(X) = V.");
    CHECK(g.rules.size() == 4);
    CHECK(g.rules[2].toString() == "p(a,1) :- f(a)=1.");
}

TEST_CASE("ground: safety and static errors") {
    CHECK_THROWS_AS(groundText("p(X) :- not q(X)."), GroundError);
    CHECK_THROWS_AS(groundText("p(X) :- X > 1."), GroundError);
    CHECK_THROWS_AS(groundText("d(1). p(X) :- d(X), X / 0 = 1."), GroundError);
    CHECK_THROWS_AS(groundText("d(a). d(b). p(X, Y) :- d(X), d(Y), X < Y."), GroundError);
    CHECK_THROWS_AS(groundText("d(a). p(X) :- d(X), Y = X + 1."), GroundError);
    CHECK_NOTHROW(groundText("d(a). d(b). p(X, Y) :- d(X), d(Y), X != Y."));
}

TEST_CASE("ground: static guards") {
    const std::string text = "d(1). d(2). d(3). p(X, Y) :- d(X), d(Y), X < Y.";
    const auto on = groundText(text);
    CHECK(on.rules.size() == 3 + 3);
    for (std::size_t i = 3; i < on.rules.size(); ++i) CHECK(on.rules[i].pos.size() == 2);

    GroundOptions keep;
    keep.eliminateStaticGuards = false;
    const auto off = groundText(text, keep);
    CHECK(off.rules.size() == 3 + 9);
    CHECK(off.rules.back().pos.size() == 3);
}

TEST_CASE("guard elimination preserves answer sets") {
    GroundOptions keep;
    keep.eliminateStaticGuards = false;
    for (const char* name : {"queens_4.aspf", "water_buckets.aspf", "tax_bill.aspf", "dependents_default.aspf"}) {
        CAPTURE(name);
        const Program p = parse(readCorpus(name));
        CHECK(testing::modelTexts(solve(ground(p)).models) == testing::modelTexts(solve(ground(p, keep)).models));
    }
}

TEST_CASE("expandChoice: pour candidates and bounds") {
    const auto g = groundText("bucket(a). bucket(b). time(0).\n"
                              "1 { pour(B, 0, K) : bucket(B) : K >= 1 : K <= 2 } 1 :- time(0).");
    REQUIRE(g.checks.size() == 1);
    const auto& c = g.checks[0];
    CHECK(c.lower == 1);
    CHECK(c.upper == 1);
    std::set<std::string> names;
    for (const auto& a : c.candidates) names.insert(a.toString());
    CHECK(names == std::set<std::string>{"pour(a,0,1)", "pour(a,0,2)", "pour(b,0,1)", "pour(b,0,2)"});
    CHECK(g.rules.size() == 3 + 2 * 4);
}

TEST_CASE("expandChoice: single candidate") {
    const auto g = groundText("b. 0 { x } 1 :- b.");
    CHECK(g.rules.size() == 1 + 2);
    REQUIRE(g.checks.size() == 1);
    CHECK(g.checks[0].lower == 0);
    CHECK(g.checks[0].upper == 1);
    CHECK(testing::modelTexts(solve(g).models) == std::set<std::string>{"b", "b x"});
}

TEST_CASE("expandChoice: empty candidate set warns and is unsatisfiable") {
    const auto g = groundText("1 { } 1.");
    CHECK_FALSE(g.warnings.empty());
    REQUIRE(g.checks.size() == 1);
    CHECK(g.checks[0].candidates.empty());
    CHECK(solve(g).models.empty());
}

TEST_CASE("stats") {
    SUBCASE("facts") {
        const auto s = stats(groundText("a. b. c(1). c(2)."));
        CHECK(s.totalRules == 4);
        CHECK(s.rules.size() == 4);
    }
    SUBCASE("totals equal the ground program") {
        const auto g = groundText(readCorpus("tax_bill.aspf"));
        const auto s = stats(g);
        CHECK(s.totalRules == g.rules.size());
        std::size_t sum = 0;
        for (const auto& r : s.rules) sum += r.cr ? 0 : r.instances;
        CHECK(sum == g.rules.size());
    }
    SUBCASE("cr-rules counted apart") {
        const auto g = groundText(readCorpus("dependents_cr_two.aspf"));
        CHECK(stats(g).totalCrRules == g.crRules.size());
        CHECK(g.crRules.size() == 8);
    }
    SUBCASE("csv") {
        const std::string csv = statsCsv(stats(groundText("p. q :- p.")));
        CHECK(csv.rfind("line,hash,instances\n", 0) == 0);
        CHECK(csv.find("\n1,") != std::string::npos);
    }
}

TEST_CASE("instance counts grow monotonically with the domain") {
    std::ifstream in(testing::corpusPath("grounding/queens_functional.aspf"));
    std::stringstream ss;
    ss << in.rdbuf();
    std::vector<std::size_t> previous;
    for (int n = 1; n <= 6; ++n) {
        const auto s = stats(groundText(ss.str() + testing::queensFacts(n, true)));
        std::vector<std::size_t> counts;
        for (std::size_t i = 0; i < 5; ++i) counts.push_back(s.rules[i].instances);
        if (!previous.empty()) {
            for (std::size_t i = 0; i < counts.size(); ++i) CHECK(counts[i] >= previous[i]);
        }
        previous = counts;
    }
}

TEST_CASE("printGround shows checks as comments") {
    const std::string out = printGround(groundText("b. 0 { x } 1 :- b."));
    CHECK(out.find("% bounds 0..1") != std::string::npos);
}

TEST_CASE("ground: recursive rules that extend the predicate being joined") {
    std::string text = "path(X, Y) :- e(X, Y).\npath(X, Z) :- path(X, Y), path(Y, Z).\n";
    const int n = 40;
    for (int i = 0; i < n; ++i) text += "e(" + std::to_string(i) + "," + std::to_string(i + 1) + "). ";
    const auto models = solve(groundText(text)).models;
    REQUIRE(models.size() == 1);
    std::size_t paths = 0;
    for (const auto& l : models[0].literals()) paths += l.name.name == "path" ? 1 : 0;
    CHECK(paths == static_cast<std::size_t>(n * (n + 1) / 2));
}
