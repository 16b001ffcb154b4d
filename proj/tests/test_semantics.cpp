#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace aspf;
using testing::groundText;
using testing::seeds;

namespace {

// An ordering comparison reads bare names as functions.
Term term(const std::string& text) { return parse(":- 0 < " + text + ".").rules.at(0).pos.at(0).tatom().rhs; }

Literal cmp(const std::string& lhs, CmpOp op, const std::string& rhs) {
    return Literal::tatom(Term::function(lhs), op, Term::function(rhs));
}

Literal lit(const std::string& text) { return parse(":- " + text + ".").rules.at(0).pos.at(0); }

const char* kSample = "p :- f = 2, not g = 1, not h = 0.\n"
                   "q :- p, not g != 2.\n"
                   "g = 3.\n"
                   "f = 2.\n";

} // namespace

TEST_CASE("tryInsert") {
    const SeedSet base = seeds("q f=3");
    const auto added = tryInsert(base, *toSeedLiteral(lit("g = 2")));
    REQUIRE(added);
    CHECK(*added == seeds("q f=3 g=2"));
    CHECK_FALSE(tryInsert(base, *toSeedLiteral(lit("f = 2"))));
    CHECK_FALSE(tryInsert(seeds("p"), *toSeedLiteral(lit("-p"))));
    CHECK(*tryInsert(SeedSet{}, *toSeedLiteral(lit("p"))) == seeds("p"));
    CHECK(base == seeds("q f=3"));
}

TEST_CASE("val") {
    const SeedSet s2 = seeds("q f=3 g=2");
    CHECK(val(term("f"), s2) == Constant::integer(3));
    CHECK(val(term("g"), s2) == Constant::integer(2));
    CHECK_FALSE(val(term("g"), seeds("p -q f=3")).has_value());
    CHECK(val(term("|f - g|"), s2) == Constant::integer(1));
    CHECK_FALSE(val(term("f + h"), s2).has_value());
    CHECK_FALSE(val(term("f / (g - 2)"), s2).has_value());
    CHECK(val(term("(f + g) / 2"), s2) == Constant::integer(2));
    CHECK_THROWS_AS(val(term("f + 1"), seeds("f=a")), EvalError);
}

TEST_CASE("satisfies") {
    const SeedSet s2 = seeds("q f=3 g=2");
    CHECK(satisfies(s2, cmp("f", CmpOp::Ne, "g")));
    CHECK_FALSE(satisfies(s2, cmp("f", CmpOp::Eq, "g")));
    CHECK_FALSE(satisfies(s2, cmp("f", CmpOp::Ne, "h")));
    CHECK(satisfies(s2, lit("q")));
    CHECK_FALSE(satisfies(s2, lit("-q")));
    CHECK(satisfies(seeds("f=a g=b"), cmp("f", CmpOp::Ne, "g")));
    CHECK_THROWS_AS(satisfies(seeds("f=a g=b"), lit("f < g")), EvalError);
}

TEST_CASE("satisfiesExtended") {
    const SeedSet s2 = seeds("q f=3 g=2");
    CHECK(satisfiesExtended(s2, cmp("f", CmpOp::Eq, "h"), true));
    const SeedSet withQ = seeds("g=3 f=2 p q");
    CHECK_FALSE(satisfiesExtended(withQ, lit("g != 2"), true));
    CHECK(satisfiesExtended(withQ, lit("h = 0"), true));
    CHECK(satisfiesExtended(withQ, lit("p"), false));
}

TEST_CASE("positiveAnswerSet") {
    const auto a = positiveAnswerSet(groundText("p :- f = 2. f = 2. q :- q.").rules);
    REQUIRE(a);
    CHECK(*a == seeds("f=2 p"));
    CHECK_FALSE(positiveAnswerSet(groundText("f = 3. f = 2 :- q. q.").rules));
    const auto r = positiveAnswerSet(groundText("p :- f = 2. g = 3. f = 2.").rules);
    REQUIRE(r);
    CHECK(*r == seeds("f=2 g=3 p"));
    CHECK_THROWS_AS(positiveAnswerSet(groundText("p :- not q.").rules), std::invalid_argument);
    CHECK_FALSE(positiveAnswerSet(groundText("p. -p.").rules));
}

TEST_CASE("reduct of the example program") {
    const auto g = groundText(kSample);
    const SeedSet withQ = seeds("g=3 f=2 p q");
    const auto red = reduct(g.rules, withQ);
    REQUIRE(red.size() == 3);
    CHECK(red[0].toString() == "p :- f=2.");
    CHECK(red[1].toString() == "g=3.");
    CHECK(red[2].toString() == "f=2.");

    const SeedSet withH = seeds("g=3 f=2 p q h=1");
    CHECK(reduct(g.rules, withH) == red);

    const auto positive = groundText("p :- f = 2. f = 2. q :- q.");
    CHECK(reduct(positive.rules, seeds("p q")) == positive.rules);
}

TEST_CASE("isAnswerSet") {
    const auto g = groundText(kSample);
    CHECK(isAnswerSet(g, seeds("f=2 g=3 p")));
    // The example's set also lists q, which the reduct never derives.
    CHECK_FALSE(isAnswerSet(g, seeds("f=2 g=3 p q")));
    CHECK_FALSE(isAnswerSet(g, seeds("f=2 g=3 p h=1")));
    CHECK_FALSE(isAnswerSet(groundText("a."), SeedSet{}));
    CHECK(isAnswerSet(groundText(""), SeedSet{}));
}

TEST_CASE("toString hides reserved names and sorts") {
    SeedSet s = seeds("q f=2 -p(a)");
    s.insert(SeedLiteral::atom(GroundName{"__c0_x", {}}));
    CHECK(s.toString() == "-p(a) f=2 q");
}

TEST_CASE("positive fixpoint equals the unique minimal closed set") {
    int consistent = 0;
    testing::rnd::Generator gen(7);
    for (int i = 0; i < 300; ++i) {
        const auto rp = gen.program(10, 12, true, false);
        const auto g = groundText(testing::rnd::text(rp));
        const auto fix = positiveAnswerSet(g.rules);
        const auto brute = testing::rnd::bruteForceMinimalClosed(rp);
        CAPTURE(testing::rnd::text(rp));
        if (!fix) {
            CHECK(brute.empty());
            continue;
        }
        ++consistent;
        CHECK(brute == std::set<std::string>{fix->toString()});

        std::mt19937_64 rng(i);
        for (int k = 0; k < 5; ++k) {
            auto shuffled = g.rules;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            CHECK(positiveAnswerSet(shuffled) == fix);
        }
    }
    CHECK(consistent > 100);
}
