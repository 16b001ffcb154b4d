#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"

using namespace aspf;
namespace fs = std::filesystem;

namespace {

// A scratch file removed when the guard goes out of scope.
struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path(fs::temp_directory_path() / ("aspf_test_" + name)) {
        std::ofstream(path) << content;
    }
    ~TempFile() { fs::remove(path); }
};

RunOutput solveText(const std::string& name, const std::string& text, RunConfig config = {}) {
    TempFile f(name, text);
    config.inputs = {f.path.string()};
    return run(config);
}

} // namespace

TEST_CASE("parseMode") {
    CHECK(parseMode("solve") == Mode::Solve);
    CHECK(parseMode("corpus") == Mode::Corpus);
    CHECK_FALSE(parseMode("Solve"));
}

TEST_CASE("run: satisfiable output") {
    RunConfig c;
    c.inputs = {testing::corpusPath("example2_reduct.aspf")};
    const auto o = run(c);
    CHECK(o.status == exit_code::kSatisfiable);
    CHECK(o.out == "Answer: 1\nf=2 g=3 p\nSATISFIABLE\n");
    CHECK(o.err.empty());
}

TEST_CASE("run: unsatisfiable") {
    const auto o = solveText("unsat.aspf", "f = 3. f = 2 :- q. q.");
    CHECK(o.status == exit_code::kUnsatisfiable);
    CHECK(o.out == "UNSATISFIABLE\n");
}

TEST_CASE("run: cr programs print supports") {
    RunConfig c;
    c.inputs = {testing::corpusPath("dependents_cr.aspf")};
    c.shows = {"dependents/1"};
    const auto o = run(c);
    CHECK(o.status == exit_code::kSatisfiable);
    CHECK(o.out == "Answer: 1\ndependents(p1)=3\nSupport: {}\nSATISFIABLE\n");
}

TEST_CASE("run: input errors") {
    const auto bad = solveText("bad.aspf", "p :- q & r.");
    CHECK(bad.status == exit_code::kInput);
    CHECK(bad.err.find(":1:8") != std::string::npos);

    RunConfig missing;
    missing.inputs = {"/nonexistent/file.aspf"};
    CHECK(run(missing).status == exit_code::kInput);

    CHECK(solveText("unsafe.aspf", "p(X) :- not q(X).").status == exit_code::kInput);

    RunConfig show;
    show.shows = {"nope"};
    CHECK(solveText("show.aspf", "p.", show).status == exit_code::kInput);
}

TEST_CASE("run: time budget") {
    RunConfig c;
    c.inputs = {testing::corpusPath("queens_5.aspf")};
    c.timeBudgetSeconds = 1e-9;
    const auto o = run(c);
    CHECK(o.status == exit_code::kBudget);
    CHECK(o.out.find("UNKNOWN") != std::string::npos);
}

TEST_CASE("run: model limit and oracle") {
    RunConfig c;
    c.inputs = {testing::corpusPath("queens_4.aspf")};
    c.maxModels = 1;
    CHECK(run(c).out.find("Answer: 2") == std::string::npos);

    RunConfig o;
    o.inputs = {testing::corpusPath("dependents_cr_two.aspf")};
    o.oracle = true;
    const auto out = run(o);
    CHECK(out.status == exit_code::kSatisfiable);
}

TEST_CASE("run: stats csv for the diagonal constraint") {
    TempFile facts("facts4.aspf", testing::queensFacts(4, true));
    RunConfig c;
    c.mode = Mode::Stats;
    c.inputs = {testing::corpusPath("grounding/queens_functional.aspf"), facts.path.string()};
    const auto o = run(c);
    REQUIRE(o.status == exit_code::kSatisfiable);
    CHECK(o.out.find("\n7,") != std::string::npos);
    CHECK(o.out.find(",6\n", o.out.find("\n7,")) != std::string::npos);
}

TEST_CASE("run: ground mode prints a choice-free program that parses") {
    RunConfig c;
    c.mode = Mode::Ground;
    c.inputs = {testing::corpusPath("tax_bill.aspf")};
    const auto o = run(c);
    REQUIRE(o.status == exit_code::kSatisfiable);
    CHECK_NOTHROW(parse(o.out));
}

TEST_CASE("run: check mode") {
    RunConfig c;
    c.mode = Mode::Check;
    c.inputs = {testing::corpusPath("example2_reduct.aspf")};
    {
        TempFile m("good.model", "f=2 g=3 p");
        c.modelFile = m.path.string();
        const auto o = run(c);
        CHECK(o.status == exit_code::kSatisfiable);
        CHECK(o.out == "answer-set\n");
    }
    {
        TempFile m("bad.model", "f=2 g=3 p h=1");
        c.modelFile = m.path.string();
        const auto o = run(c);
        CHECK(o.status == exit_code::kUnsatisfiable);
        CHECK(o.out == "not-reproduced: {f=2 g=3 p}\n");
    }
    c.modelFile.reset();
    CHECK(run(c).status == exit_code::kInput);

    RunConfig cr;
    cr.mode = Mode::Check;
    cr.inputs = {testing::corpusPath("dependents_cr_two.aspf")};
    TempFile m("cr.model", "person(p1) person(p2) return_deps(p1,3) dom(0) dom(1) dom(2) dom(3) "
                           "dependents(p1)=3 dependents(p2)=2 has_dep_info(p1) has_dep_info(p2)");
    cr.modelFile = m.path.string();
    const auto o = run(cr);
    CHECK(o.status == exit_code::kSatisfiable);
    CHECK(o.out.find("under support {dependents(P)=D@12[D=2,P=p2]}") != std::string::npos);
}

TEST_CASE("expected files") {
    CHECK(formatExpected({"b", "a"}) == "a\nb\n");
    CHECK(readExpected("% comment\nb\na\n") == std::vector<std::string>{"a", "b"});
    CHECK(readExpected("\n") == std::vector<std::string>{""});
}

TEST_CASE("formatModel applies show directives") {
    const auto s = testing::seeds("p q(a) f=2 q(a,b)");
    CHECK(formatModel(s) == "f=2 p q(a) q(a,b)");
    CHECK(formatModel(s, {{"q", 1}, {"f", 0}}) == "f=2 q(a)");
}

TEST_CASE("corpus runs clean and byte-stable") {
    const auto first = runCorpus(ASPF_CORPUS_DIR);
    CHECK(first.allPassed());
    CHECK(first.entries.size() >= 10);
    CHECK(first.toString() == runCorpus(ASPF_CORPUS_DIR).toString());

    RunConfig c;
    c.mode = Mode::Corpus;
    c.inputs = {ASPF_CORPUS_DIR};
    const auto o = run(c);
    CHECK(o.status == exit_code::kSatisfiable);
    CHECK(o.out == first.toString());
}

TEST_CASE("corpus: a wrong expectation fails") {
    const fs::path dir = fs::temp_directory_path() / "aspf_corpus_test";
    fs::create_directories(dir);
    std::ofstream(dir / "a.aspf") << "p.";
    std::ofstream(dir / "a.expected") << "q\n";
    const auto r = runCorpus(dir.string());
    CHECK_FALSE(r.allPassed());
    CHECK(r.toString() == "FAIL a.aspf (1/1 models) model sets differ\n0/1 passed\n");
    fs::remove(dir / "a.expected");
    CHECK_THROWS_AS(runCorpus(dir.string()), Error);
    fs::remove_all(dir);
}
