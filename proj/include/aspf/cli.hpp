// Command-line driver: modes, exit codes, model formatting and the corpus runner.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aspf/crsolver.hpp"

namespace aspf {

namespace exit_code {
inline constexpr int kSatisfiable = 10;
inline constexpr int kUnsatisfiable = 20;
inline constexpr int kInput = 65;
inline constexpr int kInternal = 70;
inline constexpr int kBudget = 75;
} // namespace exit_code

enum class Mode { Solve, Ground, Stats, Check, Corpus };

std::optional<Mode> parseMode(const std::string& text);

struct RunConfig {
    Mode mode = Mode::Solve;
    std::vector<std::string> inputs; // program files; the corpus directory in corpus mode
    std::size_t maxModels = 0;
    double timeBudgetSeconds = 0.0;
    bool distinct = false;
    bool oracle = false;
    std::vector<std::string> shows; // `name/arity`, added to the program's #show directives
    std::optional<std::string> modelFile;
    bool eliminateStaticGuards = true;
};

struct RunOutput {
    int status = 0;
    std::string out;
    std::string err;
};

RunOutput run(const RunConfig& config);

/// Literal texts sorted lexicographically; with `shows` non-empty only the
/// listed name/arity pairs survive.
std::string formatModel(const SeedSet& s, const std::vector<ShowDirective>& shows = {});

/// Reads files and parses them as one program. Throws ParseError or Error.
Program loadProgram(const std::vector<std::string>& paths);

/// One model per line in formatModel order, lines sorted.
std::string formatExpected(const std::vector<std::string>& models);
std::vector<std::string> readExpected(const std::string& text);

struct CorpusEntry {
    std::string name;
    bool passed = false;
    std::size_t expected = 0;
    std::size_t actual = 0;
    std::string detail;
};

struct CorpusReport {
    std::vector<CorpusEntry> entries;
    bool allPassed() const;
    std::string toString() const;
};

/// Runs every `*.aspf` in `directory` against its `.expected` sibling.
/// Throws Error when an expected file is missing.
CorpusReport runCorpus(const std::string& directory, const RunConfig& base = {});

} // namespace aspf
