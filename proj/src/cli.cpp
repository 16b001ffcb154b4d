#include "aspf/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace aspf {

namespace fs = std::filesystem;

std::optional<Mode> parseMode(const std::string& text) {
    if (text == "solve") return Mode::Solve;
    if (text == "ground") return Mode::Ground;
    if (text == "stats") return Mode::Stats;
    if (text == "check") return Mode::Check;
    if (text == "corpus") return Mode::Corpus;
    return std::nullopt;
}

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool shown(const SeedLiteral& l, const std::vector<ShowDirective>& shows) {
    if (isReservedName(l.name.name)) return false;
    if (shows.empty()) return true;
    return std::any_of(shows.begin(), shows.end(), [&](const ShowDirective& d) {
        return d.name == l.name.name && d.arity == static_cast<int>(l.name.args.size());
    });
}

ShowDirective parseShow(const std::string& text) {
    const auto slash = text.rfind('/');
    if (slash == std::string::npos) throw Error("--show expects name/arity, got '" + text + "'");
    try {
        return {text.substr(0, slash), std::stoi(text.substr(slash + 1))};
    } catch (const std::exception&) {
        throw Error("--show expects name/arity, got '" + text + "'");
    }
}

std::vector<ShowDirective> showsOf(const GroundProgram& g, const RunConfig& config) {
    std::vector<ShowDirective> shows = g.shows;
    for (const auto& s : config.shows) shows.push_back(parseShow(s));
    return shows;
}

std::string sameModels(std::vector<SeedSet> a, std::vector<SeedSet> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) return "";
    return "solver found " + std::to_string(a.size()) + " models, oracle " + std::to_string(b.size());
}

// Empty when solver and oracle agree or the oracle does not apply; else a message.
std::string oracleDisagreement(const GroundProgram& g, const CrResult& r, std::string& note) {
    if (!r.complete) {
        note = "oracle comparison skipped: search incomplete";
        return "";
    }
    try {
        if (!g.hasCrRules()) {
            std::vector<SeedSet> models;
            for (const auto& a : r.answers) models.push_back(a.model);
            return sameModels(models, oracleSolve(g));
        }
        for (const auto& s : r.supports) {
            if (auto d = sameModels(s.witnessModels, oracleSolve(withCrRules(g, s.crRules))); !d.empty()) {
                return d + " under support " + supportLabel(g, s);
            }
        }
    } catch (const UniverseTooLarge& e) {
        note = std::string("oracle comparison skipped: ") + e.what();
    }
    return "";
}

RunOutput solveMode(const GroundProgram& g, const RunConfig& config) {
    RunOutput o;
    CrOptions opts;
    opts.limits = {config.maxModels, config.timeBudgetSeconds};
    opts.distinct = config.distinct;
    const CrResult r = solveCr(g, opts);
    const auto shows = showsOf(g, config);

    std::ostringstream out;
    for (std::size_t i = 0; i < r.answers.size(); ++i) {
        out << "Answer: " << i + 1 << "\n" << formatModel(r.answers[i].model, shows) << "\n";
        if (g.hasCrRules()) out << "Support: " << supportLabel(g, r.supports[r.answers[i].support]) << "\n";
    }
    if (r.budgetExceeded) {
        out << "UNKNOWN\n";
        o.status = exit_code::kBudget;
        o.err = "time budget exceeded; results are incomplete\n";
    } else if (r.answers.empty()) {
        out << "UNSATISFIABLE\n";
        o.status = exit_code::kUnsatisfiable;
    } else {
        out << "SATISFIABLE\n";
        o.status = exit_code::kSatisfiable;
    }
    o.out = out.str();

    if (config.oracle && !r.budgetExceeded) {
        std::string note;
        if (const auto d = oracleDisagreement(g, r, note); !d.empty()) {
            o.err += "internal error: " + d + "\n";
            o.status = exit_code::kInternal;
        } else if (!note.empty()) {
            o.err += note + "\n";
        }
    }
    return o;
}

RunOutput checkMode(const GroundProgram& g, const RunConfig& config) {
    if (!config.modelFile) throw Error("check mode needs --model FILE");
    SeedSet s;
    for (const auto& l : parseSeedLiterals(readFile(*config.modelFile))) {
        if (!s.insert(*toSeedLiteral(l))) throw Error("model file is inconsistent at " + l.toString());
    }
    RunOutput o;
    ModelVerdict v = checkModel(g, s);
    std::string suffix;
    if (!v.accepted() && g.hasCrRules()) {
        CrOptions opts;
        opts.limits.timeBudgetSeconds = config.timeBudgetSeconds;
        const CrResult r = abductiveSupports(g, opts);
        if (r.budgetExceeded) return {exit_code::kBudget, "", "time budget exceeded\n"};
        for (const auto& sup : r.supports) {
            if (std::find(sup.witnessModels.begin(), sup.witnessModels.end(), s) != sup.witnessModels.end()) {
                v = {ModelVerdict::Kind::AnswerSet, ""};
                suffix = " under support " + supportLabel(g, sup);
                break;
            }
        }
    }
    o.out = v.toString() + suffix + "\n";
    o.status = v.accepted() ? exit_code::kSatisfiable : exit_code::kUnsatisfiable;
    return o;
}

RunOutput corpusMode(const RunConfig& config) {
    if (config.inputs.size() != 1) throw Error("corpus mode takes exactly one directory");
    const CorpusReport report = runCorpus(config.inputs.front(), config);
    return {report.allPassed() ? exit_code::kSatisfiable : exit_code::kInternal, report.toString(), ""};
}

} // namespace

std::string formatModel(const SeedSet& s, const std::vector<ShowDirective>& shows) {
    std::vector<std::string> texts;
    for (const auto& l : s.literals()) {
        if (shown(l, shows)) texts.push_back(l.toString());
    }
    std::sort(texts.begin(), texts.end());
    std::string out;
    for (const auto& t : texts) out += (out.empty() ? "" : " ") + t;
    return out;
}

Program loadProgram(const std::vector<std::string>& paths) {
    if (paths.empty()) throw Error("no input files");
    Program merged;
    std::vector<Diagnostic> errors;
    for (const auto& path : paths) {
        SourceProgram src = parseSource(readFile(path), path);
        if (!src.ok()) {
            for (auto& d : src.diagnostics) {
                if (d.severity == Diagnostic::Severity::Error) {
                    d.file = path;
                    errors.push_back(d);
                }
            }
            continue;
        }
        auto& p = src.program;
        merged.rules.insert(merged.rules.end(), p.rules.begin(), p.rules.end());
        merged.choices.insert(merged.choices.end(), p.choices.begin(), p.choices.end());
        merged.shows.insert(merged.shows.end(), p.shows.begin(), p.shows.end());
    }
    if (!errors.empty()) throw ParseError(errors);
    merged.signature = collectSignature(merged.rules, merged.choices);
    return merged;
}

RunOutput run(const RunConfig& config) {
    try {
        if (config.mode == Mode::Corpus) return corpusMode(config);
        GroundOptions gopts;
        gopts.eliminateStaticGuards = config.eliminateStaticGuards;
        const GroundProgram g = ground(loadProgram(config.inputs), gopts);
        std::string warnings;
        for (const auto& w : g.warnings) warnings += w.toString() + "\n";

        RunOutput o;
        switch (config.mode) {
        case Mode::Ground: o = {exit_code::kSatisfiable, printGround(g), ""}; break;
        case Mode::Stats: o = {exit_code::kSatisfiable, statsCsv(stats(g)), ""}; break;
        case Mode::Check: o = checkMode(g, config); break;
        case Mode::Solve: o = solveMode(g, config); break;
        case Mode::Corpus: break;
        }
        o.err = warnings + o.err;
        return o;
    } catch (const ParseError& e) {
        std::string err;
        for (const auto& d : e.diagnostics()) err += d.toString() + "\n";
        return {exit_code::kInput, "", err};
    } catch (const Error& e) {
        return {exit_code::kInput, "", std::string("error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {exit_code::kInternal, "", std::string("internal error: ") + e.what() + "\n"};
    }
}

std::string formatExpected(const std::vector<std::string>& models) {
    std::vector<std::string> sorted = models;
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const auto& m : sorted) out += m + "\n";
    return out;
}

std::vector<std::string> readExpected(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '%') continue;
        out.push_back(line);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool CorpusReport::allPassed() const {
    return std::all_of(entries.begin(), entries.end(), [](const CorpusEntry& e) { return e.passed; });
}

std::string CorpusReport::toString() const {
    std::ostringstream out;
    std::size_t passed = 0;
    for (const auto& e : entries) {
        out << (e.passed ? "PASS " : "FAIL ") << e.name << " (" << e.actual << "/" << e.expected << " models)";
        if (!e.detail.empty()) out << " " << e.detail;
        out << "\n";
        passed += e.passed ? 1 : 0;
    }
    out << passed << "/" << entries.size() << " passed\n";
    return out.str();
}

CorpusReport runCorpus(const std::string& directory, const RunConfig& base) {
    std::vector<fs::path> programs;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".aspf") programs.push_back(entry.path());
    }
    std::sort(programs.begin(), programs.end());

    CorpusReport report;
    for (const auto& path : programs) {
        fs::path expectedPath = path;
        expectedPath.replace_extension(".expected");
        if (!fs::exists(expectedPath)) throw Error("missing expected file " + expectedPath.string());

        CorpusEntry e;
        e.name = path.filename().string();
        const auto expected = readExpected(readFile(expectedPath.string()));
        e.expected = expected.size();

        RunConfig config = base;
        config.mode = Mode::Solve;
        config.inputs = {path.string()};
        config.maxModels = 0;
        try {
            const GroundProgram g = ground(loadProgram(config.inputs));
            CrOptions opts;
            opts.limits.timeBudgetSeconds = base.timeBudgetSeconds;
            opts.distinct = base.distinct;
            const CrResult r = solveCr(g, opts);
            const auto shows = showsOf(g, config);
            std::vector<std::string> actual;
            for (const auto& a : r.answers) {
                std::string line = formatModel(a.model, shows);
                if (g.hasCrRules()) line += " | " + supportLabel(g, r.supports[a.support]);
                actual.push_back(line);
            }
            std::sort(actual.begin(), actual.end());
            e.actual = actual.size();
            if (r.budgetExceeded) e.detail = "time budget exceeded";
            else if (actual != expected) e.detail = "model sets differ";
            else e.passed = true;
        } catch (const ParseError& err) {
            e.detail = err.diagnostics().empty() ? "parse error" : err.diagnostics().front().toString();
        } catch (const std::exception& err) {
            e.detail = err.what();
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

} // namespace aspf
