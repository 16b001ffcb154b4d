#include <iostream>

#include "CLI11.hpp"
#include "aspf/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"aspfcr: answer sets of ASP{f,cr} programs"};
    std::string mode;
    aspf::RunConfig config;
    bool keepGuards = false;

    app.add_option("mode", mode, "solve | ground | stats | check | corpus")->required();
    app.add_option("files", config.inputs, "program files (corpus: one directory)");
    app.add_option("--models,-n", config.maxModels, "stop after N models (0: all)");
    app.add_option("--time", config.timeBudgetSeconds, "time budget in seconds (0: unlimited)");
    app.add_flag("--distinct", config.distinct, "print each model once across supports");
    app.add_flag("--oracle", config.oracle, "cross-check the solver against brute force");
    app.add_option("--show", config.shows, "only print name/arity (repeatable)");
    app.add_option("--model", config.modelFile, "candidate model file (check mode)");
    app.add_flag("--keep-guards", keepGuards, "do not evaluate constant comparisons while grounding");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : aspf::exit_code::kInput;
    }
    const auto m = aspf::parseMode(mode);
    if (!m) {
        std::cerr << "unknown mode '" << mode << "'\n";
        return aspf::exit_code::kInput;
    }
    config.mode = *m;
    config.eliminateStaticGuards = !keepGuards;

    const aspf::RunOutput out = aspf::run(config);
    std::cout << out.out;
    std::cerr << out.err;
    return out.status;
}
