// agrifoot: command-line front-end for territorial footprint scenarios.
//
//   agrifoot run <scenario.json> [--out DIR] [--seed N] [--threads N] [--format csv|tsv]
//   agrifoot compare <a.json> <b.json> ... [--out DIR]
//   agrifoot validate <scenario.json>
//
// Exit codes: 0 ok, 1 configuration error, 2 engine error, 3 Monte Carlo failure threshold exceeded.
// AGRIFOOT_OUTPUT_DIR overrides the scenario's output_dir (but not --out).

#include <cstdlib>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "agrifoot/errors.hpp"
#include "agrifoot/scenario.hpp"

namespace {

using namespace agrifoot;
namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kConfigError = 1, kEngineError = 2, kSensitivityAbort = 3 };

struct GlobalFlags {
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = 1;
    TableFormat format = TableFormat::csv;
};

RunOptions options_for(const GlobalFlags& flags)
{
    RunOptions opts;
    if (!flags.out.empty())
        opts.output_dir = flags.out;
    else if (const char* env = std::getenv("AGRIFOOT_OUTPUT_DIR"); env && *env)
        opts.output_dir = env;
    if (flags.seed_given) opts.seed = flags.seed;
    opts.threads = flags.threads;
    opts.format = flags.format;
    return opts;
}

int cmd_run(const std::string& path, const GlobalFlags& flags)
{
    const auto config = load_scenario(path);
    const auto opts = options_for(flags);
    const auto run = evaluate_scenario(config, opts);
    const fs::path dir = opts.output_dir.value_or(config.output_dir);
    const auto files = write_outputs(run, dir, opts.format);
    std::cout << summary_text(run);
    std::cout << "outputs    " << files.size() << " tables in " << dir.string() << '\n';
    return kOk;
}

int cmd_compare(const std::vector<std::string>& paths, const GlobalFlags& flags)
{
    if (paths.size() < 2) throw ConfigError("compare needs at least two scenario files");
    const auto opts = options_for(flags);
    std::vector<ScenarioRun> runs;
    for (const auto& p : paths) {
        RunOptions o = opts;
        runs.push_back(evaluate_scenario(load_scenario(p), o));
    }
    const Table table = compare_runs(runs);
    if (opts.output_dir) {
        fs::create_directories(*opts.output_dir);
        const fs::path out = *opts.output_dir / (opts.format == TableFormat::csv ? "comparison.csv" : "comparison.tsv");
        table.write_file(out.string(), opts.format);
        std::cout << "comparison written to " << out.string() << '\n';
    } else {
        table.write(std::cout, opts.format);
    }
    return kOk;
}

int cmd_validate(const std::string& path)
{
    const auto report = validate_scenario(path);
    if (report.ok()) {
        std::cout << "OK\n";
        return kOk;
    }
    for (const auto& issue : report.issues) std::cout << "ERROR " << issue << '\n';
    return kConfigError;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Territorial carbon footprint of digital agriculture deployments"};
    app.require_subcommand(1);

    GlobalFlags flags;
    std::string format = "csv";
    app.add_option("--out", flags.out, "Output directory (overrides config and AGRIFOOT_OUTPUT_DIR)");
    auto* seed_opt = app.add_option("--seed", flags.seed, "Monte Carlo seed (overrides config)");
    app.add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "tsv"}));

    std::string run_path, validate_path;
    std::vector<std::string> compare_paths;
    auto* run = app.add_subcommand("run", "Run one scenario and write its tables");
    run->add_option("config", run_path, "Scenario file")->required();
    auto* compare = app.add_subcommand("compare", "Compare scenarios side by side");
    compare->add_option("configs", compare_paths, "Scenario files")->required();
    auto* validate = app.add_subcommand("validate", "Check a scenario without computing it");
    validate->add_option("config", validate_path, "Scenario file")->required();

    // Global flags are accepted after the subcommand too.
    for (auto* sub : {run, compare, validate}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    flags.seed_given = seed_opt->count() > 0;
    flags.format = format == "tsv" ? TableFormat::tsv : TableFormat::csv;

    try {
        if (*run) return cmd_run(run_path, flags);
        if (*compare) return cmd_compare(compare_paths, flags);
        if (*validate) return cmd_validate(validate_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const SensitivityAbort& e) {
        std::cerr << "sensitivity error: " << e.what() << '\n';
        return kSensitivityAbort;
    } catch (const EngineError& e) {
        std::cerr << "engine error: " << e.what() << '\n';
        return kEngineError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "engine error: " << e.what() << '\n';
        return kEngineError;
    }
    return kOk;
}
