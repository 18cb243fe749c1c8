// Command-line front end. All real work lives in the library's cmd_*
// functions so the subcommands stay scriptable and testable; this file only
// parses flags and fans a config sweep out over worker threads.

#include <algorithm>
#include <atomic>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "extsum/commands.hpp"
#include "extsum/run_config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"extended forward-backward splitting runner"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute one or more configured runs");
    std::vector<std::string> config_paths;
    run->add_option("--config", config_paths,
                    "JSON run config; repeat the flag to sweep several")
        ->check(CLI::ExistingFile);
    extsum::RunConfig flags;
    auto* o_problem = run->add_option("--problem", flags.problem, "builtin problem id");
    auto* o_algorithm = run->add_option("--algorithm", flags.algorithm,
                                        "efb | projected_eps_subgrad | passty");
    auto* o_c = run->add_option("--c", flags.c, "step scale: lambda_n = c * n^-p");
    auto* o_p = run->add_option("--p", flags.p, "step decay exponent");
    auto* o_q = run->add_option("--q", flags.q, "tolerance decay exponent: eps_n = n^-q");
    auto* o_strategy =
        run->add_option("--strategy", flags.strategy, "min_norm | boundary | random");
    auto* o_seed = run->add_option("--seed", flags.seed, "selection seed (random strategy)");
    auto* o_max_iter = run->add_option("--max-iter", flags.max_iter, "iteration count");
    auto* o_record =
        run->add_option("--record-every", flags.record_every, "record every k-th row");
    auto* o_output = run->add_option("--output", flags.output, "trace file path");
    auto* o_format = run->add_option("--format", flags.format, "csv | json");
    auto* o_unsafe = run->add_flag("--unsafe-schedule", flags.unsafe_schedule,
                                   "run even when the schedule relations fail");
    int jobs = 1;
    run->add_option("--jobs", jobs, "worker threads for config sweeps")
        ->check(CLI::PositiveNumber);

    double c = 1.0;
    double p = 1.0;
    double q = 1.0 / 3.0;
    auto* validate =
        app.add_subcommand("validate-schedule", "check the power-schedule relations");
    validate->add_option("c", c, "step scale")->required();
    validate->add_option("p", p, "step decay exponent")->required();
    validate->add_option("q", q, "tolerance decay exponent")->required();

    std::string trace_path;
    auto* diagnose =
        app.add_subcommand("diagnose", "re-run the hypothesis monitors over a stored trace");
    diagnose->add_option("trace", trace_path, "trace file, csv or json")->required();

    auto* list = app.add_subcommand("list-problems", "show the builtin problems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (validate->parsed())
        return extsum::cmd_validate_schedule(c, p, q, std::cout, std::cerr);
    if (diagnose->parsed()) return extsum::cmd_diagnose(trace_path, std::cout, std::cerr);
    if (list->parsed()) return extsum::cmd_list_problems(std::cout);

    // Flags override config-file values only when actually given.
    const auto apply_overrides = [&](extsum::RunConfig& cfg) {
        if (o_problem->count() > 0) cfg.problem = flags.problem;
        if (o_algorithm->count() > 0) cfg.algorithm = flags.algorithm;
        if (o_c->count() > 0) cfg.c = flags.c;
        if (o_p->count() > 0) cfg.p = flags.p;
        if (o_q->count() > 0) cfg.q = flags.q;
        if (o_strategy->count() > 0) cfg.strategy = flags.strategy;
        if (o_seed->count() > 0) cfg.seed = flags.seed;
        if (o_max_iter->count() > 0) cfg.max_iter = flags.max_iter;
        if (o_record->count() > 0) cfg.record_every = flags.record_every;
        if (o_output->count() > 0) cfg.output = flags.output;
        if (o_format->count() > 0) cfg.format = flags.format;
        if (o_unsafe->count() > 0) cfg.unsafe_schedule = flags.unsafe_schedule;
    };

    std::vector<extsum::RunConfig> configs;
    if (config_paths.empty()) {
        configs.push_back(flags);
    } else {
        for (const auto& path : config_paths) {
            try {
                configs.push_back(extsum::load_run_config(path));
            } catch (const std::exception& e) {
                std::cerr << "cannot load config '" << path << "': " << e.what() << "\n";
                return 1;
            }
            apply_overrides(configs.back());
        }
    }

    if (configs.size() == 1) return extsum::cmd_run(configs.front(), std::cout, std::cerr);

    struct JobResult {
        std::ostringstream out;
        std::ostringstream err;
        int code = 0;
    };
    std::vector<JobResult> results(configs.size());
    std::atomic<std::size_t> next{0};
    const std::size_t workers =
        std::min(static_cast<std::size_t>(std::max(jobs, 1)), configs.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < configs.size();
                 i = next.fetch_add(1)) {
                results[i].code = extsum::cmd_run(configs[i], results[i].out, results[i].err);
            }
        });
    }
    for (auto& t : pool) t.join();

    int worst = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        std::cout << "== run " << (i + 1) << "/" << configs.size() << ": "
                  << configs[i].problem << " ==\n"
                  << results[i].out.str();
        const std::string errs = results[i].err.str();
        if (!errs.empty())
            std::cerr << "== run " << (i + 1) << "/" << configs.size() << " ==\n" << errs;
        worst = std::max(worst, results[i].code);
    }
    return worst;
}
