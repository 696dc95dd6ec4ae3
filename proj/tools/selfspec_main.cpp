#include <CLI11.hpp>

#include "selfspec/config.h"
#include "selfspec/errors.h"
#include "selfspec/runner.h"

#include <functional>
#include <iostream>
#include <string>

namespace {

struct JobCli {
    std::string config_path;
    std::string depth;
    int pos = -1;
    int neg = -1;
    double tol = 0.0;
    std::string format;
    std::string output;
    bool force = false;
};

void add_common(CLI::App* sub, JobCli& o, bool solver) {
    sub->add_option("--config", o.config_path, "job description file (json)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--format", o.format, "csv or text")
        ->check(CLI::IsMember({"csv", "text"}));
    sub->add_option("--output", o.output, "write results to this file instead of stdout");
    if (solver) {
        sub->add_option("--depth", o.depth, "refinement depth: a positive integer, or auto");
        sub->add_option("--pos", o.pos, "positive eigenvalues to compute")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--neg", o.neg, "negative eigenvalues to compute")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--tol", o.tol, "relative bisection tolerance");
        sub->add_flag("--force", o.force, "solve even without a growth law");
    }
}

selfspec::JobConfig merge(const JobCli& o) {
    selfspec::JobConfig cfg = selfspec::load_config(o.config_path);
    if (!o.format.empty()) cfg.format = o.format;
    if (!o.output.empty()) cfg.output = o.output;
    if (!o.depth.empty()) {
        if (o.depth == "auto") {
            cfg.depth = -1;
        } else {
            int d = 0;
            try {
                size_t used = 0;
                d = std::stoi(o.depth, &used);
                if (used != o.depth.size()) d = 0;
            } catch (...) {
                d = 0;
            }
            if (d < 1)
                throw selfspec::Error(selfspec::ErrorKind::ConfigError,
                                      "depth must be a positive integer or \"auto\"");
            cfg.depth = d;
        }
    }
    if (o.pos >= 0) cfg.pos_count = o.pos;
    if (o.neg >= 0) cfg.neg_count = o.neg;
    if (o.tol != 0.0) {
        if (o.tol < 1e-14)
            throw selfspec::Error(selfspec::ErrorKind::ConfigError,
                                  "tolerance must be at least 1e-14");
        cfg.rel_tol = o.tol;
    }
    if (o.force) cfg.force = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenvalue workbench for point-mass weights built by self-similar refinement"};
    app.require_subcommand(1);

    int rc = 0;

    JobCli analyze_cli;
    auto* analyze = app.add_subcommand("analyze", "report first-level structure and regime");
    add_common(analyze, analyze_cli, false);
    analyze->callback([&] { rc = selfspec::cmd_analyze(merge(analyze_cli), std::cout, std::cerr); });

    JobCli solve_cli;
    auto* solve = app.add_subcommand("solve", "compute signed-indexed eigenvalues");
    add_common(solve, solve_cli, true);
    solve->callback([&] { rc = selfspec::cmd_solve(merge(solve_cli), std::cout, std::cerr); });

    JobCli asympt_cli;
    auto* asympt = app.add_subcommand("asympt", "estimate growth coefficients per residue class");
    add_common(asympt, asympt_cli, true);
    asympt->callback([&] { rc = selfspec::cmd_asympt(merge(asympt_cli), std::cout, std::cerr); });

    int table_id = 0;
    auto* table = app.add_subcommand("reproduce-table", "check a built-in reference eigenvalue set");
    table->add_option("id", table_id, "reference set: 1, 2 or 3")
        ->required()
        ->check(CLI::Range(1, 3));
    table->callback([&] { rc = selfspec::cmd_reproduce_table(table_id, std::cout, std::cerr); });

    std::string suite;
    unsigned long long seed = 1234;
    auto* verify = app.add_subcommand("verify", "run a randomized cross-check suite");
    verify->add_option("suite", suite, "oracle, lemmas, inertia or equivalence")
        ->required()
        ->check(CLI::IsMember({"oracle", "lemmas", "inertia", "equivalence"}));
    verify->add_option("--seed", seed, "random seed");
    verify->callback([&] { rc = selfspec::cmd_verify(suite, seed, std::cout, std::cerr); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const selfspec::Error& e) {
        std::cerr << e.what() << "\n";
        return selfspec::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return rc;
}
