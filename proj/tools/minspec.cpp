#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "minspec/cli.hpp"

int main(int argc, char** argv) {
    using namespace minspec;
    CLI::App app{"Spectral radius tools for minimally 2-connected and 2-edge-connected graphs"};
    app.require_subcommand(1);

    cli::RunConfig cfg;
    std::string cls, range, theorem;

    auto add_class = [&](CLI::App* sub) { sub->add_option("--class", cls, "min2conn or min2edgeconn"); };
    auto add_range = [&](CLI::App* sub) { sub->add_option("--m", range, "edge count A or range A..B")->required(); };
    auto add_workers = [&](CLI::App* sub) { sub->add_option("--workers", cfg.workers, "worker threads")->default_val(1); };
    auto add_format = [&](CLI::App* sub, const char* help) { sub->add_option("--format", cfg.format, help); };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "write output to PATH"); };
    auto add_input = [&](CLI::App* sub, const char* help) { sub->add_option("input", cfg.input, help)->default_val("-"); };

    auto* check = app.add_subcommand("check", "connectivity and minimality verdicts for a graph");
    add_input(check, "graph6, edge list, family spec, file, or - for stdin");
    add_class(check);

    auto* rho = app.add_subcommand("rho", "spectral radius with certificate");
    add_input(rho, "graph6, edge list, family spec, file, or - for stdin");
    rho->add_option("--tol", cfg.tol, "residual tolerance")->default_val(kDefaultSpectralTolerance);

    auto* table = app.add_subcommand("table", "extremal table over a range of m");
    add_range(table);
    add_class(table);
    add_workers(table);
    add_format(table, "md or csv");
    add_out(table);

    auto* verify = app.add_subcommand("verify", "check the extremal theorems by enumeration");
    add_range(verify);
    verify->add_option("--theorem", theorem, "T1_1 or T1_2")->required();
    add_workers(verify);

    auto* enumerate = app.add_subcommand("enumerate", "write extremal certificates");
    add_range(enumerate);
    add_class(enumerate);
    add_workers(enumerate);
    add_format(enumerate, "json or csv");
    add_out(enumerate);

    auto* family = app.add_subcommand("family", "construct a named family member");
    family->add_option("spec", cfg.input, "family spec, e.g. F0(1,4,0)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cli::kUsageError;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        if (!cls.empty()) cfg.graph_class = parse_graph_class(cls);
        if (!range.empty()) cfg.m = cli::parse_m_range(range);
        if (!theorem.empty()) cfg.theorem = parse_theorem(theorem);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsageError;
    }
    return cli::run(cfg, std::cin, std::cout, std::cerr);
}
