// Command-line front end: per-field analysis, range scans, and the fixture
// battery for Bianchi's additional symmetries.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"

#include "bianchi/report.hpp"

namespace {

struct CommonOpts {
    long long c_max = 12;
    long long slack = 1;
    bool strict = false;
    bool approx = false;
    bool skip_character_conditions = false;
    std::string format = "pretty";
    int workers = 1;

    bianchi::SearchConfig config() const {
        bianchi::SearchConfig cfg;
        cfg.c_max = c_max;
        cfg.rectangle_slack = slack;
        cfg.strict = strict;
        cfg.enforce_character_conditions = !skip_character_conditions;
        cfg.workers = workers;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_workers) {
    cmd->add_option("--c-max", opts.c_max, "Search bound on the parameter c")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--slack", opts.slack, "Extra fundamental-rectangle translates in the search box")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--format", opts.format, "Output format: pretty|json|csv");
    cmd->add_flag("--strict", opts.strict, "Exit 1 when any diagnostic is emitted");
    cmd->add_flag("--approx", opts.approx, "Annotate output with floating-point approximations");
    cmd->add_flag("--no-character-conditions", opts.skip_character_conditions,
                  "Search without the quadratic character preconditions (discrepancies are logged)");
    if (with_workers)
        cmd->add_option("--workers", opts.workers, "Concurrent analysis threads")
            ->check(CLI::PositiveNumber);
}

int diagnostics_exit(const CommonOpts& opts, size_t diag_count) {
    return (opts.strict && diag_count > 0) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Search-and-verify engine for the additional symmetries of Bianchi groups SL2(O)"};
    app.require_subcommand(1);

    CommonOpts analyze_opts, range_opts;
    long long D = 0, from = 0, to = 0;
    std::string check_format = "pretty";

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Analyze one field Q(sqrt(-D))");
    analyze_cmd->add_option("--d", D, "Square-free positive D (1 and 3 are excluded)")->required();
    add_common(analyze_cmd, analyze_opts, false);

    CLI::App* range_cmd = app.add_subcommand("range", "Analyze every in-scope D in a range");
    range_cmd->add_option("--from", from, "Lower bound (inclusive)")->required();
    range_cmd->add_option("--to", to, "Upper bound (inclusive)")->required();
    add_common(range_cmd, range_opts, true);

    CLI::App* check_cmd = app.add_subcommand("paper-check", "Run the tabulated example fixtures");
    check_cmd->add_option("--format", check_format, "Output format: pretty|json|csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (analyze_cmd->parsed()) {
            auto format = bianchi::parse_format(analyze_opts.format);
            auto report = bianchi::analyze(D, analyze_opts.config());
            std::cout << bianchi::emit(report, format, analyze_opts.approx);
            return diagnostics_exit(analyze_opts, report.diagnostics.size());
        }
        if (range_cmd->parsed()) {
            auto format = bianchi::parse_format(range_opts.format);
            auto scan = bianchi::range_scan(from, to, range_opts.config());
            std::cout << bianchi::emit_range(scan, format, range_opts.approx);
            size_t diags = 0;
            for (const auto& r : scan.reports) diags += r.diagnostics.size();
            return diagnostics_exit(range_opts, diags);
        }
        if (check_cmd->parsed()) {
            auto format = bianchi::parse_format(check_format);
            auto results = bianchi::paper_check();
            std::cout << bianchi::emit_fixtures(results, format);
            for (const auto& f : results)
                if (!f.pass) return 1;
            return 0;
        }
    } catch (const bianchi::ExcludedFieldError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
