#ifndef FLAGCERT_TOOLS_CLI_HPP
#define FLAGCERT_TOOLS_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <flagcert/flagcert.hpp>

namespace flagcert::cli
{

enum ExitCode { ok = 0, failed = 1, usage = 2 };

// Raised for bad inputs found after flag parsing (unreadable files and the
// like); maps to the usage exit code.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw InputError("cannot write " + path);
    }
}

inline FixtureSet fixtures_from(const std::string &path)
{
    if (path.empty()) {
        return default_fixtures();
    }
    try {
        return load_fixtures(path);
    } catch (const std::exception &e) {
        throw InputError(e.what());
    }
}

inline void print_report(std::ostream &out, const CertificateReport &r, const std::string &indent = "")
{
    out << indent << "certificate " << r.certificate;
    if (!r.variant.empty()) {
        out << " (" << r.variant << ")";
    }
    out << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto &s : r.steps) {
        out << indent << "  " << (s.pass ? "ok   " : "FAIL ") << s.name << ": " << s.detail;
        if (!s.pass && s.coordinate && s.detail.find("coordinate") == std::string::npos) {
            out << " [coordinate " << *s.coordinate << "]";
        }
        if (!s.pass && !s.residual.empty()) {
            out << " [residual " << s.residual << "]";
        }
        out << "\n";
    }
    for (const auto &v : r.variants) {
        print_report(out, v, indent + "  ");
    }
    for (const auto &f : r.findings) {
        out << indent << "  finding: " << f << "\n";
    }
    if (indent.empty()) {
        out << "bound: " << r.bound << "\n";
    }
}

struct VerifyConfig {
    std::string certificate;
    std::string report;
    std::string variant = "auto";
    std::string fixtures;
};

inline int run_verify(const VerifyConfig &cfg, std::ostream &out)
{
    const FixtureSet fixtures = fixtures_from(cfg.fixtures);
    CertificateReport r;
    if (cfg.certificate == "example") {
        ExampleInputs in;
        in.fixtures = fixtures;
        r = verify_example_phi2_ge_alpha(in);
    } else if (cfg.certificate == "first") {
        FirstInputs in;
        in.fixtures = fixtures;
        r = verify_first_bound(in);
    } else {
        MainInputs in;
        in.fixtures = fixtures;
        r = verify_main_bound(parse_secc_variant(cfg.variant), in);
    }
    if (!cfg.report.empty()) {
        write_file(cfg.report, report_text(r));
    }
    print_report(out, r);
    return r.pass ? ok : failed;
}

struct BoundsConfig {
    int d = 3;
    std::string phi2 = "thm4";
    double precision = 1e-6;
    bool table = false;
    std::string reading = "phi1_equality";
    std::string json;
};

inline int run_bounds(const BoundsConfig &cfg, std::ostream &out)
{
    BoundsTableOptions opt;
    opt.d = cfg.d;
    opt.phi2 = cfg.phi2;
    opt.pagoda_options.precision = cfg.precision;
    opt.pagoda_options.reading = parse_pagoda_reading(cfg.reading);
    const auto rows = bounds_table(opt);
    if (cfg.table) {
        out << format_table(rows);
    } else {
        for (const auto &r : rows) {
            out << r.label << ": " << r.value;
            if (r.decimal != r.value && r.decimal != "-") {
                out << " (" << r.decimal << ")";
            }
            if (!r.note.empty()) {
                out << "  [" << r.note << "]";
            }
            out << "\n";
        }
    }
    if (!cfg.json.empty()) {
        nlohmann::ordered_json j;
        j["schema"] = report_schema;
        j["d"] = cfg.d;
        j["phi2"] = cfg.phi2;
        j["rows"] = to_json(rows);
        write_file(cfg.json, j.dump(2) + "\n");
    }
    return ok;
}

struct FrontierConfig {
    int n = 8;
    std::string grid = "0:0.25:0.0125";
    std::string mode = "exhaustive";
    std::uint64_t seed = 42;
    long iterations = 20000;
    std::string out;
};

inline int run_frontier(const FrontierConfig &cfg, std::ostream &out)
{
    std::vector<Rational> grid;
    FrontierOptions opt;
    try {
        grid = parse_alpha_grid(cfg.grid);
        opt.mode = parse_frontier_mode(cfg.mode);
    } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
    }
    if (opt.mode == FrontierMode::exhaustive && (cfg.n < 3 || cfg.n > max_exhaustive_order)) {
        throw InputError("exhaustive mode needs 3 <= n <= " + std::to_string(max_exhaustive_order));
    }
    if (opt.mode == FrontierMode::heuristic && (cfg.n < 3 || cfg.n > LargeGraph::max_order)) {
        throw InputError("heuristic mode needs 3 <= n <= 64");
    }
    opt.heuristic.seed = cfg.seed;
    opt.heuristic.iterations = cfg.iterations;
    const auto rows = frontier_curve(cfg.n, grid, opt);
    const std::string csv = frontier_csv(cfg.n, rows, opt.mode);
    // Envelope: empirical >= thm4 - 3/n wherever both are defined.
    int violations = 0;
    const Interval margin = Interval::enclose(make_rational(3, cfg.n));
    for (const auto &r : rows) {
        if (r.point && r.thm4 && Interval::enclose(r.point->value).lo() < (r.thm4->enclosure - margin).hi()) {
            ++violations;
        }
    }
    if (cfg.out.empty()) {
        out << csv;
    } else {
        write_file(cfg.out, csv);
        out << "wrote " << rows.size() << " rows to " << cfg.out << "\n";
        out << "envelope (empirical >= thm4 - 3/n): " << (violations == 0 ? "holds" : "VIOLATED") << "\n";
    }
    return violations == 0 ? ok : failed;
}

struct CatalogConfig {
    int level = 4;
    std::string type = "0:";
    bool graph6 = false;
};

inline int run_catalog(const CatalogConfig &cfg, std::ostream &out)
{
    TypeSigma sigma;
    try {
        sigma = TypeSigma(parse_graph(cfg.type));
    } catch (const std::exception &e) {
        throw InputError(std::string("bad --type: ") + e.what());
    }
    const FlagBasis *basis = nullptr;
    try {
        basis = &flag_basis(sigma, cfg.level);
    } catch (const std::out_of_range &e) {
        throw InputError(e.what());
    }
    out << (sigma.unlabeled() ? "graphs" : "flags of type " + to_text(sigma.graph)) << " on " << cfg.level
        << " vertices: " << basis->size() << "\n";
    for (std::size_t i = 0; i < basis->size(); ++i) {
        const SmallGraph &g = basis->flags[i].graph();
        out << (sigma.unlabeled() ? "F" : "f") << i + 1 << "  " << (cfg.graph6 ? to_graph6(g) : to_text(g))
            << "  edges " << g.edge_count() << "\n";
    }
    return ok;
}

// Entry point shared by the executable and the tests.
inline int main(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"Exact verification of flag-algebra certificates and bounds on first-selection constants",
                 "flagcert"};
    app.require_subcommand(1);
    std::optional<unsigned> jobs;
    app.add_option("--jobs", jobs, "Worker threads (default: FLAGCERT_JOBS or all cores)")->check(CLI::Range(1U, 4096U));

    VerifyConfig verify;
    auto *verify_cmd = app.add_subcommand("verify", "Recompute and check a certificate");
    verify_cmd->add_option("certificate", verify.certificate, "example, first or main")
        ->required()
        ->check(CLI::IsMember({"example", "first", "main"}));
    verify_cmd->add_option("--report", verify.report, "Write a JSON report");
    verify_cmd->add_option("--secC-variant", verify.variant, "Cut inequality reused in the main certificate")
        ->check(CLI::IsMember({"first3", "first4", "auto"}));
    verify_cmd->add_option("--fixtures", verify.fixtures, "Bracket fixture file (JSON)");

    BoundsConfig bounds;
    auto *bounds_cmd = app.add_subcommand("bounds", "Propagate phi bounds to c_d");
    bounds_cmd->add_option("--d", bounds.d, "Dimension")->check(CLI::Range(1, 12));
    bounds_cmd->add_option("--phi2", bounds.phi2, "Bound used for phi2")
        ->check(CLI::IsMember({"trivial", "mawa", "thm4"}));
    bounds_cmd->add_option("--precision", bounds.precision, "Bisection precision for eps*")
        ->check(CLI::Range(1e-12, 1e-1));
    bounds_cmd->add_flag("--table", bounds.table, "Print an aligned comparison table");
    bounds_cmd->add_option("--reading", bounds.reading, "Pagoda system reading")
        ->check(CLI::IsMember({"phi1_equality", "literal"}));
    bounds_cmd->add_option("--json", bounds.json, "Write the table as JSON");

    FrontierConfig frontier;
    auto *frontier_cmd = app.add_subcommand("frontier", "Empirical frontier of odd-triple densities");
    frontier_cmd->add_option("--n", frontier.n, "Number of vertices");
    frontier_cmd->add_option("--alpha-grid", frontier.grid, "start:stop:step");
    frontier_cmd->add_option("--mode", frontier.mode, "exhaustive or heuristic")
        ->check(CLI::IsMember({"exhaustive", "heuristic"}));
    frontier_cmd->add_option("--seed", frontier.seed, "Seed for heuristic mode");
    frontier_cmd->add_option("--iterations", frontier.iterations, "Local-search steps per grid point")
        ->check(CLI::NonNegativeNumber);
    frontier_cmd->add_option("--out", frontier.out, "CSV output path (default: stdout)");

    SelftestOptions selftest;
    std::string selftest_fixtures;
    auto *selftest_cmd = app.add_subcommand("selftest", "Run the invariant suite and all certificates");
    selftest_cmd->add_option("--seed", selftest.seed, "Seed for the random cases");
    selftest_cmd->add_option("--fixtures", selftest_fixtures, "Bracket fixture file (JSON)");

    CatalogConfig catalog;
    auto *catalog_cmd = app.add_subcommand("catalog", "List graph or flag bases");
    catalog_cmd->add_option("--level", catalog.level, "Number of vertices")->check(CLI::Range(1, 7));
    catalog_cmd->add_option("--type", catalog.type, "Type graph in n:edges form (default: unlabeled)");
    catalog_cmd->add_flag("--graph6", catalog.graph6, "Print graph6 instead of edge lists");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? ok : usage;
    }

    try {
        if (jobs) {
            set_jobs(*jobs);
        } else {
            (void)job_count();
        }
        if (*verify_cmd) {
            return run_verify(verify, out);
        }
        if (*bounds_cmd) {
            return run_bounds(bounds, out);
        }
        if (*frontier_cmd) {
            return run_frontier(frontier, out);
        }
        if (*selftest_cmd) {
            selftest.fixtures = fixtures_from(selftest_fixtures);
            return run_selftest(out, selftest) ? ok : failed;
        }
        if (*catalog_cmd) {
            return run_catalog(catalog, out);
        }
    } catch (const InputError &e) {
        err << "flagcert: " << e.what() << "\n";
        return usage;
    } catch (const std::invalid_argument &e) {
        err << "flagcert: " << e.what() << "\n";
        return usage;
    } catch (const std::exception &e) {
        err << "flagcert: " << e.what() << "\n";
        return failed;
    }
    return usage;
}

} // namespace flagcert::cli

#endif
