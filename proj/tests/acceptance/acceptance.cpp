// One pass/fail line per acceptance criterion. `--only N` runs a single one.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <flagcert/flagcert.hpp>

#include "cli.hpp"

using namespace flagcert;

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects the failed sub-checks of one criterion.
struct Outcome {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            failures.push_back(what);
        }
    }
};

std::string decimal(double x, int places = 10)
{
    std::ostringstream os;
    os.precision(places);
    os << std::fixed << x;
    return os.str();
}

// --- 1 --------------------------------------------------------------------

void criterion1(Outcome &o)
{
    const auto t0 = Clock::now();
    const auto r = verify_example_phi2_ge_alpha();
    const double t = seconds_since(t0);
    o.require(r.pass, "verify example failed");
    o.require(expand(named::complete(2), 3).coords == printed::ex1(), "K2 at level 3 differs from (0,1/3,2/3,1)");
    const auto bracket = unlabel(fixture_vector<Rational>(fixture(default_fixtures(), "ex"))).coords;
    o.require(bracket == printed::ex3(), "unlabeled bracket differs from (2/3)P3bar - (2/3)P3");
    o.require(t < 1.0, "runtime " + decimal(t, 3) + " s exceeds 1 s");
    o.notes.push_back("runtime " + decimal(t, 3) + " s");
}

// --- 2 --------------------------------------------------------------------

void criterion2(Outcome &o)
{
    const auto t0 = Clock::now();
    const auto r = verify_first_bound();
    const double t = seconds_since(t0);
    o.require(r.pass, "verify first failed");
    o.require(product(named::complete(2), named::empty(2)).coords == printed::first2(), "first2 product differs");
    o.require(r.combined == coords_text(printed::first0()), "combination differs from first0");
    o.require(r.combined.size() == 11 && r.combined[2] == "4/7" && r.combined[6] == "0",
              "coordinates 3 and 7 are not 4/7 and 0");
    for (std::size_t i = 0; i < 11; ++i) {
        o.require(printed::first0()[i] <= printed::target4()[i], "domination fails at " + std::to_string(i + 1));
    }
    o.require(t < 5.0, "runtime " + decimal(t, 3) + " s exceeds 5 s");
    o.notes.push_back("runtime " + decimal(t, 3) + " s");
}

// --- 3 --------------------------------------------------------------------

void criterion3(Outcome &o)
{
    const auto t0 = Clock::now();
    const auto r = verify_main_bound(SecCVariant::automatic);
    const double t = seconds_since(t0);
    o.require(r.pass, "verify main did not pass for exactly one variant");
    int passing = 0;
    for (const auto &v : r.variants) {
        if (v.pass) {
            ++passing;
            o.notes.push_back("passing variant " + v.variant);
            for (const auto &s : v.steps) {
                o.require(s.pass, "step " + s.name + " failed");
            }
        }
    }
    o.require(passing == 1, std::to_string(passing) + " variants pass");
    const Rational b0 = make_rational(3, 8);
    o.require(eval_rational_point(printed::sec0()[6], b0) == 0, "sec0 coordinate 7 at 3/8 is nonzero");
    o.require(eval_rational_point(printed::main_bound(), b0) == make_rational(9, 32), "scalar at 3/8 is not 9/32");
    // The combination itself at 3/8, from the default coefficients.
    const auto c = main_coefficients();
    const Rational t0c = 2;
    const Rational xi0 = (3 - t0c) / (t0c + 1);
    const Rational coord7 = eval_rational_point(c[0], b0) * expand(SmallGraph(1), 4).coords[6] +
                            eval_rational_point(c[1], b0) * expand(named::complete(2), 4).coords[6] +
                            eval_rational_point(c[2], b0) * printed::secB()[6](b0) +
                            eval_rational_point(c[3], b0) * printed::first3()[6] +
                            eval_rational_point(c[4], b0) * printed::secD()[6](xi0);
    o.require(coord7 == 0, "combined coordinate 7 at 3/8 is " + coord7.get_str());
    const Rational scalar = eval_rational_point(c[0], b0) + eval_rational_point(c[1], b0) * b0;
    o.require(scalar == make_rational(9, 32), "combined scalar at 3/8 is " + scalar.get_str());
    o.require(t < 30.0, "runtime " + decimal(t, 3) + " s exceeds 30 s");
    o.notes.push_back("runtime " + decimal(t, 3) + " s");
}

// --- 4 --------------------------------------------------------------------

void criterion4(Outcome &o)
{
    const BoundValue nested = gromov_nested(3, standard_bounds(3, PhiBound::thm4()));
    o.notes.push_back("nested = " + nested.text());
    o.require(nested.enclosure.lo() >= 0.074336 && nested.enclosure.hi() <= 0.074337,
              "nested value " + format_enclosure(nested.enclosure) + " outside [0.074336, 0.074337]");
    o.require(simple_bound(3) == make_rational(1, 16), "simple_bound(3) != 1/16");
    o.require(upper_bound(3) == make_rational(3, 32), "upper_bound(3) != 3/32");
    const Interval at = PhiBound::thm4()(make_rational(1, 12));
    o.notes.push_back("thm4(1/12) = " + format_enclosure(at));
    o.require(at.lo() >= 0.106814 && at.hi() <= 0.106815,
              "thm4(1/12) = " + format_enclosure(at) + " outside [0.106814, 0.106815]");
}

// --- 5 --------------------------------------------------------------------

void criterion5(Outcome &o)
{
    const auto t0 = Clock::now();
    const PagodaResult r = pagoda_threshold(PhiBound::thm4());
    const double t = seconds_since(t0);
    o.notes.push_back("eps* = " + decimal(r.epsilon_star, 7) + ", c3 >= " + decimal_floor(r.c3_bound.lo(), 5));
    o.require(r.epsilon_star >= 0.00047 && r.epsilon_star <= 0.002,
              "eps* = " + decimal(r.epsilon_star, 7) + " outside [0.00047, 0.002]");
    o.require(r.c3_bound.lo() >= 0.07480, "c3 bound " + format_enclosure(r.c3_bound) + " below 0.07480");
    o.require(t < 120.0, "runtime " + decimal(t, 1) + " s exceeds 2 min");
    o.notes.push_back("runtime " + decimal(t, 3) + " s");
}

// --- 6 --------------------------------------------------------------------

DSystem random_system(int n, int d, std::mt19937_64 &rng)
{
    std::vector<DSystem::Subset> members;
    for (auto s : DSystem::all_subsets(n, d)) {
        if (rng() & 1U) {
            members.push_back(s);
        }
    }
    return DSystem(n, d, std::move(members));
}

void criterion6(Outcome &o)
{
    std::mt19937_64 rng(6);
    int cases = 0;
    while (cases < 500) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n - 2, 4)));
        const DSystem e = random_system(n, d, rng);
        o.require(coboundary(coboundary(e)).empty(), "dd != 0 for " + to_text(e));
        ++cases;
    }
    for (int i = 0; i < 500; ++i) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n - 1, 4)));
        const DSystem a = random_system(n, d, rng);
        const DSystem b = random_system(n, d, rng);
        o.require(coboundary(symmetric_difference(a, b)) == symmetric_difference(coboundary(a), coboundary(b)),
                  "d is not additive on " + to_text(a));
    }
    for (int n = 2; n <= 5; ++n) {
        for (const auto &g : enumerate_graphs(n)) {
            o.require(is_minimal(edge_system(g)) == is_seidel_minimal(g), "minimality mismatch on " + to_text(g));
        }
    }
    for (int n = 3; n <= 7; ++n) {
        for (const auto &g : enumerate_graphs(n)) {
            o.require(odd_triple_density(g) == density(coboundary(edge_system(g))),
                      "odd-triple density mismatch on " + to_text(g));
        }
    }
    const std::size_t counts[] = {1, 2, 4, 11, 34};
    for (int n = 1; n <= 5; ++n) {
        o.require(enumerate_graphs(n).size() == counts[n - 1], "graph count wrong at n = " + std::to_string(n));
    }
    long checks = 0;
    for (int n = 1; n <= 6; ++n) {
        for (const auto &g : enumerate_graphs(n)) {
            for (int level = 1; level <= n; ++level) {
                const auto pg = density_profile(Flag(g, 0), level);
                const FlagBasis &basis = graph_basis(level);
                for (int k = 1; k <= level; ++k) {
                    const auto direct = density_profile(Flag(g, 0), k);
                    std::vector<Rational> via(direct.size(), Rational(0));
                    for (std::size_t h = 0; h < basis.size(); ++h) {
                        const auto ph = density_profile(basis.flags[h], k);
                        for (std::size_t i = 0; i < ph.size(); ++i) {
                            via[i] += ph[i] * pg[h];
                        }
                    }
                    o.require(via == direct, "expansion inconsistent for " + to_text(g));
                    ++checks;
                }
            }
        }
    }
    o.notes.push_back(std::to_string(checks) + " expansion identities");
}

// --- 7 --------------------------------------------------------------------

// A failed report that points at a coordinate or a named fixture.
bool named_failure(const CertificateReport &r, const std::string &fixture_name = "")
{
    if (r.pass) {
        return false;
    }
    std::vector<const CertificateReport *> all{&r};
    for (const auto &v : r.variants) {
        all.push_back(&v);
    }
    for (const auto *rep : all) {
        for (const auto &s : rep->steps) {
            if (s.pass) {
                continue;
            }
            if (s.coordinate || (!fixture_name.empty() && s.detail.find("'" + fixture_name + "'") != std::string::npos)) {
                return true;
            }
        }
    }
    return false;
}

int cli_exit(const std::vector<std::string> &args)
{
    std::vector<const char *> argv{"flagcert"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    return cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
}

void criterion7(Outcome &o)
{
    const Rational eps = make_rational(1, 1000);
    int perturbations = 0;
    for (int sgn_ : {1, -1}) {
        const Rational d = sgn_ * eps;
        for (int i = 0; i < 2; ++i) {
            ExampleInputs in;
            (i == 0 ? in.ex1 : in.ex3) += d;
            o.require(named_failure(verify_example_phi2_ge_alpha(in)), "example survives a coefficient perturbation");
            ++perturbations;
        }
        for (int i = 0; i < 3; ++i) {
            FirstInputs in;
            (i == 0 ? in.first2 : i == 1 ? in.first3 : in.first4) += d;
            o.require(named_failure(verify_first_bound(in)), "first survives a coefficient perturbation");
            ++perturbations;
        }
        for (std::size_t i = 0; i < 5; ++i) {
            MainInputs in;
            in.coefficients[i] += SqrtExpr(d);
            o.require(named_failure(verify_main_bound(SecCVariant::first3, in)),
                      "main survives a perturbation of " + main_atom_labels()[i]);
            ++perturbations;
        }
    }

    // Every single-pair flip in a fixture the certificate relies on.
    int flips = 0;
    for (const auto &[what, set] : single_edge_flips(default_fixtures())) {
        const std::string name = what.substr(0, what.find(' '));
        auto check = [&](const CertificateReport &r, const std::string &cert) {
            o.require(named_failure(r, name), cert + " survives flip " + what);
        };
        if (name == "ex") {
            ExampleInputs in;
            in.fixtures = set;
            check(verify_example_phi2_ge_alpha(in), "example");
        }
        if (name == "first3" || name == "first4") {
            FirstInputs in;
            in.fixtures = set;
            check(verify_first_bound(in), "first");
        }
        if (name == "first3" || name == "sec3" || name == "sec4") {
            MainInputs in;
            in.fixtures = set;
            check(verify_main_bound(SecCVariant::first3, in), "main");
        }
        ++flips;
    }

    // Exit code through the command line for one flip per certificate.
    const auto dir = std::filesystem::temp_directory_path();
    for (const auto &[cert, fixture_name] :
         std::vector<std::pair<std::string, std::string>>{{"example", "ex"}, {"first", "first4"}, {"main", "sec4"}}) {
        FixtureSet set = default_fixtures();
        auto &term = set[fixture_name].terms.back();
        SmallGraph g = parse_graph(term.graph);
        g.toggle_edge(0, 1);
        term.graph = to_text(g);
        const auto path = (dir / ("flagcert_flip_" + fixture_name + ".json")).string();
        std::ofstream(path) << fixtures_to_json(set).dump(2);
        std::vector<std::string> args{"verify", cert, "--fixtures", path};
        if (cert == "main") {
            args.insert(args.end(), {"--secC-variant", "first3"});
        }
        const int code = cli_exit(args);
        o.require(code == 1, "flagcert verify " + cert + " with a flipped " + fixture_name + " exits " +
                                 std::to_string(code));
        std::filesystem::remove(path);
    }
    o.notes.push_back(std::to_string(perturbations) + " perturbations, " + std::to_string(flips) + " flips");
}

// --- 8 --------------------------------------------------------------------

void criterion8(Outcome &o, const std::string &out_dir)
{
    const auto t0 = Clock::now();
    std::vector<Rational> grid;
    for (int k = 0; k <= 5; ++k) {
        grid.push_back(make_rational(k, 24));
    }
    grid.push_back(make_rational(2, 9));
    for (int n : {8, 9}) {
        const auto rows = frontier_curve(n, grid);
        const Interval margin = Interval::enclose(make_rational(3, n));
        for (const auto &r : rows) {
            if (!r.point) {
                o.require(false, "no witness at n = " + std::to_string(n) + ", alpha = " + r.alpha.get_str());
                continue;
            }
            o.require(recheck(*r.point), "witness fails re-check at alpha = " + r.alpha.get_str());
            o.require(Interval::enclose(r.point->value).lo() >= (r.thm4->enclosure - margin).hi(),
                      "n = " + std::to_string(n) + ", alpha = " + r.alpha.get_str() + ": empirical " +
                          r.point->value.get_str() + " below thm4 - 3/n");
        }
        const auto path = std::filesystem::path(out_dir) / ("envelope_n" + std::to_string(n) + ".csv");
        std::ofstream(path) << frontier_csv(n, rows, FrontierMode::exhaustive);
        o.notes.push_back("wrote " + path.filename().string());
    }
    const double t = seconds_since(t0);
    o.require(t < 600.0, "runtime " + decimal(t, 1) + " s exceeds 10 min");
    o.notes.push_back("runtime " + decimal(t, 3) + " s");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Acceptance checks"};
    int only = 0;
    std::string out_dir = ".";
    app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 8));
    app.add_option("--out-dir", out_dir, "Directory for generated reports");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria{
        {"verify example, exact", criterion1},
        {"verify first, exact", criterion2},
        {"verify main, exactly one variant", criterion3},
        {"bound pipeline values", criterion4},
        {"pagoda threshold", criterion5},
        {"property suites", criterion6},
        {"negative controls", criterion7},
        {"oracle envelope", [&](Outcome &o) { criterion8(o, out_dir); }},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) {
            continue;
        }
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception &e) {
            o.failures.push_back(std::string("error: ") + e.what());
        }
        const bool pass = o.failures.empty();
        all = all && pass;
        std::cout << "criterion " << i + 1 << ": " << (pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
        if (!o.notes.empty()) {
            std::cout << " (";
            for (std::size_t k = 0; k < o.notes.size(); ++k) {
                std::cout << (k ? "; " : "") << o.notes[k];
            }
            std::cout << ")";
        }
        std::cout << "\n";
        const std::size_t shown = std::min<std::size_t>(o.failures.size(), 10);
        for (std::size_t k = 0; k < shown; ++k) {
            std::cout << "    " << o.failures[k] << "\n";
        }
        if (o.failures.size() > shown) {
            std::cout << "    ... " << o.failures.size() - shown << " more\n";
        }
    }
    return all ? 0 : 1;
}
