// Command-line front end: classify Artin-Schreier curves, enumerate moduli
// strata, compute invariants, decide isomorphism and run coefficient
// censuses, with exact arithmetic throughout.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ascurves/iso.hpp"
#include "ascurves/report.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw ascurves::ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int exit_code(const ascurves::Error& e) {
    switch (e.kind()) {
        case ascurves::ErrorKind::UnsupportedStratum:
            return 3;
        case ascurves::ErrorKind::InternalInconsistency:
            return 4;
        default:
            return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact classification of Artin-Schreier curves y^p - y = f(x)"};
    app.require_subcommand(1);

    bool json = false;
    std::uint64_t seed = 0x5eed5eedULL;
    std::uint64_t budget = 10000000;
    app.add_flag("--json", json, "emit JSON instead of text");
    app.add_option("--seed", seed, "seed for randomized equal-degree splitting");
    app.add_option("--field-budget", budget, "maximum number of census tuples");

    int g = 0, s = 0;
    std::int64_t p = 0;
    std::uint64_t q = 0;
    std::string file1, file2, partition;

    auto* strata = app.add_subcommand("strata", "list the moduli strata for a genus and characteristic");
    strata->add_option("--g", g, "genus")->required();
    strata->add_option("--p", p, "characteristic")->required();

    auto* classify = app.add_subcommand("classify", "full classification report for one curve");
    classify->add_option("file", file1, "curve description file ('-' for stdin)")->required();

    auto* invariants = app.add_subcommand("invariants", "reconstructing invariants of one curve");
    invariants->add_option("file", file1, "curve description file ('-' for stdin)")->required();

    auto* isomorphic = app.add_subcommand("isomorphic", "decide isomorphism of two curves");
    isomorphic->add_option("file1", file1, "first curve file")->required();
    isomorphic->add_option("file2", file2, "second curve file")->required();

    auto* orbit = app.add_subcommand("orbit", "orbit of a curve's standard coefficients");
    orbit->add_option("file", file1, "curve description file ('-' for stdin)")->required();

    auto* censusCmd = app.add_subcommand("census", "isomorphism census over a finite field");
    censusCmd->add_option("--g", g, "genus");
    censusCmd->add_option("--p", p, "characteristic")->required();
    censusCmd->add_option("--s", s, "p-rank");
    censusCmd->add_option("--E", partition, "partition, e.g. 3,2 (overrides --s)");
    censusCmd->add_option("--q", q, "field size (a power of p)")->required();

    CLI11_PARSE(app, argc, argv);
    ascurves::set_random_seed(seed);

    try {
        std::string out;
        if (app.got_subcommand(strata)) {
            out = ascurves::report_strata(g, p, json);
        } else if (app.got_subcommand(classify)) {
            out = ascurves::report_classify(ascurves::parse_curve(read_input(file1)), json);
        } else if (app.got_subcommand(invariants)) {
            out = ascurves::report_invariants(ascurves::parse_curve(read_input(file1)), json);
        } else if (app.got_subcommand(isomorphic)) {
            out = ascurves::report_isomorphic(ascurves::parse_curve(read_input(file1)),
                                              ascurves::parse_curve(read_input(file2)), json);
        } else if (app.got_subcommand(orbit)) {
            out = ascurves::report_orbit(ascurves::parse_curve(read_input(file1)), json);
        } else if (app.got_subcommand(censusCmd)) {
            out = ascurves::report_census(p, g, s, partition, q, budget, json);
        }
        std::cout << out;
        return 0;
    } catch (const ascurves::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
