// Acceptance suite: one verdict line per criterion AC-1..AC-9.
// Exit status 1 if any criterion fails.

#include "fermicorr/acceptance.hpp"
#include "fermicorr/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"fermicorr acceptance suite"};
    fermicorr::acceptance::Options opts;
    std::string emit = "text";
    bool quiet = false;
    app.add_option("--only", opts.only, "criteria to run, e.g. AC-3,AC-5")->delimiter(',');
    app.add_option("--emit", emit, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    app.add_option("--seed", opts.seed, "seed for randomized criteria");
    app.add_flag("--quiet", quiet, "verdict lines only");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        if (emit == "csv") fermicorr::acceptance::print_csv_header(std::cout);
        const auto results = fermicorr::acceptance::run(opts, [&](const fermicorr::acceptance::Result& r) {
            if (emit == "csv")
                fermicorr::acceptance::print_csv(std::cout, r);
            else
                fermicorr::acceptance::print_text(std::cout, r, !quiet);
            std::cout.flush();
        });
        std::size_t passed = 0;
        for (const auto& r : results) passed += r.pass ? 1 : 0;
        if (emit != "csv") std::cout << passed << "/" << results.size() << " criteria passed\n";
        return passed == results.size() ? 0 : 1;
    } catch (const fermicorr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
