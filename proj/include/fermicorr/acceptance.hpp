#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fermicorr::acceptance {

struct Options {
    /// Criterion ids to run (e.g. "AC-3"); empty runs all.
    std::vector<std::string> only;
    std::uint64_t seed = 20240611;
    std::size_t brute_force_ceiling = 5000;
};

struct Result {
    std::string id;
    std::string title;
    bool pass = false;
    double measured = 0.0;
    std::string threshold;
    double seconds = 0.0;
    double time_limit = 0.0;
    /// Supporting measurements; informational, one per line.
    std::vector<std::string> details;
};

std::vector<std::string> criterion_ids();

/// Runs the selected criteria in order, calling `report` after each one.
std::vector<Result> run(const Options& opts, const std::function<void(const Result&)>& report = {});

void print_text(std::ostream& out, const Result& r, bool with_details = true);
void print_csv_header(std::ostream& out);
void print_csv(std::ostream& out, const Result& r);

} // namespace fermicorr::acceptance
