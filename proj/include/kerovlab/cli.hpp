#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kerovlab::cli {

/// Everything a run depends on; two runs with equal configs print the same JSON.
struct RunConfig {
    std::string subcommand;

    int r = 0;
    std::optional<int> component;
    std::string basis = "R";
    std::string out_format = "json";

    std::string lambda;
    int max_k = 8;

    std::string family = "f";
    int k = 2;
    std::optional<int> r_min;
    std::optional<int> r_max;

    std::string suite;
    int lambda_max = 11;
    int draws = 20;

    std::optional<std::filesystem::path> cache_dir;
    std::optional<std::filesystem::path> data_dir;
    unsigned jobs = 0;
    int budget = 0;
};

enum ExitCode : int { pass = 0, finding = 1, failure = 2 };

/// Parses argv-style arguments (without the program name). On a usage error
/// the message goes to `err` and nullopt is returned with `exit_code` set.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                                    int& exit_code);

/// JSON report on `out`, human summary on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kerovlab::cli
