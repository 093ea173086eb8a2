#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace linexplain::cli {

// Everything a run needs, filled from flags. One struct per invocation keeps
// runs reproducible: the output header is rendered from this (minus
// parallelism, which must not influence bytes).
struct RunConfig {
    std::string subcommand;

    std::string model_path;
    std::string data_path;
    std::string output_path;  // empty = stdout
    std::string names_path;

    std::string method = "ec";  // ec | shapley | beta | coverage
    std::vector<std::string> methods = {"ec", "shapley", "beta", "coverage"};  // curve
    std::string search = "linear_rank";
    std::string credit = "membership";

    double threshold = 0.0;
    std::size_t samples = 10'000;
    std::uint64_t seed = 42;
    std::vector<std::size_t> ks;  // empty = default grid
    std::size_t top_k = 1'000;
    unsigned parallelism = 0;
    std::size_t max_size = 0;  // complete search cap; 0 = instance's active count
    std::size_t budget = 10'000'000;
};

// Full argv dispatch; returns the process exit code: 0 success, 1 data or
// compute error, 2 usage error.
int run_cli(int argc, const char* const* argv);

// Convenience for tests.
int run_cli(const std::vector<std::string>& args);

}  // namespace linexplain::cli
