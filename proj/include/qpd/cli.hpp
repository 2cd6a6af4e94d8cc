#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpd {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitParse = 3;

struct CliOptions {
    std::string input_path;
    std::string output_path;  // empty = stdout
    std::vector<std::int64_t> dims;
    std::vector<std::int64_t> factor_order;
    std::string convention = "auto";  // auto | half-angle | mod-inverse
    double tol = 1e-10;
    double threshold = 1e-12;  // coefficient dump cutoff
    std::uint64_t seed = 1;
    std::int64_t trials = 10;
    std::int64_t check_n = 0;
    bool diagnostics_json = false;
};

int cmd_decompose(const CliOptions& opts);
int cmd_correlate(const CliOptions& opts);
int cmd_check(const CliOptions& opts);

}  // namespace qpd
