#ifndef BDFT_CONFIG_HPP
#define BDFT_CONFIG_HPP

#include <cstdint>
#include <string>

namespace bdft {

struct RunConfig {
    double tol = 1e-8;
    double comparison_tol = 1e-6;
    long panel_budget = 2'000'000;
    std::uint64_t seed = 42;
    std::string output_format = "csv";

    /// Throws ParameterError unless 0 < tol <= comparison_tol, panel_budget >= 1000
    /// and output_format is csv or json.
    void validate() const;
};

/// Flat key=value file; '#' starts a comment. Unknown keys are errors.
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Defaults, overridden by the file named in BDFT_CONFIG when it is set.
RunConfig config_from_environment();

}  // namespace bdft

#endif  // BDFT_CONFIG_HPP
