#ifndef BDFT_ACCEPTANCE_HPP
#define BDFT_ACCEPTANCE_HPP

#include <string>
#include <vector>

#include "bdft/config.hpp"

namespace bdft {

struct CriterionResult {
    int id = 0;
    std::string key;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    double time_limit = 0.0;
    std::string detail;
};

struct CriterionInfo {
    int id;
    std::string key;
    std::string title;
    double time_limit;
};

const std::vector<CriterionInfo>& acceptance_criteria();

/// Runs the criteria whose keys appear in `only` (all when empty). A criterion
/// passes when its check holds and it finished within its time limit.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, const std::vector<std::string>& only = {});

/// "PASS  3 exchange  (12.3 s / 120 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace bdft

#endif  // BDFT_ACCEPTANCE_HPP
