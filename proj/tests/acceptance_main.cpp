#include <iostream>

#include "bdft/acceptance.hpp"

int main() {
    const bdft::RunConfig cfg = bdft::config_from_environment();
    bool all = true;
    for (const auto& r : bdft::run_acceptance(cfg)) {
        std::cout << bdft::format_result(r) << std::endl;
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
