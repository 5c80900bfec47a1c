#include "bdft/config.hpp"

#include <cstdlib>
#include <fstream>
#include <string_view>

#include "bdft/types.hpp"

namespace bdft {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <class T, class Parse>
T parse_number(const std::string& key, const std::string& value, Parse parse) {
    try {
        std::size_t used = 0;
        T v = parse(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParameterError("config: bad value for " + key + ": '" + value + "'");
    }
}

}  // namespace

void RunConfig::validate() const {
    if (!(tol > 0.0 && tol <= comparison_tol)) throw ParameterError("config: need 0 < tol <= comparison_tol");
    if (panel_budget < 1000) throw ParameterError("config: panel_budget must be at least 1000");
    if (output_format != "csv" && output_format != "json") {
        throw ParameterError("config: output_format must be csv or json");
    }
}

RunConfig load_config(const std::string& path, RunConfig cfg) {
    std::ifstream in(path);
    if (!in) throw ParameterError("config: cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("config: line " + std::to_string(lineno) + " is not key=value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        auto stod = [](const std::string& s, std::size_t* n) { return std::stod(s, n); };
        auto stol = [](const std::string& s, std::size_t* n) { return std::stol(s, n); };
        auto stoull = [](const std::string& s, std::size_t* n) { return std::stoull(s, n); };
        if (key == "tol") cfg.tol = parse_number<double>(key, value, stod);
        else if (key == "comparison_tol") cfg.comparison_tol = parse_number<double>(key, value, stod);
        else if (key == "panel_budget") cfg.panel_budget = parse_number<long>(key, value, stol);
        else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value, stoull);
        else if (key == "output_format") cfg.output_format = value;
        else throw ParameterError("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig config_from_environment() {
    if (const char* path = std::getenv("BDFT_CONFIG"); path != nullptr && *path != '\0') return load_config(path);
    return {};
}

}  // namespace bdft
