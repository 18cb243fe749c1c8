#include "extsum/run_config.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace extsum {

namespace {

using nlohmann::json;

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
    for (const char* o : options) {
        if (v == o) return true;
    }
    return false;
}

} // namespace

std::vector<std::string> RunConfig::validate() const {
    std::vector<std::string> errors;
    if (problem.empty()) errors.push_back("problem: required");
    if (!one_of(algorithm, {"efb", "projected_eps_subgrad", "passty"})) {
        errors.push_back("algorithm: must be efb, projected_eps_subgrad or passty");
    }
    if (!(c > 0.0) || !std::isfinite(c)) errors.push_back("c: must be positive and finite");
    if (!(p > 0.0) || !std::isfinite(p)) errors.push_back("p: must be positive and finite");
    if (!(q > 0.0) || !std::isfinite(q)) errors.push_back("q: must be positive and finite");
    if (!one_of(strategy, {"min_norm", "boundary", "random"})) {
        errors.push_back("strategy: must be min_norm, boundary or random");
    }
    if (max_iter < 1) errors.push_back("max_iter: must be >= 1");
    if (record_every < 1) errors.push_back("record_every: must be >= 1");
    if (output.empty()) errors.push_back("output: required");
    if (!one_of(format, {"csv", "json"})) errors.push_back("format: must be csv or json");
    return errors;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("bad config json in '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

    static const char* known_keys[] = {"problem",   "algorithm",    "c",      "p",
                                       "q",         "strategy",     "seed",   "max_iter",
                                       "record_every", "output",    "format",
                                       "unsafe_schedule"};
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : known_keys) {
            if (key == k) known = true;
        }
        if (!known) throw std::invalid_argument("unknown config key '" + key + "'");
        (void)value;
    }

    RunConfig cfg;
    try {
        cfg.problem = j.value("problem", cfg.problem);
        cfg.algorithm = j.value("algorithm", cfg.algorithm);
        cfg.c = j.value("c", cfg.c);
        cfg.p = j.value("p", cfg.p);
        cfg.q = j.value("q", cfg.q);
        cfg.strategy = j.value("strategy", cfg.strategy);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.max_iter = j.value("max_iter", cfg.max_iter);
        cfg.record_every = j.value("record_every", cfg.record_every);
        cfg.output = j.value("output", cfg.output);
        cfg.format = j.value("format", cfg.format);
        cfg.unsafe_schedule = j.value("unsafe_schedule", cfg.unsafe_schedule);
    } catch (const json::exception& e) {
        throw std::invalid_argument("bad config value in '" + path + "': " + e.what());
    }
    return cfg;
}

} // namespace extsum
