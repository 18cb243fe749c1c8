#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace extsum {

// Flat run description: loadable from a JSON file, overridable field by
// field from command-line flags. The EXTSUM_SEED environment variable, when
// set, takes precedence over the seed given here.
struct RunConfig {
    std::string problem;             // builtin problem id
    std::string algorithm = "efb";   // efb | projected_eps_subgrad | passty
    double c = 1.0;                  // lambda_n = c * n^(-p)
    double p = 1.0;
    double q = 1.0 / 3.0;            // eps_n = n^(-q)
    std::string strategy = "min_norm"; // min_norm | boundary | random
    std::uint64_t seed = 0;
    long max_iter = 1000;
    long record_every = 1;
    std::string output;              // trace file path
    std::string format = "csv";      // csv | json
    bool unsafe_schedule = false;

    // Field-level problems; empty means the config is usable.
    std::vector<std::string> validate() const;
};

// Throws std::invalid_argument on unreadable files, malformed JSON or
// unknown keys (flat schema, same key names as the struct fields).
RunConfig load_run_config(const std::string& path);

} // namespace extsum
