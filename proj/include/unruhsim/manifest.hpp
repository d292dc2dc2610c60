#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "unruhsim/gaussian.hpp"

namespace unruhsim {

inline constexpr const char* kVersion = "0.1.0";

// Reproducibility record embedded in every CLI output. `params` holds the
// full statistical parameter set; execution details that cannot change the
// results (worker count, output path) are deliberately omitted so that runs
// differing only in those are byte-identical apart from the timestamp.
struct RunManifest {
    std::string subcommand;
    nlohmann::json params;
    std::uint64_t seed = 0;
    std::string artifact_version = kVersion;
    std::string timestamp;  // ISO-8601 UTC
};

nlohmann::json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

std::string iso8601_utc_now();

nlohmann::json state_to_json(const GaussianState& state);

// Standard output document: {"manifest": ..., "params": ..., "results": ...}.
nlohmann::json run_output(const RunManifest& manifest,
                          const nlohmann::json& results);

}  // namespace unruhsim
