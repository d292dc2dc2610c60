#include "unruhsim/manifest.hpp"

#include <ctime>

namespace unruhsim {

nlohmann::json to_json(const RunManifest& manifest) {
    return nlohmann::json{{"subcommand", manifest.subcommand},
                          {"params", manifest.params},
                          {"seed", manifest.seed},
                          {"artifact_version", manifest.artifact_version},
                          {"timestamp", manifest.timestamp}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    RunManifest manifest;
    manifest.subcommand = j.at("subcommand").get<std::string>();
    manifest.params = j.at("params");
    manifest.seed = j.at("seed").get<std::uint64_t>();
    manifest.artifact_version = j.at("artifact_version").get<std::string>();
    manifest.timestamp = j.at("timestamp").get<std::string>();
    return manifest;
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

nlohmann::json state_to_json(const GaussianState& state) {
    nlohmann::json mean = nlohmann::json::array();
    for (int i = 0; i < state.dim(); ++i) {
        mean.push_back(state.mean()(i));
    }
    nlohmann::json covariance = nlohmann::json::array();
    for (int r = 0; r < state.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < state.dim(); ++c) {
            row.push_back(state.covariance()(r, c));
        }
        covariance.push_back(row);
    }
    return nlohmann::json{{"modes", state.labels()},
                          {"mean", mean},
                          {"covariance", covariance}};
}

nlohmann::json run_output(const RunManifest& manifest,
                          const nlohmann::json& results) {
    return nlohmann::json{{"manifest", to_json(manifest)},
                          {"params", manifest.params},
                          {"results", results}};
}

}  // namespace unruhsim
