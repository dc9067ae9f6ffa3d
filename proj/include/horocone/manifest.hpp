#pragma once

// Experiment manifests: a JSON description of one run (kind + parameters +
// seed), executed into a result record {manifest, outputs, oracles,
// version, timestamp}. Reruns of the same manifest are byte-identical
// except for the timestamp.

#include <string>

#include "json.hpp"

namespace horocone::manifest {

inline constexpr const char* kArtifactVersion = "1.0";

// executes the module operation named by manifest["kind"]; throws
// std::invalid_argument (or rootsys::ValidationError) on bad parameters
nlohmann::json run_experiment(const nlohmann::json& manifest);

// "json", "csv" (series-bearing records), or "plotdata"
std::string emit(const nlohmann::json& record, const std::string& format);

bool records_equal_modulo_timestamp(nlohmann::json a, nlohmann::json b);

}  // namespace horocone::manifest
