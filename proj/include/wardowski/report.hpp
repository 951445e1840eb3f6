#pragma once

#include <filesystem>

#include "json.hpp"
#include "wardowski/config.hpp"

namespace wardowski {

/// Runs one experiment's configured stages and returns its report; any
/// per-iterate or derive-phi CSV files land under out_dir.
nlohmann::json run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                              const std::filesystem::path& out_dir);

/// Runs every experiment of the config (concurrently when there are
/// several), writes the summary JSON plus a separate timestamped metadata
/// file under out_dir, and returns the summary. The summary itself carries
/// no timestamps, so identical configs and seeds reproduce it byte for byte.
nlohmann::json run_config(const MultiConfig& cfg, const std::filesystem::path& out_dir);

/// Flattens a JSON report into "key,value" CSV lines with dotted paths.
std::string json_to_csv(const nlohmann::json& j);

} // namespace wardowski
