#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wardowski/wardowski_function.hpp"

namespace wardowski {

struct SpaceSpec {
    enum class Kind { RealLine, Euclidean, FiniteMatrix } kind = Kind::RealLine;
    std::size_t dim = 1;
    std::filesystem::path matrix_file;
};

struct MapSpec {
    enum class Kind { Affine, Table } kind = Kind::Affine;
    double scale = 0.5;
    std::vector<double> offset = {0.0};  // one entry per coordinate; single entry for the line
    std::vector<std::size_t> table;
};

struct FSpec {
    std::string family = "log";  // log | log_poly | neg_power | step_log
    double alpha = 1.0, beta = 1.0, gamma = 1.0;
    double delta = 1.0;
    double jump = 1.0, at = 1.0;
};

struct PhiSpec {
    enum class Kind { Derived, Linear } kind = Kind::Derived;
    double alpha = 0.5;
};

struct VerifySpec {
    std::string condition = "aF";  // aF | phi | strict | nonexpansive
    std::string mode = "sampled";  // exhaustive | sampled
    std::size_t samples = 200;
    std::optional<std::uint64_t> seed;  // defaults to the global seed
    std::vector<double> box_lo = {-1.0};
    std::vector<double> box_hi = {1.0};
};

struct SolveSpec {
    double eps = 1e-9;
    std::size_t max_iter = 1000;
    std::vector<std::vector<double>> starts;  // coordinate lists; a single index for finite spaces
};

struct WitnessSpec {
    std::filesystem::path trace_file;
    std::optional<double> eta;  // proposed from delta and the trace scale when absent
    std::vector<double> delta;
    std::optional<std::size_t> j_count;
};

struct ExperimentConfig {
    std::string id = "default";
    std::vector<std::string> pipeline;  // subset of: verify derive-phi solve classify witness
    SpaceSpec space;
    MapSpec map;
    std::optional<FSpec> F;
    std::optional<double> a;
    std::optional<double> k;
    std::optional<double> tail_beta;
    PhiSpec phi;
    VerifySpec verify;
    SolveSpec solve;
    WitnessSpec witness;
    std::vector<double> t_grid;               // derive-phi inputs
    std::optional<std::string> iterates_csv;  // per-iterate CSV filename
};

struct MultiConfig {
    std::uint64_t seed = 0;
    std::string summary_file = "summary.json";
    std::vector<ExperimentConfig> experiments;  // ordered by id
};

/// Parses the flat dotted-key grammar (see README). Unknown keys, duplicate
/// keys, malformed values and parameter-constraint violations are rejected.
MultiConfig parse_config_text(const std::string& text);

MultiConfig load_config(const std::filesystem::path& file);

/// Instantiates the configured Wardowski function family.
WardowskiFunction build_wardowski(const FSpec& spec);

/// Stage-requirement validation for one experiment (fields present, ranges).
void validate_experiment(const ExperimentConfig& cfg);

} // namespace wardowski
