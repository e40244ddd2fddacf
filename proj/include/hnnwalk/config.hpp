#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hnnwalk/estimators.hpp"

namespace hnnwalk {

struct LengthSpec {
    enum class Kind { Word, TOnly, Table, Greenian };
    Kind kind = Kind::Word;
    std::map<std::string, double> table; // by element name
    double value_t = 1.0;
    double value_t_inv = 1.0;
    std::optional<double> fallback;
    std::optional<GrowthBound> growth_bound; // verified against the word metric
    std::int64_t greenian_horizon = 200;
    std::int64_t greenian_trials = 20000;
};

// Everything a subcommand needs, schema-validated up front and echoed
// verbatim into every artifact.
struct ExperimentConfig {
    GroupSpec group;
    std::map<std::string, double> mu0;
    double alpha = 0.5;
    double p = 0.5;
    std::uint64_t seed = 1;
    std::int64_t steps = 100000;
    std::int64_t replicas = 100;
    std::int64_t safety_margin = thresholds::default_safety_margin;
    LengthSpec length;
    HorizonSchedule horizon;
    std::int64_t xi_trials = 4000;
    int threads = 1;
    std::string out_dir; // default artifact directory; CLI --out overrides
    nlohmann::ordered_json raw; // the document as loaded, for provenance
};

ExperimentConfig parse_config(const nlohmann::ordered_json& doc);
ExperimentConfig load_config(const std::string& path);

// FNV-1a over the canonical serialization, hex-encoded.
std::string config_hash(const ExperimentConfig& config);

struct Instance {
    HnnPresentation pres;
    WalkParams params;
    LengthFunction ell;
};

// Validates the presentation, derives the step law and materializes the
// length function (running the Greenian estimation when requested).
Instance instantiate(const ExperimentConfig& config);

// Length function only; lets callers swap in a different spec on the same
// presentation (used by sweeps and the acceptance suite).
LengthFunction make_length(const HnnPresentation& pres, const WalkParams& params,
                           const LengthSpec& spec, std::uint64_t seed);

} // namespace hnnwalk
