#pragma once

#include "hnnwalk/config.hpp"

namespace hnnwalk {

// Everything produced by one drift run: three routes to lambda_ell, the
// t-length and word-length drifts, the CLT variance and cross-consistency.
struct DriftReport {
    Regime regime;
    EstimateWithCI lambda_direct;
    EstimateWithCI lambda_regen;
    EstimateWithCI lambda_pi;
    EstimateWithCI t_drift;   // target 1/Lambda
    EstimateWithCI wl_drift;  // target 2/Lambda
    EstimateWithCI sigma2;
    EstimateWithCI mean_l;    // must straddle 0
    bool cross_consistent = false;
    std::int64_t total_confirmed_exits = 0;
    std::int64_t total_cycles = 0;
    std::int64_t steps = 0;
    std::int64_t replicas = 0;
};

// Per-replica raw material kept around for diagnostics and CSV emission.
struct ReplicaBatch {
    std::vector<double> ell_rates;
    std::vector<double> t_rates;
    std::vector<double> wl_rates;
    std::vector<double> psi_rates; // signed depth / n, degenerate diagnostics
    std::vector<std::vector<ExitEvent>> exit_sequences; // confirmed, tail-trimmed
    std::vector<RegenerationCycle> cycles;
};

ReplicaBatch run_replicas(const HnnPresentation& pres, const WalkParams& params,
                          const LengthFunction& ell, std::int64_t steps, std::int64_t replicas,
                          std::uint64_t seed, std::int64_t safety_margin, int threads);

// The full estimation pipeline. Throws RegimeError in the recurrent regime.
DriftReport run_drift_pipeline(const HnnPresentation& pres, const WalkParams& params,
                               const LengthFunction& ell, std::int64_t steps,
                               std::int64_t replicas, std::uint64_t seed,
                               std::int64_t safety_margin, int threads);

DriftReport drift_report_from_batch(const HnnPresentation& pres, const WalkParams& params,
                                    const LengthFunction& ell, const ReplicaBatch& batch,
                                    std::int64_t steps);

struct SweepPoint {
    int segment = 0;
    double value = 0.0;
    std::uint64_t seed = 0;
    EstimateWithCI lambda;
    EstimateWithCI sigma2;
    double second_diff = 0.0;      // centered second difference of lambda
    double second_diff_se = 0.0;   // propagated from neighbouring CIs
    bool has_second_diff = false;
};

struct SweepResult {
    std::string param;
    std::vector<SweepPoint> points;
};

// Reruns the drift pipeline over a parameter grid. Degenerate-regime p-grids
// are split into segments at the recurrent point p = 1/2, which is never
// evaluated; mu0-component sweeps renormalize the remaining masses.
SweepResult run_sweep(const ExperimentConfig& config, const std::string& param, double lo,
                      double hi, double step);

// Seed for one sweep grid point, stable under grid refinement.
std::uint64_t sweep_point_seed(std::uint64_t master, const std::string& param, double value);

nlohmann::ordered_json estimate_to_json(const EstimateWithCI& e);
nlohmann::ordered_json drift_report_to_json(const DriftReport& report);
nlohmann::ordered_json clt_report_to_json(const CltReport& report);
nlohmann::ordered_json xi_estimate_to_json(const XiEstimate& xi);

// JSON summary skeleton with provenance fields (config echo, hash, seed).
nlohmann::ordered_json summary_envelope(const ExperimentConfig& config,
                                        const std::string& subcommand);

} // namespace hnnwalk
