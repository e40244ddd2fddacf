#pragma once

#include "hnnwalk/exit_analysis.hpp"
#include "hnnwalk/stats.hpp"

namespace hnnwalk {

// lambda_ell as the mean of ell(X_n)/n over replicas.
EstimateWithCI drift_direct(std::span<const double> per_replica_rates);

// lambda_ell = E[length gain per cycle] / E[cycle duration] over i.i.d.
// regeneration cycles, delta-method standard error.
EstimateWithCI drift_regeneration(std::span<const RegenerationCycle> cycles);

// lambda_ell = Delta_hat / Lambda_hat under the empirical invariant measure;
// the point estimate is evaluated from pi_hat literally, the standard error
// from per-unit (sum ell, sum increment) pairs (replicas, or batches of a
// single chain).
EstimateWithCI drift_pi_formula(const std::map<ChainKey, double>& pi_hat,
                                const LengthFunction& ell,
                                std::span<const std::pair<double, double>> unit_sums);

// Per-unit (sum of ell(g t), sum of increments) pairs for the delta method.
std::vector<std::pair<double, double>> chain_unit_sums(
    std::span<const std::vector<ExitEvent>> sequences, const LengthFunction& ell,
    std::size_t min_units = 8);

struct Sigma2Report {
    EstimateWithCI sigma2;  // mean((gain - dur*lambda)^2) / mean(dur)
    EstimateWithCI mean_l;  // mean of L_i = gain - dur*lambda, straddles 0
    double lambda_used = 0.0;
};

Sigma2Report sigma2_regeneration(std::span<const RegenerationCycle> cycles, double lambda_hat);

// Lag-1 sample autocorrelation, for the cycle-independence diagnostic.
double lag1_correlation(std::span<const double> xs);

struct CltReport {
    std::int64_t n = 0;
    std::int64_t replicas = 0;
    double lambda_used = 0.0;
    double sigma2_used = 0.0;
    double mean_normalized = 0.0; // mean of (ell(X_n) - n lambda)/sqrt(n)
    double var_normalized = 0.0;
    double variance_ratio = 0.0;  // var_normalized / sigma2_used
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double ks_stat = 0.0;         // against the fitted normal
    std::vector<double> normalized; // per-replica statistic, replica order
};

// Runs `replicas` fresh walks of length n and compares the normalized final
// statistic with N(0, sigma2_hat).
CltReport clt_check(const HnnPresentation& pres, const WalkParams& params,
                    const LengthFunction& ell, std::int64_t n, std::int64_t replicas,
                    std::uint64_t seed, double lambda_hat, double sigma2_hat, int threads = 1);

struct HorizonSchedule {
    std::int64_t h0 = 256;
    int max_doublings = 12;
    double rel_tol = thresholds::xi_rel_tol;
};

struct XiEstimate {
    EstimateWithCI estimate;
    bool upper_bracket = true; // finite horizons overestimate survival
    bool converged = false;
    std::int64_t final_horizon = 0;
    std::vector<std::pair<std::int64_t, double>> brackets; // (H, p_hat_H)
};

// Monte Carlo escape probability xi from the start point t^sign * h: a trial
// fails when the walk re-enters G0 (t-length back to 0), survives at the
// horizon. Doubling schedule with a relative-change stopping rule.
XiEstimate estimate_xi(const HnnPresentation& pres, const WalkParams& params, int sign,
                       ElementId h, const HorizonSchedule& schedule, std::int64_t trials,
                       std::uint64_t seed);

// Greenian length ell_G(g) = -log F_hat(e, g) for every base element and the
// stable letters, F estimated over `trials` walks of length `horizon`. The
// finite horizon underestimates F, so the returned lengths are upper
// brackets that tighten as the horizon grows.
LengthFunction estimate_greenian_length(const HnnPresentation& pres, const WalkParams& params,
                                        std::int64_t horizon, std::int64_t trials,
                                        std::uint64_t seed);

} // namespace hnnwalk
