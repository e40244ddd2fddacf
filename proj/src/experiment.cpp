#include "hnnwalk/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hnnwalk/parallel.hpp"

namespace hnnwalk {

ReplicaBatch run_replicas(const HnnPresentation& pres, const WalkParams& params,
                          const LengthFunction& ell, std::int64_t steps, std::int64_t replicas,
                          std::uint64_t seed, std::int64_t safety_margin, int threads) {
    ReplicaBatch batch;
    const auto r = static_cast<std::size_t>(replicas);
    batch.ell_rates.resize(r);
    batch.t_rates.resize(r);
    batch.wl_rates.resize(r);
    batch.psi_rates.resize(r);
    batch.exit_sequences.resize(r);

    parallel_replicas(replicas, threads, [&](std::int64_t i) {
        const TrajectoryState traj =
            run_trajectory(pres, params, steps, substream(seed, static_cast<std::uint64_t>(i)));
        const double n = static_cast<double>(steps);
        const auto idx = static_cast<std::size_t>(i);
        batch.ell_rates[idx] = eval_length(ell, traj.current) / n;
        batch.t_rates[idx] = static_cast<double>(t_length(traj.current)) / n;
        batch.wl_rates[idx] = static_cast<double>(word_length(pres, traj.current)) / n;
        batch.psi_rates[idx] = static_cast<double>(signed_depth(traj.current)) / n;
        batch.exit_sequences[idx] = trim_tail(extract_exits(traj, safety_margin),
                                              thresholds::confirmed_tail_discard);
    });

    const Regime regime = classify_regime(pres, params);
    if (regime.kind != RegimeKind::Recurrent) {
        const ChainKey anchor = anchor_state(pres, regime.direction);
        try {
            batch.cycles = extract_regenerations(batch.exit_sequences, ell, anchor);
        } catch (const NoRegenerations&) {
            // Leave empty; estimators that need cycles will throw with context.
        }
    }
    return batch;
}

DriftReport drift_report_from_batch(const HnnPresentation& pres, const WalkParams& params,
                                    const LengthFunction& ell, const ReplicaBatch& batch,
                                    std::int64_t steps) {
    DriftReport report;
    report.regime = classify_regime(pres, params);
    report.steps = steps;
    report.replicas = static_cast<std::int64_t>(batch.ell_rates.size());

    report.lambda_direct = drift_direct(batch.ell_rates);
    report.t_drift = mean_estimate(batch.t_rates, "direct_t");
    report.wl_drift = mean_estimate(batch.wl_rates, "direct_wl");

    if (batch.cycles.empty())
        throw NoRegenerations("no regeneration cycles; lengthen the run or add replicas");
    report.total_cycles = static_cast<std::int64_t>(batch.cycles.size());
    report.lambda_regen = drift_regeneration(batch.cycles);

    const ChainStatistics stats = extract_chain(batch.exit_sequences, pres.identity());
    report.total_confirmed_exits = stats.total_visits;
    if (stats.forbidden_count != 0)
        throw Error("observed a forbidden (cancelling) transition in the exit chain");
    const auto pi = empirical_pi(stats);
    const auto unit_sums = chain_unit_sums(batch.exit_sequences, ell);
    report.lambda_pi = drift_pi_formula(pi, ell, unit_sums);

    const Sigma2Report s2 = sigma2_regeneration(batch.cycles, report.lambda_direct.point);
    report.sigma2 = s2.sigma2;
    report.mean_l = s2.mean_l;

    report.cross_consistent = estimates_overlap(report.lambda_direct, report.lambda_regen) &&
                              estimates_overlap(report.lambda_direct, report.lambda_pi) &&
                              estimates_overlap(report.lambda_regen, report.lambda_pi);
    return report;
}

DriftReport run_drift_pipeline(const HnnPresentation& pres, const WalkParams& params,
                               const LengthFunction& ell, std::int64_t steps,
                               std::int64_t replicas, std::uint64_t seed,
                               std::int64_t safety_margin, int threads) {
    const Regime regime = classify_regime(pres, params);
    if (regime.kind == RegimeKind::Recurrent)
        throw RegimeError(
            "drift requires a transient walk; A=B=G0 with p=1/2 is recurrent (recurrence "
            "criterion)");
    const ReplicaBatch batch =
        run_replicas(pres, params, ell, steps, replicas, seed, safety_margin, threads);
    return drift_report_from_batch(pres, params, ell, batch, steps);
}

std::uint64_t sweep_point_seed(std::uint64_t master, const std::string& param, double value) {
    return mix64(master ^ mix64(fnv1a64(param)) ^ mix64(std::bit_cast<std::uint64_t>(value)));
}

SweepResult run_sweep(const ExperimentConfig& config, const std::string& param, double lo,
                      double hi, double step) {
    if (!(step > 0.0) || lo > hi) throw GridError("grid must satisfy lo <= hi with step > 0");
    const bool is_mu0 = param.rfind("mu0:", 0) == 0;
    if (!is_mu0 && param != "p" && param != "alpha")
        throw GridError("sweep parameter must be p, alpha or mu0:<element>");

    const Instance base = instantiate(config);
    const bool degenerate = base.pres.degenerate();

    // lo + k*step rather than accumulation: grid points shared between
    // refinements get bit-identical values, hence identical seeds.
    std::vector<double> grid;
    for (std::int64_t k = 0;; ++k) {
        const double v = lo + static_cast<double>(k) * step;
        if (v > hi + 1e-12) break;
        grid.push_back(v);
    }

    SweepResult result;
    result.param = param;
    int segment = 0;
    bool previous_dropped = false;
    for (double v : grid) {
        if (param == "p" && degenerate && std::abs(v - 0.5) < 1e-9) {
            // The recurrent point splits the sweep; never evaluated.
            previous_dropped = true;
            continue;
        }
        if (param == "p" && degenerate && previous_dropped) {
            ++segment;
            previous_dropped = false;
        }
        if (!(v > 0.0 && v < 1.0)) throw GridError("grid value outside (0,1)");

        WalkParams params = base.params;
        if (param == "p") {
            params.p = v;
        } else if (param == "alpha") {
            params.alpha = v;
        } else {
            const std::string name = param.substr(4);
            if (!base.pres.base().has_name(name))
                throw GridError("mu0 component is not an element: " + name);
            const ElementId target = base.pres.base().id_of(name);
            double old_mass = -1.0;
            for (const auto& [g, mass] : params.mu0)
                if (g == target) old_mass = mass;
            if (old_mass < 0.0) throw GridError("mu0 component not in the support: " + name);
            const double scale = (1.0 - v) / (1.0 - old_mass);
            for (auto& [g, mass] : params.mu0) mass = (g == target) ? v : mass * scale;
        }

        SweepPoint point;
        point.segment = segment;
        point.value = v;
        point.seed = sweep_point_seed(config.seed, param, v);
        const DriftReport report =
            run_drift_pipeline(base.pres, params, base.ell, config.steps, config.replicas,
                               point.seed, config.safety_margin, config.threads);
        point.lambda = report.lambda_direct;
        point.sigma2 = report.sigma2;
        result.points.push_back(point);
    }
    if (result.points.empty()) throw GridError("grid contains no admissible points");

    // Centered second differences of lambda within each segment.
    for (std::size_t i = 0; i + 2 < result.points.size(); ++i) {
        SweepPoint& mid = result.points[i + 1];
        const SweepPoint& left = result.points[i];
        const SweepPoint& right = result.points[i + 2];
        if (left.segment != mid.segment || right.segment != mid.segment) continue;
        mid.second_diff = left.lambda.point - 2.0 * mid.lambda.point + right.lambda.point;
        mid.second_diff_se =
            std::sqrt(left.lambda.std_error * left.lambda.std_error +
                      4.0 * mid.lambda.std_error * mid.lambda.std_error +
                      right.lambda.std_error * right.lambda.std_error);
        mid.has_second_diff = true;
    }
    return result;
}

nlohmann::ordered_json estimate_to_json(const EstimateWithCI& e) {
    return nlohmann::ordered_json{{"point", e.point},         {"std_error", e.std_error},
                                  {"ci_low", e.ci_low},       {"ci_high", e.ci_high},
                                  {"n_samples", e.n_samples}, {"method", e.method}};
}

nlohmann::ordered_json drift_report_to_json(const DriftReport& report) {
    nlohmann::ordered_json doc;
    doc["regime"] = regime_name(report.regime.kind);
    doc["direction"] = report.regime.direction;
    doc["steps"] = report.steps;
    doc["replicas"] = report.replicas;
    doc["lambda_direct"] = estimate_to_json(report.lambda_direct);
    doc["lambda_regen"] = estimate_to_json(report.lambda_regen);
    doc["lambda_pi"] = estimate_to_json(report.lambda_pi);
    doc["t_drift"] = estimate_to_json(report.t_drift);
    doc["wl_drift"] = estimate_to_json(report.wl_drift);
    doc["sigma2"] = estimate_to_json(report.sigma2);
    doc["mean_L"] = estimate_to_json(report.mean_l);
    doc["cross_consistent"] = report.cross_consistent;
    doc["total_confirmed_exits"] = report.total_confirmed_exits;
    doc["total_cycles"] = report.total_cycles;
    return doc;
}

nlohmann::ordered_json clt_report_to_json(const CltReport& report) {
    nlohmann::ordered_json doc;
    doc["n"] = report.n;
    doc["replicas"] = report.replicas;
    doc["lambda_used"] = report.lambda_used;
    doc["sigma2_used"] = report.sigma2_used;
    doc["mean_normalized"] = report.mean_normalized;
    doc["var_normalized"] = report.var_normalized;
    doc["variance_ratio"] = report.variance_ratio;
    doc["skewness"] = report.skewness;
    doc["excess_kurtosis"] = report.excess_kurtosis;
    doc["ks_stat"] = report.ks_stat;
    return doc;
}

nlohmann::ordered_json xi_estimate_to_json(const XiEstimate& xi) {
    nlohmann::ordered_json doc;
    doc["estimate"] = estimate_to_json(xi.estimate);
    doc["upper_bracket"] = xi.upper_bracket;
    doc["converged"] = xi.converged;
    doc["final_horizon"] = xi.final_horizon;
    nlohmann::ordered_json brackets = nlohmann::ordered_json::array();
    for (const auto& [h, p] : xi.brackets)
        brackets.push_back(nlohmann::ordered_json{{"horizon", h}, {"p_hat", p}});
    doc["brackets"] = brackets;
    return doc;
}

nlohmann::ordered_json summary_envelope(const ExperimentConfig& config,
                                        const std::string& subcommand) {
    nlohmann::ordered_json doc;
    doc["tool"] = "hnnwalk";
    doc["version"] = "0.1.0";
    doc["subcommand"] = subcommand;
    doc["config_hash"] = config_hash(config);
    doc["master_seed"] = config.seed;
    doc["config"] = config.raw;
    return doc;
}

} // namespace hnnwalk
