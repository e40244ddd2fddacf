#include "hnnwalk/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "hnnwalk/parallel.hpp"

namespace hnnwalk {

EstimateWithCI drift_direct(std::span<const double> per_replica_rates) {
    return mean_estimate(per_replica_rates, "direct");
}

EstimateWithCI drift_regeneration(std::span<const RegenerationCycle> cycles) {
    if (cycles.empty()) throw NoRegenerations("no regeneration cycles");
    std::vector<double> gains, durations;
    gains.reserve(cycles.size());
    durations.reserve(cycles.size());
    for (const auto& c : cycles) {
        gains.push_back(c.length_gain);
        durations.push_back(static_cast<double>(c.duration));
    }
    return ratio_estimate(gains, durations, "regeneration");
}

EstimateWithCI drift_pi_formula(const std::map<ChainKey, double>& pi_hat,
                                const LengthFunction& ell,
                                std::span<const std::pair<double, double>> unit_sums) {
    double lambda_cap = 0.0; // E_pi[i]
    double delta = 0.0;      // E_pi[ell(w t)]
    for (const auto& [key, mass] : pi_hat) {
        lambda_cap += static_cast<double>(key.increment) * mass;
        delta += (ell.at(key.rep) + ell.at_sign(key.sign)) * mass;
    }
    if (lambda_cap <= 0.0) throw InsufficientData("empirical Lambda is not positive");
    std::vector<double> num, den;
    num.reserve(unit_sums.size());
    den.reserve(unit_sums.size());
    for (const auto& [s_ell, s_inc] : unit_sums) {
        num.push_back(s_ell);
        den.push_back(s_inc);
    }
    EstimateWithCI est = ratio_estimate(num, den, "pi_formula");
    // The pooled ratio and the pi-weighted ratio are the same number; keep the
    // formula value as the reported point.
    est.point = delta / lambda_cap;
    est.ci_low = est.point - thresholds::z95 * est.std_error;
    est.ci_high = est.point + thresholds::z95 * est.std_error;
    return est;
}

std::vector<std::pair<double, double>> chain_unit_sums(
    std::span<const std::vector<ExitEvent>> sequences, const LengthFunction& ell,
    std::size_t min_units) {
    std::vector<std::pair<double, double>> sums;
    auto add_range = [&](const std::vector<ExitEvent>& seq, std::size_t lo, std::size_t hi) {
        double s_ell = 0.0, s_inc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            s_ell += ell.at(seq[i].syllable.rep) + ell.at_sign(seq[i].syllable.sign);
            s_inc += static_cast<double>(seq[i].increment);
        }
        if (hi > lo) sums.emplace_back(s_ell, s_inc);
    };
    if (sequences.size() >= min_units) {
        for (const auto& seq : sequences) add_range(seq, 0, seq.size());
    } else {
        // Few replicas: batch each chain so the delta method has enough units.
        const std::size_t batches =
            std::max<std::size_t>(1, (min_units + sequences.size() - 1) / sequences.size());
        for (const auto& seq : sequences) {
            const std::size_t width = std::max<std::size_t>(1, seq.size() / batches);
            for (std::size_t lo = 0; lo < seq.size(); lo += width)
                add_range(seq, lo, std::min(seq.size(), lo + width));
        }
    }
    return sums;
}

Sigma2Report sigma2_regeneration(std::span<const RegenerationCycle> cycles, double lambda_hat) {
    if (cycles.empty()) throw NoRegenerations("no regeneration cycles");
    std::vector<double> sq, durations, l_values;
    sq.reserve(cycles.size());
    durations.reserve(cycles.size());
    l_values.reserve(cycles.size());
    for (const auto& c : cycles) {
        const double l = c.length_gain - static_cast<double>(c.duration) * lambda_hat;
        l_values.push_back(l);
        sq.push_back(l * l);
        durations.push_back(static_cast<double>(c.duration));
    }
    Sigma2Report report;
    report.sigma2 = ratio_estimate(sq, durations, "sigma2_regeneration");
    report.mean_l = mean_estimate(l_values, "mean_L");
    report.lambda_used = lambda_hat;
    return report;
}

double lag1_correlation(std::span<const double> xs) {
    if (xs.size() < 3) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        den += (xs[i] - mean) * (xs[i] - mean);
        if (i + 1 < xs.size()) num += (xs[i] - mean) * (xs[i + 1] - mean);
    }
    return den > 0.0 ? num / den : 0.0;
}

CltReport clt_check(const HnnPresentation& pres, const WalkParams& params,
                    const LengthFunction& ell, std::int64_t n, std::int64_t replicas,
                    std::uint64_t seed, double lambda_hat, double sigma2_hat, int threads) {
    if (n < 1 || replicas < 2) throw InsufficientData("clt_check needs n >= 1 and replicas >= 2");
    std::vector<double> normalized(static_cast<std::size_t>(replicas), 0.0);
    const double root_n = std::sqrt(static_cast<double>(n));
    parallel_replicas(replicas, threads, [&](std::int64_t r) {
        const StepLaw law(pres, params);
        Rng rng(substream(seed, static_cast<std::uint64_t>(r)));
        NormalForm w = identity_form(pres);
        for (std::int64_t i = 0; i < n; ++i) push_letter(pres, w, law.sample(rng));
        normalized[static_cast<std::size_t>(r)] =
            (eval_length(ell, w) - static_cast<double>(n) * lambda_hat) / root_n;
    });

    MomentAccumulator acc;
    for (double z : normalized) acc.add(z);
    CltReport report;
    report.n = n;
    report.replicas = replicas;
    report.lambda_used = lambda_hat;
    report.sigma2_used = sigma2_hat;
    report.mean_normalized = acc.mean();
    report.var_normalized = acc.variance();
    report.variance_ratio = sigma2_hat > 0.0 ? acc.variance() / sigma2_hat : 0.0;
    report.skewness = acc.skewness();
    report.excess_kurtosis = acc.excess_kurtosis();
    report.ks_stat =
        ks_statistic_vs_normal(normalized, acc.mean(), std::sqrt(std::max(acc.variance(), 0.0)));
    report.normalized = std::move(normalized);
    return report;
}

XiEstimate estimate_xi(const HnnPresentation& pres, const WalkParams& params, int sign,
                       ElementId h, const HorizonSchedule& schedule, std::int64_t trials,
                       std::uint64_t seed) {
    const Regime regime = classify_regime(pres, params);
    if (regime.kind == RegimeKind::Recurrent)
        throw RegimeError("xi is defined for transient walks only (A=B=G0 with p=1/2 is recurrent)");
    if (trials < 100) throw InsufficientData("estimate_xi needs at least 100 trials");
    if (schedule.h0 < 1 || schedule.max_doublings < 1)
        throw ConfigError("horizon schedule must have h0 >= 1 and at least one doubling");

    const bool valid_h = sign > 0 ? pres.in_B(h) : pres.in_A(h);
    if (!valid_h) throw DomainError("xi start point must lie in tB or t^-1 A");

    const std::int64_t h_max = schedule.h0 << schedule.max_doublings;
    // Once the walk is this deep the return probability is negligible and the
    // trial is counted as surviving forever.
    const std::int64_t escape_depth = 128;

    const StepLaw law(pres, params);
    std::vector<std::int64_t> death(static_cast<std::size_t>(trials), -1); // -1: never
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(trial)));
        NormalForm w = identity_form(pres);
        push_letter(pres, w, sign > 0 ? Letter::t() : Letter::t_inv());
        push_letter(pres, w, Letter::base(h));
        for (std::int64_t step = 1; step <= h_max; ++step) {
            push_letter(pres, w, law.sample(rng));
            const std::int64_t depth = t_length(w);
            if (depth == 0) {
                death[static_cast<std::size_t>(trial)] = step;
                break;
            }
            if (depth >= escape_depth) break;
        }
    }

    XiEstimate out;
    std::int64_t horizon = schedule.h0;
    double prev = -1.0;
    for (int j = 0; j <= schedule.max_doublings; ++j, horizon *= 2) {
        std::int64_t alive = 0;
        for (std::int64_t d : death)
            if (d < 0 || d > horizon) ++alive;
        const double p_hat = static_cast<double>(alive) / static_cast<double>(trials);
        out.brackets.emplace_back(horizon, p_hat);
        out.final_horizon = horizon;
        if (prev >= 0.0) {
            const double change = std::abs(p_hat - prev);
            if (change <= schedule.rel_tol * std::max(p_hat, 1e-12)) {
                out.converged = true;
                out.estimate = binomial_estimate(alive, trials, "mc_xi");
                break;
            }
        }
        out.estimate = binomial_estimate(alive, trials, "mc_xi");
        prev = p_hat;
    }
    return out;
}

LengthFunction estimate_greenian_length(const HnnPresentation& pres, const WalkParams& params,
                                        std::int64_t horizon, std::int64_t trials,
                                        std::uint64_t seed) {
    if (!pres.base().is_finite())
        throw DomainError("greenian length estimation needs a finite base group");
    if (horizon < 1 || trials < 100)
        throw InsufficientData("greenian estimation needs horizon >= 1 and >= 100 trials");

    const auto n_elements = static_cast<std::size_t>(pres.base().order());
    std::vector<std::int64_t> hits(n_elements, 0);
    std::int64_t hits_t = 0, hits_tinv = 0;
    const ElementId e0 = pres.identity();
    const StepLaw law(pres, params);

    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(trial)));
        NormalForm w = identity_form(pres);
        std::vector<char> seen(n_elements, 0);
        char seen_t = 0, seen_tinv = 0;
        for (std::int64_t step = 1; step <= horizon; ++step) {
            push_letter(pres, w, law.sample(rng));
            const std::int64_t depth = t_length(w);
            if (depth == 0) {
                seen[static_cast<std::size_t>(w.trailing)] = 1;
            } else if (depth == 1 && w.trailing == e0 && w.syllables[0].rep == e0) {
                (w.syllables[0].sign > 0 ? seen_t : seen_tinv) = 1;
            }
        }
        for (std::size_t i = 0; i < n_elements; ++i) hits[i] += seen[i];
        hits_t += seen_t;
        hits_tinv += seen_tinv;
    }

    std::map<ElementId, double> values;
    for (std::size_t i = 0; i < n_elements; ++i) {
        if (hits[i] == 0)
            throw ZeroHitEstimate("no hits on element " +
                                  pres.base().name_of(static_cast<ElementId>(i)) +
                                  "; raise the horizon or trial count");
        const double f = static_cast<double>(hits[i]) / static_cast<double>(trials);
        values[static_cast<ElementId>(i)] = -std::log(f);
    }
    if (hits_t == 0 || hits_tinv == 0)
        throw ZeroHitEstimate("no hits on a stable letter; raise the horizon or trial count");
    const double lt = -std::log(static_cast<double>(hits_t) / static_cast<double>(trials));
    const double ltinv = -std::log(static_cast<double>(hits_tinv) / static_cast<double>(trials));
    return LengthFunction::table(pres, values, lt, ltinv);
}

} // namespace hnnwalk
