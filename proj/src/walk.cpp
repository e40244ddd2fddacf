#include "hnnwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hnnwalk/thresholds.hpp"

namespace hnnwalk {

void validate_walk_params(const HnnPresentation& pres, const WalkParams& params) {
    if (!(params.alpha > 0.0 && params.alpha < 1.0))
        throw ConfigError("alpha must lie in the open interval (0,1)");
    if (!(params.p > 0.0 && params.p < 1.0))
        throw ConfigError("p must lie in the open interval (0,1)");
    if (params.mu0.empty()) throw ConfigError("mu0 must have non-empty support");
    double sum = 0.0;
    std::set<ElementId> support;
    for (const auto& [g, mass] : params.mu0) {
        if (!(mass > 0.0)) throw ConfigError("mu0 masses must be strictly positive");
        if (!support.insert(g).second) throw ConfigError("mu0 lists an element twice");
        sum += mass;
    }
    if (std::abs(sum - 1.0) > thresholds::prob_sum_tol)
        throw ConfigError("mu0 masses must sum to 1");

    if (pres.base().is_finite()) {
        // Semigroup closure from the identity must reach every element.
        std::vector<char> seen(static_cast<std::size_t>(pres.base().order()), 0);
        std::vector<ElementId> frontier{pres.identity()};
        seen[static_cast<std::size_t>(pres.identity())] = 1;
        while (!frontier.empty()) {
            const ElementId cur = frontier.back();
            frontier.pop_back();
            for (const auto& [s, mass] : params.mu0) {
                const ElementId next = pres.mul(cur, s);
                if (!seen[static_cast<std::size_t>(next)]) {
                    seen[static_cast<std::size_t>(next)] = 1;
                    frontier.push_back(next);
                }
            }
        }
        if (std::count(seen.begin(), seen.end(), 1) != pres.base().order())
            throw ConfigError("supp(mu0) does not generate the base group as a semigroup");
    } else {
        // The integers: need both signs and gcd 1.
        ElementId gcd = 0;
        bool pos = false, neg = false;
        for (const auto& [g, mass] : params.mu0) {
            if (g > 0) pos = true;
            if (g < 0) neg = true;
            gcd = std::gcd(gcd, g < 0 ? -g : g);
        }
        if (!pos || !neg || gcd != 1)
            throw ConfigError("supp(mu0) does not generate the integers as a semigroup");
    }
}

Regime classify_regime(const HnnPresentation& pres, const WalkParams& params) {
    validate_walk_params(pres, params);
    if (!pres.degenerate()) return {RegimeKind::TransientGeneral, 0};
    if (params.p == 0.5) return {RegimeKind::Recurrent, 0};
    return {RegimeKind::TransientDegenerate, params.p > 0.5 ? +1 : -1};
}

const char* regime_name(RegimeKind kind) {
    switch (kind) {
    case RegimeKind::Recurrent: return "recurrent";
    case RegimeKind::TransientDegenerate: return "transient_degenerate";
    case RegimeKind::TransientGeneral: return "transient_general";
    }
    return "unknown";
}

StepLaw::StepLaw(const HnnPresentation& pres, const WalkParams& params) {
    validate_walk_params(pres, params);
    for (const auto& [g, mass] : params.mu0)
        entries_.emplace_back(Letter::base(g), params.alpha * mass);
    entries_.emplace_back(Letter::t(), (1.0 - params.alpha) * params.p);
    entries_.emplace_back(Letter::t_inv(), (1.0 - params.alpha) * (1.0 - params.p));
    cumulative_.reserve(entries_.size());
    double acc = 0.0;
    for (const auto& [letter, mass] : entries_) {
        acc += mass;
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

Letter StepLaw::sample(Rng& rng) const {
    const double u = rng.next_double();
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative_.begin()), entries_.size() - 1);
    return entries_[idx].first;
}

std::int64_t TrajectoryState::final_depth() const { return t_length(current); }

std::vector<std::int64_t> TrajectoryState::depth_log() const {
    std::vector<std::int64_t> log(static_cast<std::size_t>(step_count) + 1, 0);
    std::int64_t d = 0;
    for (std::int64_t i = 0; i < step_count; ++i) {
        d += depth_deltas[static_cast<std::size_t>(i)];
        log[static_cast<std::size_t>(i + 1)] = d;
    }
    return log;
}

void advance_trajectory(const HnnPresentation& pres, TrajectoryState& traj, const Letter& x) {
    const std::int64_t before = t_length(traj.current);
    push_letter(pres, traj.current, x);
    const std::int64_t after = t_length(traj.current);
    traj.step_count += 1;
    traj.depth_deltas.push_back(static_cast<std::int8_t>(after - before));
    if (after > before) {
        traj.events.push_back(LevelEvent{traj.step_count, after, true,
                                         traj.current.syllables.back(), traj.current.trailing});
    } else if (after < before) {
        // The popped syllable is no longer on the stack; record the level only.
        traj.events.push_back(
            LevelEvent{traj.step_count, before, false, Syllable{}, traj.current.trailing});
    }
}

TrajectoryState run_trajectory(const HnnPresentation& pres, const WalkParams& params,
                               std::int64_t n_steps, std::uint64_t seed) {
    const StepLaw law(pres, params);
    Rng rng(seed);
    TrajectoryState traj;
    traj.current = identity_form(pres);
    traj.depth_deltas.reserve(static_cast<std::size_t>(n_steps));
    for (std::int64_t step = 1; step <= n_steps; ++step)
        advance_trajectory(pres, traj, law.sample(rng));
    return traj;
}

TrajectoryState trajectory_from_letters(const HnnPresentation& pres,
                                        std::span<const Letter> letters) {
    TrajectoryState traj;
    traj.current = identity_form(pres);
    traj.depth_deltas.reserve(letters.size());
    for (const Letter& x : letters) advance_trajectory(pres, traj, x);
    return traj;
}

} // namespace hnnwalk
