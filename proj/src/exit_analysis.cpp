#include "hnnwalk/exit_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hnnwalk {

std::vector<ExitEvent> extract_exits(const TrajectoryState& traj, std::int64_t safety_margin,
                                     bool confirmed_only) {
    if (safety_margin < 0) throw ConfigError("safety margin must be non-negative");
    const std::int64_t depth = traj.final_depth();
    // Last creation event per live level; destroyed levels are re-created
    // before they can appear in the final stack.
    std::vector<const LevelEvent*> last_created(static_cast<std::size_t>(depth) + 1, nullptr);
    for (const LevelEvent& ev : traj.events)
        if (ev.created && ev.level <= depth)
            last_created[static_cast<std::size_t>(ev.level)] = &ev;

    std::vector<ExitEvent> exits;
    const std::int64_t confirmed_top = depth - safety_margin;
    std::int64_t prev_time = 0;
    for (std::int64_t k = 1; k <= depth; ++k) {
        const LevelEvent* ev = last_created[static_cast<std::size_t>(k)];
        if (ev == nullptr || ev->time <= prev_time)
            throw Error("event log is inconsistent with the final depth");
        ExitEvent e;
        e.level = k;
        e.exit_time = ev->time;
        e.increment = ev->time - prev_time;
        e.syllable = ev->syllable;
        e.trailing = ev->trailing;
        e.confirmed = k <= confirmed_top;
        prev_time = ev->time;
        if (e.confirmed || !confirmed_only) exits.push_back(e);
    }
    return exits;
}

std::vector<ExitEvent> trim_tail(std::vector<ExitEvent> exits, double fraction) {
    const auto keep = static_cast<std::size_t>(
        std::floor(static_cast<double>(exits.size()) * (1.0 - fraction)));
    exits.resize(keep);
    return exits;
}

void check_exit_invariants(const HnnPresentation& pres, std::span<const ExitEvent> exits) {
    std::int64_t prev_time = 0;
    for (const ExitEvent& e : exits) {
        const bool member = e.syllable.sign > 0 ? pres.in_B(e.trailing) : pres.in_A(e.trailing);
        if (!member)
            throw Error("exit record at level " + std::to_string(e.level) +
                        " has trailing element outside A/B");
        if (e.exit_time <= prev_time) throw Error("exit times are not strictly increasing");
        if (e.increment <= 0) throw Error("exit increment must be positive");
        prev_time = e.exit_time;
    }
}

ChainKey anchor_state(const HnnPresentation& pres, int direction) {
    return ChainKey{pres.identity(), static_cast<std::int8_t>(direction < 0 ? -1 : +1),
                    pres.identity(), 1};
}

ChainStatistics extract_chain(std::span<const std::vector<ExitEvent>> sequences,
                              ElementId identity) {
    ChainStatistics stats;
    for (const auto& seq : sequences) {
        stats.sequence_count += 1;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const ChainKey cur = key_of(seq[i]);
            stats.visits[cur] += 1;
            stats.total_visits += 1;
            if (i + 1 < seq.size()) {
                const ChainKey next = key_of(seq[i + 1]);
                // t1 w2 t2 = e would cancel the stabilized syllable.
                if (next.rep == identity && next.sign == -cur.sign) stats.forbidden_count += 1;
                stats.transitions[{cur, next}] += 1;
                stats.total_transitions += 1;
            }
        }
    }
    if (stats.total_visits < 2) throw InsufficientData("fewer than two confirmed exits");
    return stats;
}

std::map<ChainKey, double> empirical_pi(const ChainStatistics& stats) {
    if (stats.total_visits < 2) throw InsufficientData("fewer than two confirmed exits");
    std::map<ChainKey, double> pi;
    for (const auto& [key, count] : stats.visits)
        pi[key] = static_cast<double>(count) / static_cast<double>(stats.total_visits);
    return pi;
}

double stationarity_gap(const ChainStatistics& stats) {
    const auto pi = empirical_pi(stats);
    std::map<ChainKey, std::int64_t> out_totals;
    for (const auto& [pair, count] : stats.transitions) out_totals[pair.first] += count;
    std::map<ChainKey, double> pushed;
    for (const auto& [pair, count] : stats.transitions) {
        const double q = static_cast<double>(count) / static_cast<double>(out_totals[pair.first]);
        pushed[pair.second] += pi.at(pair.first) * q;
    }
    double gap = 0.0;
    for (const auto& [key, mass] : pi) {
        auto it = pushed.find(key);
        gap += std::abs((it != pushed.end() ? it->second : 0.0) - mass);
    }
    return gap;
}

bool two_step_reachable(const ChainStatistics& stats, std::int64_t min_visits) {
    std::vector<ChainKey> frequent;
    for (const auto& [key, count] : stats.visits)
        if (count >= min_visits) frequent.push_back(key);
    if (frequent.size() < 2) return true;

    std::map<ChainKey, std::set<ChainKey>> succ;
    for (const auto& [pair, count] : stats.transitions)
        if (count > 0) succ[pair.first].insert(pair.second);

    for (const ChainKey& from : frequent) {
        std::set<ChainKey> reach = succ[from];
        for (const ChainKey& mid : succ[from]) {
            auto it = succ.find(mid);
            if (it != succ.end()) reach.insert(it->second.begin(), it->second.end());
        }
        for (const ChainKey& to : frequent)
            if (!(to == from) && !reach.count(to)) return false;
    }
    return true;
}

std::vector<RegenerationCycle> extract_regenerations(
    std::span<const std::vector<ExitEvent>> sequences, const LengthFunction& ell,
    const ChainKey& anchor) {
    std::vector<RegenerationCycle> cycles;
    for (std::size_t s = 0; s < sequences.size(); ++s) {
        const auto& seq = sequences[s];
        std::int64_t prev_anchor = -1;
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (!(key_of(seq[j]) == anchor)) continue;
            if (prev_anchor >= 0) {
                RegenerationCycle c;
                c.index = static_cast<std::int64_t>(cycles.size());
                c.replica = static_cast<std::int64_t>(s);
                c.start = seq[static_cast<std::size_t>(prev_anchor)].exit_time;
                c.end = seq[j].exit_time;
                c.duration = c.end - c.start;
                c.syllable_count = static_cast<std::int64_t>(j) - prev_anchor;
                double gain = 0.0;
                for (std::size_t l = static_cast<std::size_t>(prev_anchor) + 1; l <= j; ++l)
                    gain += ell.at(seq[l].syllable.rep) + ell.at_sign(seq[l].syllable.sign);
                c.length_gain = gain;
                cycles.push_back(c);
            }
            prev_anchor = static_cast<std::int64_t>(j);
        }
    }
    if (cycles.empty())
        throw NoRegenerations("anchor state never recurs among confirmed exits");
    return cycles;
}

} // namespace hnnwalk
