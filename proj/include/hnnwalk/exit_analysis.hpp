#pragma once

#include <compare>
#include <map>
#include <span>

#include "hnnwalk/length_function.hpp"
#include "hnnwalk/walk.hpp"

namespace hnnwalk {

// Stabilization record of one level k: the step e_k after which the t-length
// never drops below k again, the increment i_k = e_k - e_{k-1}, and the
// stabilized syllable W_k = (g_k, t_k, h_k).
struct ExitEvent {
    std::int64_t level = 0;
    std::int64_t exit_time = 0;
    std::int64_t increment = 0;
    Syllable syllable;
    ElementId trailing = 0;
    bool confirmed = false;
};

// e_k quantifies over the infinite future, so only levels buried at least
// `safety_margin` syllables below the final depth are confirmed. Unconfirmed
// tail levels are omitted unless `confirmed_only` is false.
std::vector<ExitEvent> extract_exits(const TrajectoryState& traj, std::int64_t safety_margin,
                                     bool confirmed_only = true);

// Drops the top `fraction` of confirmed levels; second truncation guard used
// by every estimator that consumes exit chains.
std::vector<ExitEvent> trim_tail(std::vector<ExitEvent> exits, double fraction);

// Throws if some record violates the membership constraints of the chain
// state space (h in B for t-syllables, h in A for t^-1-syllables).
void check_exit_invariants(const HnnPresentation& pres, std::span<const ExitEvent> exits);

// State of the stabilization chain: (W, i) = (rep, sign, trailing, increment).
struct ChainKey {
    ElementId rep = 0;
    std::int8_t sign = 1;
    ElementId h = 0;
    std::int64_t increment = 1;

    auto operator<=>(const ChainKey&) const = default;
};

inline ChainKey key_of(const ExitEvent& e) {
    return ChainKey{e.syllable.rep, e.syllable.sign, e.trailing, e.increment};
}

// The regeneration anchor (e0 t e0, 1), mirrored to (e0 t^-1 e0, 1) when the
// walk escapes downward.
ChainKey anchor_state(const HnnPresentation& pres, int direction);

struct ChainStatistics {
    std::map<ChainKey, std::int64_t> visits;
    std::map<std::pair<ChainKey, ChainKey>, std::int64_t> transitions;
    std::int64_t total_visits = 0;
    std::int64_t total_transitions = 0;
    std::int64_t forbidden_count = 0; // transitions with t1 w2 t2 = e (must stay 0)
    std::int64_t sequence_count = 0;
};

// Pools the (W_k, i_k) sequences of one or more replicas into visit and
// transition counts. Throws InsufficientData for fewer than two exits.
ChainStatistics extract_chain(std::span<const std::vector<ExitEvent>> sequences,
                              ElementId identity);

// Normalized visit frequencies.
std::map<ChainKey, double> empirical_pi(const ChainStatistics& stats);

// ||pi_hat * Q_hat - pi_hat||_1; tends to 0 on long runs up to boundary terms.
double stationarity_gap(const ChainStatistics& stats);

// Every state visited at least `min_visits` times can reach every other such
// state in at most two observed transitions.
bool two_step_reachable(const ChainStatistics& stats, std::int64_t min_visits);

// One regeneration cycle [T_{i-1}, T_i).
struct RegenerationCycle {
    std::int64_t index = 0;
    std::int64_t replica = 0; // index of the source sequence
    std::int64_t start = 0;
    std::int64_t end = 0;
    std::int64_t duration = 0;
    std::int64_t syllable_count = 0;
    double length_gain = 0.0;
};

// Cycles delimited by anchor visits, pooled across replicas; length gains are
// ell([X_{T_i}]) - ell([X_{T_{i-1}}]). Throws NoRegenerations when no replica
// contains a complete cycle.
std::vector<RegenerationCycle> extract_regenerations(
    std::span<const std::vector<ExitEvent>> sequences, const LengthFunction& ell,
    const ChainKey& anchor);

} // namespace hnnwalk
