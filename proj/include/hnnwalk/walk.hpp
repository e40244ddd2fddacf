#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hnnwalk/normal_form.hpp"
#include "hnnwalk/rng.hpp"

namespace hnnwalk {

// Step distribution parameters: mu = alpha*mu0 + (1-alpha)*(p dt + (1-p) dt^-1).
struct WalkParams {
    std::vector<std::pair<ElementId, double>> mu0; // support in config order
    double alpha = 0.5;
    double p = 0.5;
};

// Checks mass positivity, normalization and semigroup generation.
void validate_walk_params(const HnnPresentation& pres, const WalkParams& params);

enum class RegimeKind { Recurrent, TransientDegenerate, TransientGeneral };

struct Regime {
    RegimeKind kind = RegimeKind::TransientGeneral;
    int direction = 0; // sign of p - 1/2 in the degenerate regime
};

Regime classify_regime(const HnnPresentation& pres, const WalkParams& params);
const char* regime_name(RegimeKind kind);

// Precomputed sampling table for the derived step law.
class StepLaw {
public:
    StepLaw(const HnnPresentation& pres, const WalkParams& params);
    Letter sample(Rng& rng) const;
    const std::vector<std::pair<Letter, double>>& entries() const { return entries_; }

private:
    std::vector<std::pair<Letter, double>> entries_;
    std::vector<double> cumulative_;
};

struct LevelEvent {
    std::int64_t time = 0;  // step index, 1-based
    std::int64_t level = 0; // t-length after the step (created) / before it (destroyed)
    bool created = true;
    Syllable syllable;      // the syllable created or removed at this level
    ElementId trailing = 0; // trailing element right after the step
};

// Full record of one trajectory: the current normal form, per-step depth
// deltas (one byte each) and the level event log from which exit times are
// recovered without storing prefixes.
struct TrajectoryState {
    NormalForm current;
    std::int64_t step_count = 0;
    std::vector<std::int8_t> depth_deltas;
    std::vector<LevelEvent> events;

    std::int64_t final_depth() const;
    std::vector<std::int64_t> depth_log() const; // length step_count+1, starts at 0
};

// Appends one letter: pushes it into the normal form and logs the depth
// delta and any level event.
void advance_trajectory(const HnnPresentation& pres, TrajectoryState& traj, const Letter& x);

// Deterministic function of (pres, params, n_steps, seed).
TrajectoryState run_trajectory(const HnnPresentation& pres, const WalkParams& params,
                               std::int64_t n_steps, std::uint64_t seed);

// Replays an explicit letter sequence through the same logging path.
TrajectoryState trajectory_from_letters(const HnnPresentation& pres,
                                        std::span<const Letter> letters);

} // namespace hnnwalk
