#pragma once

#include <cstdint>

// Every statistical threshold used by estimators, diagnostics and the
// acceptance checks lives here, so tolerances are pinned in one place.
namespace hnnwalk::thresholds {

inline constexpr double z95 = 1.959963984540054;   // two-sided 95% normal quantile
inline constexpr double agree_sigma = 3.0;         // joint k-sigma for estimator cross-agreement
inline constexpr double variance_band = 0.15;      // CLT empirical-variance band around sigma^2
inline constexpr double skew_max = 0.15;           // CLT |skewness| bound
inline constexpr double prob_sum_tol = 1e-12;      // probability vectors must sum to 1 within this
inline constexpr double xi_rel_tol = 1e-3;         // horizon-doubling stopping rule
inline constexpr double confirmed_tail_discard = 0.05;  // fraction of top confirmed levels dropped
inline constexpr std::int64_t default_safety_margin = 10;
inline constexpr double wl_t_ratio_lo = 1.9;       // expected wl_drift / t_drift window
inline constexpr double wl_t_ratio_hi = 2.1;
// Discontinuity detector for sweeps: second differences of a smooth curve
// shrink fourfold when the grid step halves, a kink only halves them and a
// jump keeps them constant. Halved-step differences must stay below this
// fraction of the coarse ones (plus noise).
inline constexpr double sweep_jump_ratio = 0.45;

} // namespace hnnwalk::thresholds
