#pragma once

#include <cstdint>
#include <vector>

#include "hnnwalk/stats.hpp"

namespace hnnwalk {

// Parameters of the lazy biased walk on Z that the HNN walk projects onto
// when A = B = G0: up with (1-alpha)p, down with (1-alpha)(1-p), hold with
// alpha. The recurrent point p = 1/2 is excluded.
struct ZWalkLaw {
    double p;
    double alpha;

    ZWalkLaw(double p_, double alpha_);
};

// F(0,+1|z) / F(0,-1|z) of the embedded non-lazy walk: the probabilistic root
// of F = mu(d) z + mu(-d) z F^2 (the branch with F(0) = 0, monotone on [0,1]).
double first_passage_gf(const ZWalkLaw& law, int direction, double z);

// First-return generating function U_Z(z), evaluated from the fixed-point
// system; U_Z(1) = 2 min(p, 1-p).
double return_gf(const ZWalkLaw& law, double z);

// G_Z(z) = 1 / (1 - U_Z(z)).
double green_gf(const ZWalkLaw& law, double z);

// G(e, G0 | z) = G_Z((1-alpha)z / (1-alpha z)) / (1 - alpha z): expected
// visit count to the base copy, laziness folded in.
double lazy_green_identity(const ZWalkLaw& law, double z);

// Exact t-drift (1-alpha)|2p-1| of the degenerate regime.
double degenerate_drift(double alpha, double p);

// Monte Carlo cross-checks of the analytic values, used by `zcheck --simulate`.
struct ZSimReport {
    double u_exact = 0.0;
    double claim2_exact = 0.0;
    double drift_exact = 0.0;
    EstimateWithCI return_freq; // embedded walk excursion return frequency
    EstimateWithCI mean_visits; // lazy-walk visits to level 0
    EstimateWithCI drift;       // |psi_n| / n
    EstimateWithCI sign_pattern; // probability of a fixed first-k t-sign pattern
    double sign_pattern_exact = 0.0;
};

ZSimReport simulate_z_checks(const ZWalkLaw& law, std::int64_t trials, std::uint64_t seed);

} // namespace hnnwalk
