#include "hnnwalk/z_projection.hpp"

#include <cmath>

#include "hnnwalk/rng.hpp"

namespace hnnwalk {

ZWalkLaw::ZWalkLaw(double p_, double alpha_) : p(p_), alpha(alpha_) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("z-walk needs p in (0,1)");
    if (p == 0.5) throw DomainError("z-walk oracle excludes the recurrent point p = 1/2");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("z-walk needs alpha in [0,1)");
}

double first_passage_gf(const ZWalkLaw& law, int direction, double z) {
    const double a = direction > 0 ? law.p : 1.0 - law.p; // step toward the target
    const double b = 1.0 - a;                             // step away
    if (!(z > 0.0)) throw DomainError("first_passage_gf needs z > 0");
    const double disc = 1.0 - 4.0 * a * b * z * z;
    if (disc < 0.0) throw DomainError("z outside the radius of convergence");
    if (b == 0.0) return a * z;
    // Probabilistic branch: F(0) = 0, monotone on (0, radius].
    return (1.0 - std::sqrt(disc)) / (2.0 * b * z);
}

double return_gf(const ZWalkLaw& law, double z) {
    // First step up then pass back down, or first step down then pass back up.
    return law.p * z * first_passage_gf(law, -1, z) +
           (1.0 - law.p) * z * first_passage_gf(law, +1, z);
}

double green_gf(const ZWalkLaw& law, double z) {
    const double u = return_gf(law, z);
    if (u >= 1.0) throw DomainError("U_Z(z) >= 1: Green function diverges");
    return 1.0 / (1.0 - u);
}

double lazy_green_identity(const ZWalkLaw& law, double z) {
    const double denom = 1.0 - law.alpha * z;
    if (denom <= 0.0) throw DomainError("z outside the lazy resummation domain");
    const double arg = (1.0 - law.alpha) * z / denom;
    return green_gf(law, arg) / denom;
}

double degenerate_drift(double alpha, double p) {
    return (1.0 - alpha) * std::abs(2.0 * p - 1.0);
}

namespace {

// Escape distance beyond which the return probability is below ~1e-12.
std::int64_t escape_distance(double p) {
    const double ratio = std::min(p, 1.0 - p) / std::max(p, 1.0 - p);
    return static_cast<std::int64_t>(std::ceil(-12.0 / std::log10(ratio))) + 2;
}

} // namespace

ZSimReport simulate_z_checks(const ZWalkLaw& law, std::int64_t trials, std::uint64_t seed) {
    if (trials < 100) throw InsufficientData("zcheck simulation needs at least 100 trials");
    ZSimReport report;
    report.u_exact = return_gf(law, 1.0);
    report.claim2_exact = lazy_green_identity(law, 1.0);
    report.drift_exact = degenerate_drift(law.alpha, law.p);

    const double p = law.p;
    const std::int64_t d_escape = escape_distance(p);
    const std::int64_t step_cap = 1 << 20;

    // Embedded non-lazy walk: excursion return frequency vs U_Z(1).
    {
        std::int64_t returned = 0;
        for (std::int64_t trial = 0; trial < trials; ++trial) {
            Rng rng(substream(seed, static_cast<std::uint64_t>(trial)));
            std::int64_t x = rng.next_double() < p ? 1 : -1;
            for (std::int64_t n = 1; n < step_cap; ++n) {
                if (x == 0) {
                    ++returned;
                    break;
                }
                if (std::llabs(x) > d_escape) break;
                x += rng.next_double() < p ? 1 : -1;
            }
        }
        report.return_freq = binomial_estimate(returned, trials, "mc_excursion_return");
    }

    // Lazy walk: mean number of visits to 0 (time 0 included) vs Claim 2 at z=1.
    {
        const double up = (1.0 - law.alpha) * p;
        const double down = (1.0 - law.alpha) * (1.0 - p);
        std::vector<double> visits(static_cast<std::size_t>(trials), 0.0);
        for (std::int64_t trial = 0; trial < trials; ++trial) {
            Rng rng(substream(seed ^ 0x5bd1e995u, static_cast<std::uint64_t>(trial)));
            std::int64_t x = 0;
            double count = 1.0;
            for (std::int64_t n = 0; n < step_cap; ++n) {
                if (std::llabs(x) > d_escape) break;
                const double u = rng.next_double();
                if (u < up)
                    x += 1;
                else if (u < up + down)
                    x -= 1;
                if (x == 0) count += 1.0;
            }
            visits[static_cast<std::size_t>(trial)] = count;
        }
        report.mean_visits = mean_estimate(visits, "mc_visits_to_g0");
    }

    // Drift of |psi_n|/n and the Claim-1 sign-pattern probability (+,+,-).
    {
        const double up = (1.0 - law.alpha) * p;
        const double down = (1.0 - law.alpha) * (1.0 - p);
        const std::int64_t n_steps = 10000;
        const std::int64_t n_drift = std::min<std::int64_t>(trials, 2000);
        std::vector<double> speeds(static_cast<std::size_t>(n_drift), 0.0);
        std::int64_t pattern_hits = 0;
        for (std::int64_t trial = 0; trial < n_drift; ++trial) {
            Rng rng(substream(seed ^ 0x27d4eb2fu, static_cast<std::uint64_t>(trial)));
            std::int64_t x = 0;
            int signs_seen = 0;
            int pattern_ok = 1;
            for (std::int64_t n = 0; n < n_steps; ++n) {
                const double u = rng.next_double();
                int move = 0;
                if (u < up)
                    move = 1;
                else if (u < up + down)
                    move = -1;
                x += move;
                if (move != 0 && signs_seen < 3) {
                    const int want = signs_seen < 2 ? 1 : -1;
                    if (move != want) pattern_ok = 0;
                    ++signs_seen;
                }
            }
            speeds[static_cast<std::size_t>(trial)] =
                static_cast<double>(std::llabs(x)) / static_cast<double>(n_steps);
            if (signs_seen == 3 && pattern_ok) ++pattern_hits;
        }
        report.drift = mean_estimate(speeds, "mc_abs_psi_drift");
        report.sign_pattern = binomial_estimate(pattern_hits, n_drift, "mc_sign_pattern");
        report.sign_pattern_exact = p * p * (1.0 - p);
    }
    return report;
}

} // namespace hnnwalk
