#include <doctest.h>

#include <cmath>
#include <map>

#include "hnnwalk/stats.hpp"
#include "hnnwalk/walk.hpp"
#include "support/presets.hpp"

using namespace hnnwalk;
using namespace hnnwalk::testing;

TEST_CASE("walk parameter validation") {
    const HnnPresentation pres = example21();
    WalkParams params = example21_params();
    SUBCASE("alpha boundary") {
        params.alpha = 1.0;
        CHECK_THROWS_AS(validate_walk_params(pres, params), ConfigError);
        params.alpha = 0.0;
        CHECK_THROWS_AS(validate_walk_params(pres, params), ConfigError);
    }
    SUBCASE("mass normalization") {
        params.mu0[0].second = 0.7;
        CHECK_THROWS_AS(validate_walk_params(pres, params), ConfigError);
    }
    SUBCASE("support must generate") {
        params.mu0 = {{pres.base().id_of("a"), 1.0}}; // closure {e,a} only
        CHECK_THROWS_AS(validate_walk_params(pres, params), ConfigError);
    }
    SUBCASE("integers support needs both signs") {
        const HnnPresentation ints = validate_presentation(integers_spec());
        WalkParams bad;
        bad.mu0 = {{1, 0.5}, {2, 0.5}};
        bad.alpha = 0.5;
        bad.p = 0.6;
        CHECK_THROWS_AS(validate_walk_params(ints, bad), ConfigError);
        WalkParams good;
        good.mu0 = {{1, 0.5}, {-1, 0.5}};
        good.alpha = 0.5;
        good.p = 0.6;
        CHECK_NOTHROW(validate_walk_params(ints, good));
    }
}

TEST_CASE("regime classification") {
    CHECK(classify_regime(example21(), example21_params(0.5, 0.5)).kind ==
          RegimeKind::TransientGeneral);
    CHECK(classify_regime(example21(), example21_params(0.2, 0.9)).kind ==
          RegimeKind::TransientGeneral);

    const HnnPresentation z2 = z2_degenerate();
    CHECK(classify_regime(z2, z2_params(0.5, 0.5)).kind == RegimeKind::Recurrent);
    const Regime up = classify_regime(z2, z2_params(0.5, 0.8));
    CHECK(up.kind == RegimeKind::TransientDegenerate);
    CHECK(up.direction == +1);
    const Regime down = classify_regime(z2, z2_params(0.5, 0.2));
    CHECK(down.kind == RegimeKind::TransientDegenerate);
    CHECK(down.direction == -1);
}

TEST_CASE("step law frequencies match the derived measure") {
    const HnnPresentation pres = example21();
    const WalkParams params = example21_params(0.5, 0.5);
    const StepLaw law(pres, params);
    Rng rng(1234);
    const std::int64_t draws = 1000000;
    std::map<std::string, std::int64_t> counts{{"t", 0}, {"t^-1", 0}, {"a", 0}, {"b", 0}};
    for (std::int64_t i = 0; i < draws; ++i) {
        const Letter x = law.sample(rng);
        if (x.kind == Letter::T)
            counts["t"] += 1;
        else if (x.kind == Letter::Tinv)
            counts["t^-1"] += 1;
        else
            counts[pres.base().name_of(x.g)] += 1;
    }
    auto within = [&](std::int64_t observed, double expected) {
        const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(draws));
        return std::abs(static_cast<double>(observed) / static_cast<double>(draws) - expected) <=
               3.0 * se;
    };
    CHECK(within(counts["t"], 0.25));
    CHECK(within(counts["t^-1"], 0.25));
    CHECK(within(counts["a"], 0.25)); // alpha * mu0(a) = 0.5 * 0.5
    CHECK(within(counts["b"], 0.25));
}

TEST_CASE("trajectories are deterministic in the seed") {
    const HnnPresentation pres = example21();
    const WalkParams params = example21_params(0.4, 0.6);
    const TrajectoryState t1 = run_trajectory(pres, params, 5000, 99);
    const TrajectoryState t2 = run_trajectory(pres, params, 5000, 99);
    CHECK(t1.current == t2.current);
    CHECK(t1.depth_deltas == t2.depth_deltas);
    REQUIRE(t1.events.size() == t2.events.size());
    for (std::size_t i = 0; i < t1.events.size(); ++i) {
        CHECK(t1.events[i].time == t2.events[i].time);
        CHECK(t1.events[i].level == t2.events[i].level);
        CHECK(t1.events[i].created == t2.events[i].created);
        CHECK(t1.events[i].syllable == t2.events[i].syllable);
        CHECK(t1.events[i].trailing == t2.events[i].trailing);
    }
    const TrajectoryState t3 = run_trajectory(pres, params, 5000, 100);
    CHECK(t1.current != t3.current);
}

TEST_CASE("zero-step trajectory is the identity state") {
    const HnnPresentation pres = example21();
    const TrajectoryState traj = run_trajectory(pres, example21_params(), 0, 5);
    CHECK(traj.current == identity_form(pres));
    CHECK(traj.step_count == 0);
    CHECK(traj.depth_deltas.empty());
    CHECK(traj.events.empty());
}

TEST_CASE("incremental state equals batch normalization") {
    const HnnPresentation pres = example21();
    const WalkParams params = example21_params(0.5, 0.7);
    const std::uint64_t seed = 31337;
    const std::int64_t n = 20000;
    const TrajectoryState traj = run_trajectory(pres, params, n, seed);
    // Re-sample the identical letter stream and normalize in one sweep.
    const StepLaw law(pres, params);
    Rng rng(seed);
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) letters.push_back(law.sample(rng));
    CHECK(traj.current == normalize(pres, letters));
}

TEST_CASE("event log replay reproduces the depth log") {
    const HnnPresentation pres = example21();
    const TrajectoryState traj = run_trajectory(pres, example21_params(0.5, 0.6), 30000, 7);
    const std::vector<std::int64_t> depth = traj.depth_log();
    std::int64_t current = 0;
    std::size_t next_event = 0;
    for (std::int64_t step = 1; step <= traj.step_count; ++step) {
        if (next_event < traj.events.size() && traj.events[next_event].time == step) {
            const LevelEvent& ev = traj.events[next_event];
            if (ev.created) {
                CHECK(ev.level == current + 1);
                current += 1;
            } else {
                CHECK(ev.level == current);
                current -= 1;
            }
            ++next_event;
        }
        CHECK(depth[static_cast<std::size_t>(step)] == current);
        CHECK(std::abs(depth[static_cast<std::size_t>(step)] -
                       depth[static_cast<std::size_t>(step - 1)]) <= 1);
    }
    CHECK(next_event == traj.events.size());
    CHECK(current == traj.final_depth());
}

TEST_CASE("recurrent regime: depth rate is noise-level") {
    const HnnPresentation z2 = z2_degenerate();
    const WalkParams params = z2_params(0.5, 0.5);
    const std::int64_t n = 100000;
    const int replicas = 100;
    std::vector<double> depth_rates, psi_rates;
    for (int r = 0; r < replicas; ++r) {
        const TrajectoryState traj =
            run_trajectory(z2, params, n, substream(4242, static_cast<std::uint64_t>(r)));
        depth_rates.push_back(static_cast<double>(traj.final_depth()) / static_cast<double>(n));
        psi_rates.push_back(static_cast<double>(signed_depth(traj.current)) /
                            static_cast<double>(n));
    }
    auto mean_sd = [](const std::vector<double>& xs) {
        double m = 0.0;
        for (double x : xs) m += x;
        m /= static_cast<double>(xs.size());
        double ss = 0.0;
        for (double x : xs) ss += (x - m) * (x - m);
        return std::pair<double, double>{m, std::sqrt(ss / (static_cast<double>(xs.size()) - 1))};
    };
    // |psi| has E|N(0,s)| ~ 0.8 s, so the unsigned rate sits within 3 sample
    // SDs of zero; the signed rate is centered and its mean CI covers zero.
    const auto [dm, dsd] = mean_sd(depth_rates);
    CHECK(std::abs(dm) <= 3.0 * dsd);
    const auto [pm, psd] = mean_sd(psi_rates);
    CHECK(std::abs(pm) <= 3.0 * psd / std::sqrt(static_cast<double>(replicas)));
}

TEST_CASE("degenerate projection matches the lazy Z-walk") {
    const HnnPresentation z2 = z2_degenerate();
    const WalkParams params = z2_params(0.5, 0.8);
    const std::int64_t n = 20000;
    const int replicas = 60;
    std::vector<double> psi_rates;
    for (int r = 0; r < replicas; ++r) {
        const TrajectoryState traj =
            run_trajectory(z2, params, n, substream(777, static_cast<std::uint64_t>(r)));
        psi_rates.push_back(static_cast<double>(signed_depth(traj.current)) /
                            static_cast<double>(n));
    }
    const EstimateWithCI drift = mean_estimate(psi_rates, "psi");
    // (1-alpha)(2p-1) = 0.3
    CHECK(std::abs(drift.point - 0.3) <= 3.0 * drift.std_error);
}
