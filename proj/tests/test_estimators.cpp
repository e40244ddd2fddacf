#include <doctest.h>

#include <cmath>

#include "hnnwalk/experiment.hpp"
#include "support/presets.hpp"

using namespace hnnwalk;
using namespace hnnwalk::testing;

TEST_CASE("drift_direct basics") {
    std::vector<double> zeros(10, 0.0);
    const EstimateWithCI z = drift_direct(zeros);
    CHECK(z.point == 0.0);
    CHECK(z.std_error == 0.0);

    // Degenerate oracle at reduced scale: t-drift = (1-alpha)|2p-1| = 0.3.
    const HnnPresentation z2 = z2_degenerate();
    const WalkParams params = z2_params(0.5, 0.8);
    std::vector<double> rates;
    const std::int64_t n = 20000;
    for (int r = 0; r < 50; ++r) {
        const TrajectoryState traj =
            run_trajectory(z2, params, n, substream(31, static_cast<std::uint64_t>(r)));
        rates.push_back(static_cast<double>(traj.final_depth()) / static_cast<double>(n));
    }
    const EstimateWithCI drift = drift_direct(rates);
    CHECK(std::abs(drift.point - 0.3) <= 3.0 * drift.std_error);
}

TEST_CASE("drift_regeneration on identical cycles") {
    std::vector<RegenerationCycle> cycles(5);
    for (auto& c : cycles) {
        c.duration = 4;
        c.length_gain = 6.0;
    }
    const EstimateWithCI est = drift_regeneration(cycles);
    CHECK(est.point == doctest::Approx(1.5));
    CHECK(est.std_error == doctest::Approx(0.0));
    CHECK_THROWS_AS(drift_regeneration(std::vector<RegenerationCycle>{}), NoRegenerations);
}

TEST_CASE("drift_pi_formula on a single-state chain") {
    const HnnPresentation pres = example21();
    std::vector<std::vector<ExitEvent>> sequences(1);
    for (int i = 1; i <= 20; ++i)
        sequences[0].push_back(
            ExitEvent{i, i, 1, Syllable{pres.identity(), +1}, pres.identity(), true});
    const ChainStatistics stats = extract_chain(sequences, pres.identity());
    const LengthFunction t_only = LengthFunction::t_only(pres);
    const auto sums = chain_unit_sums(sequences, t_only);
    const EstimateWithCI est = drift_pi_formula(empirical_pi(stats), t_only, sums);
    CHECK(est.point == doctest::Approx(1.0)); // ell(e0 t) / increment = 1/1
}

TEST_CASE("three estimator routes agree and ratio targets hold") {
    const HnnPresentation pres = example21();
    const WalkParams params = example21_params(0.5, 0.5);
    const LengthFunction unit = LengthFunction::unit(pres);
    const DriftReport report = run_drift_pipeline(pres, params, unit, 50000, 24, 5280, 10, 2);
    CHECK(report.cross_consistent);
    CHECK(report.lambda_direct.point > 0.0);
    CHECK(report.lambda_regen.point > 0.0);
    CHECK(report.lambda_pi.point > 0.0);
    // wl_drift / t_drift close to 2 (Lambda cancels).
    const double ratio = report.wl_drift.point / report.t_drift.point;
    CHECK(ratio > 1.9);
    CHECK(ratio < 2.1);
    // Unit-length pi formula returns exactly 2/Lambda_hat, t-only exactly 1/Lambda_hat.
    const ReplicaBatch batch = run_replicas(pres, params, unit, 50000, 24, 5280, 10, 2);
    const ChainStatistics stats = extract_chain(batch.exit_sequences, pres.identity());
    const auto pi = empirical_pi(stats);
    double lambda_cap = 0.0;
    for (const auto& [key, mass] : pi) lambda_cap += static_cast<double>(key.increment) * mass;
    const LengthFunction t_only = LengthFunction::t_only(pres);
    const EstimateWithCI t_est =
        drift_pi_formula(pi, t_only, chain_unit_sums(batch.exit_sequences, t_only));
    CHECK(t_est.point == doctest::Approx(1.0 / lambda_cap).epsilon(1e-9));
    const EstimateWithCI u_est =
        drift_pi_formula(pi, unit, chain_unit_sums(batch.exit_sequences, unit));
    CHECK(u_est.point == doctest::Approx(2.0 / lambda_cap).epsilon(1e-9));

    // Duration-only cycles (one unit of gain per stabilized syllable) estimate
    // the reciprocal of the mean increment, i.e. the t-length drift.
    const auto t_cycles =
        extract_regenerations(batch.exit_sequences, t_only, anchor_state(pres, +1));
    const EstimateWithCI t_regen = drift_regeneration(t_cycles);
    CHECK(estimates_overlap(t_regen, report.t_drift));
}

TEST_CASE("scaling equivariance is exact for power-of-two factors") {
    const HnnPresentation pres = example21();
    const WalkParams params = example21_params(0.5, 0.6);
    const ElementId e = pres.base().id_of("e");
    const ElementId a = pres.base().id_of("a");
    const ElementId b = pres.base().id_of("b");
    const ElementId ab = pres.base().id_of("ab");
    const LengthFunction ell = LengthFunction::table(
        pres, {{e, 0.0}, {a, 1.0}, {b, 1.0}, {ab, 3.0}}, 1.0, 1.0);
    const LengthFunction ell2 = LengthFunction::table(
        pres, {{e, 0.0}, {a, 2.0}, {b, 2.0}, {ab, 6.0}}, 2.0, 2.0);
    const DriftReport r1 = run_drift_pipeline(pres, params, ell, 30000, 12, 99, 10, 1);
    const DriftReport r2 = run_drift_pipeline(pres, params, ell2, 30000, 12, 99, 10, 1);
    CHECK(r2.lambda_direct.point == 2.0 * r1.lambda_direct.point);
    CHECK(r2.lambda_regen.point == 2.0 * r1.lambda_regen.point);
    CHECK(r2.lambda_pi.point == 2.0 * r1.lambda_pi.point);
    CHECK(r2.sigma2.point == 4.0 * r1.sigma2.point);

    // Non-dyadic factors agree to rounding.
    const LengthFunction ell3 = LengthFunction::table(
        pres, {{e, 0.0}, {a, 3.0}, {b, 3.0}, {ab, 9.0}}, 3.0, 3.0);
    const DriftReport r3 = run_drift_pipeline(pres, params, ell3, 30000, 12, 99, 10, 1);
    CHECK(r3.lambda_direct.point ==
          doctest::Approx(3.0 * r1.lambda_direct.point).epsilon(1e-12));
    CHECK(r3.sigma2.point == doctest::Approx(9.0 * r1.sigma2.point).epsilon(1e-12));
}

TEST_CASE("sigma2 on deterministic cycles vanishes; mean L straddles zero") {
    std::vector<RegenerationCycle> cycles(6);
    for (auto& c : cycles) {
        c.duration = 3;
        c.length_gain = 4.5;
    }
    const Sigma2Report s = sigma2_regeneration(cycles, 1.5);
    CHECK(s.sigma2.point == doctest::Approx(0.0));
    CHECK(s.mean_l.point == doctest::Approx(0.0));

    const HnnPresentation pres = example21();
    const WalkParams params = example21_params(0.5, 0.5);
    const LengthFunction unit = LengthFunction::unit(pres);
    const DriftReport report = run_drift_pipeline(pres, params, unit, 50000, 16, 4711, 10, 2);
    CHECK(report.sigma2.point > 0.0);
    CHECK(report.sigma2.ci_low > 0.0);
    CHECK(report.mean_l.ci_low <= 0.0);
    CHECK(report.mean_l.ci_high >= 0.0);
}

TEST_CASE("clt_check matches the lazy-walk variance in the degenerate regime") {
    const HnnPresentation z2 = z2_degenerate();
    const WalkParams params = z2_params(0.5, 0.8);
    const LengthFunction t_only = LengthFunction::t_only(z2);
    const double lambda = 0.3;
    // Per-step variance of the projected walk: (1-a)(1 - (1-a)(2p-1)^2) = 0.41.
    const double sigma2 = (1.0 - params.alpha) *
                          (1.0 - (1.0 - params.alpha) * (2.0 * params.p - 1.0) *
                                     (2.0 * params.p - 1.0));
    const CltReport report = clt_check(z2, params, t_only, 5000, 600, 1999, lambda, sigma2, 2);
    CHECK(std::abs(report.variance_ratio - 1.0) < 0.25);
    CHECK(std::abs(report.mean_normalized) < 0.2);
    CHECK(report.ks_stat < 0.08);

    // n = 1 degenerate input still produces a report.
    const CltReport tiny = clt_check(z2, params, t_only, 1, 50, 7, lambda, sigma2, 1);
    CHECK(tiny.n == 1);
}

TEST_CASE("xi estimation: brackets, regimes and the degenerate oracle") {
    const HnnPresentation z2 = z2_degenerate();
    SUBCASE("recurrent regime is rejected") {
        CHECK_THROWS_AS(estimate_xi(z2, z2_params(0.5, 0.5), +1, z2.identity(),
                                    HorizonSchedule{}, 500, 1),
                        RegimeError);
    }
    SUBCASE("upward degenerate: xi(tb) = (2p-1)/p, xi(t^-1 a) = 0") {
        const WalkParams params = z2_params(0.5, 0.8);
        const XiEstimate up = estimate_xi(z2, params, +1, z2.base().id_of("a"),
                                          HorizonSchedule{256, 10, 1e-3}, 4000, 77);
        CHECK(up.converged);
        CHECK(up.upper_bracket);
        // Hitting probabilities ignore laziness; survival from level 1 is 0.75.
        CHECK(std::abs(up.estimate.point - 0.75) <= 4.0 * up.estimate.std_error);
        const XiEstimate down = estimate_xi(z2, params, -1, z2.base().id_of("a"),
                                            HorizonSchedule{256, 10, 1e-3}, 4000, 78);
        CHECK(down.estimate.point < 0.01);
    }
    SUBCASE("example 2.1: both families strictly positive") {
        const HnnPresentation pres = example21();
        const WalkParams params = example21_params(0.5, 0.5);
        const XiEstimate tb = estimate_xi(pres, params, +1, pres.base().id_of("b"),
                                          HorizonSchedule{128, 8, 1e-3}, 2000, 5);
        CHECK(tb.estimate.ci_low > 0.0);
        const XiEstimate ta = estimate_xi(pres, params, -1, pres.base().id_of("a"),
                                          HorizonSchedule{128, 8, 1e-3}, 2000, 6);
        CHECK(ta.estimate.ci_low > 0.0);
    }
    SUBCASE("start point must lie in the right family") {
        const HnnPresentation pres = example21();
        CHECK_THROWS_AS(estimate_xi(pres, example21_params(), +1, pres.base().id_of("a"),
                                    HorizonSchedule{}, 500, 1),
                        DomainError);
    }
}

TEST_CASE("greenian length estimation") {
    const HnnPresentation pres = example21();
    const WalkParams params = example21_params(0.5, 0.5);
    const LengthFunction ell_g = estimate_greenian_length(pres, params, 200, 20000, 404);
    // Finite and strictly positive everywhere (0 < F < 1 in transient regimes).
    for (ElementId g = 0; g < pres.base().order(); ++g) {
        CHECK(std::isfinite(ell_g.at(g)));
        CHECK(ell_g.at(g) > 0.0);
    }
    CHECK(ell_g.value_t() > 0.0);
    CHECK(ell_g.value_t_inv() > 0.0);
    // One-step lower bound on F: ell_G(a) <= -log(alpha mu0(a)) with slack.
    CHECK(ell_g.at(pres.base().id_of("a")) <= -std::log(0.25) + 0.1);

    // Drift against the Greenian length exists and is positive.
    const DriftReport report = run_drift_pipeline(pres, params, ell_g, 30000, 12, 2222, 10, 2);
    CHECK(report.lambda_direct.point > 0.0);
    CHECK(report.lambda_direct.ci_low > 0.0);

    // Too-short horizon cannot see rare elements.
    CHECK_THROWS_AS(estimate_greenian_length(pres, params, 1, 200, 1), ZeroHitEstimate);
}
