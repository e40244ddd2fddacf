#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hnnwalk/experiment.hpp"
#include "hnnwalk/z_projection.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace hnnwalk;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::int64_t steps = -1;
    std::int64_t replicas = -1;
    std::int64_t seed = -1;
    int threads = -1;
};

ExperimentConfig load_with_overrides(CommonOpts& opts) {
    ExperimentConfig config = load_config(opts.config_path);
    if (opts.steps >= 0) config.steps = opts.steps;
    if (opts.replicas >= 0) config.replicas = opts.replicas;
    if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
    if (opts.threads >= 0) config.threads = opts.threads;
    if (opts.out_dir.empty()) opts.out_dir = config.out_dir;
    // Reflect overrides in the echoed document so reruns reproduce artifacts.
    config.raw["steps"] = config.steps;
    config.raw["replicas"] = config.replicas;
    config.raw["seed"] = config.seed;
    return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
    auto* config = cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
    if (config_required) config->required();
    cmd->add_option("--out", opts.out_dir, "output directory for JSON/CSV artifacts");
    cmd->add_option("--steps", opts.steps, "override steps per replica");
    cmd->add_option("--replicas", opts.replicas, "override replica count");
    cmd->add_option("--seed", opts.seed, "override master seed");
    cmd->add_option("--threads", opts.threads, "worker threads (default from config)");
}

void emit_summary(const CommonOpts& opts, const ordered_json& summary, const std::string& name) {
    if (opts.out_dir.empty()) {
        std::cout << summary.dump(2) << "\n";
        return;
    }
    fs::create_directories(opts.out_dir);
    const fs::path path = fs::path(opts.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << summary.dump(2) << "\n";
    std::cout << "wrote " << path.string() << "\n";
}

std::ofstream open_csv(const std::string& dir, const std::string& name,
                       const std::string& header) {
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << header << "\n";
    std::cout << "wrote " << path.string() << "\n";
    return out;
}

HorizonSchedule parse_horizon(const std::string& text, const HorizonSchedule& fallback) {
    if (text.empty()) return fallback;
    // "H0,xK": initial horizon and number of doublings.
    HorizonSchedule schedule = fallback;
    const auto comma = text.find(',');
    schedule.h0 = std::stoll(text.substr(0, comma));
    if (comma != std::string::npos) {
        std::string rest = text.substr(comma + 1);
        if (!rest.empty() && (rest[0] == 'x' || rest[0] == 'X')) rest.erase(0, 1);
        schedule.max_doublings = std::stoi(rest);
    }
    if (schedule.h0 < 1 || schedule.max_doublings < 1)
        throw ConfigError("horizon schedule must be H0,xK with H0 >= 1 and K >= 1");
    return schedule;
}

int run_nf(CommonOpts opts) {
    const ExperimentConfig config = load_config(opts.config_path);
    const HnnPresentation pres = validate_presentation(config.group);
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const NormalForm w = normalize(pres, parse_word(pres, line));
        std::cout << to_string(pres, w) << "\n";
    }
    return 0;
}

int run_simulate(CommonOpts opts, bool emit_cycles, std::int64_t trace_every) {
    const ExperimentConfig config = load_with_overrides(opts);
    const Instance inst = instantiate(config);
    const Regime regime = classify_regime(inst.pres, inst.params);

    std::ofstream trace;
    if (!opts.out_dir.empty())
        trace = open_csv(opts.out_dir, "trace.csv", "replica,n,t_length,word_length,ell_value");

    const StepLaw law(inst.pres, inst.params);
    std::vector<std::vector<ExitEvent>> sequences;
    std::vector<double> final_t, final_wl, final_ell;
    for (std::int64_t r = 0; r < config.replicas; ++r) {
        Rng rng(substream(config.seed, static_cast<std::uint64_t>(r)));
        TrajectoryState traj;
        traj.current = identity_form(inst.pres);
        for (std::int64_t n = 1; n <= config.steps; ++n) {
            advance_trajectory(inst.pres, traj, law.sample(rng));
            const bool sample_now = (trace_every > 0 && n % trace_every == 0) || n == config.steps;
            if (trace.is_open() && sample_now) {
                trace << r << ',' << n << ',' << t_length(traj.current) << ','
                      << word_length(inst.pres, traj.current) << ','
                      << eval_length(inst.ell, traj.current) << "\n";
            }
        }
        const double n = static_cast<double>(config.steps);
        final_t.push_back(static_cast<double>(t_length(traj.current)) / n);
        final_wl.push_back(static_cast<double>(word_length(inst.pres, traj.current)) / n);
        final_ell.push_back(eval_length(inst.ell, traj.current) / n);
        if (emit_cycles && regime.kind != RegimeKind::Recurrent)
            sequences.push_back(trim_tail(extract_exits(traj, config.safety_margin),
                                          thresholds::confirmed_tail_discard));
    }

    ordered_json summary = summary_envelope(config, "simulate");
    summary["regime"] = regime_name(regime.kind);
    summary["t_rate"] = estimate_to_json(mean_estimate(final_t, "direct_t"));
    summary["wl_rate"] = estimate_to_json(mean_estimate(final_wl, "direct_wl"));
    summary["ell_rate"] = estimate_to_json(mean_estimate(final_ell, "direct"));

    if (emit_cycles) {
        if (regime.kind == RegimeKind::Recurrent)
            throw RegimeError("--emit-cycles needs a transient walk (recurrence criterion)");
        const auto cycles =
            extract_regenerations(sequences, inst.ell, anchor_state(inst.pres, regime.direction));
        if (!opts.out_dir.empty()) {
            auto csv = open_csv(opts.out_dir, "cycles.csv",
                                "replica,i,duration,length_gain,syllable_count");
            for (const auto& c : cycles)
                csv << c.replica << ',' << c.index << ',' << c.duration << ',' << c.length_gain
                    << ',' << c.syllable_count << "\n";
        }
        summary["cycles"] = static_cast<std::int64_t>(cycles.size());
    }
    emit_summary(opts, summary, "simulate_summary.json");
    return 0;
}

int run_drift(CommonOpts opts, bool emit_replicas) {
    const ExperimentConfig config = load_with_overrides(opts);
    const Instance inst = instantiate(config);
    const Regime regime = classify_regime(inst.pres, inst.params);
    if (regime.kind == RegimeKind::Recurrent)
        throw RegimeError(
            "drift requires a transient walk; A=B=G0 with p=1/2 is recurrent (recurrence "
            "criterion)");
    const ReplicaBatch batch =
        run_replicas(inst.pres, inst.params, inst.ell, config.steps, config.replicas, config.seed,
                     config.safety_margin, config.threads);
    const DriftReport report =
        drift_report_from_batch(inst.pres, inst.params, inst.ell, batch, config.steps);

    if (emit_replicas && !opts.out_dir.empty()) {
        auto csv = open_csv(opts.out_dir, "replicas.csv", "replica,ell_rate,t_rate,wl_rate");
        for (std::size_t r = 0; r < batch.ell_rates.size(); ++r)
            csv << r << ',' << batch.ell_rates[r] << ',' << batch.t_rates[r] << ','
                << batch.wl_rates[r] << "\n";
    }

    ordered_json summary = summary_envelope(config, "drift");
    summary["report"] = drift_report_to_json(report);
    emit_summary(opts, summary, "drift_summary.json");
    return 0;
}

int run_clt(CommonOpts opts, std::int64_t clt_n, std::int64_t clt_replicas,
            bool emit_replicas) {
    const ExperimentConfig config = load_with_overrides(opts);
    const Instance inst = instantiate(config);
    // Calibration pass for lambda and sigma^2, then fresh CLT replicas.
    const DriftReport calibration =
        run_drift_pipeline(inst.pres, inst.params, inst.ell, config.steps, config.replicas,
                           config.seed, config.safety_margin, config.threads);
    const std::int64_t n = clt_n > 0 ? clt_n : config.steps;
    const std::int64_t replicas = clt_replicas > 0 ? clt_replicas : 2000;
    const CltReport report =
        clt_check(inst.pres, inst.params, inst.ell, n, replicas, substream(config.seed, 0xc17u),
                  calibration.lambda_direct.point, calibration.sigma2.point, config.threads);

    if (emit_replicas && !opts.out_dir.empty()) {
        auto csv = open_csv(opts.out_dir, "clt_samples.csv", "replica,normalized");
        for (std::size_t r = 0; r < report.normalized.size(); ++r)
            csv << r << ',' << report.normalized[r] << "\n";
    }

    ordered_json summary = summary_envelope(config, "clt");
    summary["calibration"] = drift_report_to_json(calibration);
    summary["clt"] = clt_report_to_json(report);
    emit_summary(opts, summary, "clt_summary.json");
    return 0;
}

int run_xi(CommonOpts opts, const std::string& start, const std::string& horizon_text,
           std::int64_t trials) {
    const ExperimentConfig config = load_with_overrides(opts);
    const Instance inst = instantiate(config);
    const HorizonSchedule schedule = parse_horizon(horizon_text, config.horizon);
    const std::int64_t n_trials = trials > 0 ? trials : config.xi_trials;

    std::vector<std::pair<int, ElementId>> starts;
    if (start == "all") {
        for (ElementId h : inst.pres.B()) starts.emplace_back(+1, h);
        for (ElementId h : inst.pres.A()) starts.emplace_back(-1, h);
    } else if (start.rfind("t:", 0) == 0) {
        starts.emplace_back(+1, inst.pres.base().id_of(start.substr(2)));
    } else if (start.rfind("t^-1:", 0) == 0) {
        starts.emplace_back(-1, inst.pres.base().id_of(start.substr(5)));
    } else {
        throw ConfigError("--start must be 'all', 't:<element>' or 't^-1:<element>'");
    }

    ordered_json summary = summary_envelope(config, "xi");
    ordered_json results = ordered_json::object();
    std::uint64_t stream = 0;
    for (const auto& [sign, h] : starts) {
        const XiEstimate xi = estimate_xi(inst.pres, inst.params, sign, h, schedule, n_trials,
                                          substream(config.seed, 0x3100u + stream++));
        const std::string key =
            std::string(sign > 0 ? "t " : "t^-1 ") + inst.pres.base().name_of(h);
        results[key] = xi_estimate_to_json(xi);
    }
    summary["xi"] = results;
    emit_summary(opts, summary, "xi_summary.json");
    return 0;
}

int run_zcheck(CommonOpts opts, double alpha, double p, double z, std::int64_t simulate) {
    double use_alpha = alpha, use_p = p;
    ExperimentConfig config;
    const bool have_config = !opts.config_path.empty();
    if (have_config) {
        config = load_with_overrides(opts);
        const Instance inst = instantiate(config);
        if (!inst.pres.degenerate() && (alpha < 0.0 || p < 0.0))
            throw RegimeError(
                "zcheck needs the degenerate regime A=B=G0 (or explicit --alpha/--p)");
        if (alpha < 0.0) use_alpha = config.alpha;
        if (p < 0.0) use_p = config.p;
    }
    if (use_alpha < 0.0 || use_p < 0.0)
        throw ConfigError("zcheck needs --alpha and --p (or a degenerate --config)");

    const ZWalkLaw law(use_p, use_alpha);
    const double fp = first_passage_gf(law, +1, z);
    const double fm = first_passage_gf(law, -1, z);
    const double u = return_gf(law, z);
    const double g = green_gf(law, z);
    const double claim2 = lazy_green_identity(law, z);
    const double drift = degenerate_drift(use_alpha, use_p);

    std::printf("alpha=%.6g p=%.6g z=%.6g\n", use_alpha, use_p, z);
    std::printf("%-14s %.12g\n", "F+(z)", fp);
    std::printf("%-14s %.12g\n", "F-(z)", fm);
    std::printf("%-14s %.12g\n", "U_Z(z)", u);
    std::printf("%-14s %.12g\n", "G_Z(z)", g);
    std::printf("%-14s %.12g\n", "G(e,G0|z)", claim2);
    std::printf("%-14s %.12g\n", "drift", drift);

    ordered_json summary;
    if (have_config) {
        summary = summary_envelope(config, "zcheck");
    } else {
        summary["tool"] = "hnnwalk";
        summary["subcommand"] = "zcheck";
    }
    summary["law"] = ordered_json{{"alpha", use_alpha}, {"p", use_p}, {"z", z}};
    summary["exact"] = ordered_json{{"F_plus", fp}, {"F_minus", fm}, {"U", u},
                                    {"G", g},       {"claim2", claim2}, {"drift", drift}};

    if (simulate > 0) {
        const std::uint64_t seed = have_config ? config.seed : 20240817u;
        const ZSimReport mc = simulate_z_checks(law, simulate, seed);
        auto line = [](const char* name, const EstimateWithCI& est, double exact) {
            std::printf("%-14s %.6g  (mc %.6g +- %.2g, %lld trials)\n", name, exact, est.point,
                        est.std_error, static_cast<long long>(est.n_samples));
        };
        line("mc U_Z(1)", mc.return_freq, mc.u_exact);
        line("mc visits", mc.mean_visits, mc.claim2_exact);
        line("mc drift", mc.drift, mc.drift_exact);
        line("mc pattern", mc.sign_pattern, mc.sign_pattern_exact);
        summary["monte_carlo"] =
            ordered_json{{"return_freq", estimate_to_json(mc.return_freq)},
                         {"mean_visits", estimate_to_json(mc.mean_visits)},
                         {"drift", estimate_to_json(mc.drift)},
                         {"sign_pattern", estimate_to_json(mc.sign_pattern)},
                         {"sign_pattern_exact", mc.sign_pattern_exact}};
    }
    if (!opts.out_dir.empty()) emit_summary(opts, summary, "zcheck_summary.json");
    return 0;
}

int run_sweep_cmd(CommonOpts opts, const std::string& param, const std::string& grid) {
    const ExperimentConfig config = load_with_overrides(opts);
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
        throw GridError("--grid expects LO:HI:STEP");
    const SweepResult result = run_sweep(config, param, lo, hi, step);

    if (!opts.out_dir.empty()) {
        auto csv = open_csv(opts.out_dir, "sweep.csv",
                            "segment,param,value,seed,lambda,lambda_se,lambda_ci_low,"
                            "lambda_ci_high,sigma2,sigma2_se,second_diff,second_diff_se");
        for (const auto& pt : result.points) {
            csv << pt.segment << ',' << param << ',' << pt.value << ',' << pt.seed << ','
                << pt.lambda.point << ',' << pt.lambda.std_error << ',' << pt.lambda.ci_low << ','
                << pt.lambda.ci_high << ',' << pt.sigma2.point << ',' << pt.sigma2.std_error
                << ',';
            if (pt.has_second_diff) csv << pt.second_diff << ',' << pt.second_diff_se;
            else csv << ',';
            csv << "\n";
        }
    }

    ordered_json summary = summary_envelope(config, "sweep");
    summary["param"] = param;
    summary["grid"] = ordered_json{{"lo", lo}, {"hi", hi}, {"step", step}};
    ordered_json points = ordered_json::array();
    for (const auto& pt : result.points) {
        ordered_json node;
        node["segment"] = pt.segment;
        node["value"] = pt.value;
        node["seed"] = pt.seed;
        node["lambda"] = estimate_to_json(pt.lambda);
        node["sigma2"] = estimate_to_json(pt.sigma2);
        if (pt.has_second_diff) {
            node["second_diff"] = pt.second_diff;
            node["second_diff_se"] = pt.second_diff_se;
        }
        points.push_back(node);
    }
    summary["points"] = points;
    emit_summary(opts, summary, "sweep_summary.json");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "random walks on HNN extensions: normal forms, drift, CLT and escape probabilities"};
    app.require_subcommand(1);

    CommonOpts nf_opts;
    auto* nf = app.add_subcommand("nf", "normalize words from stdin");
    add_common(nf, nf_opts);

    CommonOpts sim_opts;
    bool emit_cycles = false;
    std::int64_t trace_every = 0;
    auto* simulate = app.add_subcommand("simulate", "sample trajectories, emit CSV traces");
    add_common(simulate, sim_opts);
    simulate->add_flag("--emit-cycles", emit_cycles, "write regeneration cycles CSV");
    simulate->add_option("--trace-every", trace_every,
                         "also emit a trace row every K steps (0: final only)");

    CommonOpts drift_opts;
    bool emit_replicas = false;
    auto* drift = app.add_subcommand("drift", "estimate the rate of escape three ways");
    add_common(drift, drift_opts);
    drift->add_flag("--emit-replicas", emit_replicas, "write per-replica rate CSV");

    CommonOpts clt_opts;
    std::int64_t clt_n = 0, clt_replicas = 0;
    bool clt_emit_replicas = false;
    auto* clt = app.add_subcommand("clt", "central limit theorem diagnostics");
    add_common(clt, clt_opts);
    clt->add_option("--n", clt_n, "walk length for the CLT statistic (default: steps)");
    clt->add_option("--clt-replicas", clt_replicas, "replicas for the CLT statistic");
    clt->add_flag("--emit-replicas", clt_emit_replicas, "write per-replica normalized CSV");

    CommonOpts xi_opts;
    std::string xi_start = "all";
    std::string horizon_text;
    std::int64_t xi_trials = 0;
    auto* xi = app.add_subcommand("xi", "escape probabilities from tB / t^-1 A");
    add_common(xi, xi_opts);
    xi->add_option("--start", xi_start, "'all', 't:<element>' or 't^-1:<element>'");
    xi->add_option("--horizon-schedule", horizon_text, "H0,xK doubling schedule");
    xi->add_option("--trials", xi_trials, "Monte Carlo trials per start point");

    CommonOpts z_opts;
    double z_alpha = -1.0, z_p = -1.0, z_z = 1.0;
    std::int64_t z_sim = 0;
    auto* zcheck = app.add_subcommand("zcheck", "analytic Z-projection oracle table");
    add_common(zcheck, z_opts, /*config_required=*/false);
    zcheck->add_option("--alpha", z_alpha, "laziness parameter");
    zcheck->add_option("--p", z_p, "upward probability (p != 1/2)");
    zcheck->add_option("--z", z_z, "evaluation point (default 1)");
    zcheck->add_option("--simulate", z_sim, "Monte Carlo comparison trials");

    CommonOpts sweep_opts;
    std::string sweep_param, sweep_grid;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep of the drift pipeline");
    add_common(sweep, sweep_opts);
    sweep->add_option("--param", sweep_param, "p, alpha or mu0:<element>")->required();
    sweep->add_option("--grid", sweep_grid, "LO:HI:STEP")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (nf->parsed()) return run_nf(nf_opts);
        if (simulate->parsed()) return run_simulate(sim_opts, emit_cycles, trace_every);
        if (drift->parsed()) return run_drift(drift_opts, emit_replicas);
        if (clt->parsed()) return run_clt(clt_opts, clt_n, clt_replicas, clt_emit_replicas);
        if (xi->parsed()) return run_xi(xi_opts, xi_start, horizon_text, xi_trials);
        if (zcheck->parsed()) return run_zcheck(z_opts, z_alpha, z_p, z_z, z_sim);
        if (sweep->parsed()) return run_sweep_cmd(sweep_opts, sweep_param, sweep_grid);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const GridError& e) {
        std::cerr << "grid error: " << e.what() << "\n";
        return 2;
    } catch (const RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
