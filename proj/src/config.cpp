#include "hnnwalk/config.hpp"

#include <fstream>

#include "hnnwalk/rng.hpp"

namespace hnnwalk {

namespace {

using nlohmann::ordered_json;

const ordered_json& require(const ordered_json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError(std::string("config is missing field '") + key + "'");
    return *it;
}

template <typename T>
T get_or(const ordered_json& doc, const char* key, T fallback) {
    auto it = doc.find(key);
    if (it == doc.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

GroupSpec parse_group(const ordered_json& doc) {
    GroupSpec spec;
    const ordered_json& base = require(doc, "base_group");
    const std::string kind = require(base, "kind").get<std::string>();
    if (kind == "integers") {
        spec.kind = BaseGroupKind::Integers;
    } else if (kind == "finite_table") {
        spec.kind = BaseGroupKind::FiniteTable;
        spec.elements = require(base, "elements").get<std::vector<std::string>>();
        spec.identity = require(base, "identity").get<std::string>();
        spec.table = require(base, "table").get<std::vector<std::vector<std::string>>>();
    } else {
        throw ConfigError("base_group.kind must be 'finite_table' or 'integers'");
    }
    spec.subgroup_a = require(doc, "subgroup_A").get<std::vector<std::string>>();
    spec.subgroup_b = require(doc, "subgroup_B").get<std::vector<std::string>>();
    for (const auto& [from, to] : require(doc, "phi").items())
        spec.phi[from] = to.get<std::string>();
    return spec;
}

LengthSpec parse_length(const ordered_json& doc) {
    LengthSpec spec;
    auto it = doc.find("length");
    if (it == doc.end()) return spec; // word length by default
    const ordered_json& node = *it;
    const std::string kind = get_or<std::string>(node, "kind", "word");
    if (kind == "word") {
        spec.kind = LengthSpec::Kind::Word;
    } else if (kind == "t_only") {
        spec.kind = LengthSpec::Kind::TOnly;
    } else if (kind == "table") {
        spec.kind = LengthSpec::Kind::Table;
        for (const auto& [name, value] : require(node, "values").items()) {
            if (name == "t")
                spec.value_t = value.get<double>();
            else if (name == "t^-1")
                spec.value_t_inv = value.get<double>();
            else
                spec.table[name] = value.get<double>();
        }
        if (node.contains("default")) spec.fallback = node["default"].get<double>();
    } else if (kind == "greenian") {
        spec.kind = LengthSpec::Kind::Greenian;
        spec.greenian_horizon = get_or<std::int64_t>(node, "horizon", spec.greenian_horizon);
        spec.greenian_trials = get_or<std::int64_t>(node, "trials", spec.greenian_trials);
    } else {
        throw ConfigError("length.kind must be word, t_only, table or greenian");
    }
    if (node.contains("growth_bound")) {
        const ordered_json& gb = node["growth_bound"];
        spec.growth_bound = GrowthBound{require(gb, "C").get<double>(),
                                        require(gb, "kappa").get<std::int64_t>()};
    }
    return spec;
}

} // namespace

ExperimentConfig parse_config(const nlohmann::ordered_json& doc) {
    ExperimentConfig config;
    config.raw = doc;
    config.group = parse_group(doc);
    for (const auto& [name, mass] : require(doc, "mu0").items())
        config.mu0[name] = mass.get<double>();
    if (config.mu0.empty()) throw ConfigError("mu0 must not be empty");
    config.alpha = require(doc, "alpha").get<double>();
    config.p = require(doc, "p").get<double>();
    config.seed = get_or<std::uint64_t>(doc, "seed", 1);
    config.steps = get_or<std::int64_t>(doc, "steps", config.steps);
    config.replicas = get_or<std::int64_t>(doc, "replicas", config.replicas);
    config.safety_margin = get_or<std::int64_t>(doc, "safety_margin", config.safety_margin);
    config.length = parse_length(doc);
    if (doc.contains("horizon_schedule")) {
        const ordered_json& node = doc["horizon_schedule"];
        config.horizon.h0 = get_or<std::int64_t>(node, "h0", config.horizon.h0);
        config.horizon.max_doublings = get_or<int>(node, "max_doublings",
                                                   config.horizon.max_doublings);
        config.horizon.rel_tol = get_or<double>(node, "rel_tol", config.horizon.rel_tol);
    }
    config.xi_trials = get_or<std::int64_t>(doc, "xi_trials", config.xi_trials);
    config.threads = get_or<int>(doc, "threads", config.threads);
    config.out_dir = get_or<std::string>(doc, "out", config.out_dir);
    if (config.steps < 0 || config.replicas < 1)
        throw ConfigError("steps must be >= 0 and replicas >= 1");
    if (config.safety_margin < 0) throw ConfigError("safety_margin must be >= 0");
    // Deterministic generator order for the coset search: mu0 support in
    // lexicographic name order (JSON object order).
    for (const auto& [name, mass] : config.mu0) config.group.generator_order.push_back(name);
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    nlohmann::ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

std::string config_hash(const ExperimentConfig& config) {
    const std::uint64_t h = fnv1a64(config.raw.dump());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LengthFunction make_length(const HnnPresentation& pres, const WalkParams& params,
                           const LengthSpec& spec, std::uint64_t seed) {
    LengthFunction ell = [&] {
        switch (spec.kind) {
        case LengthSpec::Kind::Word:
            return LengthFunction::unit(pres);
        case LengthSpec::Kind::TOnly:
            return LengthFunction::t_only(pres);
        case LengthSpec::Kind::Table: {
            std::map<ElementId, double> values;
            for (const auto& [name, v] : spec.table) values[pres.base().id_of(name)] = v;
            return LengthFunction::table(pres, values, spec.value_t, spec.value_t_inv,
                                         spec.fallback);
        }
        case LengthSpec::Kind::Greenian:
            return estimate_greenian_length(pres, params, spec.greenian_horizon,
                                            spec.greenian_trials, substream(seed, 0x6eedu));
        }
        throw ConfigError("unhandled length kind");
    }();
    if (spec.growth_bound) {
        ell.growth_bound = spec.growth_bound;
        if (pres.base().is_finite()) {
            std::vector<ElementId> gens;
            for (const auto& [g, mass] : params.mu0) gens.push_back(g);
            try {
                verify_growth_bound(pres, ell, gens);
            } catch (const DomainError& e) {
                throw ConfigError(std::string("length growth bound: ") + e.what());
            }
        }
    }
    return ell;
}

Instance instantiate(const ExperimentConfig& config) {
    HnnPresentation pres = validate_presentation(config.group);
    WalkParams params;
    params.alpha = config.alpha;
    params.p = config.p;
    for (const auto& [name, mass] : config.mu0)
        params.mu0.emplace_back(pres.base().id_of(name), mass);
    validate_walk_params(pres, params);
    LengthFunction ell = make_length(pres, params, config.length, config.seed);
    return Instance{std::move(pres), std::move(params), std::move(ell)};
}

} // namespace hnnwalk
