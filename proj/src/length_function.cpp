#include "hnnwalk/length_function.hpp"

#include <cmath>
#include <deque>

namespace hnnwalk {

namespace {

void check_non_negative(double v, const char* what) {
    if (v < 0.0 || !std::isfinite(v)) throw ConfigError(std::string("length weight for ") + what +
                                                        " must be finite and non-negative");
}

} // namespace

LengthFunction LengthFunction::unit(const HnnPresentation& pres) {
    LengthFunction ell;
    if (pres.base().is_finite())
        ell.dense_.assign(static_cast<std::size_t>(pres.base().order()), 1.0);
    else
        ell.fallback_ = 1.0;
    ell.value_t_ = ell.value_t_inv_ = 1.0;
    return ell;
}

LengthFunction LengthFunction::t_only(const HnnPresentation& pres) {
    LengthFunction ell;
    if (pres.base().is_finite())
        ell.dense_.assign(static_cast<std::size_t>(pres.base().order()), 0.0);
    ell.fallback_ = 0.0;
    ell.value_t_ = ell.value_t_inv_ = 1.0;
    return ell;
}

LengthFunction LengthFunction::table(const HnnPresentation& pres,
                                     const std::map<ElementId, double>& values, double value_t,
                                     double value_t_inv, std::optional<double> fallback) {
    LengthFunction ell;
    check_non_negative(value_t, "t");
    check_non_negative(value_t_inv, "t^-1");
    ell.value_t_ = value_t;
    ell.value_t_inv_ = value_t_inv;
    if (pres.base().is_finite()) {
        const auto n = static_cast<std::size_t>(pres.base().order());
        if (!fallback && values.size() != n)
            throw ConfigError("length table must cover every element (or supply a default)");
        ell.dense_.assign(n, fallback.value_or(0.0));
        for (const auto& [id, v] : values) {
            check_non_negative(v, pres.base().name_of(id).c_str());
            ell.dense_[static_cast<std::size_t>(id)] = v;
        }
        if (fallback) check_non_negative(*fallback, "default");
    } else {
        if (!fallback) throw ConfigError("length table on the integers base needs a default value");
        check_non_negative(*fallback, "default");
        ell.fallback_ = *fallback;
        for (const auto& [id, v] : values) {
            check_non_negative(v, "table entry");
            ell.sparse_.emplace(id, v);
        }
    }
    return ell;
}

std::vector<std::int64_t> word_metric(const HnnPresentation& pres,
                                      std::span<const ElementId> gens) {
    if (!pres.base().is_finite()) throw DomainError("word metric needs a finite base group");
    const auto n = static_cast<std::size_t>(pres.base().order());
    std::vector<std::int64_t> dist(n, -1);
    std::deque<ElementId> queue{pres.identity()};
    dist[static_cast<std::size_t>(pres.identity())] = 0;
    while (!queue.empty()) {
        const ElementId cur = queue.front();
        queue.pop_front();
        for (ElementId s : gens) {
            const ElementId next = pres.mul(cur, s);
            if (dist[static_cast<std::size_t>(next)] < 0) {
                dist[static_cast<std::size_t>(next)] = dist[static_cast<std::size_t>(cur)] + 1;
                queue.push_back(next);
            }
        }
    }
    return dist;
}

void verify_growth_bound(const HnnPresentation& pres, const LengthFunction& ell,
                         std::span<const ElementId> gens) {
    if (!ell.growth_bound) throw DomainError("length function carries no growth bound");
    const auto dist = word_metric(pres, gens);
    for (std::size_t g = 0; g < dist.size(); ++g) {
        if (dist[g] < 0) throw DomainError("generators do not reach element " +
                                           pres.base().name_of(static_cast<ElementId>(g)));
        const double bound =
            ell.growth_bound->c *
            std::pow(static_cast<double>(std::max<std::int64_t>(1, dist[g])),
                     static_cast<double>(ell.growth_bound->kappa));
        if (ell.at(static_cast<ElementId>(g)) > bound)
            throw DomainError("growth bound violated at " +
                              pres.base().name_of(static_cast<ElementId>(g)));
    }
}

} // namespace hnnwalk
