#pragma once

#include <map>
#include <optional>
#include <span>

#include "hnnwalk/normal_form.hpp"

namespace hnnwalk {

struct GrowthBound {
    double c = 1.0;
    std::int64_t kappa = 1;
};

// Non-negative letter weights on G0 u {t, t^-1}, extended to G by summing over
// the normal form.
class LengthFunction {
public:
    static LengthFunction unit(const HnnPresentation& pres);
    static LengthFunction t_only(const HnnPresentation& pres);
    // Values by element id; `fallback` covers elements not listed (required
    // for the integers base, where the table cannot be exhaustive).
    static LengthFunction table(const HnnPresentation& pres,
                                const std::map<ElementId, double>& values, double value_t,
                                double value_t_inv, std::optional<double> fallback = {});

    double at(ElementId g) const {
        if (!dense_.empty()) return dense_[static_cast<std::size_t>(g)];
        auto it = sparse_.find(g);
        return it != sparse_.end() ? it->second : fallback_;
    }
    double at_sign(std::int8_t sign) const { return sign > 0 ? value_t_ : value_t_inv_; }
    double value_t() const { return value_t_; }
    double value_t_inv() const { return value_t_inv_; }

    std::optional<GrowthBound> growth_bound;

private:
    std::vector<double> dense_;               // finite base
    std::map<ElementId, double> sparse_;      // integers base
    double fallback_ = 0.0;
    double value_t_ = 1.0;
    double value_t_inv_ = 1.0;
};

inline double eval_length(const LengthFunction& ell, const NormalForm& w) {
    double total = ell.at(w.trailing);
    for (const Syllable& s : w.syllables) total += ell.at(s.rep) + ell.at_sign(s.sign);
    return total;
}

// Word metric |g| over the given generating set, by breadth-first search
// (finite base only).
std::vector<std::int64_t> word_metric(const HnnPresentation& pres, std::span<const ElementId> gens);

// Verifies ell(g) <= C * max(1,|g|)^kappa over the whole finite base group.
// Throws DomainError on violation or when no bound is attached.
void verify_growth_bound(const HnnPresentation& pres, const LengthFunction& ell,
                         std::span<const ElementId> gens);

} // namespace hnnwalk
