#include "hnnwalk/presentation.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hnnwalk {

namespace {

void check_subgroup(const BaseGroup& g, const std::vector<ElementId>& h, const char* label) {
    std::set<ElementId> members(h.begin(), h.end());
    if (members.size() != h.size())
        throw NotASubgroup(std::string(label) + " has repeated elements");
    if (!members.count(g.identity()))
        throw NotASubgroup(std::string(label) + " does not contain the identity");
    for (ElementId a : h) {
        if (!members.count(g.inverse(a)))
            throw NotASubgroup(std::string(label) + " is not closed under inverse at " +
                               g.name_of(a));
        for (ElementId b : h)
            if (!members.count(g.mul(a, b)))
                throw NotASubgroup(std::string(label) + " is not closed under multiplication at " +
                                   g.name_of(a) + "*" + g.name_of(b));
    }
}

} // namespace

bool HnnPresentation::in_A(ElementId g) const {
    if (!base_.is_finite()) return g == 0;
    return in_a_[static_cast<std::size_t>(g)] != 0;
}

bool HnnPresentation::in_B(ElementId g) const {
    if (!base_.is_finite()) return g == 0;
    return in_b_[static_cast<std::size_t>(g)] != 0;
}

ElementId HnnPresentation::phi(ElementId a) const {
    if (!base_.is_finite()) return 0;
    return phi_[static_cast<std::size_t>(a)];
}

ElementId HnnPresentation::phi_inv(ElementId b) const {
    if (!base_.is_finite()) return 0;
    return phi_inv_[static_cast<std::size_t>(b)];
}

std::pair<ElementId, ElementId> HnnPresentation::coset_a(ElementId g) const {
    if (!base_.is_finite()) return {g, 0};
    const auto i = static_cast<std::size_t>(g);
    return {coset_a_rep_[i], coset_a_rem_[i]};
}

std::pair<ElementId, ElementId> HnnPresentation::coset_b(ElementId g) const {
    if (!base_.is_finite()) return {g, 0};
    const auto i = static_cast<std::size_t>(g);
    return {coset_b_rep_[i], coset_b_rem_[i]};
}

HnnPresentation validate_presentation(const GroupSpec& spec) {
    HnnPresentation p;

    if (spec.kind == BaseGroupKind::Integers) {
        p.base_ = BaseGroup::integers();
        auto check_trivial = [&](const std::vector<std::string>& names, const char* label) {
            if (names.size() != 1 || p.base_.id_of(names[0]) != 0)
                throw TrivialityViolation(std::string(label) +
                                          " must be {0} for the integers base group");
        };
        check_trivial(spec.subgroup_a, "subgroup A");
        check_trivial(spec.subgroup_b, "subgroup B");
        for (const auto& [from, to] : spec.phi)
            if (p.base_.id_of(from) != 0 || p.base_.id_of(to) != 0)
                throw NotAnIsomorphism("phi must be the identity on {0}");
        p.a_ = {0};
        p.b_ = {0};
        p.degenerate_ = false;
        return p;
    }

    p.base_ = BaseGroup::finite_table(spec.elements, spec.identity, spec.table);
    const BaseGroup& g = p.base_;
    const std::size_t n = static_cast<std::size_t>(g.order());

    for (const auto& name : spec.subgroup_a) p.a_.push_back(g.id_of(name));
    for (const auto& name : spec.subgroup_b) p.b_.push_back(g.id_of(name));
    check_subgroup(g, p.a_, "subgroup A");
    check_subgroup(g, p.b_, "subgroup B");
    if (p.a_.size() != p.b_.size())
        throw NotAnIsomorphism("subgroups A and B have different orders");

    p.in_a_.assign(n, 0);
    p.in_b_.assign(n, 0);
    for (ElementId a : p.a_) p.in_a_[static_cast<std::size_t>(a)] = 1;
    for (ElementId b : p.b_) p.in_b_[static_cast<std::size_t>(b)] = 1;

    // phi: total on A, values in B, bijective, multiplicative.
    p.phi_.assign(n, -1);
    p.phi_inv_.assign(n, -1);
    for (const auto& [from, to] : spec.phi) {
        const ElementId a = g.id_of(from);
        const ElementId b = g.id_of(to);
        if (!p.in_a_[static_cast<std::size_t>(a)])
            throw NotAnIsomorphism("phi domain element not in A: " + from);
        if (!p.in_b_[static_cast<std::size_t>(b)])
            throw NotAnIsomorphism("phi image not in B: " + to);
        if (p.phi_[static_cast<std::size_t>(a)] >= 0)
            throw NotAnIsomorphism("phi maps " + from + " twice");
        if (p.phi_inv_[static_cast<std::size_t>(b)] >= 0)
            throw NotAnIsomorphism("phi is not injective at " + to);
        p.phi_[static_cast<std::size_t>(a)] = b;
        p.phi_inv_[static_cast<std::size_t>(b)] = a;
    }
    for (ElementId a : p.a_)
        if (p.phi_[static_cast<std::size_t>(a)] < 0)
            throw NotAnIsomorphism("phi is not defined on " + g.name_of(a));
    for (ElementId a1 : p.a_)
        for (ElementId a2 : p.a_) {
            const ElementId lhs = p.phi_[static_cast<std::size_t>(g.mul(a1, a2))];
            const ElementId rhs = g.mul(p.phi_[static_cast<std::size_t>(a1)],
                                        p.phi_[static_cast<std::size_t>(a2)]);
            if (lhs != rhs)
                throw NotAnIsomorphism("phi is not multiplicative at (" + g.name_of(a1) + "," +
                                       g.name_of(a2) + ")");
        }

    // Discovery order: BFS from the identity, right-multiplying by the
    // configured generators. Falls back to all elements when none are given.
    std::vector<ElementId> gens;
    if (!spec.generator_order.empty()) {
        for (const auto& name : spec.generator_order) gens.push_back(g.id_of(name));
    } else {
        for (std::int64_t i = 0; i < g.order(); ++i) gens.push_back(i);
    }
    std::vector<ElementId> order;
    std::vector<char> seen(n, 0);
    std::deque<ElementId> queue{g.identity()};
    seen[static_cast<std::size_t>(g.identity())] = 1;
    while (!queue.empty()) {
        const ElementId cur = queue.front();
        queue.pop_front();
        order.push_back(cur);
        for (ElementId s : gens) {
            const ElementId next = g.mul(cur, s);
            if (!seen[static_cast<std::size_t>(next)]) {
                seen[static_cast<std::size_t>(next)] = 1;
                queue.push_back(next);
            }
        }
    }
    if (order.size() != n)
        throw ConfigError("generator support does not generate the base group");

    // First-discovered element of each left coset is its representative.
    auto assign_cosets = [&](const std::vector<ElementId>& sub, std::vector<ElementId>& reps,
                             std::vector<ElementId>& rep_of, std::vector<ElementId>& rem_of) {
        rep_of.assign(n, -1);
        rem_of.assign(n, -1);
        for (ElementId v : order) {
            if (rep_of[static_cast<std::size_t>(v)] >= 0) continue;
            reps.push_back(v);
            for (ElementId s : sub) {
                const ElementId member = g.mul(v, s);
                if (rep_of[static_cast<std::size_t>(member)] < 0) {
                    rep_of[static_cast<std::size_t>(member)] = v;
                    rem_of[static_cast<std::size_t>(member)] = s;
                }
            }
        }
    };
    assign_cosets(p.a_, p.x_, p.coset_a_rep_, p.coset_a_rem_);
    assign_cosets(p.b_, p.y_, p.coset_b_rep_, p.coset_b_rem_);

    p.degenerate_ = (p.a_.size() == n && p.b_.size() == n);
    return p;
}

} // namespace hnnwalk
