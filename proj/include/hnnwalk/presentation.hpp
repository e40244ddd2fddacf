#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hnnwalk/base_group.hpp"

namespace hnnwalk {

// Raw group specification as it appears in a config file, before validation.
struct GroupSpec {
    BaseGroupKind kind = BaseGroupKind::FiniteTable;
    std::vector<std::string> elements;
    std::string identity;
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> subgroup_a;
    std::vector<std::string> subgroup_b;
    std::map<std::string, std::string> phi;
    // Element names in the order used to seed the coset-representative search
    // (the support of mu0 when walk fields are present).
    std::vector<std::string> generator_order;
};

// Validated HNN presentation G = G0 *_phi with precomputed coset data.
// Immutable after construction and safe to share across workers.
class HnnPresentation {
public:
    const BaseGroup& base() const { return base_; }
    ElementId identity() const { return base_.identity(); }
    ElementId mul(ElementId a, ElementId b) const { return base_.mul(a, b); }
    ElementId inverse(ElementId a) const { return base_.inverse(a); }

    const std::vector<ElementId>& A() const { return a_; }
    const std::vector<ElementId>& B() const { return b_; }
    const std::vector<ElementId>& X() const { return x_; }
    const std::vector<ElementId>& Y() const { return y_; }

    bool in_A(ElementId g) const;
    bool in_B(ElementId g) const;

    ElementId phi(ElementId a) const;
    ElementId phi_inv(ElementId b) const;

    // g = rep * rem with rep in X and rem in A (left cosets of G0/A).
    std::pair<ElementId, ElementId> coset_a(ElementId g) const;
    // g = rep * rem with rep in Y and rem in B.
    std::pair<ElementId, ElementId> coset_b(ElementId g) const;

    // True when A == B == G0 (finite base), the regime that projects onto Z.
    bool degenerate() const { return degenerate_; }

    friend HnnPresentation validate_presentation(const GroupSpec& spec);

private:
    BaseGroup base_ = BaseGroup::integers();
    std::vector<ElementId> a_, b_, x_, y_;
    bool degenerate_ = false;
    // Finite-table lookups, indexed by element id.
    std::vector<char> in_a_, in_b_;
    std::vector<ElementId> phi_, phi_inv_;
    std::vector<ElementId> coset_a_rep_, coset_a_rem_, coset_b_rep_, coset_b_rem_;
};

// Checks the standing assumptions (group table, subgroups, isomorphism) and
// computes coset representatives deterministically: breadth-first search from
// the identity over the configured generator order, first-discovered element
// of each coset becomes its representative.
HnnPresentation validate_presentation(const GroupSpec& spec);

} // namespace hnnwalk
