#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hnnwalk/errors.hpp"

namespace hnnwalk {

using ElementId = std::int64_t;

enum class BaseGroupKind { FiniteTable, Integers };

// The base group G0: either a finite multiplication table with dense element
// ids 0..n-1, or the additive integers (element id == integer value).
class BaseGroup {
public:
    static BaseGroup finite_table(std::vector<std::string> names, const std::string& identity,
                                  const std::vector<std::vector<std::string>>& table);
    static BaseGroup integers();

    BaseGroupKind kind() const { return kind_; }
    bool is_finite() const { return kind_ == BaseGroupKind::FiniteTable; }
    std::int64_t order() const { return static_cast<std::int64_t>(names_.size()); }
    ElementId identity() const { return identity_; }

    ElementId mul(ElementId a, ElementId b) const {
        if (kind_ == BaseGroupKind::Integers) return a + b;
        return table_[static_cast<std::size_t>(a) * names_.size() + static_cast<std::size_t>(b)];
    }

    ElementId inverse(ElementId a) const {
        if (kind_ == BaseGroupKind::Integers) return -a;
        return inverse_[static_cast<std::size_t>(a)];
    }

    std::string name_of(ElementId id) const;
    // Throws UnknownLetter for names that are not elements.
    ElementId id_of(const std::string& name) const;
    bool has_name(const std::string& name) const;

    const std::vector<std::string>& names() const { return names_; }

private:
    BaseGroup() = default;

    BaseGroupKind kind_ = BaseGroupKind::FiniteTable;
    std::vector<std::string> names_;
    std::unordered_map<std::string, ElementId> index_;
    std::vector<ElementId> table_;   // row-major n*n
    std::vector<ElementId> inverse_;
    ElementId identity_ = 0;
};

} // namespace hnnwalk
