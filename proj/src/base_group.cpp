#include "hnnwalk/base_group.hpp"

#include <charconv>

namespace hnnwalk {

BaseGroup BaseGroup::finite_table(std::vector<std::string> names, const std::string& identity,
                                  const std::vector<std::vector<std::string>>& table) {
    BaseGroup g;
    g.kind_ = BaseGroupKind::FiniteTable;
    g.names_ = std::move(names);
    const std::size_t n = g.names_.size();
    if (n == 0) throw NotAGroupTable("empty element list");
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.index_.emplace(g.names_[i], static_cast<ElementId>(i)).second)
            throw NotAGroupTable("duplicate element name: " + g.names_[i]);
    }
    auto it = g.index_.find(identity);
    if (it == g.index_.end()) throw NotAGroupTable("identity name not among elements: " + identity);
    g.identity_ = it->second;

    if (table.size() != n) throw NotAGroupTable("table row count does not match element count");
    g.table_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) throw NotAGroupTable("table row has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            auto cell = g.index_.find(table[i][j]);
            if (cell == g.index_.end())
                throw NotAGroupTable("table entry is not an element name: " + table[i][j]);
            g.table_[i * n + j] = cell->second;
        }
    }

    // Identity laws.
    const std::size_t e = static_cast<std::size_t>(g.identity_);
    for (std::size_t i = 0; i < n; ++i) {
        if (g.table_[e * n + i] != static_cast<ElementId>(i) ||
            g.table_[i * n + e] != static_cast<ElementId>(i))
            throw NotAGroupTable("identity law fails at element " + g.names_[i]);
    }
    // Latin square: every row and column is a permutation.
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<char> row(n, 0), col(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            row[static_cast<std::size_t>(g.table_[i * n + j])] = 1;
            col[static_cast<std::size_t>(g.table_[j * n + i])] = 1;
        }
        for (std::size_t j = 0; j < n; ++j)
            if (!row[j] || !col[j])
                throw NotAGroupTable("row/column of " + g.names_[i] + " is not a permutation");
    }
    // Associativity, exhaustive (tables here are small).
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const ElementId ab = g.table_[a * n + b];
                const ElementId bc = g.table_[b * n + c];
                if (g.table_[static_cast<std::size_t>(ab) * n + c] !=
                    g.table_[a * n + static_cast<std::size_t>(bc)])
                    throw NotAGroupTable("associativity fails at (" + g.names_[a] + "," +
                                         g.names_[b] + "," + g.names_[c] + ")");
            }
    // Two-sided inverses.
    g.inverse_.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (g.table_[a * n + b] == g.identity_ && g.table_[b * n + a] == g.identity_) {
                g.inverse_[a] = static_cast<ElementId>(b);
                break;
            }
        }
        if (g.inverse_[a] < 0) throw NotAGroupTable("no inverse for element " + g.names_[a]);
    }
    return g;
}

BaseGroup BaseGroup::integers() {
    BaseGroup g;
    g.kind_ = BaseGroupKind::Integers;
    g.identity_ = 0;
    return g;
}

std::string BaseGroup::name_of(ElementId id) const {
    if (kind_ == BaseGroupKind::Integers) return std::to_string(id);
    return names_.at(static_cast<std::size_t>(id));
}

ElementId BaseGroup::id_of(const std::string& name) const {
    if (kind_ == BaseGroupKind::Integers) {
        ElementId v = 0;
        auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), v);
        if (ec != std::errc{} || ptr != name.data() + name.size())
            throw UnknownLetter("not an integer element: " + name);
        return v;
    }
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownLetter("unknown element name: " + name);
    return it->second;
}

bool BaseGroup::has_name(const std::string& name) const {
    if (kind_ == BaseGroupKind::Integers) {
        ElementId v = 0;
        auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), v);
        return ec == std::errc{} && ptr == name.data() + name.size();
    }
    return index_.count(name) > 0;
}

} // namespace hnnwalk
