#pragma once

#include <algorithm>
#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quadpt {

/// A symbol is a family name plus an integer index: c_3 is {"c", 3}, the
/// root alpha is {"alpha", 0}, beta_2 is {"beta", 2}.
struct VarKey {
    std::string family;
    int index = 0;

    auto operator<=>(const VarKey&) const = default;
    bool operator==(const VarKey&) const = default;
};

struct Variable {
    std::string family;
    int index = 0;
    int weight = 1;

    VarKey key() const { return {family, index}; }
    bool operator==(const Variable&) const = default;
};

struct IncompatibleTables : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Families whose index is also the cohomological weight (c_i, d_i, n_i, ...).
inline bool is_indexed_family(std::string_view family) {
    return family == "c" || family == "d" || family == "e" || family == "h" || family == "k" ||
           family == "n";
}

inline int default_weight(std::string_view family, int index) {
    return is_indexed_family(family) ? index : 1;
}

/// Plain-text name: "c12", "alpha", "beta2".
inline std::string var_name(const VarKey& k) {
    if (k.index == 0 && !is_indexed_family(k.family)) return k.family;
    return k.family + std::to_string(k.index);
}

/// Ordered set of variables, sorted by (family, index). Immutable once built;
/// shared between polynomials through VarTablePtr.
class VarTable {
public:
    VarTable() = default;

    explicit VarTable(std::vector<Variable> vars) : vars_(std::move(vars)) {
        std::sort(vars_.begin(), vars_.end(),
                  [](const Variable& a, const Variable& b) { return a.key() < b.key(); });
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].weight < 0)
                throw std::invalid_argument("negative weight for " + var_name(vars_[i].key()));
            if (i > 0 && vars_[i - 1].key() == vars_[i].key())
                throw std::invalid_argument("duplicate variable " + var_name(vars_[i].key()));
        }
    }

    std::size_t size() const { return vars_.size(); }
    const Variable& operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<Variable>& variables() const { return vars_; }

    std::optional<std::size_t> find(const VarKey& key) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), key,
                                   [](const Variable& v, const VarKey& k) { return v.key() < k; });
        if (it == vars_.end() || it->key() != key) return std::nullopt;
        return static_cast<std::size_t>(it - vars_.begin());
    }

    bool operator==(const VarTable&) const = default;

private:
    std::vector<Variable> vars_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_table(std::vector<Variable> vars) {
    return std::make_shared<const VarTable>(std::move(vars));
}

inline const VarTablePtr& empty_table() {
    static const VarTablePtr t = make_table({});
    return t;
}

/// c_1 .. c_n with weight i.
inline VarTablePtr chern_table(int n, std::string family = "c") {
    std::vector<Variable> vars;
    for (int i = 1; i <= n; ++i) vars.push_back({family, i, i});
    return make_table(std::move(vars));
}

/// Union of two tables. A symbol present in both with different weights is an
/// error: the same c_i cannot carry two gradings.
inline VarTablePtr merge_tables(const VarTablePtr& a, const VarTablePtr& b) {
    if (a == b || *a == *b) return a;
    std::vector<Variable> out = a->variables();
    for (const auto& v : b->variables()) {
        if (auto i = a->find(v.key())) {
            if ((*a)[*i].weight != v.weight)
                throw IncompatibleTables("variable " + var_name(v.key()) + " has weights " +
                                         std::to_string((*a)[*i].weight) + " and " +
                                         std::to_string(v.weight));
        } else {
            out.push_back(v);
        }
    }
    if (out.size() == a->size()) return a;
    if (out.size() == b->size()) return b;
    return make_table(std::move(out));
}

}  // namespace quadpt
