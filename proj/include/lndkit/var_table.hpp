#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lndkit {

class VarTable;
using VarTablePtr = std::shared_ptr<const VarTable>;

// Ordered list of distinct variable names. A variable may be flagged as a formal
// parameter (a constant of every derivation, e.g. a deformation parameter or a
// root of unity). The order is fixed at construction.
class VarTable {
public:
    VarTable(std::vector<std::string> names, std::vector<bool> param_flags);

    static VarTablePtr make(std::vector<std::string> names, std::vector<bool> param_flags = {});

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    bool is_param(std::size_t i) const { return params_[i]; }
    const std::vector<bool>& param_flags() const { return params_; }

    std::optional<std::size_t> find(std::string_view name) const;
    // Throws UnknownVariable.
    std::size_t index(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name).has_value(); }

    // A new table with extra variables appended.
    VarTablePtr extended(const std::vector<std::string>& extra, bool as_params = false) const;
    // A new table without the given variables (order of the rest preserved).
    VarTablePtr without(const std::vector<std::string>& drop) const;
    // Returns `base` if unused, otherwise base_1, base_2, ...
    std::string fresh_name(const std::string& base) const;

    bool operator==(const VarTable& other) const
    {
        return names_ == other.names_ && params_ == other.params_;
    }

private:
    std::vector<std::string> names_;
    std::vector<bool> params_;
};

bool same_vars(const VarTablePtr& a, const VarTablePtr& b);
// Throws VarTableMismatch unless the tables agree.
void require_same_vars(const VarTablePtr& a, const VarTablePtr& b, const char* context);
bool is_identifier(std::string_view s);

}  // namespace lndkit
