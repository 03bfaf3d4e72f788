#include "lndkit/var_table.hpp"

#include "lndkit/errors.hpp"
#include "lndkit/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace lndkit {

bool is_identifier(std::string_view s)
{
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front())))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

VarTable::VarTable(std::vector<std::string> names, std::vector<bool> param_flags)
    : names_(std::move(names)), params_(std::move(param_flags))
{
    if (params_.empty())
        params_.assign(names_.size(), false);
    if (params_.size() != names_.size())
        throw InvalidArgument("parameter flags do not match the variable list");
    if (names_.size() > kMaxVars)
        throw InvalidArgument("at most " + std::to_string(kMaxVars) + " variables are supported");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!is_identifier(n))
            throw InvalidArgument("invalid variable name '" + n + "'");
        if (!seen.insert(n).second)
            throw InvalidArgument("duplicate variable name '" + n + "'");
    }
}

VarTablePtr VarTable::make(std::vector<std::string> names, std::vector<bool> param_flags)
{
    return std::make_shared<const VarTable>(std::move(names), std::move(param_flags));
}

std::optional<std::size_t> VarTable::find(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    return std::nullopt;
}

std::size_t VarTable::index(std::string_view name) const
{
    if (auto i = find(name))
        return *i;
    throw UnknownVariable(std::string(name));
}

VarTablePtr VarTable::extended(const std::vector<std::string>& extra, bool as_params) const
{
    auto names = names_;
    auto params = params_;
    for (const auto& e : extra) {
        names.push_back(e);
        params.push_back(as_params);
    }
    return make(std::move(names), std::move(params));
}

VarTablePtr VarTable::without(const std::vector<std::string>& drop) const
{
    std::vector<std::string> names;
    std::vector<bool> params;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (std::find(drop.begin(), drop.end(), names_[i]) != drop.end())
            continue;
        names.push_back(names_[i]);
        params.push_back(params_[i]);
    }
    return make(std::move(names), std::move(params));
}

std::string VarTable::fresh_name(const std::string& base) const
{
    if (!contains(base))
        return base;
    for (int k = 1;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (!contains(candidate))
            return candidate;
    }
}

bool same_vars(const VarTablePtr& a, const VarTablePtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

void require_same_vars(const VarTablePtr& a, const VarTablePtr& b, const char* context)
{
    if (!same_vars(a, b))
        throw VarTableMismatch(std::string("variable tables differ in ") + context);
}

}  // namespace lndkit
