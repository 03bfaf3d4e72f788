#include "lndkit/monomial.hpp"

#include "lndkit/errors.hpp"

#include <algorithm>
#include <limits>

namespace lndkit {

namespace {
constexpr unsigned kMaxExponent = std::numeric_limits<std::uint16_t>::max();
}

void Monomial::set(std::size_t i, unsigned e)
{
    if (e > kMaxExponent)
        throw BudgetExceeded("exponent overflow");
    degree = degree - exp[i] + e;
    exp[i] = static_cast<std::uint16_t>(e);
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        unsigned e = unsigned(a.exp[i]) + b.exp[i];
        if (e > kMaxExponent)
            throw BudgetExceeded("exponent overflow");
        r.exp[i] = static_cast<std::uint16_t>(e);
    }
    r.degree = a.degree + b.degree;
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
    r.degree = a.degree - b.degree;
    return r;
}

bool divides(const Monomial& d, const Monomial& m)
{
    if (d.degree > m.degree)
        return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (d.exp[i] > m.exp[i])
            return false;
    return true;
}

Monomial lcm(const Monomial& a, const Monomial& b)
{
    Monomial r;
    std::uint32_t deg = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.exp[i] = std::max(a.exp[i], b.exp[i]);
        deg += r.exp[i];
    }
    r.degree = deg;
    return r;
}

bool coprime(const Monomial& a, const Monomial& b)
{
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.exp[i] != 0 && b.exp[i] != 0)
            return false;
    return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const
{
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exp) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return h;
}

MonomialOrder::MonomialOrder(std::vector<std::vector<std::size_t>> blocks) : blocks_(std::move(blocks))
{
    std::vector<bool> seen;
    for (const auto& b : blocks_)
        for (auto v : b) {
            if (v >= kMaxVars)
                throw InvalidArgument("monomial order references a variable beyond the supported range");
            if (v >= seen.size())
                seen.resize(v + 1, false);
            if (seen[v])
                throw InvalidArgument("monomial order lists a variable twice");
            seen[v] = true;
        }
    nvars_ = seen.size();
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw InvalidArgument("monomial order must cover every variable");

    plain_grevlex_ = blocks_.size() == 1;
    if (plain_grevlex_)
        for (std::size_t i = 0; i < blocks_[0].size(); ++i)
            if (blocks_[0][i] != i)
                plain_grevlex_ = false;

    key_ = "blocks";
    for (const auto& b : blocks_) {
        key_ += "[";
        for (std::size_t i = 0; i < b.size(); ++i)
            key_ += (i ? "," : "") + std::to_string(b[i]);
        key_ += "]";
    }
}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars)
{
    std::vector<std::size_t> all(nvars);
    for (std::size_t i = 0; i < nvars; ++i)
        all[i] = i;
    return MonomialOrder({all});
}

MonomialOrder MonomialOrder::lex(std::size_t nvars)
{
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < nvars; ++i)
        blocks.push_back({i});
    return MonomialOrder(std::move(blocks));
}

MonomialOrder MonomialOrder::elimination(std::size_t nvars, const std::vector<std::size_t>& eliminated)
{
    std::vector<std::size_t> first, rest;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (std::find(eliminated.begin(), eliminated.end(), i) != eliminated.end())
            first.push_back(i);
        else
            rest.push_back(i);
    }
    std::vector<std::vector<std::size_t>> blocks;
    if (!first.empty())
        blocks.push_back(first);
    if (!rest.empty())
        blocks.push_back(rest);
    return MonomialOrder(std::move(blocks));
}

MonomialOrder MonomialOrder::from_blocks(std::vector<std::vector<std::size_t>> blocks)
{
    return MonomialOrder(std::move(blocks));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const
{
    if (plain_grevlex_) {
        if (a.degree != b.degree)
            return a.degree > b.degree ? 1 : -1;
        for (std::size_t i = nvars_; i-- > 0;)
            if (a.exp[i] != b.exp[i])
                return a.exp[i] < b.exp[i] ? 1 : -1;
        return 0;
    }
    for (const auto& block : blocks_) {
        unsigned da = 0, db = 0;
        for (auto v : block) {
            da += a.exp[v];
            db += b.exp[v];
        }
        if (da != db)
            return da > db ? 1 : -1;
        for (std::size_t k = block.size(); k-- > 0;) {
            auto v = block[k];
            if (a.exp[v] != b.exp[v])
                return a.exp[v] < b.exp[v] ? 1 : -1;
        }
    }
    return 0;
}

}  // namespace lndkit
