#include "lndkit/linalg.hpp"

#include "lndkit/errors.hpp"

#include <algorithm>
#include <map>

namespace lndkit {

void LinearSystem::add_row(SparseVec row, Rational b)
{
    for (const auto& [c, v] : row)
        if (c >= ncols)
            throw InvalidArgument("linear system row references a column out of range");
    rows.push_back(std::move(row));
    rhs.resize(rows.size() - 1);
    rhs.push_back(std::move(b));
}

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(IntRow& r)
{
    if (r.empty())
        return;
    Integer g = 0;
    for (const auto& [c, v] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            break;
    }
    if (r.front().second < 0)
        g = -g;
    if (g != 1)
        for (auto& [c, v] : r)
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_integer_row(const SparseVec& row)
{
    Integer den = 1;
    for (const auto& [c, v] : row)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    IntRow r;
    r.reserve(row.size());
    for (const auto& [c, v] : row) {
        if (sgn(v) == 0)
            continue;
        Integer x = v.get_num() * (den / v.get_den());
        r.emplace_back(c, std::move(x));
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    make_primitive(r);
    return r;
}

// a * r - b * p (sparse, sorted)
IntRow combine(const Integer& a, const IntRow& r, const Integer& b, const IntRow& p)
{
    IntRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j >= p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.emplace_back(r[i].first, a * r[i].second);
            ++i;
        }
        else if (i >= r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, -b * p[j].second);
            ++j;
        }
        else {
            Integer v = a * r[i].second - b * p[j].second;
            if (sgn(v) != 0)
                out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

bool RowEchelon::insert(const SparseVec& row)
{
    if (pivot_row_.empty())
        pivot_row_.assign(ncols_, -1);
    IntRow r = to_integer_row(row);
    while (!r.empty()) {
        const std::size_t c = r.front().first;
        if (c >= ncols_)
            throw InvalidArgument("row references a column out of range");
        auto pr = pivot_row_[c];
        if (pr < 0) {
            pivot_row_[c] = static_cast<std::ptrdiff_t>(rows_.size());
            rows_.push_back(std::move(r));
            return true;
        }
        const IntRow& p = rows_[pr];
        Integer g;
        mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), r.front().second.get_mpz_t());
        Integer a = p.front().second / g;
        Integer b = r.front().second / g;
        r = combine(a, r, b, p);
        make_primitive(r);
    }
    return false;
}

std::vector<SparseVec> RowEchelon::reduced() const
{
    // Rows sorted by decreasing pivot; each row is reduced against the rows with
    // larger pivots, which are already reduced.
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().first > rows_[b].front().first; });
    std::map<std::size_t, SparseVec> done;  // pivot column -> reduced row
    for (auto idx : order) {
        const auto& src = rows_[idx];
        std::map<std::size_t, Rational> work;
        for (const auto& [c, v] : src)
            work[c] = Rational(v);
        const std::size_t pivot = src.front().first;
        for (auto it = std::next(work.begin()); it != work.end();) {
            auto d = done.find(it->first);
            if (d == done.end() || sgn(it->second) == 0) {
                ++it;
                continue;
            }
            Rational f = it->second;
            for (const auto& [c, v] : d->second)
                work[c] -= f * v;
            it = work.erase(work.find(d->first));
        }
        Rational lead = work.at(pivot);
        SparseVec out;
        for (auto& [c, v] : work)
            if (sgn(v) != 0)
                out.emplace_back(c, v / lead);
        done.emplace(pivot, std::move(out));
    }
    std::vector<SparseVec> result;
    result.reserve(done.size());
    for (auto& [p, row] : done)
        result.push_back(std::move(row));
    return result;
}

namespace {

RowEchelon echelon_of(const LinearSystem& system, bool augmented)
{
    RowEchelon e(system.ncols + (augmented ? 1 : 0));
    for (std::size_t i = 0; i < system.rows.size(); ++i) {
        SparseVec row = system.rows[i];
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        if (augmented && i < system.rhs.size() && sgn(system.rhs[i]) != 0)
            row.emplace_back(system.ncols, system.rhs[i]);
        e.insert(row);
    }
    return e;
}

}  // namespace

std::vector<SparseVec> nullspace(const LinearSystem& system)
{
    auto rref = echelon_of(system, false).reduced();
    std::vector<bool> is_pivot(system.ncols, false);
    for (const auto& r : rref)
        is_pivot[r.front().first] = true;
    std::map<std::size_t, SparseVec> basis;
    for (std::size_t c = 0; c < system.ncols; ++c)
        if (!is_pivot[c])
            basis[c] = SparseVec{};
    for (const auto& r : rref) {
        const std::size_t p = r.front().first;
        for (std::size_t k = 1; k < r.size(); ++k)
            basis[r[k].first].emplace_back(p, -r[k].second);
    }
    std::vector<SparseVec> out;
    out.reserve(basis.size());
    for (auto& [free, vec] : basis) {
        vec.emplace_back(free, Rational(1));
        std::sort(vec.begin(), vec.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.push_back(std::move(vec));
    }
    return out;
}

std::optional<std::vector<Rational>> solve(const LinearSystem& system)
{
    auto rref = echelon_of(system, true).reduced();
    std::vector<Rational> x(system.ncols, Rational(0));
    for (const auto& r : rref) {
        const std::size_t p = r.front().first;
        if (p == system.ncols)
            return std::nullopt;
        if (r.back().first == system.ncols)
            x[p] = r.back().second;
    }
    return x;
}

}  // namespace lndkit
