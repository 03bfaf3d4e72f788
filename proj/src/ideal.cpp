#include "lndkit/ideal.hpp"

#include "lndkit/errors.hpp"

#include <map>
#include <mutex>

namespace lndkit {

struct Ideal::CacheEntry {
    std::vector<TermList> terms;
    std::vector<Poly> polys;
};

struct Ideal::State {
    VarTablePtr vars;
    std::vector<Poly> generators;
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const CacheEntry>> cache;
};

Ideal::Ideal(VarTablePtr vars, std::vector<Poly> generators) : state_(std::make_shared<State>())
{
    for (const auto& g : generators)
        require_same_vars(g.vars(), vars, "ideal generators");
    state_->vars = std::move(vars);
    for (auto& g : generators)
        if (!g.is_zero())
            state_->generators.push_back(std::move(g));
}

const VarTablePtr& Ideal::vars() const { return state_->vars; }

const std::vector<Poly>& Ideal::generators() const { return state_->generators; }

MonomialOrder Ideal::default_order() const
{
    return MonomialOrder::grevlex(vars()->size());
}

const Ideal::CacheEntry& Ideal::entry(const MonomialOrder& order) const
{
    if (!state_)
        throw InvalidArgument("uninitialised ideal");
    if (order.nvars() != vars()->size())
        throw InvalidArgument("monomial order does not match the variable table");
    {
        std::lock_guard lock(state_->mutex);
        auto it = state_->cache.find(order.key());
        if (it != state_->cache.end())
            return *it->second;
    }
    std::vector<TaggedPoly> input;
    input.reserve(generators().size());
    for (const auto& g : generators())
        input.push_back(TaggedPoly{sorted_terms(g, order), {}});
    auto result = buchberger(std::move(input), order);
    auto e = std::make_shared<CacheEntry>();
    for (auto& r : result) {
        e->polys.push_back(Poly::from_terms(vars(), r.poly));
        e->terms.push_back(std::move(r.poly));
    }
    auto& stats = engine_stats();
    ++stats.bases_computed;
    if (stats.verify_every_basis) {
        ++stats.bases_verified;
        if (!is_groebner_basis(e->terms, order))
            ++stats.verification_failures;
    }
    std::lock_guard lock(state_->mutex);
    auto [it, inserted] = state_->cache.emplace(order.key(), std::move(e));
    return *it->second;
}

const std::vector<Poly>& Ideal::groebner_basis() const
{
    return entry(default_order()).polys;
}

const std::vector<Poly>& Ideal::groebner_basis(const MonomialOrder& order) const
{
    return entry(order).polys;
}

const std::vector<TermList>& Ideal::basis_terms(const MonomialOrder& order) const
{
    return entry(order).terms;
}

Poly Ideal::normal_form(const Poly& p) const
{
    return normal_form(p, default_order());
}

Poly Ideal::normal_form(const Poly& p, const MonomialOrder& order) const
{
    require_same_vars(p.vars(), vars(), "normal form");
    if (p.is_zero())
        return p;
    const auto& basis = basis_terms(order);
    return Poly::from_terms(vars(), reduce(sorted_terms(p, order), basis, order).remainder);
}

bool Ideal::member(const Poly& p) const
{
    return normal_form(p).is_zero();
}

bool Ideal::is_unit() const
{
    const auto& b = groebner_basis();
    return b.size() == 1 && b.front().is_constant() && !b.front().is_zero();
}

bool Ideal::contains(const Ideal& other) const
{
    for (const auto& g : other.generators())
        if (!member(g))
            return false;
    return true;
}

Ideal Ideal::plus(const std::vector<Poly>& extra) const
{
    auto gens = generators();
    gens.insert(gens.end(), extra.begin(), extra.end());
    return Ideal(vars(), std::move(gens));
}

Ideal Ideal::plus(const Ideal& other) const
{
    return plus(other.generators());
}

Ideal Ideal::over(const VarTablePtr& target) const
{
    std::vector<Poly> gens;
    for (const auto& g : generators())
        gens.push_back(embed(g, target));
    return Ideal(target, std::move(gens));
}

std::string Ideal::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < generators().size(); ++i)
        s += (i ? ", " : "") + generators()[i].to_string();
    return s + ")";
}

namespace {

std::vector<std::size_t> indices_of(const VarTable& vars, const std::vector<std::string>& names)
{
    std::vector<std::size_t> out;
    for (const auto& n : names)
        out.push_back(vars.index(n));
    return out;
}

bool involves_any(const Poly& p, const std::vector<std::size_t>& idx)
{
    for (auto i : idx)
        if (p.involves(i))
            return true;
    return false;
}

}  // namespace

Ideal elimination_ideal(const Ideal& I, const std::vector<std::string>& drop)
{
    if (drop.empty())
        return I;
    auto idx = indices_of(*I.vars(), drop);
    auto order = MonomialOrder::elimination(I.vars()->size(), idx);
    std::vector<Poly> kept;
    for (const auto& g : I.groebner_basis(order))
        if (!involves_any(g, idx))
            kept.push_back(g);
    return Ideal(I.vars(), std::move(kept));
}

Ideal eliminate_to(const Ideal& I, const std::vector<std::string>& drop)
{
    auto target = I.vars()->without(drop);
    return elimination_ideal(I, drop).over(target);
}

Ideal saturate(const Ideal& I, const Poly& f)
{
    require_same_vars(f.vars(), I.vars(), "saturation");
    if (f.is_zero())
        throw InvalidArgument("saturation by the zero polynomial");
    if (f.is_constant())
        return I;
    const std::string w = I.vars()->fresh_name("w");
    auto ext = I.vars()->extended({w});
    auto J = I.over(ext).plus({Poly::constant(ext, 1) - embed(f, ext) * Poly::variable(ext, w)});
    return eliminate_to(J, {w});
}

namespace {

// Basis of I + (extra...) where each extra generator k carries the unit tag e_k
// and tags are kept reduced modulo I.
std::vector<TaggedPoly> tagged_sum_basis(const Ideal& I, const std::vector<Poly>& extra, const MonomialOrder& order)
{
    const std::size_t n = extra.size();
    std::vector<TaggedPoly> input;
    for (const auto& g : I.generators())
        input.push_back(TaggedPoly{sorted_terms(g, order), std::vector<TermList>(n)});
    for (std::size_t k = 0; k < n; ++k) {
        TaggedPoly t{sorted_terms(extra[k], order), std::vector<TermList>(n)};
        t.tags[k] = TermList{Term{Monomial{}, Rational(1)}};
        input.push_back(std::move(t));
    }
    const auto& ibasis = I.basis_terms(order);
    GroebnerOptions opts;
    opts.tag_reducer = [&](TermList& t) {
        if (!t.empty())
            t = reduce(t, ibasis, order).remainder;
    };
    return buchberger(std::move(input), order, opts);
}

bool is_unit_result(const std::vector<TaggedPoly>& basis)
{
    return basis.size() == 1 && basis.front().poly.size() == 1 && basis.front().poly.front().mono.is_one();
}

}  // namespace

std::optional<Poly> is_unit_mod(const Poly& f, const Ideal& I)
{
    require_same_vars(f.vars(), I.vars(), "unit test");
    auto order = I.default_order();
    auto basis = tagged_sum_basis(I, {f}, order);
    if (!is_unit_result(basis))
        return std::nullopt;
    const Rational c = basis.front().poly.front().coef;
    Poly g = Poly::from_terms(I.vars(), basis.front().tags[0]).scaled(1 / c);
    g = I.normal_form(g);
    if (!I.member(f * g - Rational(1)))
        throw Error("internal error: inverse certificate failed verification");
    return g;
}

bool radical_member(const Poly& f, const Ideal& I)
{
    require_same_vars(f.vars(), I.vars(), "radical membership");
    if (f.is_zero())
        return true;
    const std::string w = I.vars()->fresh_name("w");
    auto ext = I.vars()->extended({w});
    auto J = I.over(ext).plus({Poly::constant(ext, 1) - embed(f, ext) * Poly::variable(ext, w)});
    return J.is_unit();
}

bool ideals_equal(const Ideal& I, const Ideal& J)
{
    require_same_vars(I.vars(), J.vars(), "ideal comparison");
    const auto& a = I.groebner_basis();
    const auto& b = J.groebner_basis();
    return a == b;
}

std::optional<std::pair<Poly, Poly>> comaximal(const Ideal& I, const Ideal& J)
{
    require_same_vars(I.vars(), J.vars(), "comaximality");
    auto order = I.default_order();
    const auto& jg = J.generators();
    auto basis = tagged_sum_basis(I, jg, order);
    if (!is_unit_result(basis))
        return std::nullopt;
    const Rational c = basis.front().poly.front().coef;
    Poly b(I.vars());
    for (std::size_t k = 0; k < jg.size(); ++k)
        b += Poly::from_terms(I.vars(), basis.front().tags[k]) * jg[k];
    b = b.scaled(1 / c);
    Poly a = Poly::constant(I.vars(), 1) - b;
    if (!I.member(a) || !J.member(b))
        throw Error("internal error: comaximality certificate failed verification");
    return std::make_pair(a, b);
}

Ideal intersect(const Ideal& I, const Ideal& J)
{
    require_same_vars(I.vars(), J.vars(), "intersection");
    const std::string s = I.vars()->fresh_name("s");
    auto ext = I.vars()->extended({s});
    Poly sv = Poly::variable(ext, s);
    Poly one_minus = Poly::constant(ext, 1) - sv;
    std::vector<Poly> gens;
    for (const auto& g : I.generators())
        gens.push_back(sv * embed(g, ext));
    for (const auto& g : J.generators())
        gens.push_back(one_minus * embed(g, ext));
    return eliminate_to(Ideal(ext, std::move(gens)), {s});
}

std::optional<std::vector<Poly>> lift(const Poly& p, const Ideal& I)
{
    require_same_vars(p.vars(), I.vars(), "lift");
    const auto& gens = I.generators();
    const std::size_t n = gens.size();
    if (p.is_zero())
        return std::vector<Poly>(n, Poly(I.vars()));
    auto order = I.default_order();
    std::vector<TaggedPoly> input;
    for (std::size_t k = 0; k < n; ++k) {
        TaggedPoly t{sorted_terms(gens[k], order), std::vector<TermList>(n)};
        t.tags[k] = TermList{Term{Monomial{}, Rational(1)}};
        input.push_back(std::move(t));
    }
    auto basis = buchberger(std::move(input), order);
    std::vector<TermList> polys;
    for (const auto& b : basis)
        polys.push_back(b.poly);
    auto red = reduce(sorted_terms(p, order), polys, order, true);
    if (!red.remainder.empty())
        return std::nullopt;
    std::vector<Poly> cof(n, Poly(I.vars()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
        if (red.quotients[b].empty())
            continue;
        Poly q = Poly::from_terms(I.vars(), red.quotients[b]);
        for (std::size_t k = 0; k < n; ++k)
            if (!basis[b].tags[k].empty())
                cof[k] += q * Poly::from_terms(I.vars(), basis[b].tags[k]);
    }
    Poly check(I.vars());
    for (std::size_t k = 0; k < n; ++k)
        check += cof[k] * gens[k];
    if (check != p)
        throw Error("internal error: lift certificate failed verification");
    return cof;
}

std::optional<Poly> divide_mod(const Poly& num, const Poly& d, const Ideal& I)
{
    require_same_vars(num.vars(), I.vars(), "division");
    require_same_vars(d.vars(), I.vars(), "division");
    if (I.member(num))
        return Poly(I.vars());
    auto order = I.default_order();
    auto basis = tagged_sum_basis(I, {d}, order);
    std::vector<TermList> polys;
    for (const auto& b : basis)
        polys.push_back(b.poly);
    auto red = reduce(sorted_terms(num, order), polys, order, true);
    if (!red.remainder.empty())
        return std::nullopt;
    Poly q(I.vars());
    for (std::size_t b = 0; b < basis.size(); ++b)
        if (!red.quotients[b].empty() && !basis[b].tags[0].empty())
            q += Poly::from_terms(I.vars(), red.quotients[b]) * Poly::from_terms(I.vars(), basis[b].tags[0]);
    q = I.normal_form(q);
    if (!I.member(num - q * d))
        throw Error("internal error: division certificate failed verification");
    return q;
}

bool member_localized(const Poly& p, const Ideal& I, const Poly& f)
{
    return saturate(I, f).member(p);
}

}  // namespace lndkit
