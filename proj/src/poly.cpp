#include "lndkit/poly.hpp"

#include "lndkit/budget.hpp"
#include "lndkit/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace lndkit {

std::string to_string(const Rational& q)
{
    return q.get_str();
}

namespace terms {

void sort_and_combine(TermList& t, const MonomialOrder& order)
{
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    TermList out;
    out.reserve(t.size());
    for (auto& term : t) {
        if (!out.empty() && out.back().mono == term.mono)
            out.back().coef += term.coef;
        else {
            if (!out.empty() && sgn(out.back().coef) == 0)
                out.pop_back();
            out.push_back(std::move(term));
        }
    }
    if (!out.empty() && sgn(out.back().coef) == 0)
        out.pop_back();
    t = std::move(out);
}

TermList add_scaled(const TermList& a, const Rational& scale, const Monomial& shift, const TermList& b,
                    const MonomialOrder& order)
{
    TermList out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    const bool unit_shift = shift.is_one();
    Monomial mb;
    while (i < a.size() || j < b.size()) {
        if (j < b.size())
            mb = unit_shift ? b[j].mono : b[j].mono * shift;
        int c;
        if (i >= a.size())
            c = -1;
        else if (j >= b.size())
            c = 1;
        else
            c = order.compare(a[i].mono, mb);
        if (c > 0) {
            out.push_back(a[i++]);
        }
        else if (c < 0) {
            out.push_back(Term{mb, scale * b[j].coef});
            ++j;
        }
        else {
            Rational s = a[i].coef + scale * b[j].coef;
            if (sgn(s) != 0)
                out.push_back(Term{mb, std::move(s)});
            ++i;
            ++j;
        }
    }
    if (out.size() > current_budget().max_terms)
        throw BudgetExceeded("polynomial exceeds the term budget (" + std::to_string(current_budget().max_terms) + ")");
    return out;
}

TermList add(const TermList& a, const TermList& b, const MonomialOrder& order)
{
    return add_scaled(a, Rational(1), Monomial{}, b, order);
}

TermList multiply(const TermList& a, const TermList& b, const MonomialOrder& order)
{
    if (a.empty() || b.empty())
        return {};
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& ta : a)
        for (const auto& tb : b)
            acc[ta.mono * tb.mono] += ta.coef * tb.coef;
    if (acc.size() > current_budget().max_terms)
        throw BudgetExceeded("polynomial exceeds the term budget (" + std::to_string(current_budget().max_terms) + ")");
    TermList out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (sgn(c) != 0)
            out.push_back(Term{m, std::move(c)});
    std::sort(out.begin(), out.end(), [&](const Term& x, const Term& y) { return order.compare(x.mono, y.mono) > 0; });
    return out;
}

void scale(TermList& a, const Rational& c)
{
    if (sgn(c) == 0) {
        a.clear();
        return;
    }
    for (auto& t : a)
        t.coef *= c;
}

}  // namespace terms

namespace {

const MonomialOrder& canonical_order()
{
    static const MonomialOrder order = MonomialOrder::grevlex(kMaxVars);
    return order;
}

}  // namespace

Poly Poly::constant(VarTablePtr vars, const Rational& c)
{
    Poly p(std::move(vars));
    if (sgn(c) != 0)
        p.terms_.push_back(Term{Monomial{}, c});
    return p;
}

Poly Poly::variable(VarTablePtr vars, std::string_view name)
{
    auto i = vars->index(name);
    return variable(std::move(vars), i);
}

Poly Poly::variable(VarTablePtr vars, std::size_t index)
{
    if (index >= vars->size())
        throw InvalidArgument("variable index out of range");
    Monomial m;
    m.set(index, 1);
    return monomial(std::move(vars), m);
}

Poly Poly::monomial(VarTablePtr vars, const Monomial& m, const Rational& c)
{
    Poly p(std::move(vars));
    if (sgn(c) != 0)
        p.terms_.push_back(Term{m, c});
    return p;
}

Poly Poly::from_terms(VarTablePtr vars, TermList t)
{
    Poly p(std::move(vars));
    terms::sort_and_combine(t, canonical_order());
    p.terms_ = std::move(t);
    return p;
}

Rational Poly::constant_term() const
{
    if (!terms_.empty() && terms_.back().mono.is_one())
        return terms_.back().coef;
    return 0;
}

unsigned Poly::total_degree() const
{
    // canonical order is degree compatible
    return terms_.empty() ? 0 : terms_.front().mono.degree;
}

unsigned Poly::degree_in(std::size_t var) const
{
    unsigned d = 0;
    for (const auto& t : terms_)
        d = std::max<unsigned>(d, t.mono[var]);
    return d;
}

void Poly::require_compatible(const Poly& o, const char* op) const
{
    require_same_vars(vars_, o.vars_, op);
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& t : r.terms_)
        t.coef = -t.coef;
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    require_compatible(o, "addition");
    terms_ = terms::add(terms_, o.terms_, canonical_order());
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    require_compatible(o, "subtraction");
    terms_ = terms::add_scaled(terms_, Rational(-1), Monomial{}, o.terms_, canonical_order());
    return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
    require_compatible(o, "multiplication");
    terms_ = terms::multiply(terms_, o.terms_, canonical_order());
    return *this;
}

Poly Poly::scaled(const Rational& c) const
{
    Poly r = *this;
    terms::scale(r.terms_, c);
    return r;
}

Poly Poly::pow(unsigned e) const
{
    Poly result = constant(vars_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1u)
            result *= base;
        e >>= 1u;
        if (e)
            base *= base;
    }
    return result;
}

Poly Poly::monic() const
{
    if (terms_.empty())
        return *this;
    return scaled(1 / Rational(terms_.front().coef));
}

bool operator==(const Poly& a, const Poly& b)
{
    if (!same_vars(a.vars_, b.vars_))
        return false;
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef)
            return false;
    return true;
}

std::string Poly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        const bool negative = sgn(t.coef) < 0;
        Rational mag = abs(t.coef);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < vars_->size(); ++i) {
            if (t.mono[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += vars_->name(i);
            if (t.mono[i] > 1)
                mono += "^" + std::to_string(t.mono[i]);
        }
        if (mono.empty()) {
            out += mag.get_str();
        }
        else if (mag == 1) {
            out += mono;
        }
        else if (mag.get_den() == 1) {
            out += mag.get_str() + "*" + mono;
        }
        else {
            out += "(" + mag.get_str() + ")*" + mono;
        }
    }
    return out;
}

Poly partial_derivative(const Poly& p, std::string_view var)
{
    return partial_derivative(p, p.vars()->index(var));
}

Poly partial_derivative(const Poly& p, std::size_t var)
{
    if (var >= p.vars()->size())
        throw InvalidArgument("variable index out of range");
    TermList out;
    for (const auto& t : p.terms()) {
        unsigned e = t.mono[var];
        if (e == 0)
            continue;
        Monomial m = t.mono;
        m.set(var, e - 1);
        out.push_back(Term{m, t.coef * e});
    }
    return Poly::from_terms(p.vars(), std::move(out));
}

Poly substitute(const Poly& p, const std::vector<Poly>& images, const VarTablePtr& target)
{
    const std::size_t n = p.vars()->size();
    if (images.size() != n)
        throw InvalidArgument("substitution needs one image per variable");
    for (const auto& img : images)
        require_same_vars(img.vars(), target, "substitution");

    // Cache powers of each image as they are requested.
    std::vector<std::vector<Poly>> powers(n);
    auto power = [&](std::size_t v, unsigned e) -> const Poly& {
        auto& cache = powers[v];
        if (cache.empty())
            cache.push_back(Poly::constant(target, 1));
        while (cache.size() <= e)
            cache.push_back(cache.back() * images[v]);
        return cache[e];
    };

    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    for (const auto& t : p.terms()) {
        Poly prod = Poly::constant(target, t.coef);
        for (std::size_t v = 0; v < n && !prod.is_zero(); ++v)
            if (t.mono[v] > 0)
                prod *= power(v, t.mono[v]);
        for (const auto& pt : prod.terms())
            acc[pt.mono] += pt.coef;
        if (acc.size() > current_budget().max_terms)
            throw BudgetExceeded("substitution exceeds the term budget");
    }
    TermList out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (sgn(c) != 0)
            out.push_back(Term{m, std::move(c)});
    return Poly::from_terms(target, std::move(out));
}

Poly substitute(const Poly& p, const std::map<std::string, Poly>& images, const VarTablePtr& target)
{
    const auto& vars = *p.vars();
    for (const auto& [name, img] : images)
        if (!vars.contains(name))
            throw UnknownVariable(name);
    std::vector<Poly> vec;
    vec.reserve(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = images.find(vars.name(i));
        if (it != images.end())
            vec.push_back(it->second);
        else if (p.degree_in(i) == 0)
            vec.push_back(Poly(target));  // unused; any value over target will do
        else
            vec.push_back(Poly::variable(target, vars.name(i)));
    }
    return substitute(p, vec, target);
}

Poly substitute(const Poly& p, const std::map<std::string, Poly>& images)
{
    if (images.empty())
        return p;
    const VarTablePtr& target = images.begin()->second.vars();
    return substitute(p, images, target);
}

Poly embed(const Poly& p, const VarTablePtr& target)
{
    if (same_vars(p.vars(), target))
        return Poly::from_terms(target, p.terms());
    const auto& src = *p.vars();
    std::vector<std::size_t> map(src.size(), 0);
    std::vector<bool> used(src.size(), false);
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < src.size(); ++i)
            if (t.mono[i] > 0)
                used[i] = true;
    for (std::size_t i = 0; i < src.size(); ++i)
        if (used[i])
            map[i] = target->index(src.name(i));
    TermList out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m;
        for (std::size_t i = 0; i < src.size(); ++i)
            if (t.mono[i] > 0)
                m.set(map[i], t.mono[i]);
        out.push_back(Term{m, t.coef});
    }
    return Poly::from_terms(target, std::move(out));
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b)
{
    require_same_vars(a.vars(), b.vars(), "exact division");
    if (b.is_zero())
        throw InvalidArgument("division by the zero polynomial");
    const auto& order = canonical_order();
    TermList rem = a.terms();
    TermList quot;
    const Term& lb = b.terms().front();
    while (!rem.empty()) {
        const Term& lr = rem.front();
        if (!divides(lb.mono, lr.mono))
            return std::nullopt;
        Monomial q = lr.mono / lb.mono;
        Rational c = lr.coef / lb.coef;
        quot.push_back(Term{q, c});
        rem = terms::add_scaled(rem, -c, q, b.terms(), order);
    }
    return Poly::from_terms(a.vars(), std::move(quot));
}

Integer binomial(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace lndkit
