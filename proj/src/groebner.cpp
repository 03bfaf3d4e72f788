#include "lndkit/groebner.hpp"

#include "lndkit/budget.hpp"
#include "lndkit/errors.hpp"

#include <algorithm>
#include <set>

namespace lndkit {

EngineStats& engine_stats()
{
    static EngineStats stats;
    return stats;
}

TermList sorted_terms(const Poly& p, const MonomialOrder& order)
{
    TermList t = p.terms();
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    return t;
}

namespace {

std::uint32_t support_mask(const Monomial& m)
{
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (m.exp[i])
            mask |= 1u << i;
    return mask;
}

// Merges a[from..] with scale * shift * b; the first term of the result is
// expected to cancel when called from reduction, but nothing relies on it.
TermList merge_tail(const TermList& a, std::size_t from, const Rational& scale, const Monomial& shift,
                    const TermList& b, const MonomialOrder& order)
{
    TermList out;
    out.reserve(a.size() - from + b.size());
    std::size_t i = from, j = 0;
    Monomial mb;
    while (i < a.size() || j < b.size()) {
        if (j < b.size())
            mb = b[j].mono * shift;
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

struct Element {
    TermList poly;
    std::vector<TermList> tags;
    Monomial lm;
    std::uint32_t mask = 0;
    bool active = true;
};

struct Pair {
    std::uint32_t degree;
    std::size_t i, j;
    bool operator<(const Pair& o) const
    {
        if (degree != o.degree)
            return degree < o.degree;
        if (i != o.i)
            return i < o.i;
        return j < o.j;
    }
};

class Engine {
public:
    Engine(const MonomialOrder& order, const GroebnerOptions& options) : order_(order), options_(options) {}

    std::vector<TaggedPoly> run(std::vector<TaggedPoly> input)
    {
        ntags_ = input.empty() ? 0 : input.front().tags.size();
        for (auto& in : input) {
            if (in.tags.size() != ntags_)
                throw InvalidArgument("inconsistent tag vectors");
            if (in.poly.empty())
                continue;
            TaggedPoly h = std::move(in);
            reduce_in_place(h);
            if (h.poly.empty())
                continue;
            if (insert(std::move(h)))
                return unit_result();
        }
        std::size_t processed = 0;
        const std::size_t cap = current_budget().max_pairs;
        while (!pairs_.empty()) {
            Pair p = *pairs_.begin();
            pairs_.erase(pairs_.begin());
            if (++processed > cap) {
                engine_stats().pairs_processed += processed;
                throw BudgetExceeded("Groebner basis computation exceeds the pair budget (" + std::to_string(cap) + ")");
            }
            TaggedPoly s = spoly(elems_[p.i], elems_[p.j]);
            reduce_in_place(s);
            if (s.poly.empty())
                continue;
            if (insert(std::move(s))) {
                engine_stats().pairs_processed += processed;
                return unit_result();
            }
        }
        engine_stats().pairs_processed += processed;
        return interreduce();
    }

private:
    const Element* find_reducer(const Monomial& m, std::uint32_t mask) const
    {
        for (const auto& e : elems_)
            if (e.active && (e.mask & ~mask) == 0 && divides(e.lm, m))
                return &e;
        return nullptr;
    }

    void reduce_in_place(TaggedPoly& h, const Element* skip = nullptr)
    {
        TermList result;
        TermList rem = std::move(h.poly);
        std::size_t pos = 0;
        while (pos < rem.size()) {
            const Term& lt = rem[pos];
            const std::uint32_t mask = support_mask(lt.mono);
            const Element* g = nullptr;
            for (const auto& e : elems_)
                if (&e != skip && e.active && (e.mask & ~mask) == 0 && divides(e.lm, lt.mono)) {
                    g = &e;
                    break;
                }
            if (!g) {
                result.push_back(lt);
                ++pos;
                continue;
            }
            Rational c = -lt.coef / g->poly.front().coef;
            Monomial shift = lt.mono / g->lm;
            for (std::size_t k = 0; k < ntags_; ++k)
                if (!g->tags[k].empty())
                    h.tags[k] = merge_tail(h.tags[k], 0, c, shift, g->tags[k], order_);
            rem = merge_tail(rem, pos, c, shift, g->poly, order_);
            pos = 0;
        }
        h.poly = std::move(result);
        if (options_.tag_reducer)
            for (auto& t : h.tags)
                options_.tag_reducer(t);
    }

    static void make_monic(TaggedPoly& h)
    {
        if (h.poly.empty() || h.poly.front().coef == 1)
            return;
        Rational inv = 1 / h.poly.front().coef;
        terms::scale(h.poly, inv);
        for (auto& t : h.tags)
            terms::scale(t, inv);
    }

    TaggedPoly spoly(const Element& a, const Element& b) const
    {
        Monomial l = lcm(a.lm, b.lm);
        Monomial sa = l / a.lm, sb = l / b.lm;
        Rational cb = -a.poly.front().coef / b.poly.front().coef;
        TaggedPoly s;
        s.poly = merge_tail(TermList{}, 0, Rational(1), sa, a.poly, order_);
        s.poly = merge_tail(s.poly, 0, cb, sb, b.poly, order_);
        s.tags.resize(ntags_);
        for (std::size_t k = 0; k < ntags_; ++k) {
            s.tags[k] = merge_tail(TermList{}, 0, Rational(1), sa, a.tags[k], order_);
            s.tags[k] = merge_tail(s.tags[k], 0, cb, sb, b.tags[k], order_);
        }
        return s;
    }

    // Adds a reduced nonzero element and updates the pair set (Gebauer-Moeller).
    // Returns true when the element is a constant and the run may stop.
    bool insert(TaggedPoly h)
    {
        make_monic(h);
        Element e;
        e.lm = h.poly.front().mono;
        e.mask = support_mask(e.lm);
        e.poly = std::move(h.poly);
        e.tags = std::move(h.tags);
        const std::size_t hi = elems_.size();
        if (e.lm.is_one() && options_.stop_at_unit) {
            elems_.push_back(std::move(e));
            unit_index_ = hi;
            return true;
        }
        const Monomial lh = e.lm;
        elems_.push_back(std::move(e));

        std::vector<std::size_t> candidates;
        for (std::size_t g = 0; g < hi; ++g)
            if (elems_[g].active)
                candidates.push_back(g);
        std::vector<Monomial> lcms(candidates.size());
        for (std::size_t k = 0; k < candidates.size(); ++k)
            lcms[k] = lcm(lh, elems_[candidates[k]].lm);

        // Chain criterion among the new pairs.
        std::vector<bool> keep(candidates.size(), true);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (coprime(lh, elems_[candidates[k]].lm))
                continue;
            for (std::size_t l = 0; l < candidates.size(); ++l) {
                if (l == k || !keep[l])
                    continue;
                if (divides(lcms[l], lcms[k]) && (lcms[l] != lcms[k] || l < k)) {
                    keep[k] = false;
                    break;
                }
            }
        }
        // Old pairs made redundant by the new element.
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            Monomial l = lcm(elems_[it->i].lm, elems_[it->j].lm);
            if (divides(lh, l) && lcm(elems_[it->i].lm, lh) != l && lcm(elems_[it->j].lm, lh) != l)
                it = pairs_.erase(it);
            else
                ++it;
        }
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (!keep[k] || coprime(lh, elems_[candidates[k]].lm))
                continue;
            pairs_.insert(Pair{lcms[k].degree, candidates[k], hi});
        }
        for (std::size_t g = 0; g < hi; ++g)
            if (elems_[g].active && divides(lh, elems_[g].lm))
                elems_[g].active = false;
        return false;
    }

    std::vector<TaggedPoly> unit_result()
    {
        TaggedPoly one;
        one.poly = std::move(elems_[unit_index_].poly);
        one.tags = std::move(elems_[unit_index_].tags);
        return {std::move(one)};
    }

    std::vector<TaggedPoly> interreduce()
    {
        std::vector<std::size_t> act;
        for (std::size_t g = 0; g < elems_.size(); ++g)
            if (elems_[g].active)
                act.push_back(g);
        std::sort(act.begin(), act.end(),
                  [&](std::size_t a, std::size_t b) { return order_.compare(elems_[a].lm, elems_[b].lm) < 0; });
        std::vector<TaggedPoly> out;
        out.reserve(act.size());
        for (auto g : act) {
            TaggedPoly h{elems_[g].poly, elems_[g].tags};
            reduce_in_place(h, &elems_[g]);
            make_monic(h);
            elems_[g].poly = h.poly;
            elems_[g].tags = h.tags;
            out.push_back(std::move(h));
        }
        return out;
    }

    const MonomialOrder& order_;
    const GroebnerOptions& options_;
    std::size_t ntags_ = 0;
    std::vector<Element> elems_;
    std::set<Pair> pairs_;
    std::size_t unit_index_ = 0;
};

}  // namespace

std::vector<TaggedPoly> buchberger(std::vector<TaggedPoly> input, const MonomialOrder& order,
                                   const GroebnerOptions& options)
{
    Engine engine(order, options);
    return engine.run(std::move(input));
}

Reduction reduce(const TermList& p, const std::vector<TermList>& basis, const MonomialOrder& order,
                 bool want_quotients)
{
    Reduction r;
    if (want_quotients)
        r.quotients.resize(basis.size());
    std::vector<std::uint32_t> masks(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k)
        masks[k] = basis[k].empty() ? 0 : support_mask(basis[k].front().mono);
    TermList rem = p;
    std::size_t pos = 0;
    while (pos < rem.size()) {
        const Term& lt = rem[pos];
        const std::uint32_t mask = support_mask(lt.mono);
        std::size_t g = basis.size();
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!basis[k].empty() && (masks[k] & ~mask) == 0 && divides(basis[k].front().mono, lt.mono)) {
                g = k;
                break;
            }
        if (g == basis.size()) {
            r.remainder.push_back(lt);
            ++pos;
            continue;
        }
        Rational c = lt.coef / basis[g].front().coef;
        Monomial shift = lt.mono / basis[g].front().mono;
        if (want_quotients)
            r.quotients[g].push_back(Term{shift, c});
        rem = merge_tail(rem, pos, -c, shift, basis[g], order);
        pos = 0;
    }
    return r;
}

TermList s_polynomial(const TermList& a, const TermList& b, const MonomialOrder& order)
{
    if (a.empty() || b.empty())
        return {};
    Monomial l = lcm(a.front().mono, b.front().mono);
    TermList s = merge_tail(TermList{}, 0, 1 / a.front().coef, l / a.front().mono, a, order);
    return merge_tail(s, 0, -1 / b.front().coef, l / b.front().mono, b, order);
}

bool is_groebner_basis(const std::vector<TermList>& basis, const MonomialOrder& order)
{
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!reduce(s_polynomial(basis[i], basis[j], order), basis, order).remainder.empty())
                return false;
    return true;
}

}  // namespace lndkit
