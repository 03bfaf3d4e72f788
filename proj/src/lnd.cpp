#include "lndkit/lnd.hpp"

#include "lndkit/budget.hpp"
#include "lndkit/errors.hpp"
#include "lndkit/linalg.hpp"

#include <algorithm>
#include <unordered_map>

namespace lndkit {

Poly Derivation::apply_raw(const Poly& p) const
{
    require_same_vars(p.vars(), scheme->vars(), "derivation argument");
    Poly out(scheme->vars());
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].is_zero() || !p.involves(i))
            continue;
        out += partial_derivative(p, i) * images[i];
    }
    return out;
}

Poly Derivation::apply(const Poly& p) const
{
    return scheme->normal_form(apply_raw(p));
}

Poly Derivation::image(std::string_view var) const
{
    return images.at(scheme->vars()->index(var));
}

namespace {

std::string join_polys(const std::vector<Poly>& ps)
{
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i)
        s += (i ? "; " : "") + ps[i].to_string();
    return s;
}

Report certify_derivation(const Derivation& d)
{
    return run_check("well_defined(" + d.name + ")", [&](Report& r) {
        const auto& X = *d.scheme;
        const auto& gens = X.ideal().generators();
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const Poly& g = gens[k];
            Poly dg = d.apply_raw(g);
            Poly nf = X.normal_form(dg);
            if (!nf.is_zero()) {
                r.fail("the derivation does not preserve the ideal", "generator", g);
                r.witness("normal_form_of_image", nf);
                return;
            }
            std::string label = "d(" + g.to_string() + ")";
            if (dg.is_zero()) {
                r.witness(label, "0");
                continue;
            }
            if (auto q = divide_exact(dg, g)) {
                r.witness(label, "(" + q->to_string() + ")*(" + g.to_string() + ")");
                continue;
            }
            Budget small = current_budget();
            small.max_pairs = std::min<std::size_t>(small.max_pairs, 5000);
            small.max_terms = std::min<std::size_t>(small.max_terms, 20000);
            try {
                BudgetScope scope(small);
                if (auto cof = lift(dg, X.ideal()))
                    r.witness(label, "cofactors over the ideal generators: " + join_polys(*cof));
            }
            catch (const BudgetExceeded&) {
                r.witness(label, "in the ideal (normal form 0)");
            }
        }
        r.message = "the image of every relation lies in the ideal";
    });
}

}  // namespace

Derivation make_derivation(std::string name, SchemePtr X, const std::map<std::string, Poly>& images,
                           bool missing_are_zero)
{
    Derivation d;
    d.name = std::move(name);
    d.scheme = std::move(X);
    const auto& vars = d.scheme->vars();
    for (const auto& [n, p] : images) {
        auto idx = vars->index(n);
        require_same_vars(p.vars(), vars, "derivation images");
        if (d.scheme->is_partner(idx))
            throw InvalidArgument("the image of '" + n + "' is determined by its inverted element and may not be given");
        if (vars->is_param(idx) && !p.is_zero())
            throw InvalidArgument("'" + n + "' is a parameter; its image must be 0");
    }
    d.images.assign(vars->size(), Poly(vars));
    for (std::size_t i = 0; i < vars->size(); ++i) {
        if (d.scheme->is_partner(i) || vars->is_param(i))
            continue;
        auto it = images.find(vars->name(i));
        if (it != images.end())
            d.images[i] = it->second;
        else if (!missing_are_zero)
            throw InvalidArgument("derivation " + d.name + " gives no image for '" + vars->name(i) + "'");
    }
    for (const auto& loc : d.scheme->localizers()) {
        Poly w = Poly::variable(vars, loc.partner);
        d.images[vars->index(loc.partner)] = d.scheme->normal_form(-(w * w) * d.apply_raw(loc.element));
    }
    d.certificate = certify_derivation(d);
    d.certified = d.certificate.passed();
    return d;
}

Derivation make_derivation(std::string name, SchemePtr X, const std::map<std::string, std::string>& images,
                           bool missing_are_zero)
{
    std::map<std::string, Poly> parsed;
    for (const auto& [n, text] : images)
        parsed.emplace(n, X->parse(text));
    return make_derivation(std::move(name), std::move(X), parsed, missing_are_zero);
}

Derivation scaled(const Derivation& d, const Rational& c, std::string name)
{
    Derivation s = d;
    s.name = std::move(name);
    for (auto& p : s.images)
        p = p.scaled(c);
    s.certificate = certify_derivation(s);
    s.certified = s.certificate.passed();
    return s;
}

std::optional<unsigned> nilpotency_degree(const Derivation& d, const Poly& p, unsigned cap)
{
    if (cap == 0)
        throw InvalidArgument("nilpotency cap must be at least 1");
    Poly q = d.scheme->normal_form(p);
    for (unsigned k = 0; k <= cap; ++k) {
        if (q.is_zero())
            return k;
        if (k < cap)
            q = d.apply(q);
    }
    return std::nullopt;
}

Report is_locally_nilpotent(const Derivation& d, unsigned cap)
{
    return run_check("lnd(" + d.name + ")", [&](Report& r) {
        r.step(d.certificate);
        const auto& vars = *d.scheme->vars();
        unsigned max_deg = 0;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto deg = nilpotency_degree(d, Poly::variable(d.scheme->vars(), i), cap);
            if (!deg) {
                r.fail("a generator is not annihilated within the cap", "generator", vars.name(i));
                r.witness("cap", std::to_string(cap));
                return;
            }
            r.witness("degree(" + vars.name(i) + ")", std::to_string(*deg));
            max_deg = std::max(max_deg, *deg);
        }
        r.witness("max_degree", std::to_string(max_deg));
    });
}

namespace {

SchemePtr extend_scheme(const Scheme& X, const std::vector<std::string>& extra, const std::string& name)
{
    auto ext = X.vars()->extended(extra);
    std::vector<Poly> rels;
    for (const auto& r : X.relations())
        rels.push_back(embed(r, ext));
    std::vector<Localizer> locs;
    for (const auto& l : X.localizers())
        locs.push_back(Localizer{l.partner, embed(l.element, ext)});
    return std::make_shared<const Scheme>(name, ext, std::move(rels), std::move(locs), X.roots());
}

}  // namespace

GaAction exp_action(const Derivation& d, unsigned cap)
{
    const auto& X = *d.scheme;
    const std::string T = X.vars()->fresh_name("T");
    auto E = extend_scheme(X, {T}, X.name() + "*A1");
    const auto& ev = E->vars();
    Poly t = Poly::variable(ev, T);
    std::map<std::string, Poly> images;
    for (std::size_t i = 0; i < X.vars()->size(); ++i) {
        Poly q = X.normal_form(Poly::variable(X.vars(), i));
        Poly series(ev);
        Rational factorial = 1;
        unsigned k = 0;
        while (!q.is_zero()) {
            if (k > cap)
                throw Error("derivation " + d.name + " is not nilpotent on '" + X.vars()->name(i) + "' within the cap");
            series += embed(q, ev) * t.pow(k) * (1 / factorial);
            q = d.apply(q);
            ++k;
            factorial *= k;
        }
        images.emplace(X.vars()->name(i), E->normal_form(series));
    }
    GaAction a;
    a.derivation = d;
    a.time_var = T;
    a.coaction = make_morphism("exp(" + d.name + ")", E, d.scheme, images);
    return a;
}

Report check_action_axioms(const GaAction& a)
{
    return run_check("action_axioms(" + a.coaction.name + ")", [&](Report& r) {
        const auto& X = *a.coaction.target;
        const auto& E = *a.coaction.source;
        const auto& ev = E.vars();
        const std::size_t n = X.vars()->size();

        // T = 0 gives the identity.
        std::map<std::string, Poly> at_zero{{a.time_var, Poly(ev)}};
        for (std::size_t i = 0; i < n; ++i) {
            Poly diff = E.normal_form(substitute(a.coaction.images[i], at_zero, ev) - Poly::variable(ev, i));
            if (!diff.is_zero()) {
                r.fail("the action at time 0 is not the identity", "generator", X.vars()->name(i));
                r.witness("difference", diff);
                return;
            }
        }
        // exp((S + T) d) = exp(S d) exp(T d).
        const std::string S = ev->fresh_name("S");
        auto E2 = extend_scheme(E, {S}, E.name() + "*A1");
        const auto& v2 = E2->vars();
        Poly s = Poly::variable(v2, S), t = Poly::variable(v2, a.time_var);
        std::map<std::string, Poly> shift{{a.time_var, s + t}};
        std::map<std::string, Poly> at_s{{a.time_var, s}};
        std::vector<Poly> inner(ev->size(), Poly(v2));
        for (std::size_t i = 0; i < n; ++i)
            inner[i] = substitute(a.coaction.images[i], at_s, v2);
        inner[ev->index(a.time_var)] = t;
        for (std::size_t i = 0; i < n; ++i) {
            Poly lhs = substitute(a.coaction.images[i], shift, v2);
            Poly rhs = substitute(a.coaction.images[i], inner, v2);
            Poly diff = E2->normal_form(lhs - rhs);
            if (!diff.is_zero()) {
                r.fail("acting with S and then T differs from acting with S + T", "generator", X.vars()->name(i));
                r.witness("difference", diff);
                return;
            }
        }
        r.message = "identity at time 0 and additivity in time hold on every generator";
    });
}

Report check_equivariant(const Morphism& phi, const Derivation& d_src, const Derivation& d_tgt)
{
    return run_check("equivariant(" + phi.name + ", " + d_src.name + ", " + d_tgt.name + ")", [&](Report& r) {
        if (!same_vars(d_src.scheme->vars(), phi.source->vars()) || !same_vars(d_tgt.scheme->vars(), phi.target->vars()))
            throw InvalidArgument("derivations do not live on the source and target of the morphism");
        r.step(well_defined(phi));
        if (r.status != Status::Pass)
            return;
        const auto& tv = *phi.target->vars();
        for (std::size_t i = 0; i < tv.size(); ++i) {
            Poly lhs = d_src.apply(phi.images[i]);
            Poly rhs = phi.source->normal_form(phi.pullback(d_tgt.images[i]));
            Poly diff = phi.source->normal_form(lhs - rhs);
            if (!diff.is_zero()) {
                r.fail("the morphism does not intertwine the derivations", "generator", tv.name(i));
                r.witness("difference", diff);
                return;
            }
        }
        r.message = "the derivations agree on the pullback of every target generator";
    });
}

Ideal fixed_locus(const Derivation& d)
{
    return d.scheme->ideal().plus(d.images);
}

Report compare_radical(const Ideal& I, const Ideal& J, const std::string& name)
{
    return run_check(name, [&](Report& r) {
        for (const auto& g : J.generators())
            if (!radical_member(g, I)) {
                r.fail("a generator of the second ideal is not in the radical of the first", "generator", g);
                return;
            }
        for (const auto& g : I.generators())
            if (!radical_member(g, J)) {
                r.fail("a generator of the first ideal is not in the radical of the second", "generator", g);
                return;
            }
        r.message = "the ideals have the same radical";
    });
}

bool is_invariant(const Derivation& d, const Poly& p)
{
    return d.apply(p).is_zero();
}

namespace {

void enumerate(std::size_t n, unsigned bound, Grading grading, std::size_t var, Monomial& cur,
               std::vector<Monomial>& out)
{
    if (var == n) {
        out.push_back(cur);
        return;
    }
    unsigned limit = grading == Grading::Box ? bound : bound - cur.degree;
    for (unsigned e = 0; e <= limit; ++e) {
        cur.set(var, e);
        enumerate(n, bound, grading, var + 1, cur, out);
    }
    cur.set(var, 0);
}

Integer count_monomials(std::size_t n, unsigned bound, Grading grading)
{
    if (grading == Grading::Box) {
        Integer c = 1;
        for (std::size_t i = 0; i < n; ++i)
            c *= bound + 1;
        return c;
    }
    return binomial(static_cast<unsigned>(n) + bound, bound);
}

}  // namespace

std::vector<Poly> kernel_search(const Derivation& d, unsigned bound, Grading grading)
{
    if (bound < 1)
        throw InvalidArgument("degree bound must be at least 1");
    const auto& X = *d.scheme;
    const auto& vars = X.vars();
    const std::size_t n = vars->size();
    const Integer count = count_monomials(n, bound, grading);
    if (count > Integer(static_cast<unsigned long>(current_budget().max_monomials)))
        throw BudgetExceeded("kernel search needs " + count.get_str() + " monomials, over the monomial budget (" +
                             std::to_string(current_budget().max_monomials) + ")");
    std::vector<Monomial> leads;
    for (const auto& g : X.ideal().groebner_basis())
        leads.push_back(g.terms().front().mono);
    std::vector<Monomial> all;
    Monomial cur;
    enumerate(n, bound, grading, 0, cur, all);
    std::vector<Monomial> cols;
    for (const auto& m : all)
        if (std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return divides(l, m); }))
            cols.push_back(m);
    const auto order = MonomialOrder::grevlex(n);
    std::sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) < 0; });

    LinearSystem sys;
    sys.ncols = cols.size();
    std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
    std::vector<SparseVec> rows;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Poly img = d.apply(Poly::monomial(vars, cols[c]));
        for (const auto& t : img.terms()) {
            auto [it, inserted] = row_of.emplace(t.mono, rows.size());
            if (inserted)
                rows.emplace_back();
            rows[it->second].emplace_back(c, t.coef);
        }
    }
    for (auto& row : rows)
        sys.add_row(std::move(row));
    std::vector<Poly> out;
    for (const auto& vec : nullspace(sys)) {
        TermList terms;
        for (const auto& [c, v] : vec)
            terms.push_back(Term{cols[c], v});
        out.push_back(Poly::from_terms(vars, std::move(terms)));
    }
    return out;
}

bool span_contains(const std::vector<Poly>& basis, const Poly& p, const Ideal& I)
{
    LinearSystem sys;
    sys.ncols = basis.size();
    std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
    std::vector<SparseVec> rows;
    std::vector<Rational> rhs;
    auto add = [&](const Poly& q, std::optional<std::size_t> col) {
        const Poly nf = I.normal_form(q);
        for (const auto& t : nf.terms()) {
            auto [it, inserted] = row_of.emplace(t.mono, rows.size());
            if (inserted) {
                rows.emplace_back();
                rhs.emplace_back(0);
            }
            if (col)
                rows[it->second].emplace_back(*col, t.coef);
            else
                rhs[it->second] = t.coef;
        }
    };
    for (std::size_t c = 0; c < basis.size(); ++c)
        add(basis[c], c);
    add(p, std::nullopt);
    for (std::size_t k = 0; k < rows.size(); ++k)
        sys.add_row(std::move(rows[k]), rhs[k]);
    return solve(sys).has_value();
}

Poly invariant_division(const Derivation& d, const Poly& numerator, const Poly& divisor)
{
    if (!is_invariant(d, numerator))
        throw InvalidArgument("the numerator is not invariant");
    if (!is_invariant(d, divisor))
        throw InvalidArgument("the divisor is not invariant");
    auto q = divide_mod(numerator, divisor, d.scheme->ideal());
    if (!q)
        throw Error("not divisible: " + numerator.to_string() + " is not a multiple of " + divisor.to_string());
    return d.scheme->normal_form(*q);
}

}  // namespace lndkit
