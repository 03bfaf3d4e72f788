#include "lndkit/scheme.hpp"

#include "lndkit/errors.hpp"
#include "lndkit/parse.hpp"

#include <algorithm>
#include <set>

namespace lndkit {

namespace {

std::vector<Poly> ideal_generators(const VarTablePtr& vars, const std::vector<Poly>& relations,
                                   const std::vector<Localizer>& localizers, const std::optional<RootsOfUnity>& roots)
{
    std::vector<Poly> gens = relations;
    for (const auto& l : localizers)
        gens.push_back(Poly::variable(vars, l.partner) * l.element - Rational(1));
    if (roots)
        gens.push_back(cyclotomic(roots->order, vars, roots->symbol));
    return gens;
}

}  // namespace

Scheme::Scheme(std::string name, VarTablePtr vars, std::vector<Poly> relations, std::vector<Localizer> localizers,
               std::optional<RootsOfUnity> roots)
    : name_(std::move(name)), vars_(std::move(vars)), relations_(std::move(relations)),
      localizers_(std::move(localizers)), roots_(std::move(roots))
{
    for (const auto& r : relations_)
        require_same_vars(r.vars(), vars_, "scheme relations");
    for (const auto& l : localizers_) {
        require_same_vars(l.element.vars(), vars_, "inverted element");
        if (l.element.involves(vars_->index(l.partner)))
            throw InvalidArgument("an inverted element may not involve its own partner variable");
    }
    if (roots_) {
        if (roots_->order == 0)
            throw InvalidArgument("root of unity order must be positive");
        vars_->index(roots_->symbol);
    }
    ideal_ = Ideal(vars_, ideal_generators(vars_, relations_, localizers_, roots_));
}

std::optional<std::size_t> Scheme::localizer_of(std::size_t var) const
{
    for (std::size_t k = 0; k < localizers_.size(); ++k)
        if (vars_->index(localizers_[k].partner) == var)
            return k;
    return std::nullopt;
}

Poly Scheme::inverse_of(std::string_view var) const
{
    const auto idx = vars_->index(var);
    for (const auto& l : localizers_)
        if (l.element.size() == 1 && l.element.terms().front().coef == 1 && l.element.total_degree() == 1 &&
            l.element.involves(idx))
            return Poly::variable(vars_, l.partner);
    throw InvalidArgument("variable '" + std::string(var) + "' is not inverted in " + name_);
}

Poly Scheme::parse(std::string_view text) const
{
    return parse_poly(text, vars_);
}

Scheme Scheme::localized(const Poly& f, const std::string& partner_hint, std::string name) const
{
    require_same_vars(f.vars(), vars_, "localization");
    const std::string partner = vars_->fresh_name(partner_hint);
    auto ext = vars_->extended({partner});
    std::vector<Poly> rels;
    for (const auto& r : relations_)
        rels.push_back(embed(r, ext));
    std::vector<Localizer> locs;
    for (const auto& l : localizers_)
        locs.push_back(Localizer{l.partner, embed(l.element, ext)});
    locs.push_back(Localizer{partner, embed(f, ext)});
    return Scheme(std::move(name), ext, std::move(rels), std::move(locs), roots_);
}

Scheme Scheme::with_relations(const std::vector<Poly>& extra, std::string name) const
{
    auto rels = relations_;
    for (const auto& e : extra) {
        require_same_vars(e.vars(), vars_, "extra relations");
        rels.push_back(e);
    }
    return Scheme(std::move(name), vars_, std::move(rels), localizers_, roots_);
}

VarTablePtr scheme_vars(const std::vector<std::string>& vars, const std::vector<std::string>& params,
                        const std::vector<std::string>& inverted, const std::optional<RootsOfUnity>& roots)
{
    std::vector<std::string> names = vars;
    std::vector<bool> flags(vars.size(), false);
    for (const auto& p : params) {
        names.push_back(p);
        flags.push_back(true);
    }
    for (const auto& x : inverted) {
        if (std::find(vars.begin(), vars.end(), x) == vars.end())
            throw InvalidArgument("inverted variable '" + x + "' is not a variable of the scheme");
        names.push_back(x + "_inv");
        flags.push_back(false);
    }
    if (roots && std::find(names.begin(), names.end(), roots->symbol) == names.end()) {
        names.push_back(roots->symbol);
        flags.push_back(true);
    }
    return VarTable::make(std::move(names), std::move(flags));
}

SchemePtr make_scheme(std::string name, const VarTablePtr& vars, std::vector<Poly> relations,
                      const std::vector<std::string>& inverted, std::optional<RootsOfUnity> roots)
{
    std::vector<Localizer> locs;
    for (const auto& x : inverted) {
        const std::string partner = x + "_inv";
        if (!vars->contains(partner))
            throw InvalidArgument("missing partner variable '" + partner + "'");
        locs.push_back(Localizer{partner, Poly::variable(vars, x)});
    }
    return std::make_shared<const Scheme>(std::move(name), vars, std::move(relations), std::move(locs),
                                          std::move(roots));
}

SchemePtr make_scheme(const SchemeSpec& spec)
{
    auto vars = scheme_vars(spec.vars, spec.params, spec.inverted, spec.roots);
    std::vector<Poly> rels;
    for (const auto& r : spec.relations)
        rels.push_back(parse_poly(r, vars));
    return make_scheme(spec.name, vars, std::move(rels), spec.inverted, spec.roots);
}

Poly cyclotomic(unsigned m, const VarTablePtr& vars, std::string_view var)
{
    if (m == 0)
        throw InvalidArgument("cyclotomic polynomial of order 0");
    Poly e = Poly::variable(vars, var);
    Poly p = e.pow(m) - Rational(1);
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0)
            continue;
        auto q = divide_exact(p, cyclotomic(d, vars, var));
        if (!q)
            throw Error("internal error: cyclotomic division failed");
        p = *q;
    }
    return p;
}

namespace {

Poly determinant(const std::vector<std::vector<Poly>>& m, const VarTablePtr& vars)
{
    const std::size_t n = m.size();
    if (n == 0)
        return Poly::constant(vars, 1);
    if (n == 1)
        return m[0][0];
    if (n == 2)
        return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Poly det(vars);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero())
            continue;
        std::vector<std::vector<Poly>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            sub.push_back(std::move(row));
        }
        Poly term = m[0][c] * determinant(sub, vars);
        if (c % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    if (k > n)
        return;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Report smoothness_check(const Scheme& X, std::optional<std::size_t> codimension)
{
    return run_check("smooth(" + X.name() + ")", [&](Report& r) {
        const auto& gens = X.ideal().generators();
        const std::size_t c = gens.size();
        if (codimension && *codimension != c)
            throw InvalidArgument("declared codimension " + std::to_string(*codimension) +
                                  " does not match the presentation (" + std::to_string(c) + " equations)");
        const auto& vars = X.vars();
        const std::size_t n = vars->size();
        std::vector<std::vector<Poly>> jac(c, std::vector<Poly>(n));
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < n; ++j)
                jac[i][j] = partial_derivative(gens[i], j);
        std::vector<std::size_t> live;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < c; ++i)
                if (!jac[i][j].is_zero()) {
                    live.push_back(j);
                    break;
                }
        std::vector<Poly> minors;
        for_each_subset(live.size(), c, [&](const std::vector<std::size_t>& cols) {
            std::vector<std::vector<Poly>> m(c);
            for (std::size_t i = 0; i < c; ++i)
                for (auto k : cols)
                    m[i].push_back(jac[i][live[k]]);
            Poly d = X.normal_form(determinant(m, vars));
            if (!d.is_zero())
                minors.push_back(d);
        });
        r.witness("equations", std::to_string(c));
        r.witness("nonzero_minors", std::to_string(minors.size()));
        Ideal M(vars, minors);
        auto cert = comaximal(X.ideal(), M);
        if (cert) {
            r.witness("minor_combination", cert->second);
            r.message = "1 = minor_combination modulo the ideal";
        }
        else {
            Ideal singular = X.ideal().plus(M);
            const auto& basis = singular.groebner_basis();
            std::string s;
            for (std::size_t i = 0; i < basis.size() && i < 6; ++i)
                s += (i ? ", " : "") + basis[i].to_string();
            if (basis.size() > 6)
                s += ", ...";
            r.fail("the Jacobian minors and the ideal have a common zero", "singular_locus", "(" + s + ")");
        }
    });
}

Poly Morphism::pullback(const Poly& g) const
{
    return substitute(g, images, source->vars());
}

Poly Morphism::image(std::string_view target_var) const
{
    return images.at(target->vars()->index(target_var));
}

Morphism make_morphism(std::string name, SchemePtr source, SchemePtr target, const std::map<std::string, Poly>& images)
{
    Morphism f;
    f.name = std::move(name);
    f.source = std::move(source);
    f.target = std::move(target);
    const auto& tv = *f.target->vars();
    const auto& sv = f.source->vars();
    for (const auto& [n, p] : images) {
        if (!tv.contains(n))
            throw UnknownVariable(n);
        require_same_vars(p.vars(), sv, "morphism images");
    }
    f.images.assign(tv.size(), Poly(sv));
    std::vector<bool> pending(tv.size(), false);
    for (std::size_t i = 0; i < tv.size(); ++i) {
        auto it = images.find(tv.name(i));
        if (it != images.end())
            f.images[i] = it->second;
        else if (f.target->is_partner(i))
            pending[i] = true;
        else if ((tv.is_param(i)) && sv->contains(tv.name(i)))
            f.images[i] = Poly::variable(sv, tv.name(i));
        else
            throw InvalidArgument("morphism " + f.name + " gives no image for '" + tv.name(i) + "'");
    }
    f.certificate = run_check("well_defined(" + f.name + ")", [&](Report& r) {
        for (std::size_t i = 0; i < tv.size(); ++i) {
            if (!pending[i])
                continue;
            const auto& loc = f.target->localizers()[*f.target->localizer_of(i)];
            Poly elem = f.pullback(loc.element);
            auto inv = is_unit_mod(elem, f.source->ideal());
            if (!inv) {
                r.fail("the image of an inverted element is not a unit", "element", loc.element.to_string() + " -> " +
                                                                                      elem.to_string());
                continue;
            }
            f.images[i] = *inv;
            r.witness(tv.name(i), *inv);
        }
        if (r.status == Status::Fail)
            return;
        for (const auto& g : f.target->ideal().generators()) {
            Poly nf = f.source->normal_form(f.pullback(g));
            if (!nf.is_zero()) {
                r.fail("a relation of the target does not pull back into the source ideal", "generator", g);
                r.witness("normal_form", nf);
                return;
            }
        }
        r.message = "every target relation pulls back into the source ideal";
    });
    f.certified = f.certificate.passed();
    return f;
}

Morphism make_morphism(std::string name, SchemePtr source, SchemePtr target,
                       const std::map<std::string, std::string>& images)
{
    std::map<std::string, Poly> parsed;
    for (const auto& [n, text] : images)
        parsed.emplace(n, source->parse(text));
    return make_morphism(std::move(name), std::move(source), std::move(target), parsed);
}

Morphism identity_morphism(const SchemePtr& X)
{
    std::map<std::string, Poly> images;
    for (const auto& n : X->vars()->names())
        images.emplace(n, X->var(n));
    return make_morphism("id(" + X->name() + ")", X, X, images);
}

Morphism compose(const Morphism& f, const Morphism& g)
{
    if (!same_vars(g.target->vars(), f.source->vars()))
        throw InvalidArgument("cannot compose " + f.name + " after " + g.name + ": scheme mismatch");
    std::map<std::string, Poly> images;
    const auto& tv = *f.target->vars();
    for (std::size_t i = 0; i < tv.size(); ++i)
        images.emplace(tv.name(i), g.pullback(f.images[i]));
    auto h = make_morphism(f.name + "*" + g.name, g.source, f.target, images);
    return h;
}

namespace {

void check_identity(Report& r, const Morphism& composite, const std::string& label)
{
    const auto& X = *composite.source;
    for (std::size_t i = 0; i < X.vars()->size(); ++i) {
        Poly diff = X.normal_form(composite.images[i] - Poly::variable(X.vars(), i));
        if (!diff.is_zero()) {
            r.fail(label + " is not the identity", "generator", X.vars()->name(i));
            r.witness("difference", diff);
            return;
        }
    }
}

}  // namespace

Report well_defined(const Morphism& f)
{
    Report r = f.certificate;
    r.check = "well_defined(" + f.name + ")";
    if (!f.certified && r.status == Status::Pass)
        r.fail("the morphism is not certified", "morphism", f.name);
    return r;
}

Report is_isomorphism(const Morphism& f, const Morphism& g)
{
    return run_check("isomorphism(" + f.name + ", " + g.name + ")", [&](Report& r) {
        if (!same_vars(f.source->vars(), g.target->vars()) || !same_vars(f.target->vars(), g.source->vars()))
            throw InvalidArgument("the morphisms are not candidate inverses (scheme mismatch)");
        r.step(well_defined(f));
        r.step(well_defined(g));
        if (r.status != Status::Pass)
            return;
        check_identity(r, compose(g, f), "the composite on " + f.source->name());
        check_identity(r, compose(f, g), "the composite on " + g.source->name());
    });
}

FiberProduct fiber_product(const Morphism& f, const Morphism& g, std::string name)
{
    if (!same_vars(f.target->vars(), g.target->vars()))
        throw InvalidArgument("fiber product needs morphisms to the same base");
    const auto& X = *f.source;
    const auto& Y = *g.source;
    FiberProduct out;
    std::vector<std::string> names = X.vars()->names();
    std::vector<bool> flags = X.vars()->param_flags();
    std::set<std::string> used(names.begin(), names.end());
    std::vector<std::string> ynames;
    for (std::size_t i = 0; i < Y.vars()->size(); ++i) {
        std::string n = Y.vars()->name(i);
        if (used.count(n)) {
            std::string base = n + "_r";
            n = base;
            for (int k = 1; used.count(n); ++k)
                n = base + "_" + std::to_string(k);
            out.renamed[Y.vars()->name(i)] = n;
        }
        used.insert(n);
        ynames.push_back(n);
        names.push_back(n);
        flags.push_back(Y.vars()->is_param(i));
    }
    for (const auto& n : Y.vars()->names())
        if (!out.renamed.count(n))
            out.renamed[n] = n;
    auto vars = VarTable::make(names, flags);
    std::vector<Poly> ymap;
    for (const auto& n : ynames)
        ymap.push_back(Poly::variable(vars, n));
    auto from_y = [&](const Poly& p) { return substitute(p, ymap, vars); };

    std::vector<Poly> rels;
    for (const auto& r : X.relations())
        rels.push_back(embed(r, vars));
    for (const auto& r : Y.relations())
        rels.push_back(from_y(r));
    std::vector<Localizer> locs;
    for (const auto& l : X.localizers())
        locs.push_back(Localizer{l.partner, embed(l.element, vars)});
    for (const auto& l : Y.localizers())
        locs.push_back(Localizer{out.renamed.at(l.partner), from_y(l.element)});
    std::optional<RootsOfUnity> roots = X.roots();
    if (Y.roots()) {
        const std::string sym = out.renamed.at(Y.roots()->symbol);
        if (roots)
            rels.push_back(cyclotomic(Y.roots()->order, vars, sym));
        else
            roots = RootsOfUnity{sym, Y.roots()->order};
    }
    const auto& S = *f.target;
    for (std::size_t i = 0; i < S.vars()->size(); ++i) {
        if (S.is_partner(i))
            continue;
        Poly e = embed(f.images[i], vars) - from_y(g.images[i]);
        if (!e.is_zero())
            rels.push_back(e);
    }
    out.scheme = std::make_shared<const Scheme>(std::move(name), vars, std::move(rels), std::move(locs), roots);

    std::map<std::string, Poly> left, right;
    for (const auto& n : X.vars()->names())
        left.emplace(n, Poly::variable(vars, n));
    for (std::size_t i = 0; i < Y.vars()->size(); ++i)
        right.emplace(Y.vars()->name(i), ymap[i]);
    out.to_left = make_morphism("pr_left", out.scheme, f.source, left);
    out.to_right = make_morphism("pr_right", out.scheme, g.source, right);
    return out;
}

}  // namespace lndkit
