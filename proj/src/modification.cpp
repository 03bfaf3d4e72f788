#include "lndkit/modification.hpp"

#include "lndkit/errors.hpp"
#include "lndkit/parse.hpp"

namespace lndkit {

SchemePtr affine_modification(const ModificationData& d, std::string name)
{
    if (!d.base)
        throw InvalidArgument("modification without a base");
    const auto& B = *d.base;
    require_same_vars(d.divisor.vars(), B.vars(), "modification divisor");
    if (B.is_zero(d.divisor))
        throw InvalidArgument("the divisor vanishes on the base");
    Ideal J = B.ideal().plus(d.center_generators);
    if (!J.member(d.divisor))
        throw InvalidArgument("the divisor " + d.divisor.to_string() + " is not in the center");
    if (name.empty())
        name = B.name() + "[J/f]";

    std::vector<Poly> gens;
    for (const auto& g : d.center_generators) {
        require_same_vars(g.vars(), B.vars(), "modification center");
        if (!B.is_zero(g - d.divisor))
            gens.push_back(g);
    }
    if (gens.empty())
        return std::make_shared<const Scheme>(B.with_relations({}, name));

    std::vector<std::string> znames;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        std::string base_name = gens.size() == 1 ? "z" : "z" + std::to_string(k + 1);
        if (B.vars()->contains(base_name))
            throw InvalidArgument("variable '" + base_name + "' already exists in the base");
        znames.push_back(base_name);
    }
    auto ext = B.vars()->extended(znames);
    const Poly f = embed(d.divisor, ext);

    std::vector<Poly> direct;
    for (const auto& g : B.ideal().generators())
        direct.push_back(embed(g, ext));
    for (std::size_t k = 0; k < gens.size(); ++k)
        direct.push_back(f * Poly::variable(ext, znames[k]) - embed(gens[k], ext));
    Ideal saturated = saturate(Ideal(ext, direct), f);

    // Rees algebra modulo 1 - f*u.
    const std::string u = ext->fresh_name("upsilon");
    auto rees_vars = ext->extended({u});
    Poly uu = Poly::variable(rees_vars, u);
    std::vector<Poly> rees;
    for (const auto& g : B.ideal().generators())
        rees.push_back(embed(g, rees_vars));
    rees.push_back(Poly::constant(rees_vars, 1) - embed(f, rees_vars) * uu);
    for (std::size_t k = 0; k < gens.size(); ++k)
        rees.push_back(Poly::variable(rees_vars, znames[k]) - embed(gens[k], rees_vars) * uu);
    Ideal rees_ideal = eliminate_to(Ideal(rees_vars, rees), {u});
    if (!ideals_equal(rees_ideal, saturated))
        throw Error("internal error: saturation and Rees-algebra presentations disagree");

    std::vector<Poly> rels;
    for (const auto& r : B.relations())
        rels.push_back(embed(r, ext));
    Ideal base_ext(ext, rels);
    for (const auto& g : saturated.groebner_basis())
        if (!base_ext.member(g))
            rels.push_back(g);
    std::vector<Localizer> locs;
    for (const auto& l : B.localizers())
        locs.push_back(Localizer{l.partner, embed(l.element, ext)});
    return std::make_shared<const Scheme>(name, ext, std::move(rels), std::move(locs), B.roots());
}

Report verify_modification_is_Y(const FamilyParams& p)
{
    return run_check("modification_is_Y(" + p.label() + ")", [&](Report& r) {
        validate(p);
        auto base = make_scheme(SchemeSpec{"A3", {"x", "y", "t"}, p.params, {}, {}, {}});
        const auto& B = *base;
        Poly x = B.var("x"), y = B.var("y"), t = B.var("t");
        Poly f = x.pow(p.n);
        Poly g = y.pow(p.m) - t.pow(p.r) + x * B.parse(p.h);
        r.witness("center", Ideal(B.vars(), {f, g}).to_string());
        r.witness("divisor", f);
        auto M = affine_modification(ModificationData{base, {f, g}, f}, "A3[J/x^n]");
        r.witness("modification", M->ideal().to_string());

        auto Y = build_Y(p);
        std::map<std::string, Poly> rename;
        for (const auto& nme : M->vars()->names())
            rename.emplace(nme, Y.scheme->var(nme));
        std::vector<Poly> moved;
        for (const auto& gen : M->ideal().generators())
            moved.push_back(substitute(gen, rename, Y.scheme->vars()));
        r.require(ideals_equal(Ideal(Y.scheme->vars(), moved), Y.scheme->ideal()), "ideal equals the Y relation");

        Poly fM = embed(f, M->vars());
        r.require(ideals_equal(saturate(M->ideal(), fM), M->ideal()), "saturated by the divisor");

        auto Mf = std::make_shared<const Scheme>(M->localized(fM, "f_inv", "A3[J/x^n][1/f]"));
        auto Bf = std::make_shared<const Scheme>(B.localized(f, "f_inv", "A3[1/f]"));
        std::map<std::string, Poly> to_B, to_M;
        for (const auto& nme : B.vars()->names())
            if (nme != "f_inv")
                to_B.emplace(nme, Bf->var(nme));
        to_B.emplace("z", embed(g, Bf->vars()) * Bf->var("f_inv"));
        for (const auto& nme : B.vars()->names())
            to_M.emplace(nme, Mf->var(nme));
        r.step(is_isomorphism(make_morphism("A3[1/f]->A3[J/x^n][1/f]", Bf, Mf, to_B),
                              make_morphism("A3[J/x^n][1/f]->A3[1/f]", Mf, Bf, to_M)));
    });
}

}  // namespace lndkit
