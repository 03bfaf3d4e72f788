#include "lndkit/constructions.hpp"

#include "lndkit/budget.hpp"
#include "lndkit/errors.hpp"
#include "lndkit/linalg.hpp"
#include "lndkit/parse.hpp"

#include <algorithm>
#include <functional>

#include <numeric>

namespace lndkit {

namespace {

std::string mnr_label(unsigned m, unsigned n, unsigned r)
{
    return "m=" + std::to_string(m) + ",n=" + std::to_string(n) + ",r=" + std::to_string(r);
}

// Certified LND plus the exponential action axioms.
Report lnd_bundle(const Derivation& d)
{
    return run_check("lnd_certificate(" + d.name + ")", [&](Report& r) {
        r.step(is_locally_nilpotent(d));
        if (r.status != Status::Pass)
            return;
        r.step(check_action_axioms(exp_action(d)));
    });
}

Report fixed_point_free(const Derivation& d)
{
    return run_check("fixed_point_free(" + d.name + ")", [&](Report& r) {
        auto cert = comaximal(d.scheme->ideal(), Ideal(d.scheme->vars(), d.images));
        if (!cert) {
            r.fail("the fixed-point ideal is proper", "fixed_ideal", fixed_locus(d).to_string());
            return;
        }
        r.witness("combination_of_images", cert->second);
        r.message = "1 lies in the ideal generated by the relations and the images of the generators";
    });
}

SchemePtr laurent_scheme(const std::string& name, const std::vector<std::string>& vars,
                         const std::vector<std::string>& params, const std::vector<std::string>& inverted,
                         std::optional<RootsOfUnity> roots,
                         const std::function<std::vector<Poly>(const VarTablePtr&)>& relations)
{
    auto V = scheme_vars(vars, params, inverted, roots);
    return make_scheme(name, V, relations(V), inverted, roots);
}

std::map<std::string, Poly> same_names(const SchemePtr& source, const std::vector<std::string>& names)
{
    std::map<std::string, Poly> out;
    for (const auto& n : names)
        out.emplace(n, source->var(n));
    return out;
}

Poly eps_power(const Scheme& X, unsigned m, long long k)
{
    long long e = ((k % static_cast<long long>(m)) + m) % m;
    return X.var("eps").pow(static_cast<unsigned>(e));
}

// Product over j != i of (x * lambda_inv^r - eps^(r j)).
Poly other_surfaces(const Scheme& X, const std::string& xname, unsigned m, unsigned r, unsigned i)
{
    Poly f = X.constant(1);
    for (unsigned j = 0; j < m; ++j)
        if (j != i)
            f *= X.var(xname) * X.var("lambda_inv").pow(r) - eps_power(X, m, static_cast<long long>(r) * j);
    return X.normal_form(f);
}

}  // namespace

std::string FamilyParams::label() const
{
    return mnr_label(m, n, r) + ",h=" + h;
}

void validate(const FamilyParams& p)
{
    if (p.m == 0 || p.n == 0 || p.r == 0)
        throw InvalidArgument("m, n, r must be positive");
    if (std::gcd(p.m, p.r) != 1)
        throw InvalidArgument("m and r must be coprime (gcd(" + std::to_string(p.m) + "," + std::to_string(p.r) +
                              ") != 1)");
    if (p.n < 2)
        throw InvalidArgument("n must be at least 2");
    auto V = scheme_vars({"x", "y", "z", "t"}, p.params, {}, std::nullopt);
    Poly h = parse_poly(p.h, V);
    Poly h0 = substitute(h, {{"x", Poly(V)}, {"y", Poly(V)}, {"t", Poly(V)}}, V);
    if (h0.is_zero())
        throw InvalidArgument("h(0,0,0) must be nonzero");
}

XmFamily build_Xm(unsigned m)
{
    if (m == 0)
        throw InvalidArgument("m must be positive");
    auto X = laurent_scheme("X_" + std::to_string(m), {"x", "y", "u", "v"}, {}, {}, std::nullopt, [&](const VarTablePtr& V) {
        Poly x = Poly::variable(V, "x"), y = Poly::variable(V, "y"), u = Poly::variable(V, "u"),
             v = Poly::variable(V, "v");
        return std::vector<Poly>{x.pow(m) * v - y * u - Rational(1)};
    });
    XmFamily f;
    f.scheme = X;
    Poly x = X->var("x"), y = X->var("y"), v = X->var("v");
    f.derivation = make_derivation("d_" + std::to_string(m), X,
                                   std::map<std::string, Poly>{{"x", y},
                                                               {"y", X->constant(0)},
                                                               {"u", x.pow(m - 1) * v * Rational(m)},
                                                               {"v", X->constant(0)}});
    f.torsor = make_derivation("torsor_" + std::to_string(m), X,
                               std::map<std::string, Poly>{
                                   {"x", X->constant(0)}, {"y", X->constant(0)}, {"u", x.pow(m)}, {"v", y}});
    return f;
}

Family build_Xmnr(unsigned m, unsigned n, unsigned r)
{
    if (m == 0 || n == 0 || r == 0)
        throw InvalidArgument("m, n, r must be positive");
    if (std::gcd(m, r) != 1)
        throw InvalidArgument("m and r must be coprime (gcd(" + std::to_string(m) + "," + std::to_string(r) + ") != 1)");
    auto X = laurent_scheme("X(" + mnr_label(m, n, r) + ")", {"x", "y", "u", "v"}, {}, {}, std::nullopt,
                            [&](const VarTablePtr& V) {
                                Poly x = Poly::variable(V, "x"), y = Poly::variable(V, "y"),
                                     u = Poly::variable(V, "u"), v = Poly::variable(V, "v");
                                return std::vector<Poly>{x.pow(m) * v.pow(r) - y.pow(n) * u - Rational(1)};
                            });
    Poly x = X->var("x"), y = X->var("y"), v = X->var("v");
    Family f;
    f.scheme = X;
    f.derivation = make_derivation("d(" + mnr_label(m, n, r) + ")", X,
                                   std::map<std::string, Poly>{{"x", y.pow(n)},
                                                               {"y", X->constant(0)},
                                                               {"u", x.pow(m - 1) * v.pow(r) * Rational(m)},
                                                               {"v", X->constant(0)}});
    return f;
}

Family build_Y(const FamilyParams& p)
{
    validate(p);
    auto X = laurent_scheme("Y(" + p.label() + ")", {"x", "y", "z", "t"}, p.params, {}, std::nullopt,
                            [&](const VarTablePtr& V) {
                                Poly x = Poly::variable(V, "x"), y = Poly::variable(V, "y"),
                                     z = Poly::variable(V, "z"), t = Poly::variable(V, "t");
                                Poly h = parse_poly(p.h, V);
                                return std::vector<Poly>{x.pow(p.n) * z - (y.pow(p.m) - t.pow(p.r) + x * h)};
                            });
    Poly x = X->var("x"), y = X->var("y");
    Poly h = X->parse(p.h);
    Family f;
    f.scheme = X;
    f.derivation = make_derivation(
        "d(" + p.label() + ")", X,
        std::map<std::string, Poly>{{"x", X->constant(0)},
                                    {"t", X->constant(0)},
                                    {"y", x.pow(p.n)},
                                    {"z", y.pow(p.m - 1) * Rational(p.m) + x * partial_derivative(h, "y")}});
    return f;
}

Poly phi_polynomial(unsigned m, const VarTablePtr& vars, std::string_view x_inv, std::string_view y,
                    std::string_view t)
{
    Poly xi = Poly::variable(vars, x_inv), yy = Poly::variable(vars, y), tt = Poly::variable(vars, t);
    Poly P(vars);
    for (unsigned k = 1; k <= m; ++k)
        P += (xi * tt).pow(k) * yy.pow(k - 1) * Rational(binomial(m, k));
    return P;
}

GroupTwist make_twist(Morphism automorphism, unsigned order)
{
    GroupTwist g;
    g.order = order;
    g.automorphism = std::move(automorphism);
    g.certificate = run_check("twist_order(" + g.automorphism.name + "," + std::to_string(order) + ")", [&](Report& r) {
        if (order == 0)
            throw InvalidArgument("twist order must be positive");
        if (!same_vars(g.automorphism.source->vars(), g.automorphism.target->vars()))
            throw InvalidArgument("a twist must be an endomorphism");
        r.step(well_defined(g.automorphism));
        if (r.status != Status::Pass)
            return;
        Morphism power = g.automorphism;
        for (unsigned k = 1; k < order; ++k)
            power = compose(power, g.automorphism);
        const auto& X = *g.automorphism.source;
        for (std::size_t i = 0; i < X.vars()->size(); ++i) {
            Poly diff = X.normal_form(power.images[i] - Poly::variable(X.vars(), i));
            if (!diff.is_zero()) {
                r.fail("the composite of the twist with itself is not the identity", "generator", X.vars()->name(i));
                r.witness("difference", diff);
                return;
            }
        }
        r.message = "the " + std::to_string(order) + "-fold composite is the identity";
    });
    return g;
}

Report mu_equivariance(const Morphism& phi, const GroupTwist& twist_src, const GroupTwist& twist_tgt)
{
    return run_check("mu_equivariance(" + phi.name + ")", [&](Report& r) {
        if (twist_src.order != twist_tgt.order)
            throw InvalidArgument("twists of different orders (" + std::to_string(twist_src.order) + " and " +
                                  std::to_string(twist_tgt.order) + ")");
        if (!same_vars(twist_src.automorphism.source->vars(), phi.source->vars()) ||
            !same_vars(twist_tgt.automorphism.source->vars(), phi.target->vars()))
            throw InvalidArgument("twists do not act on the source and target of the morphism");
        r.step(twist_src.certificate);
        r.step(twist_tgt.certificate);
        r.step(well_defined(phi));
        if (r.status != Status::Pass)
            return;
        const auto& tv = *phi.target->vars();
        for (std::size_t i = 0; i < tv.size(); ++i) {
            Poly lhs = twist_src.automorphism.pullback(phi.images[i]);
            Poly rhs = phi.pullback(twist_tgt.automorphism.images[i]);
            Poly diff = phi.source->normal_form(lhs - rhs);
            if (!diff.is_zero()) {
                r.fail("the morphism does not intertwine the twists", "generator", tv.name(i));
                r.witness("difference", diff);
                return;
            }
        }
    });
}

Report check_Xm(unsigned m)
{
    return run_check("build_Xm(m=" + std::to_string(m) + ")", [&](Report& r) {
        auto f = build_Xm(m);
        r.witness("relation", f.scheme->relations().front());
        r.step(smoothness_check(*f.scheme));
        r.step(lnd_bundle(f.derivation));
        r.step(lnd_bundle(f.torsor));
        r.step(fixed_point_free(f.derivation));
        r.step(fixed_point_free(f.torsor));
        auto g = build_Xmnr(m, 1, 1);
        bool same_ideal = ideals_equal(f.scheme->ideal(), g.scheme->ideal());
        bool same_images = true;
        for (std::size_t i = 0; i < f.derivation.images.size(); ++i)
            same_images = same_images && f.derivation.images[i].to_string() == g.derivation.images[i].to_string();
        r.require(same_ideal && same_images, "matches_Xmnr(m=" + std::to_string(m) + ",n=1,r=1)");
    });
}

Report invariant_ring_Xm(unsigned m, unsigned bound)
{
    return run_check("invariant_ring(m=" + std::to_string(m) + ",bound=" + std::to_string(bound) + ")", [&](Report& r) {
        auto f = build_Xm(m);
        const auto& X = *f.scheme;
        auto K = kernel_search(f.derivation, bound, Grading::Box);
        r.witness("kernel_dimension", std::to_string(K.size()));
        std::vector<Poly> yv;
        for (unsigned a = 0; a <= bound; ++a)
            for (unsigned b = 0; b <= bound; ++b)
                yv.push_back(X.var("y").pow(a) * X.var("v").pow(b));
        r.require(K.size() == yv.size(), "dimension equals (bound+1)^2", "expected", std::to_string(yv.size()));
        for (const auto& p : yv)
            if (!span_contains(K, p, X.ideal())) {
                r.fail("a monomial in y, v is missing from the kernel", "monomial", p);
                return;
            }
        const auto xi = X.vars()->index("x"), ui = X.vars()->index("u");
        for (const auto& k : K)
            if (k.involves(xi) || k.involves(ui)) {
                r.fail("the kernel contains an element outside k[y, v]", "element", k);
                return;
            }
        r.message = "kernel equals the k[y, v] part, verified up to the degree bound";
    });
}

Report check_Xmnr(unsigned m, unsigned n, unsigned r_)
{
    return run_check("build_Xmnr(" + mnr_label(m, n, r_) + ")", [&](Report& r) {
        auto f = build_Xmnr(m, n, r_);
        r.witness("relation", f.scheme->relations().front());
        r.step(smoothness_check(*f.scheme));
        r.step(lnd_bundle(f.derivation));
    });
}

Report check_Y(const FamilyParams& p)
{
    return run_check("build_Y(" + p.label() + ")", [&](Report& r) {
        auto f = build_Y(p);
        r.witness("relation", f.scheme->relations().front());
        r.step(smoothness_check(*f.scheme));
        r.step(lnd_bundle(f.derivation));
        if (p.m >= 2 && p.r >= 2) {
            const auto& X = *f.scheme;
            Ideal line(X.vars(), {X.var("x"), X.var("y"), X.var("t")});
            r.step(compare_radical(fixed_locus(f.derivation), line, "fixed_locus_is_line(" + p.label() + ")"));
        }
    });
}

Report phi_trivialization(unsigned m)
{
    return run_check("phi_trivialization(m=" + std::to_string(m) + ")", [&](Report& r) {
        auto xm = build_Xm(m);
        auto src = laurent_scheme("Utilde*A1", {"x", "y", "t"}, {}, {"x"}, std::nullopt,
                                  [](const VarTablePtr&) { return std::vector<Poly>{}; });
        auto tgt = laurent_scheme("X_" + std::to_string(m) + "|U", {"x", "y", "u", "v"}, {}, {"v"}, std::nullopt,
                                  [&](const VarTablePtr& V) {
                                      Poly x = Poly::variable(V, "x"), y = Poly::variable(V, "y"),
                                           u = Poly::variable(V, "u"), v = Poly::variable(V, "v");
                                      return std::vector<Poly>{x.pow(m) * v - y * u - Rational(1)};
                                  });
        const auto& S = *src;
        Poly x = S.var("x"), y = S.var("y"), t = S.var("t"), xi = S.var("x_inv");
        Poly P = phi_polynomial(m, S.vars(), "x_inv", "y", "t");
        r.witness("P", P);

        Poly identity = (x + t * y).pow(m) * xi.pow(m) - y * P - Rational(1);
        Poly id_nf = S.normal_form(identity);
        r.require(id_nf.is_zero(), "identity (x+t*y)^m*x_inv^m - y*P = 1", "normal_form", id_nf.to_string());

        // P against the orbit series of u through (x, y, 0, x_inv^m).
        auto action = exp_action(xm.derivation);
        const auto& E = *action.coaction.source;
        std::map<std::string, Poly> point{{"x", x}, {"y", y}, {"u", Poly(S.vars())}, {"v", xi.pow(m)},
                                          {action.time_var, t}};
        Poly series = substitute(action.coaction.image("u"), point, S.vars());
        (void)E;
        Poly series_diff = S.normal_form(series - P);
        r.require(series_diff.is_zero(), "P equals sum_k d_m^k(u)/k! t^k at (x, y, 0, x_inv^m)", "difference",
                  series_diff.to_string());

        auto phi = make_morphism("Phi_" + std::to_string(m), src, tgt,
                                 std::map<std::string, Poly>{{"x", x + t * y}, {"y", y}, {"u", P}, {"v", xi.pow(m)}});
        r.step(phi.certificate);

        auto d_t = make_derivation("d/dt", src,
                                   std::map<std::string, Poly>{{"x", S.constant(0)}, {"y", S.constant(0)},
                                                               {"t", S.constant(1)}});
        auto d_m = make_derivation("d_" + std::to_string(m) + "|U", tgt,
                                   std::map<std::string, Poly>{{"x", tgt->var("y")},
                                                               {"y", tgt->constant(0)},
                                                               {"u", tgt->var("x").pow(m - 1) * tgt->var("v") * Rational(m)},
                                                               {"v", tgt->constant(0)}});
        r.step(check_equivariant(phi, d_t, d_m));

        // Jacobian of (x + t y, y, P, x_inv^m) in the coordinates x, y, t of the Laurent ring.
        auto d_x = [&](const Poly& f) {
            return partial_derivative(f, "x") - xi * xi * partial_derivative(f, "x_inv");
        };
        std::vector<Poly> comps{x + t * y, y, P, xi.pow(m)};
        std::vector<std::vector<Poly>> J;
        for (const auto& c : comps)
            J.push_back({d_x(c), partial_derivative(c, "y"), partial_derivative(c, "t")});
        std::vector<Poly> minors;
        for (std::size_t skip = 0; skip < 4; ++skip) {
            std::vector<std::vector<Poly>> M;
            for (std::size_t k = 0; k < 4; ++k)
                if (k != skip)
                    M.push_back(J[k]);
            Poly det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                       M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                       M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
            minors.push_back(S.normal_form(det));
        }
        Report rank("jacobian_rank_3");
        auto cert = comaximal(S.ideal(), Ideal(S.vars(), minors));
        if (cert)
            rank.witness("minor_combination", cert->second);
        else
            rank.fail("the 3x3 minors have a common zero", "minors", Ideal(S.vars(), minors).to_string());
        r.step(std::move(rank));

        Poly dP0 = substitute(partial_derivative(P, "t"), std::map<std::string, Poly>{{"y", Poly(S.vars())}},
                              S.vars());
        r.require(dP0 == xi * Rational(m), "dP/dt(x,0,t) = m*x_inv", "value", dP0.to_string());
    });
}

Report fiber_ring_decomposition(unsigned m)
{
    return run_check("fiber_ring_decomposition(m=" + std::to_string(m) + ")", [&](Report& r) {
        if (m < 2)
            throw InvalidArgument("m must be at least 2");
        auto V = scheme_vars({"x1", "x2", "y", "t1", "t2"}, {}, {"x1", "x2"}, std::nullopt);
        Poly x1 = Poly::variable(V, "x1"), x2 = Poly::variable(V, "x2"), y = Poly::variable(V, "y"),
             t1 = Poly::variable(V, "t1"), t2 = Poly::variable(V, "t2"), a = Poly::variable(V, "x1_inv"),
             b = Poly::variable(V, "x2_inv");
        Poly P1 = phi_polynomial(m, V, "x1_inv", "y", "t1");
        Poly P2 = phi_polynomial(m, V, "x2_inv", "y", "t2");
        std::vector<Poly> rels{a.pow(m) - b.pow(m), x1 - x2 + y * (t1 - t2), P1 - P2};
        auto B = make_scheme("B_" + std::to_string(m), V, rels, {"x1", "x2"});
        const Ideal& I = B->ideal();

        Poly R(V);
        for (unsigned k = 0; k < m; ++k)
            R += a.pow(k) * b.pow(m - 1 - k);
        r.require((a - b) * R == a.pow(m) - b.pow(m), "x1_inv^m - x2_inv^m = (x1_inv - x2_inv)*R", "R", R.to_string());

        // S from P(x1, y, t1) - P(x1, y, t2) = m x1_inv (t1 - t2) (1 + y S).
        {
            Poly P12 = phi_polynomial(m, V, "x1_inv", "y", "t2");
            Report sr("series_factor_S");
            auto q1 = divide_exact(P1 - P12, t1 - t2);
            auto q2 = q1 ? divide_exact(*q1, a * Rational(m)) : std::nullopt;
            auto S = q2 ? divide_exact(*q2 - Rational(1), y) : std::nullopt;
            if (!S)
                sr.fail("the difference of P values does not factor as expected", "difference", P1 - P12);
            else if (a * (t1 - t2) * (Poly::constant(V, 1) + y * *S) * Rational(m) != P1 - P12)
                sr.fail("factorization check failed", "S", *S);
            else
                sr.witness("S", *S);
            r.step(std::move(sr));
        }
        {
            Report ur("x1-x2_unit_modulo_R");
            Ideal RI(V, {x1 * a - Rational(1), x2 * b - Rational(1), R});
            auto inv = is_unit_mod(x1 - x2, RI);
            if (inv)
                ur.witness("inverse", *inv);
            else
                ur.fail("x1 - x2 is not a unit", "element", x1 - x2);
            r.step(std::move(ur));
        }

        Ideal I0 = I.plus({a - b});
        Ideal I1 = I.plus({R});
        {
            Report cr("comaximal(I0,I1)");
            auto cert = comaximal(I0, I1);
            if (cert) {
                cr.witness("a_in_I0", cert->first);
                cr.witness("b_in_I1", cert->second);
            }
            else
                cr.fail("I0 + I1 is proper", "I0+I1", I0.plus(I1).to_string());
            r.step(std::move(cr));
        }
        r.require(ideals_equal(intersect(I0, I1), I), "intersection(I0,I1) = I");

        // B0 = B/I0 is k[x^+-1, y, t].
        auto B0 = std::make_shared<const Scheme>(B->with_relations({a - b}, "B0_" + std::to_string(m)));
        auto T0 = laurent_scheme("k[x^+-1,y,t]", {"x", "y", "t"}, {}, {"x"}, std::nullopt,
                                 [](const VarTablePtr&) { return std::vector<Poly>{}; });
        auto to_T0 = make_morphism("B0->k[x^+-1,y,t]", B0, T0,
                                   std::map<std::string, Poly>{{"x", B0->var("x1")}, {"y", B0->var("y")},
                                                               {"t", B0->var("t1")}});
        auto from_T0 = make_morphism("k[x^+-1,y,t]->B0", T0, B0,
                                     std::map<std::string, Poly>{{"x1", T0->var("x")},
                                                                 {"x2", T0->var("x")},
                                                                 {"y", T0->var("y")},
                                                                 {"t1", T0->var("t")},
                                                                 {"t2", T0->var("t")}});
        r.step(is_isomorphism(to_T0, from_T0));

        Report yr("y_unit_in_B1");
        auto yinv = is_unit_mod(y, I1);
        if (yinv)
            yr.witness("inverse", *yinv);
        else
            yr.fail("y is not a unit modulo I1", "element", y);
        r.step(std::move(yr));
    });
}

Report cocycle_check(const CoverDatum& c)
{
    return run_check("cocycle(" + c.name + ")", [&](Report& r) {
        const auto& X = *c.ring;
        const std::size_t n = c.localizers.size();
        struct Entry {
            Poly num;
            Poly den;
            Poly overlap;
        };
        std::map<std::pair<std::size_t, std::size_t>, Entry> g;
        for (const auto& t : c.transitions) {
            if (t.i >= n || t.j >= n || t.i == t.j)
                throw InvalidArgument("transition refers to an invalid chart pair");
            Entry e{t.numerator, t.overlap.pow(t.pole), t.overlap};
            auto key = std::make_pair(t.i, t.j);
            auto rev = std::make_pair(t.j, t.i);
            if (g.count(rev)) {
                const auto& o = g.at(rev);
                Poly sum = e.num * o.den + o.num * e.den;
                bool ok = saturate(X.ideal(), e.overlap * o.overlap).member(sum);
                r.require(ok, "antisymmetry(" + c.chart_names[t.i] + "," + c.chart_names[t.j] + ")", "sum_numerator",
                          X.normal_form(sum).to_string());
                continue;
            }
            g.emplace(key, e);
        }
        auto get = [&](std::size_t i, std::size_t j) -> std::optional<Entry> {
            if (auto it = g.find({i, j}); it != g.end())
                return it->second;
            if (auto it = g.find({j, i}); it != g.end())
                return Entry{-it->second.num, it->second.den, it->second.overlap};
            return std::nullopt;
        };
        std::size_t triples = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    auto gij = get(i, j), gjk = get(j, k), gik = get(i, k);
                    if (!gij || !gjk || !gik)
                        continue;
                    ++triples;
                    Poly lhs = gij->num * gjk->den * gik->den + gjk->num * gij->den * gik->den -
                               gik->num * gij->den * gjk->den;
                    Ideal sat = saturate(X.ideal(), gij->overlap * gjk->overlap * gik->overlap);
                    if (!sat.member(lhs)) {
                        r.fail("g_ij + g_jk != g_ik on a triple overlap", "triple",
                               c.chart_names[i] + "," + c.chart_names[j] + "," + c.chart_names[k]);
                        r.witness("residue_numerator", sat.normal_form(lhs));
                        return;
                    }
                }
        r.witness("triples_checked", std::to_string(triples));
        r.message = triples ? "the cocycle identity holds on every triple overlap" : "no triple overlaps";
    });
}

namespace {

std::vector<Monomial> ansatz_monomials(const Scheme& X, unsigned degree_bound)
{
    const std::size_t n = X.vars()->size();
    std::vector<Monomial> leads;
    for (const auto& g : X.ideal().groebner_basis())
        leads.push_back(g.terms().front().mono);
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(std::size_t)> rec = [&](std::size_t var) {
        if (var == n) {
            for (const auto& l : leads)
                if (divides(l, cur))
                    return;
            out.push_back(cur);
            return;
        }
        for (unsigned e = 0; cur.degree + e <= degree_bound; ++e) {
            cur.set(var, e);
            rec(var + 1);
        }
        cur.set(var, 0);
    };
    rec(0);
    return out;
}

}  // namespace

Report coboundary_solve(const CoverDatum& c, unsigned degree_bound, unsigned pole_bound, bool expect_solution,
                        CoboundarySolution* out)
{
    std::string name = "coboundary(" + c.name + ",degree<=" + std::to_string(degree_bound) +
                       ",pole<=" + std::to_string(pole_bound) + ")";
    return run_check(name, [&](Report& r) {
        const auto& X = *c.ring;
        const auto& V = X.vars();
        const std::size_t charts = c.localizers.size();
        auto monos = ansatz_monomials(X, degree_bound);
        if (monos.size() * charts > current_budget().max_monomials)
            throw BudgetExceeded("coboundary ansatz exceeds the monomial budget");
        std::map<std::string, Ideal> sat_cache;
        auto sat_of = [&](const Poly& f) -> const Ideal& {
            auto key = f.to_string();
            auto it = sat_cache.find(key);
            if (it == sat_cache.end())
                it = sat_cache.emplace(key, saturate(X.ideal(), f)).first;
            return it->second;
        };
        for (const auto& t : c.transitions) {
            for (auto k : {t.i, t.j}) {
                Ideal probe = saturate(X.ideal().plus({c.localizers[k]}), t.overlap);
                if (!probe.is_unit())
                    throw InvalidArgument("chart localizer " + c.localizers[k].to_string() +
                                          " is not invertible on the overlap " + t.overlap.to_string());
            }
        }
        const std::size_t ncols = monos.size() * charts;
        for (unsigned p = 0; p <= pole_bound; ++p) {
            LinearSystem sys;
            sys.ncols = ncols;
            for (const auto& t : c.transitions) {
                const Ideal& J = sat_of(t.overlap);
                Poly Li = c.localizers[t.i].pow(p), Lj = c.localizers[t.j].pow(p), fk = t.overlap.pow(t.pole);
                // N_j * Li * f^k - N_i * Lj * f^k = num * Li * Lj
                std::map<Monomial, SparseVec, std::function<bool(const Monomial&, const Monomial&)>> rows(
                    [](const Monomial& a, const Monomial& b) { return a.exp < b.exp; });
                std::map<Monomial, Rational, std::function<bool(const Monomial&, const Monomial&)>> rhs(
                    [](const Monomial& a, const Monomial& b) { return a.exp < b.exp; });
                Poly cj = Li * fk, ci = -(Lj * fk);
                for (std::size_t a = 0; a < monos.size(); ++a) {
                    Poly mono = Poly::monomial(V, monos[a]);
                    Poly ej = J.normal_form(mono * cj);
                    for (const auto& term : ej.terms())
                        rows[term.mono].emplace_back(t.j * monos.size() + a, term.coef);
                    Poly ei = J.normal_form(mono * ci);
                    for (const auto& term : ei.terms())
                        rows[term.mono].emplace_back(t.i * monos.size() + a, term.coef);
                }
                Poly b = J.normal_form(t.numerator * Li * Lj);
                for (const auto& term : b.terms()) {
                    rows[term.mono];
                    rhs[term.mono] = term.coef;
                }
                for (auto& [mono, row] : rows) {
                    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
                    SparseVec merged;
                    for (auto& e : row) {
                        if (!merged.empty() && merged.back().first == e.first)
                            merged.back().second += e.second;
                        else
                            merged.push_back(e);
                    }
                    std::erase_if(merged, [](const auto& e) { return sgn(e.second) == 0; });
                    auto it = rhs.find(mono);
                    sys.add_row(std::move(merged), it == rhs.end() ? Rational(0) : it->second);
                }
            }
            auto sol = solve(sys);
            if (!sol)
                continue;
            CoboundarySolution s;
            s.found = true;
            s.pole = p;
            for (std::size_t k = 0; k < charts; ++k) {
                TermList terms;
                for (std::size_t a = 0; a < monos.size(); ++a)
                    if (sgn((*sol)[k * monos.size() + a]) != 0)
                        terms.push_back(Term{monos[a], (*sol)[k * monos.size() + a]});
                s.numerators.push_back(Poly::from_terms(V, std::move(terms)));
            }
            // Independent re-check of every transition.
            for (const auto& t : c.transitions) {
                Poly Li = c.localizers[t.i].pow(p), Lj = c.localizers[t.j].pow(p), fk = t.overlap.pow(t.pole);
                Poly lhs = (s.numerators[t.j] * Li - s.numerators[t.i] * Lj) * fk - t.numerator * Li * Lj;
                if (!sat_of(t.overlap).member(lhs))
                    throw Error("internal error: coboundary solution failed verification");
            }
            for (std::size_t k = 0; k < charts; ++k) {
                std::string h = "(" + s.numerators[k].to_string() + ")";
                if (p > 0 && !c.localizers[k].is_constant())
                    h += "/(" + c.localizers[k].to_string() + ")^" + std::to_string(p);
                r.witness("h[" + c.chart_names[k] + "]", h);
            }
            r.witness("pole_order", std::to_string(p));
            if (expect_solution)
                r.message = "g_ij = h_j - h_i on every overlap";
            else
                r.fail("a coboundary exists although none was expected", "pole_order", std::to_string(p));
            if (out)
                *out = s;
            return;
        }
        if (out)
            *out = CoboundarySolution{};
        r.witness("ansatz_monomials_per_chart", std::to_string(monos.size()));
        if (expect_solution)
            r.fail("no solution within bounds", "bounds",
                   "degree<=" + std::to_string(degree_bound) + ", pole<=" + std::to_string(pole_bound));
        else
            r.message = "no solution within bounds";
    });
}

Report slice_charts(unsigned m, unsigned n, unsigned r_)
{
    return run_check("slice_charts(" + mnr_label(m, n, r_) + ")", [&](Report& r) {
        if (std::gcd(m, r_) != 1)
            throw InvalidArgument("m and r must be coprime");
        auto fam = build_Xmnr(m, n, r_);
        const RootsOfUnity roots{"eps", m};
        auto XU = laurent_scheme("X|U", {"x", "y", "u", "v"}, {}, {"v"}, std::nullopt, [&](const VarTablePtr& V) {
            Poly x = Poly::variable(V, "x"), y = Poly::variable(V, "y"), u = Poly::variable(V, "u"),
                 v = Poly::variable(V, "v");
            return std::vector<Poly>{x.pow(m) * v.pow(r_) - y.pow(n) * u - Rational(1)};
        });
        auto U = laurent_scheme("U", {"y", "v"}, {}, {"v"}, std::nullopt,
                                [](const VarTablePtr&) { return std::vector<Poly>{}; });
        auto Ut = laurent_scheme("Utilde", {"y", "lambda"}, {}, {"lambda"}, roots,
                                 [](const VarTablePtr&) { return std::vector<Poly>{}; });
        auto Yt = laurent_scheme("Ytilde", {"x", "y", "u", "lambda"}, {}, {"lambda"}, roots, [&](const VarTablePtr& V) {
            Poly x = Poly::variable(V, "x"), y = Poly::variable(V, "y"), u = Poly::variable(V, "u"),
                 li = Poly::variable(V, "lambda_inv");
            return std::vector<Poly>{x.pow(m) * li.pow(m * r_) - y.pow(n) * u - Rational(1)};
        });
        const auto& Y = *Yt;
        Poly x = Y.var("x"), y = Y.var("y"), u = Y.var("u"), lam = Y.var("lambda"), li = Y.var("lambda_inv");

        // The cover is the fiber product.
        {
            auto q = make_morphism("q", XU, U, same_names(XU, {"y", "v"}));
            auto c = make_morphism("cover", Ut, U,
                                   std::map<std::string, Poly>{{"y", Ut->var("y")}, {"v", Ut->var("lambda_inv").pow(m)}});
            auto fp = fiber_product(q, c, "X|U*_U Utilde");
            const auto& F = *fp.scheme;
            std::map<std::string, Poly> to_direct{{"x", x}, {"y", y}, {"u", u}, {"v", li.pow(m)},
                                                  {fp.renamed.at("y"), y}, {"lambda", lam}, {"eps", Y.var("eps")}};
            auto beta = make_morphism("Ytilde->fiber_product", Yt, fp.scheme, to_direct);
            std::map<std::string, Poly> from_fp{{"x", F.var("x")}, {"y", F.var("y")}, {"u", F.var("u")},
                                                {"lambda", F.var("lambda")}, {"eps", F.var("eps")}};
            auto alpha = make_morphism("fiber_product->Ytilde", fp.scheme, Yt, from_fp);
            r.step(is_isomorphism(beta, alpha));
        }

        auto dt = make_derivation("d~(" + mnr_label(m, n, r_) + ")", Yt,
                                  std::map<std::string, Poly>{{"x", y.pow(n)},
                                                              {"y", Y.constant(0)},
                                                              {"lambda", Y.constant(0)},
                                                              {"u", x.pow(m - 1) * li.pow(m * r_) * Rational(m)}});
        r.step(lnd_bundle(dt));
        {
            auto dXU = make_derivation("d|U", XU,
                                       std::map<std::string, Poly>{{"x", XU->var("y").pow(n)},
                                                                   {"y", XU->constant(0)},
                                                                   {"v", XU->constant(0)},
                                                                   {"u", XU->var("x").pow(m - 1) *
                                                                             XU->var("v").pow(r_) * Rational(m)}});
            auto pr = make_morphism("Ytilde->X|U", Yt, XU,
                                    std::map<std::string, Poly>{{"x", x}, {"y", y}, {"u", u}, {"v", li.pow(m)}});
            r.step(check_equivariant(pr, dt, dXU));
        }

        auto Yy = std::make_shared<const Scheme>(Y.localized(y, "y_inv", "Ytilde[1/y]"));
        auto dty = make_derivation("d~[1/y]", Yy,
                                   std::map<std::string, Poly>{{"x", embed(dt.image("x"), Yy->vars())},
                                                               {"y", Yy->constant(0)},
                                                               {"lambda", Yy->constant(0)},
                                                               {"u", embed(dt.image("u"), Yy->vars())}});
        auto slice_on_y = [&](unsigned i) {
            return Yy->var("y_inv").pow(n) *
                   (Yy->var("x") - embed(eps_power(Y, m, static_cast<long long>(r_) * i), Yy->vars()) *
                                       Yy->var("lambda").pow(r_));
        };

        for (unsigned i = 0; i < m; ++i) {
            Report cr("chart(i=" + std::to_string(i) + ")");
            auto A = laurent_scheme("Utilde_" + std::to_string(i) + "*A1", {"y", "lambda", "s"}, {}, {"lambda"}, roots,
                                    [](const VarTablePtr&) { return std::vector<Poly>{}; });
            Poly s = A->var("s"), ay = A->var("y"), al = A->var("lambda"), ali = A->var("lambda_inv");
            Poly prod = A->constant(1);
            for (unsigned j = 0; j < m; ++j)
                if (j != i)
                    prod *= ay.pow(n) * s +
                            al.pow(r_) * (eps_power(*A, m, static_cast<long long>(r_) * i) -
                                          eps_power(*A, m, static_cast<long long>(r_) * j));
            std::map<std::string, Poly> images{
                {"x", ay.pow(n) * s + eps_power(*A, m, static_cast<long long>(r_) * i) * al.pow(r_)},
                {"u", ali.pow(m * r_) * s * prod},
                {"y", ay},
                {"lambda", al}};
            auto phi = make_morphism("chart_" + std::to_string(i), A, Yt, images);
            cr.step(phi.certificate);
            auto ds = make_derivation("d/ds", A,
                                      std::map<std::string, Poly>{{"s", A->constant(1)},
                                                                  {"y", A->constant(0)},
                                                                  {"lambda", A->constant(0)}});
            cr.step(check_equivariant(phi, ds, dt));

            Poly vi = slice_on_y(i);
            Poly dv = dty.apply(vi);
            cr.require(dv == Yy->constant(1), "d~(v_i) = 1 on D(y)", "value", dv.to_string());

            Poly Fi = other_surfaces(Y, "x", m, r_, i);
            Poly Fi_pulled = A->normal_form(phi.pullback(Fi));
            auto cover_cert = is_unit_mod(Fi_pulled, A->ideal().plus({ay}));
            cr.require(cover_cert.has_value(), "chart image avoids the other surfaces (y, F_i) = (1)", "F_i",
                       Fi.to_string());

            // Isomorphism on D(y).
            {
                auto Ay = std::make_shared<const Scheme>(A->localized(ay, "y_inv", A->name() + "[1/y]"));
                std::map<std::string, Poly> im;
                for (const auto& [k, p] : images)
                    im.emplace(k, embed(p, Ay->vars()));
                auto f = make_morphism("chart_" + std::to_string(i) + "[1/y]", Ay, Yy, im);
                auto g = make_morphism("slice_" + std::to_string(i) + "[1/y]", Yy, Ay,
                                       std::map<std::string, Poly>{{"s", vi}, {"y", Yy->var("y")},
                                                                   {"lambda", Yy->var("lambda")}});
                cr.step(is_isomorphism(f, g));
            }
            // Isomorphism on D(F_i).
            {
                auto YF = std::make_shared<const Scheme>(Y.localized(Fi, "f_inv", "Ytilde[1/F_" + std::to_string(i) + "]"));
                auto AF = std::make_shared<const Scheme>(A->localized(Fi_pulled, "f_inv", A->name() + "[1/F]"));
                std::map<std::string, Poly> im;
                for (const auto& [k, p] : images)
                    im.emplace(k, embed(p, AF->vars()));
                auto f = make_morphism("chart_" + std::to_string(i) + "[1/F]", AF, YF, im);
                Poly sF = YF->var("lambda").pow(r_) * YF->var("u") * YF->var("f_inv");
                auto g = make_morphism("slice_" + std::to_string(i) + "[1/F]", YF, AF,
                                       std::map<std::string, Poly>{{"s", sF}, {"y", YF->var("y")},
                                                                   {"lambda", YF->var("lambda")}});
                cr.step(is_isomorphism(f, g));
            }
            r.step(std::move(cr));
        }

        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = i + 1; j < m; ++j) {
                Poly diff = eps_power(*Ut, m, static_cast<long long>(r_) * i) -
                            eps_power(*Ut, m, static_cast<long long>(r_) * j);
                auto inv = is_unit_mod(diff, Ut->ideal());
                r.require(inv.has_value(), "unit(eps^(r*" + std::to_string(i) + ") - eps^(r*" + std::to_string(j) + "))",
                          inv ? "inverse" : "element", inv ? inv->to_string() : diff.to_string());
            }

        CoverDatum cover;
        cover.name = "V_" + std::to_string(m) + "(" + mnr_label(m, n, r_) + ")";
        cover.ring = Ut;
        for (unsigned i = 0; i < m; ++i) {
            cover.chart_names.push_back("U" + std::to_string(i));
            cover.localizers.push_back(Ut->constant(1));
        }
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = i + 1; j < m; ++j) {
                Poly num = Ut->var("lambda").pow(r_) * (eps_power(*Ut, m, static_cast<long long>(r_) * i) -
                                                        eps_power(*Ut, m, static_cast<long long>(r_) * j));
                cover.transitions.push_back(Transition{i, j, num, Ut->var("y"), n});
                Poly g_on_Y = Yy->var("y_inv").pow(n) * embed(substitute(num, same_names(Yy, {"y", "lambda", "lambda_inv", "eps"}), Yy->vars()), Yy->vars());
                Poly check = Yy->normal_form(slice_on_y(j) - slice_on_y(i) - g_on_Y);
                r.require(check.is_zero(), "transition(" + std::to_string(i) + "," + std::to_string(j) + ") = v_j - v_i",
                          "g", g_on_Y.to_string());
            }
        r.step(cocycle_check(cover));
        CoverDatum localized = cover;
        localized.name = cover.name + "[1/y]";
        for (auto& l : localized.localizers)
            l = Ut->var("y");
        r.step(coboundary_solve(localized, kDefaultCoboundaryDegree, kDefaultCoboundaryPole, true));
        r.step(coboundary_solve(cover, 3, 0, false));
    });
}

Report y_charts(const FamilyParams& p)
{
    return run_check("y_charts(" + p.label() + ")", [&](Report& r) {
        validate(p);
        const unsigned m = p.m, n = p.n, rr = p.r;
        if (m < 2 || rr < 2)
            throw InvalidArgument("y_charts needs m, r >= 2");
        const RootsOfUnity roots{"eps", m};
        auto fam = build_Y(p);
        auto YU = std::make_shared<const Scheme>(fam.scheme->localized(fam.scheme->var("t"), "t_inv", "Y|U"));
        auto U = laurent_scheme("U", {"x", "t"}, p.params, {"t"}, std::nullopt,
                                [](const VarTablePtr&) { return std::vector<Poly>{}; });
        auto Ut = laurent_scheme("Utilde", {"x", "lambda"}, p.params, {"lambda"}, roots,
                                 [](const VarTablePtr&) { return std::vector<Poly>{}; });
        auto hsub = [&](const VarTablePtr& V) {
            Poly h = parse_poly(p.h, scheme_vars({"x", "y", "z", "t"}, p.params, {}, std::nullopt));
            std::map<std::string, Poly> im{{"x", Poly::variable(V, "x")}, {"y", Poly::variable(V, "y")},
                                           {"z", Poly::variable(V, "z")},
                                           {"t", Poly::variable(V, "lambda").pow(m)}};
            for (const auto& a : p.params)
                im.emplace(a, Poly::variable(V, a));
            return substitute(h, im, V);
        };
        auto Yt = laurent_scheme("Ytilde", {"x", "y", "z", "lambda"}, p.params, {"lambda"}, roots,
                                 [&](const VarTablePtr& V) {
                                     Poly x = Poly::variable(V, "x"), y = Poly::variable(V, "y"),
                                          z = Poly::variable(V, "z"), l = Poly::variable(V, "lambda");
                                     return std::vector<Poly>{x.pow(n) * z - (y.pow(m) - l.pow(m * rr) + x * hsub(V))};
                                 });
        const auto& Y = *Yt;
        Poly x = Y.var("x"), y = Y.var("y"), z = Y.var("z"), lam = Y.var("lambda");
        r.witness("relation", Y.relations().front());

        auto cover_map = std::map<std::string, Poly>{{"x", Ut->var("x")}, {"t", Ut->var("lambda").pow(m)}};
        for (const auto& a : p.params)
            cover_map.emplace(a, Ut->var(a));
        auto c = make_morphism("cover", Ut, U, cover_map);
        {
            std::vector<std::string> qn{"x", "t"};
            for (const auto& a : p.params)
                qn.push_back(a);
            auto q = make_morphism("q", YU, U, same_names(YU, qn));
            auto fp = fiber_product(q, c, "Y|U*_U Utilde");
            const auto& F = *fp.scheme;
            std::map<std::string, Poly> to_fp{{"x", x}, {"y", y}, {"z", z}, {"t", lam.pow(m)},
                                              {fp.renamed.at("x"), x}, {"lambda", lam}, {"eps", Y.var("eps")}};
            for (const auto& a : p.params) {
                to_fp.emplace(a, Y.var(a));
                to_fp.emplace(fp.renamed.at(a), Y.var(a));
            }
            auto beta = make_morphism("Ytilde->fiber_product", Yt, fp.scheme, to_fp);
            std::map<std::string, Poly> from_fp{{"x", F.var("x")}, {"y", F.var("y")}, {"z", F.var("z")},
                                                {"lambda", F.var("lambda")}, {"eps", F.var("eps")}};
            for (const auto& a : p.params)
                from_fp.emplace(a, F.var(a));
            auto alpha = make_morphism("fiber_product->Ytilde", fp.scheme, Yt, from_fp);
            r.step(is_isomorphism(beta, alpha));
        }

        Poly hY = hsub(Y.vars());
        auto dt = make_derivation("d~(" + p.label() + ")", Yt,
                                  std::map<std::string, Poly>{{"x", Y.constant(0)},
                                                              {"lambda", Y.constant(0)},
                                                              {"y", x.pow(n)},
                                                              {"z", y.pow(m - 1) * Rational(m) + x * partial_derivative(hY, "y")}},
                                  false);
        r.step(lnd_bundle(dt));
        {
            std::map<std::string, Poly> im{{"x", x}, {"y", y}, {"z", z}, {"t", lam.pow(m)}};
            for (const auto& a : p.params)
                im.emplace(a, Y.var(a));
            auto pr = make_morphism("Ytilde->Y|U", Yt, YU, im);
            auto dYU = make_derivation("d|U", YU,
                                       std::map<std::string, Poly>{
                                           {"x", embed(fam.derivation.image("x"), YU->vars())},
                                           {"y", embed(fam.derivation.image("y"), YU->vars())},
                                           {"z", embed(fam.derivation.image("z"), YU->vars())},
                                           {"t", embed(fam.derivation.image("t"), YU->vars())}});
            r.step(check_equivariant(pr, dt, dYU));
        }

        auto surface = [&](unsigned i) {
            return std::vector<Poly>{x, y - eps_power(Y, m, static_cast<long long>(rr) * i) * lam.pow(rr)};
        };
        {
            Poly prod = Y.constant(1);
            for (unsigned i = 0; i < m; ++i)
                prod *= surface(i)[1];
            r.require(Y.ideal().plus({x}).member(prod), "fiber over x=0 is the union of the surfaces");
        }
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = i + 1; j < m; ++j) {
                auto gens = surface(i);
                for (auto& g : surface(j))
                    gens.push_back(g);
                r.require(Y.ideal().plus(gens).is_unit(),
                          "disjoint(S_" + std::to_string(i) + ",S_" + std::to_string(j) + ")");
            }

        for (unsigned i = 0; i < m; ++i) {
            Report sr("surface(i=" + std::to_string(i) + ")");
            auto gens = surface(i);
            Ideal SI = Y.ideal().plus(gens);
            bool invariant = true;
            for (const auto& g : gens)
                invariant = invariant && SI.member(dt.apply_raw(g));
            sr.require(invariant, "invariant under d~");

            auto S = std::make_shared<const Scheme>(Y.with_relations(gens, "S_" + std::to_string(i)));
            std::vector<std::string> tv{"lambda", "z"};
            auto T = laurent_scheme("Btilde_" + std::to_string(i) + "*A1", tv, p.params, {"lambda"}, roots,
                                    [](const VarTablePtr&) { return std::vector<Poly>{}; });
            std::map<std::string, Poly> to_T{{"lambda", S->var("lambda")}, {"z", S->var("z")}};
            std::map<std::string, Poly> to_S{{"x", T->constant(0)},
                                             {"y", eps_power(*T, m, static_cast<long long>(rr) * i) * T->var("lambda").pow(rr)},
                                             {"z", T->var("z")},
                                             {"lambda", T->var("lambda")}};
            for (const auto& a : p.params) {
                to_T.emplace(a, S->var(a));
                to_S.emplace(a, T->var(a));
            }
            auto f = make_morphism("S_" + std::to_string(i) + "->Btilde*A1", S, T, to_T);
            auto g = make_morphism("Btilde*A1->S_" + std::to_string(i), T, S, to_S);
            sr.step(is_isomorphism(f, g));
            std::map<std::string, Poly> dS_images;
            for (const auto& nme : std::vector<std::string>{"x", "y", "z", "lambda"})
                dS_images.emplace(nme, embed(dt.image(nme), S->vars()));
            auto dS = make_derivation("d~|S_" + std::to_string(i), S, dS_images);
            Poly coef = (eps_power(*T, m, i) * T->var("lambda")).pow(rr * (m - 1)) * Rational(m);
            coef = T->normal_form(coef);
            auto dT = make_derivation("unit*d/dz", T,
                                      std::map<std::string, Poly>{{"z", coef}, {"lambda", T->constant(0)}});
            sr.step(check_equivariant(f, dS, dT));
            auto inv = is_unit_mod(coef, T->ideal());
            sr.require(inv.has_value(), "unit(" + coef.to_string() + ")", inv ? "inverse" : "element",
                       inv ? inv->to_string() : coef.to_string());
            r.step(std::move(sr));
        }

        // mu_m acts by lambda -> eps*lambda.
        std::map<std::string, Poly> tw{{"x", x}, {"y", y}, {"z", z}, {"lambda", Y.var("eps") * lam}};
        for (const auto& a : p.params)
            tw.emplace(a, Y.var(a));
        auto sigma = make_twist(make_morphism("lambda->eps*lambda", Yt, Yt, tw), m);
        r.step(sigma.certificate);
        r.step(check_equivariant(sigma.automorphism, dt, dt));
        for (unsigned i = 0; i < m; ++i) {
            unsigned prev = (i + m - 1) % m;
            Ideal SI = Y.ideal().plus(surface(i));
            bool maps = true;
            for (const auto& g : surface(prev))
                maps = maps && SI.member(sigma.automorphism.pullback(g));
            r.require(maps, "twist maps S_" + std::to_string(i) + " into S_" + std::to_string(prev));
        }
        std::map<std::string, Poly> twu{{"x", Ut->var("x")}, {"lambda", Ut->var("eps") * Ut->var("lambda")}};
        for (const auto& a : p.params)
            twu.emplace(a, Ut->var(a));
        auto sigma_u = make_twist(make_morphism("lambda->eps*lambda", Ut, Ut, twu), m);
        auto id_u = make_twist(identity_morphism(U), m);
        r.step(mu_equivariance(c, sigma_u, id_u));
    });
}

Report cylinder_splitting(unsigned m, unsigned n, unsigned r_)
{
    return run_check("cylinder_splitting(" + mnr_label(m, n, r_) + ")", [&](Report& r) {
        if (std::gcd(m, r_) != 1)
            throw InvalidArgument("m and r must be coprime");
        // Over D(y): X(m,n,r)[1/y] x_{k[y^+-1,v]} X_m[1/y].
        {
            auto rel = [](unsigned mm, unsigned nn, unsigned rr, const VarTablePtr& V, const std::string& xs,
                          const std::string& us) {
                return Poly::variable(V, xs).pow(mm) * Poly::variable(V, "v").pow(rr) -
                       Poly::variable(V, "y").pow(nn) * Poly::variable(V, us) - Rational(1);
            };
            auto L = laurent_scheme("X(" + mnr_label(m, n, r_) + ")[1/y]", {"x", "y", "u", "v"}, {}, {"y"}, std::nullopt,
                                    [&](const VarTablePtr& V) { return std::vector<Poly>{rel(m, n, r_, V, "x", "u")}; });
            auto R = laurent_scheme("X_" + std::to_string(m) + "[1/y]", {"x", "y", "u", "v"}, {}, {"y"}, std::nullopt,
                                    [&](const VarTablePtr& V) { return std::vector<Poly>{rel(m, 1, 1, V, "x", "u")}; });
            auto B = laurent_scheme("k[y^+-1,v]", {"y", "v"}, {}, {"y"}, std::nullopt,
                                    [](const VarTablePtr&) { return std::vector<Poly>{}; });
            auto fp = fiber_product(make_morphism("qL", L, B, same_names(L, {"y", "v"})),
                                    make_morphism("qR", R, B, same_names(R, {"y", "v"})), "W*");
            auto W = laurent_scheme("W*", {"x", "y", "u", "v", "x_r", "u_r"}, {}, {"y"}, std::nullopt,
                                    [&](const VarTablePtr& V) {
                                        return std::vector<Poly>{rel(m, n, r_, V, "x", "u"), rel(m, 1, 1, V, "x_r", "u_r")};
                                    });
            const auto& F = *fp.scheme;
            std::map<std::string, Poly> to_fp{{"x", W->var("x")}, {"y", W->var("y")}, {"u", W->var("u")},
                                              {"v", W->var("v")}, {fp.renamed.at("x"), W->var("x_r")},
                                              {fp.renamed.at("u"), W->var("u_r")}, {fp.renamed.at("y"), W->var("y")},
                                              {fp.renamed.at("v"), W->var("v")}};
            std::map<std::string, Poly> from_fp{{"x", F.var("x")}, {"y", F.var("y")}, {"u", F.var("u")},
                                                {"v", F.var("v")}, {"x_r", F.var(fp.renamed.at("x"))},
                                                {"u_r", F.var(fp.renamed.at("u"))}};
            r.step(is_isomorphism(make_morphism("W*->fiber_product", W, fp.scheme, to_fp),
                                  make_morphism("fiber_product->W*", fp.scheme, W, from_fp)));
            const auto& X = *W;
            Poly x = X.var("x"), y = X.var("y"), v = X.var("v"), xr = X.var("x_r"), yi = X.var("y_inv");
            auto d1 = make_derivation("d1", W,
                                      std::map<std::string, Poly>{{"x", y.pow(n)},
                                                                  {"u", x.pow(m - 1) * v.pow(r_) * Rational(m)}},
                                      true);
            auto d2 = make_derivation("d2", W,
                                      std::map<std::string, Poly>{{"x_r", y}, {"u_r", xr.pow(m - 1) * v * Rational(m)}},
                                      true);
            r.step(lnd_bundle(d1));
            r.step(lnd_bundle(d2));
            bool commute = true;
            for (std::size_t i = 0; i < X.vars()->size(); ++i) {
                Poly g = Poly::variable(X.vars(), i);
                commute = commute && X.is_zero(d1.apply(d2.apply(g)) - d2.apply(d1.apply(g)));
            }
            r.require(commute, "commutator(d1,d2) = 0 on W*");
            Poly s1 = x * yi.pow(n), s2 = xr * yi;
            r.require(d1.apply(s1) == X.constant(1) && d2.apply(s1).is_zero(), "slice d1(x*y_inv^n) = 1, d2 = 0");
            r.require(d2.apply(s2) == X.constant(1) && d1.apply(s2).is_zero(), "slice d2(x_r*y_inv) = 1, d1 = 0");
        }
        // The torsor action of X_m over D(y).
        {
            auto xm = build_Xm(m);
            auto Xy = std::make_shared<const Scheme>(xm.scheme->localized(xm.scheme->var("y"), "y_inv", "X_m[1/y]"));
            auto tor = make_derivation("torsor[1/y]", Xy,
                                       std::map<std::string, Poly>{{"u", Xy->var("x").pow(m)}, {"v", Xy->var("y")}}, true);
            r.require(tor.apply(Xy->var("v") * Xy->var("y_inv")) == Xy->constant(1), "torsor slice v*y_inv");
        }
        // Etale charts: Ytilde(m,n,r) x_{Utilde} Ytilde(m,1,1).
        {
            const RootsOfUnity roots{"eps", m};
            auto W = laurent_scheme("Wtilde", {"x", "u", "x_r", "u_r", "y", "lambda"}, {}, {"lambda"}, roots,
                                    [&](const VarTablePtr& V) {
                                        Poly li = Poly::variable(V, "lambda_inv"), y = Poly::variable(V, "y");
                                        return std::vector<Poly>{
                                            Poly::variable(V, "x").pow(m) * li.pow(m * r_) - y.pow(n) * Poly::variable(V, "u") - Rational(1),
                                            Poly::variable(V, "x_r").pow(m) * li.pow(m) - y * Poly::variable(V, "u_r") - Rational(1)};
                                    });
            const auto& X = *W;
            Poly x = X.var("x"), xr = X.var("x_r"), y = X.var("y"), li = X.var("lambda_inv"), lam = X.var("lambda");
            auto d1 = make_derivation("d1~", W,
                                      std::map<std::string, Poly>{{"x", y.pow(n)},
                                                                  {"u", x.pow(m - 1) * li.pow(m * r_) * Rational(m)}},
                                      true);
            auto d2 = make_derivation("d2~", W,
                                      std::map<std::string, Poly>{{"x_r", y},
                                                                  {"u_r", xr.pow(m - 1) * li.pow(m) * Rational(m)}},
                                      true);
            r.step(lnd_bundle(d1));
            r.step(lnd_bundle(d2));
            bool commute = true;
            for (std::size_t i = 0; i < X.vars()->size(); ++i) {
                Poly g = Poly::variable(X.vars(), i);
                commute = commute && X.is_zero(d1.apply(d2.apply(g)) - d2.apply(d1.apply(g)));
            }
            r.require(commute, "commutator(d1~,d2~) = 0 on Wtilde");

            std::vector<Poly> pieces{y};
            for (unsigned i = 0; i < m; ++i)
                for (unsigned k = 0; k < m; ++k) {
                    Poly Fi = other_surfaces(X, "x", m, r_, i);
                    Poly Gk = other_surfaces(X, "x_r", m, 1, k);
                    Poly f = X.normal_form(Fi * Gk);
                    pieces.push_back(f);
                    auto Wf = std::make_shared<const Scheme>(X.localized(f, "f_inv", "Wtilde[1/F_" + std::to_string(i) +
                                                                                      "G_" + std::to_string(k) + "]"));
                    auto lift = [&](const Derivation& d) {
                        std::map<std::string, Poly> im;
                        for (const auto& nme : std::vector<std::string>{"x", "u", "x_r", "u_r"})
                            im.emplace(nme, embed(d.image(nme), Wf->vars()));
                        return make_derivation(d.name + "[1/f]", Wf, im, true);
                    };
                    auto e1 = lift(d1), e2 = lift(d2);
                    Poly fi = Wf->var("f_inv");
                    Poly s1 = Wf->var("lambda").pow(r_) * Wf->var("u") * embed(Gk, Wf->vars()) * fi;
                    Poly s2 = Wf->var("lambda") * Wf->var("u_r") * embed(Fi, Wf->vars()) * fi;
                    r.require(e1.apply(s1) == Wf->constant(1) && e2.apply(s1).is_zero() &&
                                  e2.apply(s2) == Wf->constant(1) && e1.apply(s2).is_zero(),
                              "slices on D(F_" + std::to_string(i) + "*G_" + std::to_string(k) + ")", "slices",
                              s1.to_string() + " ; " + s2.to_string());
                }
            r.require(X.ideal().plus(pieces).is_unit(), "D(y) and the D(F_i*G_k) cover Wtilde");
            auto Wy = std::make_shared<const Scheme>(X.localized(y, "y_inv", "Wtilde[1/y]"));
            std::map<std::string, Poly> i1, i2;
            for (const auto& nme : std::vector<std::string>{"x", "u", "x_r", "u_r"}) {
                i1.emplace(nme, embed(d1.image(nme), Wy->vars()));
                i2.emplace(nme, embed(d2.image(nme), Wy->vars()));
            }
            auto e1 = make_derivation("d1~[1/y]", Wy, i1, true), e2 = make_derivation("d2~[1/y]", Wy, i2, true);
            Poly s1 = Wy->var("x") * Wy->var("y_inv").pow(n), s2 = Wy->var("x_r") * Wy->var("y_inv");
            r.require(e1.apply(s1) == Wy->constant(1) && e2.apply(s2) == Wy->constant(1) && e1.apply(s2).is_zero() &&
                          e2.apply(s1).is_zero(),
                      "slices on D(y)");
            (void)lam;
        }
    });
}

Report deformed_russell_cubic()
{
    return run_check("deformed_russell_cubic(m=2,n=2,r=3,h=1+alpha*t)", [&](Report& r) {
        auto W = make_scheme(SchemeSpec{"W", {"x", "t", "u", "v", "w"}, {"alpha"}, {"v^2*t^3 - x^2*u - 1"}, {}, {}});
        const auto& X = *W;
        auto d = make_derivation("delta_alpha", W,
                                 std::map<std::string, std::string>{{"x", "0"},
                                                                    {"t", "0"},
                                                                    {"u", "2*v*t^3"},
                                                                    {"v", "x^2"},
                                                                    {"w", "(1/2)*(1 + alpha*t)*x - t^3"}});
        r.step(lnd_bundle(d));
        Poly q = X.parse("((1/2)*(1 + alpha*t)*x - t^3)*v - x^2*w");
        r.witness("q", q);
        auto K = kernel_search(d, 3, Grading::Box);
        r.witness("kernel_dimension(bound=3)", std::to_string(K.size()));
        for (const auto& [label, p] : std::vector<std::pair<std::string, Poly>>{{"x", X.var("x")}, {"t", X.var("t")}, {"q", q}})
            r.require(span_contains(K, p, X.ideal()), "kernel contains " + label, "element", p.to_string());
        bool all_invariant = true;
        for (const auto& k : K)
            all_invariant = all_invariant && is_invariant(d, k);
        r.require(all_invariant, "every kernel basis element is invariant");

        Poly num = q * q - X.parse("t^3") + X.parse("x*(1 + alpha*t)");
        Poly z = invariant_division(d, num, X.parse("x^2"));
        r.witness("z_q", z);
        r.require(is_invariant(d, z), "z_q is invariant");
        Poly rel = X.normal_form(X.parse("x^2") * z - num);
        r.require(rel.is_zero(), "x^2*z_q = q^2 - t^3 + x*(1 + alpha*t)", "normal_form", rel.to_string());

        FamilyParams yp{2, 2, 3, "1 + alpha*t", {"alpha"}};
        auto Y = build_Y(yp);
        auto phi = make_morphism("W->Y", W, Y.scheme,
                                 std::map<std::string, Poly>{{"x", X.var("x")}, {"y", q}, {"z", z}, {"t", X.var("t")}});
        r.step(phi.certificate);
        auto zero = make_derivation("0", Y.scheme, std::map<std::string, Poly>{}, true);
        r.step(check_equivariant(phi, d, zero));
        r.message = "invariants x, t, q, z_q satisfy the Y relation; ring equality verified up to the degree bound";
    });
}

Report punctured_plane_cocycles(unsigned degree_bound, unsigned pole_bound)
{
    return run_check("punctured_plane_cocycles", [&](Report& r) {
        auto A = make_scheme(SchemeSpec{"A2", {"x", "y"}, {}, {}, {}, {}});
        CoverDatum split;
        split.name = "D(x),D(y):x_inv-y_inv";
        split.ring = A;
        split.chart_names = {"D(x)", "D(y)"};
        split.localizers = {A->var("x"), A->var("y")};
        split.transitions = {Transition{0, 1, A->var("y") - A->var("x"), A->var("x") * A->var("y"), 1}};
        CoverDatum nontrivial = split;
        nontrivial.name = "D(x),D(y):x_inv*y_inv";
        nontrivial.transitions = {Transition{0, 1, A->constant(1), A->var("x") * A->var("y"), 1}};
        r.step(cocycle_check(split));
        r.step(cocycle_check(nontrivial));
        r.step(coboundary_solve(split, degree_bound, pole_bound, true));
        r.step(coboundary_solve(nontrivial, degree_bound, pole_bound, false));
    });
}

}  // namespace lndkit
