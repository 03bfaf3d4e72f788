// Acceptance run: one line per criterion, nonzero exit if any fails.
#include "lndkit/constructions.hpp"
#include "lndkit/errors.hpp"
#include "lndkit/groebner.hpp"
#include "lndkit/modification.hpp"
#include "lndkit/suite.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace lndkit;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream notes;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            notes << "  failed: " << what << "\n";
        }
    }
    void expect(const Report& r)
    {
        if (!r.passed()) {
            ok = false;
            notes << render_text(r, -1);
        }
    }
};

Derivation deformed_cubic_derivation()
{
    auto W = make_scheme(SchemeSpec{"W", {"x", "t", "u", "v", "w"}, {"alpha"}, {"v^2*t^3 - x^2*u - 1"}, {}, {}});
    return make_derivation("delta_alpha", W,
                           std::map<std::string, std::string>{{"x", "0"},
                                                              {"t", "0"},
                                                              {"u", "2*v*t^3"},
                                                              {"v", "x^2"},
                                                              {"w", "(1/2)*(1 + alpha*t)*x - t^3"}});
}

const std::vector<FamilyParams> kYInstances{FamilyParams{2, 2, 3, "1", {}},
                                            FamilyParams{2, 2, 3, "1 + alpha*t", {"alpha"}},
                                            FamilyParams{3, 2, 2, "1", {}}};

void lnd_certificates(Outcome& o)
{
    std::vector<Derivation> ds;
    for (unsigned m = 1; m <= 4; ++m)
        ds.push_back(build_Xm(m).derivation);
    ds.push_back(build_Xmnr(2, 2, 3).derivation);
    for (const auto& p : kYInstances)
        ds.push_back(build_Y(p).derivation);
    ds.push_back(deformed_cubic_derivation());
    for (const auto& d : ds) {
        o.expect(d.certified, "well-definedness of " + d.name + " on " + d.scheme->name());
        o.expect(is_locally_nilpotent(d, 32));
    }
}

void phi_identity(Outcome& o)
{
    std::mt19937 rng(2024);
    auto V = VarTable::make({"x", "y", "t", "x_inv"});
    for (unsigned m = 1; m <= 4; ++m) {
        o.expect(phi_trivialization(m));
        Poly P = phi_polynomial(m, V, "x_inv", "y", "t");
        for (int k = 0; k < 20; ++k) {
            auto pt = oracle::random_point(*V, rng);
            Rational lhs = oracle::power(pt["x"] + pt["t"] * pt["y"], m) * oracle::power(pt["x_inv"], m) -
                           pt["y"] * oracle::evaluate(P, pt);
            o.expect(lhs == 1, "identity at a random point, m=" + std::to_string(m));
        }
    }
}

void crt(Outcome& o)
{
    for (unsigned m : {2u, 3u})
        o.expect(fiber_ring_decomposition(m));
}

void slices(Outcome& o)
{
    for (auto [m, n, r] : {std::array<unsigned, 3>{2, 1, 1}, {2, 2, 3}, {3, 1, 2}})
        o.expect(slice_charts(m, n, r));
}

void fixed_loci(Outcome& o)
{
    auto y = build_Y(kYInstances[0]);
    const auto& X = *y.scheme;
    o.expect(compare_radical(fixed_locus(y.derivation), Ideal(X.vars(), {X.var("x"), X.var("y"), X.var("t")}),
                             "fixed locus of Y(2,2,3,1)"));
    for (unsigned m = 1; m <= 4; ++m)
        o.expect(fixed_locus(build_Xm(m).derivation).is_unit(), "fixed locus of d_" + std::to_string(m) + " is empty");
}

void invariant_rings(Outcome& o)
{
    for (unsigned m = 1; m <= 4; ++m) {
        auto f = build_Xm(m);
        const auto& X = *f.scheme;
        auto K = kernel_search(f.derivation, 3, Grading::Box);
        o.expect(K.size() == 16, "kernel of d_" + std::to_string(m) + " has dimension 16 in degrees <= 3");
        for (unsigned a = 0; a <= 3; ++a)
            for (unsigned b = 0; b <= 3; ++b)
                o.expect(span_contains(K, X.var("y").pow(a) * X.var("v").pow(b), X.ideal()),
                         "y^" + std::to_string(a) + "*v^" + std::to_string(b) + " in the kernel");
        o.expect(invariant_ring_Xm(m, 3));
    }
    auto d = deformed_cubic_derivation();
    const auto& W = *d.scheme;
    auto K = kernel_search(d, 3, Grading::Box);
    Poly q = W.parse("((1/2)*(1 + alpha*t)*x - t^3)*v - x^2*w");
    for (const auto& p : {W.var("x"), W.var("t"), q})
        o.expect(span_contains(K, p, W.ideal()), "kernel contains " + p.to_string());
    Poly num = q * q - W.parse("t^3") + W.parse("x*(1 + alpha*t)");
    Poly z = invariant_division(d, num, W.parse("x^2"));
    o.expect(W.is_zero(d.apply(z)), "z_q is invariant");
    o.expect(W.is_zero(W.parse("x^2") * z - num), "x^2*z_q = q^2 - t^3 + x*(1 + alpha*t)");
    o.expect(deformed_russell_cubic());
}

void modifications(Outcome& o)
{
    for (const auto& p : kYInstances)
        o.expect(verify_modification_is_Y(p));
}

void cocycles(Outcome& o)
{
    auto A = make_scheme(SchemeSpec{"A2", {"x", "y"}, {}, {}, {}, {}});
    CoverDatum c;
    c.name = "punctured plane";
    c.ring = A;
    c.chart_names = {"D(x)", "D(y)"};
    c.localizers = {A->var("x"), A->var("y")};
    c.transitions = {Transition{0, 1, A->constant(1), A->parse("x*y"), 1}};
    auto none = coboundary_solve(c, 6, 6, false);
    o.expect(none);
    o.expect(none.message == "no solution within bounds", "x_inv*y_inv has no coboundary within degree 6, pole 6");
    c.transitions = {Transition{0, 1, A->parse("y - x"), A->parse("x*y"), 1}};
    CoboundarySolution sol;
    o.expect(coboundary_solve(c, 6, 6, true, &sol));
    o.expect(sol.found, "x_inv - y_inv is a coboundary");
    o.expect(punctured_plane_cocycles(6, 6));
}

void engine_soundness(Outcome& o)
{
    auto& stats = engine_stats();
    stats.verify_every_basis = true;
    unsigned long failures_before = stats.verification_failures;
    unsigned long verified_before = stats.bases_verified;
    std::mt19937 rng(99);
    auto V = VarTable::make({"x", "y", "z"});
    int checked = 0;
    for (int k = 0; k < 1000; ++k) {
        std::vector<Poly> gens;
        for (int g = 0; g < 2; ++g)
            gens.push_back(oracle::random_poly(V, rng, 3, 2, 3));
        Ideal I(V, gens);
        Poly p = oracle::random_poly(V, rng, 4, 3, 3);
        Poly a = oracle::random_poly(V, rng, 2, 1, 3);
        Poly b = oracle::random_poly(V, rng, 2, 1, 3);
        Poly member = a * gens[0] + b * gens[1];
        try {
            Poly nf = I.normal_form(p);
            o.expect(I.normal_form(nf) == nf, "normal-form idempotence");
            o.expect(I.member(p) == nf.is_zero(), "membership agrees with the normal form");
            o.expect(I.member(p - nf), "p - NF(p) lies in the ideal");
            o.expect(I.member(member) && I.normal_form(member).is_zero(), "combinations of generators are members");
            o.expect(I.normal_form(p + member) == nf, "normal form is constant on cosets");
            ++checked;
        }
        catch (const BudgetExceeded&) {
        }
    }
    o.expect(checked >= 990, "at least 990 instances completed within the budget");
    for (unsigned m = 1; m <= 3; ++m)
        (void)check_Xm(m);
    o.expect(stats.bases_verified > verified_before, "bases were re-verified");
    o.expect(stats.verification_failures == failures_before, "every cached basis satisfies the Buchberger criterion");
    o.notes << "  instances: " << checked << ", bases verified: " << stats.bases_verified - verified_before << "\n";
    stats.verify_every_basis = false;
}

void determinism(Outcome& o)
{
    SuiteOptions a;
    SuiteOptions b;
    b.run.jobs = 4;
    auto ra = family_suite(a);
    auto rb = family_suite(b);
    o.expect(to_json(ra, false) == to_json(rb, false), "identical machine reports");
    for (const auto& r : ra)
        o.expect(r);
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"LND certificates", lnd_certificates},
        {"trivialization identity", phi_identity},
        {"fiber ring decomposition", crt},
        {"slice charts", slices},
        {"fixed loci", fixed_loci},
        {"bounded invariant rings", invariant_rings},
        {"affine modifications", modifications},
        {"cocycles and coboundaries", cocycles},
        {"engine soundness", engine_soundness},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        }
        catch (const std::exception& e) {
            o.ok = false;
            o.notes << "  exception: " << e.what() << "\n";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
        std::cout << o.notes.str() << std::flush;
        failed += o.ok ? 0 : 1;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
