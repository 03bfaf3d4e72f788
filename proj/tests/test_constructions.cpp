#include "lndkit/constructions.hpp"
#include "lndkit/errors.hpp"
#include "lndkit/parse.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace lndkit;

namespace {

const Report* find_step(const Report& r, const std::string& prefix)
{
    if (r.check.rfind(prefix, 0) == 0)
        return &r;
    for (const auto& s : r.steps)
        if (auto f = find_step(s, prefix))
            return f;
    return nullptr;
}

std::string witness(const Report& r, const std::string& label)
{
    for (const auto& w : r.witnesses)
        if (w.label == label)
            return w.value;
    return {};
}

}  // namespace

TEST_CASE("X_m family")
{
    auto f1 = build_Xm(1);
    CHECK(f1.scheme->relations().front() == f1.scheme->parse("x*v - y*u - 1"));
    CHECK(f1.derivation.image("u") == f1.scheme->parse("v"));
    auto f2 = build_Xm(2);
    CHECK(nilpotency_degree(f2.derivation, f2.scheme->var("x")) == 2u);
    CHECK(nilpotency_degree(f2.derivation, f2.scheme->var("u")) == 3u);
    for (unsigned m = 1; m <= 4; ++m) {
        auto r = check_Xm(m);
        CHECK_MESSAGE(r.passed(), render_text(r, -1));
        CHECK(fixed_locus(build_Xm(m).derivation).is_unit());
    }
    CHECK_THROWS_AS(build_Xm(0), InvalidArgument);
}

TEST_CASE("X(m,n,r) family")
{
    for (unsigned m = 1; m <= 3; ++m) {
        auto a = build_Xm(m);
        auto b = build_Xmnr(m, 1, 1);
        CHECK(ideals_equal(a.scheme->ideal(), b.scheme->ideal()));
        for (std::size_t i = 0; i < a.derivation.images.size(); ++i)
            CHECK(a.derivation.images[i] == b.derivation.images[i]);
    }
    auto f = build_Xmnr(2, 2, 3);
    CHECK(f.derivation.certified);
    CHECK(f.derivation.apply_raw(f.scheme->relations().front()).is_zero());
    CHECK_THROWS_AS(build_Xmnr(2, 1, 2), InvalidArgument);
    CHECK(check_Xmnr(3, 1, 2).passed());
}

TEST_CASE("Y family")
{
    auto y1 = build_Y(FamilyParams{2, 2, 3, "1", {}});
    CHECK(ideals_equal(y1.scheme->ideal(), Ideal(y1.scheme->vars(), {y1.scheme->parse("x^2*z - (y^2 - t^3 + x)")})));
    auto ya = build_Y(FamilyParams{2, 2, 3, "1 + alpha*t", {"alpha"}});
    CHECK(ya.scheme->vars()->is_param(ya.scheme->vars()->index("alpha")));
    CHECK(ya.derivation.image("z") == ya.scheme->parse("2*y"));
    auto y3 = build_Y(FamilyParams{3, 2, 2, "1", {}});
    CHECK(y3.derivation.certified);
    CHECK(y3.scheme->is_zero(y3.derivation.apply_raw(y3.scheme->relations().front())));
    CHECK_THROWS_AS(validate(FamilyParams{2, 2, 4, "1", {}}), InvalidArgument);
    CHECK_THROWS_AS(validate(FamilyParams{2, 1, 3, "1", {}}), InvalidArgument);
    CHECK_THROWS_AS(validate(FamilyParams{2, 2, 3, "x", {}}), InvalidArgument);
    for (const auto& p : {FamilyParams{2, 2, 3, "1", {}}, FamilyParams{2, 2, 3, "1 + alpha*t", {"alpha"}},
                          FamilyParams{3, 2, 2, "1", {}}})
        CHECK(check_Y(p).passed());
}

TEST_CASE("trivialization over the punctured line")
{
    auto V = VarTable::make({"x", "y", "t", "x_inv"});
    CHECK(phi_polynomial(1, V, "x_inv", "y", "t") == parse_poly("x_inv*t", V));
    CHECK(phi_polynomial(2, V, "x_inv", "y", "t") == parse_poly("2*x_inv*t + x_inv^2*t^2*y", V));
    std::mt19937 rng(4);
    for (unsigned m = 1; m <= 4; ++m) {
        auto r = phi_trivialization(m);
        CHECK_MESSAGE(r.passed(), render_text(r, -1));
        // Evaluation oracle for the identity (x + t y)^m x_inv^m - y P = 1.
        Poly P = phi_polynomial(m, V, "x_inv", "y", "t");
        for (int k = 0; k < 5; ++k) {
            auto pt = oracle::random_point(*V, rng);
            Rational lhs = oracle::power(pt["x"] + pt["t"] * pt["y"], m) * oracle::power(pt["x_inv"], m) -
                           pt["y"] * oracle::evaluate(P, pt);
            CHECK(lhs == 1);
        }
    }
    auto r3 = phi_trivialization(3);
    CHECK(find_step(r3, "dP/dt(x,0,t) = m*x_inv")->passed());
    CHECK(find_step(r3, "jacobian_rank_3")->passed());
}

TEST_CASE("fiber ring decomposition")
{
    for (unsigned m : {2u, 3u}) {
        auto r = fiber_ring_decomposition(m);
        CHECK_MESSAGE(r.passed(), render_text(r, -1));
        REQUIRE(find_step(r, "series_factor_S"));
        CHECK_FALSE(witness(*find_step(r, "series_factor_S"), "S").empty());
    }
    // m = 2: R = x1_inv + x2_inv.
    auto r2 = fiber_ring_decomposition(2);
    CHECK(find_step(r2, "x1_inv^m - x2_inv^m")->passed());
    CHECK(find_step(r2, "y_unit_in_B1")->passed());
    CHECK(find_step(r2, "isomorphism(B0")->passed());
}

TEST_CASE("slice charts")
{
    for (auto [m, n, r] : {std::array<unsigned, 3>{2, 1, 1}, {2, 2, 3}, {3, 1, 2}}) {
        auto rep = slice_charts(m, n, r);
        CHECK_MESSAGE(rep.passed(), render_text(rep, -1));
        CHECK(find_step(rep, "cocycle(")->passed());
        CHECK(find_step(rep, "chart(i=0)")->passed());
    }
    auto rep = slice_charts(2, 2, 3);
    // m = 2 gives eps = -1 and eps^0 - eps^3 = 2.
    const Report* u = find_step(rep, "unit(eps^(r*0) - eps^(r*1))");
    REQUIRE(u);
    CHECK(u->passed());
    CHECK(witness(*u, "inverse") == "1/2");
    CHECK(slice_charts(2, 1, 2).status == Status::Error);
}

TEST_CASE("cocycles and coboundaries")
{
    auto A = make_scheme(SchemeSpec{"A2", {"x", "y"}, {}, {}, {}, {}});
    CoverDatum split;
    split.name = "split";
    split.ring = A;
    split.chart_names = {"D(x)", "D(y)"};
    split.localizers = {A->var("x"), A->var("y")};
    split.transitions = {Transition{0, 1, A->parse("y - x"), A->parse("x*y"), 1}};
    CHECK(cocycle_check(split).passed());
    CoboundarySolution sol;
    CHECK(coboundary_solve(split, 6, 6, true, &sol).passed());
    REQUIRE(sol.found);
    // Oracle: h_j - h_i equals g at a random point.
    std::mt19937 rng(12);
    for (int k = 0; k < 5; ++k) {
        auto pt = oracle::random_point(*A->vars(), rng);
        auto h = [&](std::size_t i) -> Rational {
            return oracle::evaluate(sol.numerators[i], pt) /
                   oracle::power(oracle::evaluate(split.localizers[i], pt), sol.pole);
        };
        CHECK(h(1) - h(0) == 1 / pt["x"] - 1 / pt["y"]);
    }

    CoverDatum nontrivial = split;
    nontrivial.transitions = {Transition{0, 1, A->parse("1"), A->parse("x*y"), 1}};
    auto r = coboundary_solve(nontrivial, 6, 6, false);
    CHECK(r.passed());
    CHECK(r.message == "no solution within bounds");
    CHECK(coboundary_solve(nontrivial, 6, 6, true).status == Status::Fail);

    // Antisymmetry and the triple identity with a perturbed transition.
    auto U = make_scheme(SchemeSpec{"U", {"y", "lambda"}, {}, {}, {}, RootsOfUnity{"eps", 3}});
    CoverDatum three;
    three.name = "three";
    three.ring = U;
    three.chart_names = {"0", "1", "2"};
    three.localizers = {U->constant(1), U->constant(1), U->constant(1)};
    auto g = [&](unsigned i, unsigned j) {
        return U->normal_form(U->var("lambda") * (U->var("eps").pow(i) - U->var("eps").pow(j)));
    };
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = i + 1; j < 3; ++j)
            three.transitions.push_back(Transition{i, j, g(i, j), U->var("y"), 1});
    CHECK(cocycle_check(three).passed());
    auto with_reverse = three;
    with_reverse.transitions.push_back(Transition{1, 0, -g(0, 1), U->var("y"), 1});
    CHECK(cocycle_check(with_reverse).passed());
    auto perturbed = three;
    perturbed.transitions[1].numerator = perturbed.transitions[1].numerator + U->var("lambda");
    CHECK(cocycle_check(perturbed).status == Status::Fail);
    auto bad_reverse = three;
    bad_reverse.transitions.push_back(Transition{1, 0, g(0, 1), U->var("y"), 1});
    CHECK(cocycle_check(bad_reverse).status == Status::Fail);

    auto pp = punctured_plane_cocycles();
    CHECK(pp.passed());
}

TEST_CASE("twists and mu-equivariance")
{
    auto Ut = make_scheme(SchemeSpec{"Ut", {"x", "lambda"}, {}, {}, {}, RootsOfUnity{"eps", 3}});
    auto U = make_scheme(SchemeSpec{"U", {"x", "t"}, {}, {}, {}, {}});
    auto cover = make_morphism("cover", Ut, U, std::map<std::string, std::string>{{"x", "x"}, {"t", "lambda^3"}});
    auto sigma = make_twist(make_morphism("rot", Ut, Ut, std::map<std::string, std::string>{{"x", "x"}, {"lambda", "eps*lambda"}}), 3);
    CHECK(sigma.certificate.passed());
    auto id3 = make_twist(identity_morphism(U), 3);
    CHECK(mu_equivariance(cover, sigma, id3).passed());
    CHECK(mu_equivariance(identity_morphism(Ut), sigma, sigma).passed());
    auto id2 = make_twist(identity_morphism(U), 2);
    CHECK(mu_equivariance(cover, sigma, id2).status == Status::Error);
    auto wrong_order = make_twist(sigma.automorphism, 2);
    CHECK(wrong_order.certificate.status == Status::Fail);
    // A cover that is not intertwined: t -> lambda.
    auto naive = make_morphism("naive", Ut, U, std::map<std::string, std::string>{{"x", "x"}, {"t", "lambda"}});
    CHECK(mu_equivariance(naive, sigma, id3).status == Status::Fail);
}

TEST_CASE("Y charts")
{
    auto r = y_charts(FamilyParams{2, 2, 3, "1", {}});
    CHECK_MESSAGE(r.passed(), render_text(r, -1));
    CHECK(find_step(r, "twist maps S_0 into S_1")->passed());
    CHECK(find_step(r, "twist maps S_1 into S_0")->passed());
    const Report* s0 = find_step(r, "surface(i=0)");
    REQUIRE(s0);
    CHECK(find_step(*s0, "invariant under")->passed());
    CHECK(find_step(*s0, "unit(")->passed());
    CHECK(y_charts(FamilyParams{2, 2, 3, "1 + alpha*t", {"alpha"}}).passed());
}

TEST_CASE("cylinder splitting")
{
    auto a = cylinder_splitting(1, 1, 1);
    CHECK_MESSAGE(a.passed(), render_text(a, -1));
    auto b = cylinder_splitting(2, 2, 3);
    CHECK_MESSAGE(b.passed(), render_text(b, -1));
    CHECK(find_step(b, "commutator(d1~,d2~)")->passed());
    CHECK(find_step(b, "torsor slice v*y_inv")->passed());
}

TEST_CASE("deformed Russell cubic")
{
    auto r = deformed_russell_cubic();
    CHECK_MESSAGE(r.passed(), render_text(r, -1));
    CHECK(find_step(r, "kernel contains q")->passed());
    CHECK(find_step(r, "x^2*z_q = q^2 - t^3 + x*(1 + alpha*t)")->passed());
}

TEST_CASE("invariant ring of the X_m derivation")
{
    for (unsigned m = 1; m <= 4; ++m) {
        auto r = invariant_ring_Xm(m, 3);
        CHECK_MESSAGE(r.passed(), render_text(r, -1));
        CHECK(witness(r, "kernel_dimension") == "16");
    }
}
