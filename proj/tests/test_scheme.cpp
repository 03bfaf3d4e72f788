#include "lndkit/errors.hpp"
#include "lndkit/scheme.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace lndkit;

namespace {

SchemePtr sl2()
{
    return make_scheme(SchemeSpec{"SL2", {"x", "y", "u", "v"}, {}, {"x*v - y*u - 1"}, {}, {}});
}

}  // namespace

TEST_CASE("scheme construction")
{
    auto X = sl2();
    CHECK(X->vars()->size() == 4);
    CHECK(X->presentation_size() == 1);
    auto U = make_scheme(SchemeSpec{"U", {"y", "x"}, {}, {}, {"x"}, {}});
    CHECK(U->vars()->contains("x_inv"));
    CHECK(ideals_equal(U->ideal(), Ideal(U->vars(), {U->parse("x*x_inv - 1")})));
    auto E = make_scheme(SchemeSpec{"E", {"z"}, {}, {}, {}, RootsOfUnity{"eps", 3}});
    CHECK(E->is_zero(E->parse("eps^2 + eps + 1")));
    CHECK(E->vars()->is_param(E->vars()->index("eps")));
    CHECK(cyclotomic(6, E->vars(), "eps") == E->parse("eps^2 - eps + 1"));
    CHECK(cyclotomic(4, E->vars(), "eps") == E->parse("eps^2 + 1"));
}

TEST_CASE("every normal form respects x*x_inv = 1")
{
    auto U = make_scheme(SchemeSpec{"U", {"x", "y"}, {}, {}, {"x", "y"}, {}});
    std::mt19937 rng(3);
    for (int k = 0; k < 20; ++k) {
        Poly p = oracle::random_poly(U->vars(), rng, 4, 3);
        Poly nf = U->normal_form(p);
        auto pt = oracle::random_point(*U->vars(), rng);
        CHECK(oracle::evaluate(nf, pt) == oracle::evaluate(p, pt));
    }
}

TEST_CASE("smoothness")
{
    auto X = sl2();
    auto s = smoothness_check(*X);
    CHECK(s.passed());
    auto C = make_scheme(SchemeSpec{"cone", {"x", "y", "z"}, {}, {"x*y - z^2"}, {}, {}});
    auto c = smoothness_check(*C);
    CHECK(c.status == Status::Fail);
    CHECK_FALSE(c.witnesses.empty());
    auto Y = make_scheme(SchemeSpec{"Y", {"x", "y", "z", "t"}, {}, {"x^2*z - (y^2 - t^3 + x)"}, {}, {}});
    CHECK(smoothness_check(*Y).passed());
}

TEST_CASE("morphisms")
{
    auto Ut = make_scheme(SchemeSpec{"UxA1", {"x", "y", "t"}, {}, {}, {"x"}, {}});
    auto X2 = make_scheme(SchemeSpec{"X2|U", {"x", "y", "u", "v"}, {}, {"x^2*v - y*u - 1"}, {"v"}, {}});
    auto phi = make_morphism("Phi", Ut, X2,
                             std::map<std::string, std::string>{{"x", "x + t*y"},
                                                                {"y", "y"},
                                                                {"u", "2*x_inv*t + x_inv^2*t^2*y"},
                                                                {"v", "x_inv^2"}});
    CHECK(phi.certified);
    // The partner of v goes to the inverse of x_inv^2.
    CHECK(Ut->equal(phi.image("v_inv"), Ut->parse("x^2")));
    auto id = identity_morphism(X2);
    CHECK(id.certified);
    auto c = compose(id, phi);
    for (std::size_t i = 0; i < X2->vars()->size(); ++i)
        CHECK(Ut->equal(c.images[i], phi.images[i]));

    // Phi followed by the projection to (y, v) is (y, x_inv^2).
    auto base = make_scheme(SchemeSpec{"k[y,v^+-1]", {"y", "v"}, {}, {}, {"v"}, {}});
    auto q = make_morphism("q", X2, base, std::map<std::string, std::string>{{"y", "y"}, {"v", "v"}});
    auto qphi = compose(q, phi);
    CHECK(qphi.image("y") == Ut->parse("y"));
    CHECK(Ut->equal(qphi.image("v"), Ut->parse("x_inv^2")));

    auto A = make_scheme(SchemeSpec{"k[x]/(x^2)", {"x"}, {}, {"x^2"}, {}, {}});
    auto B = make_scheme(SchemeSpec{"k[y]", {"y"}, {}, {}, {}, {}});
    auto bad = make_morphism("x->y", B, A, std::map<std::string, std::string>{{"x", "y"}});
    CHECK_FALSE(bad.certified);
    CHECK(bad.certificate.status == Status::Fail);
}

TEST_CASE("isomorphisms")
{
    auto A1 = make_scheme(SchemeSpec{"A1", {"x"}, {}, {}, {}, {}});
    auto f = make_morphism("shift", A1, A1, std::map<std::string, std::string>{{"x", "x + 1"}});
    auto g = make_morphism("unshift", A1, A1, std::map<std::string, std::string>{{"x", "x - 1"}});
    CHECK(is_isomorphism(f, g).passed());
    CHECK(is_isomorphism(identity_morphism(A1), identity_morphism(A1)).passed());
    auto sq = make_morphism("square", A1, A1, std::map<std::string, std::string>{{"x", "x^2"}});
    CHECK(is_isomorphism(sq, g).status == Status::Fail);
}

TEST_CASE("fiber products")
{
    auto pt = make_scheme(SchemeSpec{"pt", {}, {}, {}, {}, {}});
    auto A = make_scheme(SchemeSpec{"A", {"x"}, {}, {}, {}, {}});
    auto B = make_scheme(SchemeSpec{"B", {"y"}, {}, {}, {}, {}});
    auto fp = fiber_product(make_morphism("a", A, pt, std::map<std::string, Poly>{}),
                            make_morphism("b", B, pt, std::map<std::string, Poly>{}), "AxB");
    CHECK(fp.scheme->vars()->size() == 2);
    CHECK(fp.scheme->presentation_size() == 0);

    // Ytilde for Y(2,2,3,1) over U via t = lambda^2.
    auto Y = make_scheme(SchemeSpec{"Y|U", {"x", "y", "z", "t"}, {}, {"x^2*z - (y^2 - t^3 + x)"}, {"t"}, {}});
    auto U = make_scheme(SchemeSpec{"U", {"x", "t"}, {}, {}, {"t"}, {}});
    auto Ut = make_scheme(SchemeSpec{"Ut", {"x", "lambda"}, {}, {}, {"lambda"}, {}});
    auto q = make_morphism("q", Y, U, std::map<std::string, std::string>{{"x", "x"}, {"t", "t"}});
    auto c = make_morphism("c", Ut, U, std::map<std::string, std::string>{{"x", "x"}, {"t", "lambda^2"}});
    auto P = fiber_product(q, c, "Ytilde");
    auto direct = make_scheme(
        SchemeSpec{"Ytilde", {"x", "y", "z", "lambda"}, {}, {"x^2*z - y^2 + lambda^6 - x"}, {"lambda"}, {}});
    std::map<std::string, Poly> to_direct{{"x", direct->var("x")},       {"y", direct->var("y")},
                                          {"z", direct->var("z")},       {"t", direct->parse("lambda^2")},
                                          {P.renamed.at("x"), direct->var("x")}, {"lambda", direct->var("lambda")}};
    std::map<std::string, Poly> from{{"x", P.scheme->var("x")}, {"y", P.scheme->var("y")},
                                     {"z", P.scheme->var("z")}, {"lambda", P.scheme->var("lambda")}};
    auto f1 = make_morphism("to", direct, P.scheme, to_direct);
    auto f2 = make_morphism("from", P.scheme, direct, from);
    CHECK(is_isomorphism(f1, f2).passed());

    // X x_S S via the identity is X.
    auto id = identity_morphism(U);
    auto Q = fiber_product(q, id, "Y|U x U");
    std::map<std::string, Poly> back;
    for (const auto& n : Y->vars()->names())
        back.emplace(n, Q.scheme->var(n));
    std::map<std::string, Poly> there;
    for (const auto& n : Y->vars()->names())
        there.emplace(n, Y->var(n));
    // The copy of U sits inside Y through q.
    for (const auto& [orig, renamed] : Q.renamed)
        there[renamed] = q.image(orig);
    CHECK(is_isomorphism(make_morphism("in", Y, Q.scheme, there), make_morphism("out", Q.scheme, Y, back)).passed());
}

TEST_CASE("fiber product is symmetric up to renaming")
{
    auto S = make_scheme(SchemeSpec{"S", {"s"}, {}, {}, {}, {}});
    auto A = make_scheme(SchemeSpec{"A", {"a", "s"}, {}, {"a^2 - s"}, {}, {}});
    auto B = make_scheme(SchemeSpec{"B", {"b", "s"}, {}, {"b^3 - s"}, {}, {}});
    auto fa = make_morphism("fa", A, S, std::map<std::string, std::string>{{"s", "s"}});
    auto fb = make_morphism("fb", B, S, std::map<std::string, std::string>{{"s", "s"}});
    auto AB = fiber_product(fa, fb, "AxB");
    auto BA = fiber_product(fb, fa, "BxA");
    const auto& X = *AB.scheme;
    const auto& Y = *BA.scheme;
    std::map<std::string, Poly> to_AB{{"a", Y.var("a")}, {"b", Y.var("b")}, {"s", Y.var("s")},
                                      {AB.renamed.at("s"), Y.var("s")}};
    std::map<std::string, Poly> to_BA{{"a", X.var("a")}, {"b", X.var("b")}, {"s", X.var("s")},
                                      {BA.renamed.at("s"), X.var("s")}};
    CHECK(is_isomorphism(make_morphism("swap", BA.scheme, AB.scheme, to_AB),
                         make_morphism("swap_back", AB.scheme, BA.scheme, to_BA))
              .passed());
}
