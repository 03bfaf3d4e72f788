#include "lndkit/budget.hpp"
#include "lndkit/errors.hpp"
#include "lndkit/ideal.hpp"
#include "lndkit/linalg.hpp"
#include "lndkit/parse.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace lndkit;

namespace {

struct Ring {
    VarTablePtr V;
    explicit Ring(std::vector<std::string> names) : V(VarTable::make(std::move(names))) {}
    Poly operator()(const char* s) const { return parse_poly(s, V); }
    Ideal ideal(std::vector<const char*> gens) const
    {
        std::vector<Poly> g;
        for (auto s : gens)
            g.push_back(parse_poly(s, V));
        return Ideal(V, g);
    }
};

std::vector<TermList> terms_of(const std::vector<Poly>& basis, const MonomialOrder& order)
{
    std::vector<TermList> out;
    for (const auto& g : basis)
        out.push_back(sorted_terms(g, order));
    return out;
}

}  // namespace

TEST_CASE("groebner basis examples")
{
    Ring R({"x", "y"});
    auto lex = MonomialOrder::lex(2);
    auto G = R.ideal({"x^2 - y"}).groebner_basis(lex);
    REQUIRE(G.size() == 1);
    CHECK(G[0] == R("x^2 - y"));
    auto U = R.ideal({"1"}).groebner_basis();
    REQUIRE(U.size() == 1);
    CHECK(U[0] == R("1"));
    CHECK(R.ideal({"x", "x - 1"}).is_unit());
}

TEST_CASE("elimination of the twisted cubic parameter")
{
    Ring R({"x", "y", "z", "t"});
    Ideal I = R.ideal({"x - t", "y - t^2", "z - t^3"});
    auto order = MonomialOrder::elimination(4, {3});
    const auto& G = I.groebner_basis(order);
    bool has_y = false, has_z = false;
    for (const auto& g : G) {
        has_y = has_y || g == R("y - x^2") || g == R("x^2 - y");
        has_z = has_z || g == R("z - x^3") || g == R("x^3 - z");
    }
    CHECK(I.member(R("y - x^2")));
    CHECK(I.member(R("z - x^3")));
    Ideal E = eliminate_to(I, {"t"});
    CHECK(E.vars()->size() == 3);
    auto V3 = E.vars();
    CHECK(E.member(parse_poly("y - x^2", V3)));
    CHECK(E.member(parse_poly("z - x^3", V3)));
    CHECK(E.member(parse_poly("x*z - y^2", V3)));
    CHECK_FALSE(E.member(parse_poly("x - y", V3)));
    (void)has_y;
    (void)has_z;
}

TEST_CASE("normal forms")
{
    Ring R({"x", "y"});
    CHECK(R.ideal({"x^2 - y"}).normal_form(R("x^2")) == R("y"));
    CHECK(R.ideal({"x^2 - y"}).normal_form(Poly(R.V)).is_zero());
    Ring X({"x", "y", "u", "v"});
    Ideal I = X.ideal({"x^2*v - y*u - 1"});
    // Under grevlex the leading term is x^2*v, so y*u is already reduced.
    CHECK(I.normal_form(X("y*u")) == X("y*u"));
    // With y and u leading, one division step rewrites y*u to x^2*v - 1.
    auto order = MonomialOrder::from_blocks({{1}, {2}, {0}, {3}});
    CHECK(I.normal_form(X("y*u"), order) == X("x^2*v - 1"));
}

TEST_CASE("membership")
{
    Ring R({"x", "y"});
    CHECK(R.ideal({"x^2 - y", "x"}).member(R("y")));
    CHECK_FALSE(R.ideal({"x", "y"}).member(R("1")));
    Ring X({"x", "y", "u", "v"});
    CHECK(X.ideal({"x^2*v - y*u - 1"}).member(X("x^2*v - y*u - 1")));
}

TEST_CASE("elimination examples")
{
    Ring R({"x", "y", "t"});
    Ideal E = elimination_ideal(R.ideal({"x - t", "y - t^2"}), {"t"});
    CHECK(ideals_equal(E, R.ideal({"y - x^2"})));
    Ideal I = R.ideal({"x*y - t", "y^2"});
    CHECK(ideals_equal(elimination_ideal(I, {}), I));
    Ring M({"x", "y", "t", "Z", "w"});
    Ideal rees = M.ideal({"1 - x^2*w", "Z - (y^2 - t^3 + x)*w"});
    CHECK(ideals_equal(elimination_ideal(rees, {"w"}), M.ideal({"x^2*Z - (y^2 - t^3 + x)"})));
}

TEST_CASE("saturation examples")
{
    Ring R({"x", "y"});
    CHECK(ideals_equal(saturate(R.ideal({"x*y"}), R("x")), R.ideal({"y"})));
    CHECK(ideals_equal(saturate(R.ideal({"x^2*y"}), R("x")), R.ideal({"y"})));
    Ideal I = R.ideal({"x^2 + y", "x*y^3"});
    CHECK(ideals_equal(saturate(I, R("1")), I));
}

TEST_CASE("units, radicals and comaximality")
{
    Ring L({"x", "x_inv"});
    auto inv = is_unit_mod(L("x"), L.ideal({"x*x_inv - 1"}));
    REQUIRE(inv);
    CHECK(*inv == L("x_inv"));
    Ring R({"x", "y"});
    CHECK_FALSE(is_unit_mod(R("x"), R.ideal({"x*y"})));
    Ring B({"x1", "x2", "x1_inv", "x2_inv"});
    Ideal laurent_R = B.ideal({"x1*x1_inv - 1", "x2*x2_inv - 1", "x1_inv + x2_inv"});
    auto u = is_unit_mod(B("x1 - x2"), laurent_R);
    REQUIRE(u);
    CHECK(laurent_R.member(*u * B("x1 - x2") - B("1")));

    CHECK(radical_member(R("x"), R.ideal({"x^2"})));
    CHECK_FALSE(radical_member(R("y"), R.ideal({"x"})));
    Ring Y({"x", "y", "z", "t"});
    CHECK(radical_member(Y("t"), Y.ideal({"x^2*z - y^2 + t^3 - x", "x^2", "2*y"})));

    CHECK(ideals_equal(R.ideal({"x", "y"}), R.ideal({"y", "x + y"})));
    CHECK_FALSE(ideals_equal(R.ideal({"x^2"}), R.ideal({"x"})));

    auto c = comaximal(R.ideal({"x"}), R.ideal({"x - 1"}));
    REQUIRE(c);
    CHECK(c->first + c->second == R("1"));
    CHECK(R.ideal({"x"}).member(c->first));
    CHECK(R.ideal({"x - 1"}).member(c->second));
    CHECK_FALSE(comaximal(R.ideal({"x"}), R.ideal({"y"})));
    auto c2 = comaximal(B.ideal({"x1*x1_inv - 1", "x2*x2_inv - 1", "x1_inv - x2_inv"}),
                        B.ideal({"x1*x1_inv - 1", "x2*x2_inv - 1", "x1_inv + x2_inv"}));
    CHECK(c2.has_value());
}

TEST_CASE("intersection, lift and division modulo an ideal")
{
    Ring R({"x", "y"});
    CHECK(ideals_equal(intersect(R.ideal({"x"}), R.ideal({"y"})), R.ideal({"x*y"})));
    Ideal I = R.ideal({"x^2 - y", "x*y - 1"});
    Poly p = R("x^3 - 1");
    auto cof = lift(p, I);
    REQUIRE(cof);
    Poly sum(R.V);
    for (std::size_t k = 0; k < cof->size(); ++k)
        sum += (*cof)[k] * I.generators()[k];
    CHECK(sum == p);
    CHECK_FALSE(lift(R("x"), R.ideal({"x^2", "y"})));
    auto q = divide_mod(R("x^2"), R("x"), R.ideal({"y"}));
    REQUIRE(q);
    CHECK(R.ideal({"y"}).member(*q * R("x") - R("x^2")));
    CHECK_FALSE(divide_mod(R("1"), R("x"), R.ideal({"y"})));
}

TEST_CASE("budgets turn runaway computations into BudgetExceeded")
{
    Ring R({"a", "b", "c", "d", "e"});
    // cyclic-5
    Ideal I = R.ideal({"a + b + c + d + e", "a*b + b*c + c*d + d*e + e*a", "a*b*c + b*c*d + c*d*e + d*e*a + e*a*b",
                       "a*b*c*d + b*c*d*e + c*d*e*a + d*e*a*b + e*a*b*c", "a*b*c*d*e - 1"});
    Budget tiny;
    tiny.max_pairs = 10;
    BudgetScope scope(tiny);
    CHECK_THROWS_AS(I.groebner_basis(), BudgetExceeded);
}

TEST_CASE("property: Buchberger postcondition, NF idempotence and linearity, membership agreement")
{
    Ring R({"x", "y", "z"});
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Poly> gens;
        for (int k = 0; k < 3; ++k)
            gens.push_back(oracle::random_poly(R.V, rng, 3, 2));
        Ideal I(R.V, gens);
        auto grevlex = MonomialOrder::grevlex(3);
        CHECK(is_groebner_basis(terms_of(I.groebner_basis(grevlex), grevlex), grevlex));
        // Lex order on multilinear generators.
        std::vector<Poly> linear;
        for (int k = 0; k < 3; ++k)
            linear.push_back(oracle::random_poly(R.V, rng, 3, 1));
        auto lex = MonomialOrder::lex(3);
        CHECK(is_groebner_basis(terms_of(Ideal(R.V, linear).groebner_basis(lex), lex), lex));
        Poly a = oracle::random_poly(R.V, rng), b = oracle::random_poly(R.V, rng);
        Poly na = I.normal_form(a), nb = I.normal_form(b);
        CHECK(I.normal_form(na) == na);
        CHECK(I.normal_form(a + b) == I.normal_form(na + nb));
        Poly inside = a * gens[0] + b * gens[1];
        CHECK(I.member(inside));
        CHECK(I.normal_form(inside).is_zero());
        CHECK(I.member(a) == I.normal_form(a).is_zero());
        CHECK(I.normal_form(a - na).is_zero());
    }
}

TEST_CASE("property: elimination on random graph ideals")
{
    Ring R({"x", "y", "z", "t"});
    std::mt19937 rng(5);
    auto T = VarTable::make({"t"});
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Poly> f;
        for (int k = 0; k < 3; ++k)
            f.push_back(oracle::random_poly(T, rng, 2, 3));
        Ideal I(R.V, {R("x") - embed(f[0], R.V), R("y") - embed(f[1], R.V), R("z") - embed(f[2], R.V)});
        Ideal E = elimination_ideal(I, {"t"});
        std::map<std::string, Poly> param{{"x", embed(f[0], R.V)}, {"y", embed(f[1], R.V)},
                                          {"z", embed(f[2], R.V)}, {"t", R("t")}};
        for (const auto& g : E.groebner_basis()) {
            CHECK_FALSE(g.involves(3));
            CHECK(substitute(g, param, R.V).is_zero());
        }
    }
}

TEST_CASE("property: saturation against a brute-force monomial colon oracle")
{
    Ring R({"x", "y", "z"});
    std::mt19937 rng(11);
    std::uniform_int_distribution<unsigned> e(0, 3);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Monomial> gens;
        for (int k = 0; k < 3; ++k) {
            Monomial m;
            for (std::size_t i = 0; i < 3; ++i)
                m.set(i, e(rng));
            gens.push_back(m);
        }
        std::vector<Poly> I_gens, colon;
        for (auto m : gens) {
            I_gens.push_back(Poly::monomial(R.V, m));
            m.set(0, 0);
            colon.push_back(Poly::monomial(R.V, m));
        }
        Ideal I(R.V, I_gens);
        Ideal S = saturate(I, R("x"));
        CHECK(ideals_equal(S, Ideal(R.V, colon)));
        CHECK(S.contains(I));
        for (int k = 0; k < 5; ++k) {
            Poly g = oracle::random_poly(R.V, rng, 2, 3);
            if (I.member(R("x") * g))
                CHECK(S.member(g));
        }
    }
}

TEST_CASE("linear algebra")
{
    LinearSystem sys;
    sys.ncols = 3;
    sys.add_row({{0, Rational(1)}, {1, Rational(2)}}, Rational(3));
    sys.add_row({{1, Rational(1)}, {2, Rational(-1)}}, Rational(1));
    auto sol = solve(sys);
    REQUIRE(sol);
    CHECK((*sol)[0] + 2 * (*sol)[1] == 3);
    CHECK((*sol)[1] - (*sol)[2] == 1);
    auto ker = nullspace(sys);
    REQUIRE(ker.size() == 1);
    LinearSystem bad;
    bad.ncols = 1;
    bad.add_row({{0, Rational(1)}}, Rational(1));
    bad.add_row({{0, Rational(2)}}, Rational(1));
    CHECK_FALSE(solve(bad));
}
