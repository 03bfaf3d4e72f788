#pragma once

#include "lndkit/monomial.hpp"
#include "lndkit/rational.hpp"
#include "lndkit/var_table.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lndkit {

struct Term {
    Monomial mono;
    Rational coef;
};

// A list of terms sorted strictly decreasing in some monomial order, no zero
// coefficients. The low-level currency of the Groebner engine.
using TermList = std::vector<Term>;

namespace terms {

void sort_and_combine(TermList& t, const MonomialOrder& order);
// a + scale * shift * b
TermList add_scaled(const TermList& a, const Rational& scale, const Monomial& shift, const TermList& b,
                    const MonomialOrder& order);
TermList add(const TermList& a, const TermList& b, const MonomialOrder& order);
TermList multiply(const TermList& a, const TermList& b, const MonomialOrder& order);
void scale(TermList& a, const Rational& c);

}  // namespace terms

// Exact sparse multivariate polynomial over the rationals. Terms are stored in
// canonical form: decreasing grevlex order with respect to the variable table,
// no zero coefficients. Values are immutable in practice and cheap to share.
class Poly {
public:
    Poly() = default;
    explicit Poly(VarTablePtr vars) : vars_(std::move(vars)) {}

    static Poly constant(VarTablePtr vars, const Rational& c);
    static Poly variable(VarTablePtr vars, std::string_view name);
    static Poly variable(VarTablePtr vars, std::size_t index);
    static Poly monomial(VarTablePtr vars, const Monomial& m, const Rational& c = 1);
    // Sorts and combines arbitrary terms.
    static Poly from_terms(VarTablePtr vars, TermList terms);

    const VarTablePtr& vars() const { return vars_; }
    const TermList& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    // Constant coefficient (0 if absent).
    Rational constant_term() const;
    unsigned total_degree() const;
    unsigned degree_in(std::size_t var) const;
    bool involves(std::size_t var) const { return degree_in(var) > 0; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    Poly scaled(const Rational& c) const;
    Poly pow(unsigned e) const;
    // Leading coefficient normalised to 1 (zero stays zero).
    Poly monic() const;

    Poly operator+(const Rational& c) const { return *this + constant(vars_, c); }
    Poly operator-(const Rational& c) const { return *this - constant(vars_, c); }
    Poly operator*(const Rational& c) const { return scaled(c); }

    std::string to_string() const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void require_compatible(const Poly& o, const char* op) const;

    VarTablePtr vars_;
    TermList terms_;
};

Poly partial_derivative(const Poly& p, std::string_view var);
Poly partial_derivative(const Poly& p, std::size_t var);

// Simultaneous substitution. Images must share one variable table, which becomes
// the table of the result; unmapped variables of `p` map to the same-named
// variable there. Throws UnknownVariable for map keys not in p's table or
// unmapped variables missing from the target table.
Poly substitute(const Poly& p, const std::map<std::string, Poly>& images);
Poly substitute(const Poly& p, const std::map<std::string, Poly>& images, const VarTablePtr& target);
// Image vector indexed by p's variables (all entries over `target`).
Poly substitute(const Poly& p, const std::vector<Poly>& images, const VarTablePtr& target);

// Re-expresses p over another table containing all variables p uses.
Poly embed(const Poly& p, const VarTablePtr& target);

// Exact quotient a / b if b divides a in the polynomial ring, else nullopt.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Integer binomial coefficient.
Integer binomial(unsigned n, unsigned k);

}  // namespace lndkit
