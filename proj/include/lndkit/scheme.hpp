#pragma once

#include "lndkit/ideal.hpp"
#include "lndkit/poly.hpp"
#include "lndkit/report.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lndkit {

struct RootsOfUnity {
    std::string symbol;
    unsigned order = 1;
};

// An inverted element: the partner variable w comes with the relation w*f - 1.
struct Localizer {
    std::string partner;
    Poly element;
};

// Affine scheme Spec k[vars]/ideal. Inverted variables (and, more generally,
// inverted elements) are realized by partner variables; a root of unity is a
// parameter variable subject to its cyclotomic polynomial.
class Scheme {
public:
    Scheme(std::string name, VarTablePtr vars, std::vector<Poly> relations, std::vector<Localizer> localizers = {},
           std::optional<RootsOfUnity> roots = std::nullopt);

    const std::string& name() const { return name_; }
    const VarTablePtr& vars() const { return vars_; }
    const Ideal& ideal() const { return ideal_; }
    // Defining relations other than the localization and cyclotomic ones.
    const std::vector<Poly>& relations() const { return relations_; }
    const std::vector<Localizer>& localizers() const { return localizers_; }
    const std::optional<RootsOfUnity>& roots() const { return roots_; }

    // Index into localizers() if `var` is a partner variable.
    std::optional<std::size_t> localizer_of(std::size_t var) const;
    bool is_partner(std::size_t var) const { return localizer_of(var).has_value(); }
    // Partner variable of an inverted variable.
    Poly inverse_of(std::string_view var) const;

    Poly var(std::string_view name) const { return Poly::variable(vars_, name); }
    Poly constant(const Rational& c) const { return Poly::constant(vars_, c); }
    Poly parse(std::string_view text) const;

    Poly normal_form(const Poly& p) const { return ideal_.normal_form(p); }
    bool is_zero(const Poly& p) const { return ideal_.member(p); }
    bool equal(const Poly& a, const Poly& b) const { return ideal_.member(a - b); }

    // Number of generators of the ideal (all relations including localizations).
    std::size_t presentation_size() const { return ideal_.generators().size(); }

    // The localization at f, with a new partner variable named from `partner_hint`.
    Scheme localized(const Poly& f, const std::string& partner_hint, std::string name) const;
    Scheme with_relations(const std::vector<Poly>& extra, std::string name) const;

private:
    std::string name_;
    VarTablePtr vars_;
    std::vector<Poly> relations_;
    std::vector<Localizer> localizers_;
    std::optional<RootsOfUnity> roots_;
    Ideal ideal_;
};

using SchemePtr = std::shared_ptr<const Scheme>;

// Builds the ambient variable table: geometric variables, then parameters, then
// a partner `<x>_inv` per inverted variable, then the root of unity (a parameter).
VarTablePtr scheme_vars(const std::vector<std::string>& vars, const std::vector<std::string>& params,
                        const std::vector<std::string>& inverted, const std::optional<RootsOfUnity>& roots);

struct SchemeSpec {
    std::string name;
    std::vector<std::string> vars;
    std::vector<std::string> params;
    std::vector<std::string> relations;
    std::vector<std::string> inverted;
    std::optional<RootsOfUnity> roots;
};

SchemePtr make_scheme(const SchemeSpec& spec);
SchemePtr make_scheme(std::string name, const VarTablePtr& vars, std::vector<Poly> relations,
                      const std::vector<std::string>& inverted = {}, std::optional<RootsOfUnity> roots = std::nullopt);

// The m-th cyclotomic polynomial in the given variable.
Poly cyclotomic(unsigned m, const VarTablePtr& vars, std::string_view var);

// Jacobian criterion for the full presentation (a complete intersection of
// `presentation_size()` equations, or of `codimension` equations if given).
Report smoothness_check(const Scheme& X, std::optional<std::size_t> codimension = std::nullopt);

// Ring map k[target] -> k[source] given by images of the target variables.
struct Morphism {
    std::string name;
    SchemePtr source;
    SchemePtr target;
    std::vector<Poly> images;  // one per target variable, over source variables
    bool certified = false;
    Report certificate;

    Poly pullback(const Poly& g) const;
    Poly image(std::string_view target_var) const;
};

// Unspecified parameters (and the root of unity) map to the same-named source
// variable; partner variables map to the inverse of the image of their element.
// The result carries a certificate; ill-defined maps come back uncertified with
// the offending generator as witness.
Morphism make_morphism(std::string name, SchemePtr source, SchemePtr target, const std::map<std::string, Poly>& images);
Morphism make_morphism(std::string name, SchemePtr source, SchemePtr target,
                       const std::map<std::string, std::string>& images);
Morphism identity_morphism(const SchemePtr& X);

// The certificate of f as a step named well_defined(<name>).
Report well_defined(const Morphism& f);

// f after g: source(g) -> target(f).
Morphism compose(const Morphism& f, const Morphism& g);

// Both composites are the identity on generators.
Report is_isomorphism(const Morphism& f, const Morphism& g);

// X x_S Y. Names of Y colliding with X get the suffix `_r`.
struct FiberProduct {
    SchemePtr scheme;
    Morphism to_left;   // projection to X
    Morphism to_right;  // projection to Y
    std::map<std::string, std::string> renamed;  // names of Y -> names in the product
};

FiberProduct fiber_product(const Morphism& f, const Morphism& g, std::string name);

}  // namespace lndkit
