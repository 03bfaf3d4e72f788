#pragma once

#include "lndkit/lnd.hpp"
#include "lndkit/report.hpp"
#include "lndkit/scheme.hpp"

#include <string>
#include <vector>

namespace lndkit {

// Parameters of the hypersurface x^n z = y^m - t^r + x h(x, y, t).
struct FamilyParams {
    unsigned m = 2, n = 2, r = 3;
    std::string h = "1";               // expression in x, y, t and the parameters
    std::vector<std::string> params;   // formal parameters appearing in h
    std::string label() const;         // "m=2,n=2,r=3,h=1"
};

// Throws InvalidArgument on violated preconditions (gcd(m, r) = 1, n >= 2,
// h(0,0,0) nonzero).
void validate(const FamilyParams& p);

struct Family {
    SchemePtr scheme;
    Derivation derivation;
};

// x^m v - y u = 1 with d_m = y d/dx + m x^(m-1) v d/du and the torsor action
// x^m d/du + y d/dv.
struct XmFamily {
    SchemePtr scheme;
    Derivation derivation;
    Derivation torsor;
};

XmFamily build_Xm(unsigned m);
// x^m v^r - y^n u = 1 with y^n d/dx + m x^(m-1) v^r d/du.
Family build_Xmnr(unsigned m, unsigned n, unsigned r);
// x^n z = y^m - t^r + x h with x^n d/dy + (m y^(m-1) + x dh/dy) d/dz.
Family build_Y(const FamilyParams& p);

// The polynomial P(x, y, t) = sum_{k=1}^m C(m,k) (x_inv t)^k y^(k-1) over the table.
Poly phi_polynomial(unsigned m, const VarTablePtr& vars, std::string_view x_inv, std::string_view y,
                    std::string_view t);

// An automorphism of finite order.
struct GroupTwist {
    Morphism automorphism;
    unsigned order = 1;
    Report certificate;  // the order-fold composite is the identity
};

GroupTwist make_twist(Morphism automorphism, unsigned order);

// phi o twist_src = twist_tgt o phi on generators.
Report mu_equivariance(const Morphism& phi, const GroupTwist& twist_src, const GroupTwist& twist_tgt);

// Transition g_ij = numerator / overlap^pole, defined where `overlap` is inverted.
struct Transition {
    std::size_t i = 0, j = 0;
    Poly numerator;
    Poly overlap;
    unsigned pole = 0;
};

// Charts D(L_i) of a common ring (L_i = 1 for a chart that is a full copy of the
// ring, as for the copies glued along a common open) and transition data.
struct CoverDatum {
    std::string name;
    SchemePtr ring;
    std::vector<std::string> chart_names;
    std::vector<Poly> localizers;
    std::vector<Transition> transitions;
};

inline constexpr unsigned kDefaultCoboundaryDegree = 6;
inline constexpr unsigned kDefaultCoboundaryPole = 6;

Report cocycle_check(const CoverDatum& c);

struct CoboundarySolution {
    bool found = false;
    unsigned pole = 0;
    std::vector<Poly> numerators;  // h_i = numerators[i] / L_i^pole
};

// Searches h_i = N_i / L_i^p with g_ij = h_j - h_i, over normal-form numerators
// of total degree <= degree_bound and p <= pole_bound. A failed search passes
// the report only when `expect_solution` is false (and is then reported as
// "no solution within bounds").
Report coboundary_solve(const CoverDatum& c, unsigned degree_bound, unsigned pole_bound, bool expect_solution,
                        CoboundarySolution* out = nullptr);

Report phi_trivialization(unsigned m);
Report fiber_ring_decomposition(unsigned m);
Report slice_charts(unsigned m, unsigned n, unsigned r);
Report y_charts(const FamilyParams& p);
Report cylinder_splitting(unsigned m, unsigned n, unsigned r);

Report check_Xm(unsigned m);
Report invariant_ring_Xm(unsigned m, unsigned bound);
Report check_Xmnr(unsigned m, unsigned n, unsigned r);
Report check_Y(const FamilyParams& p);
Report deformed_russell_cubic();
Report punctured_plane_cocycles(unsigned degree_bound = kDefaultCoboundaryDegree,
                                unsigned pole_bound = kDefaultCoboundaryPole);

}  // namespace lndkit
