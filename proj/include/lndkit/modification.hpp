#pragma once

#include "lndkit/constructions.hpp"
#include "lndkit/report.hpp"
#include "lndkit/scheme.hpp"

#include <string>
#include <vector>

namespace lndkit {

// Center J = (center_generators) and divisor f in J on an affine base.
struct ModificationData {
    SchemePtr base;
    std::vector<Poly> center_generators;
    Poly divisor;
};

// Presentation of base[g/f : g in J]. Each generator g other than f gets a new
// variable (z when there is one, z1, z2, ... otherwise) with relation f*z - g,
// and the result is saturated by f. The Rees-algebra route (1 - f*u, z - g*u,
// eliminate u) is computed as well and must agree.
SchemePtr affine_modification(const ModificationData& d, std::string name = "");

// Y(m,n,r,h) as the modification of A^3 along (x^n, y^m - t^r + x*h) with divisor x^n.
Report verify_modification_is_Y(const FamilyParams& params);

}  // namespace lndkit
