// Order-2 collection profiles, the divisor-case classifier, hexagon-bundle
// detection, toric flips and the flip/blow-down pipeline that exhibits a fan
// with a symmetric generator pair as a P^1-bundle.
#pragma once

#include <optional>

#include "torfan/mori.hpp"

namespace torfan {

enum class PairKind { sum_zero, sum_ray };

struct Order2Pair {
    int partner;    // ray index y with {x,y} a primitive collection
    PairKind kind;  // x + y = 0, or x + y = z
    int z = -1;     // the ray index of x + y when kind is sum_ray
};

struct Order2Profile {
    int ray_index;
    std::vector<Order2Pair> pairs;  // at most 3 on Fano input
};

// All order-2 primitive collections through the ray, with their relation
// kinds. Throws FanError when a relation falls outside the two shapes
// possible on Fano input, or when two degree-1 pairs x+y=z, x+w=v violate
// w = -x-y, v = -y.
Order2Profile order2_profile(const Fan& fan, int ray_index);

enum class DivisorCase {
    case0,               // rho drop 0
    case1,               // rho drop 1 via the pair {x,-x}
    case1_unclassified,  // rho drop 1 without a symmetric partner
    case2a,              // two degree-1 pairs (possibly after relabeling)
    case2b,              // pair {x,-x} plus x+y=v with -y,-v absent
    case3,               // three pairs: hexagon bundle
};

struct DivisorCaseReport {
    DivisorCase kind;
    int ray_index;        // the ray actually classified (after relabeling)
    std::vector<std::string> evidence;
};

DivisorCaseReport classify_divisor_case(const Fan& fan, int ray_index);

struct S3Bundle {
    Fan base;
    std::vector<int> hexagon;       // six ray indices spanning the fiber plane
    std::vector<LatticePoint> fiber_plane;  // two lattice generators of the plane
};

// Finds a ray in three order-2 collections, checks the six coplanar
// generators form the hexagon with its nine relations, and projects out the
// plane. The base must come out smooth, complete and Fano.
std::optional<S3Bundle> detect_s3_bundle(const Fan& fan);

// Flip of an extremal relation with unit coefficients: star-subdivide the
// focus cone, then contract the new ray onto the collection. Exchanges the
// class with its negative; applying it to the reversed relation undoes it.
Fan flip(const Fan& fan, const PrimitiveRelation& r);

enum class StepKind { flip, blow_down };

struct PipelineStep {
    StepKind kind;
    std::vector<LatticePoint> collection;  // the obstruction handled, as vectors
    Fan fan_after;
};

struct BasicConstruction {
    std::vector<PipelineStep> steps;
    Fan bundle_fan;  // P^1-bundle fan reached at the end
    Fan base;        // divisor fan of the distinguished ray in bundle_fan
    int x_index;     // index of the distinguished ray in bundle_fan
};

// Removes every obstruction collection through the given ray (order-2 ones
// by a blow-down, larger ones by a flip), ending in a fan where the class
// x + (-x) = 0 is extremal: a P^1-bundle over the divisor of x.
BasicConstruction basic_construction(const Fan& fan, int ray_index);

}  // namespace torfan
