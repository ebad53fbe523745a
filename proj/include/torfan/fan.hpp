// Fans of smooth complete toric varieties: representation, validity checks,
// cone location, star subdivision and blow-down, quotient (divisor) fans,
// f-vectors.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "torfan/linalg.hpp"

namespace torfan {

using LatticePoint = IntVec;

// A cone is the sorted, duplicate-free list of its generator indices.
// The zero cone is the empty list.
using Cone = std::vector<int>;

struct Fan {
    int dim = 0;
    std::vector<LatticePoint> rays;
    std::vector<Cone> max_cones;
};

struct ValidationReport {
    bool smooth = false;
    bool complete = false;
    std::vector<std::string> defects;
    bool ok() const { return smooth && complete && defects.empty(); }
};

struct FVector {
    // f[i] = number of (i+1)-dimensional cones, i = 0 .. dim-1.
    std::vector<Int> f;
};

// Structural sanity only: index ranges, primitive nonzero rays, no duplicate
// rays, sorted duplicate-free cones. Throws InputError on violation.
void check_well_formed(const Fan& fan);

// Smoothness (every maximal cone unimodular) and completeness (every facet
// shared by exactly two maximal cones sitting on opposite sides, connected
// facet graph, and a deterministic sample of generic lattice points each
// covered exactly once).
ValidationReport validate(const Fan& fan);

bool is_primitive(const LatticePoint& p);

// True iff the index set spans a cone of the fan. For simplicial fans this
// is just containment in some maximal cone. `c` need not be sorted.
bool is_face(const Fan& fan, const Cone& c);

// All nonempty faces of all maximal cones, deduplicated.
std::set<Cone> all_faces(const Fan& fan);

struct Location {
    Cone cone;      // minimal cone whose relative interior contains p
    RatVec coeffs;  // strictly positive expansion over cone's generators
};

// Unique minimal cone containing p in its relative interior. p = 0 gives the
// zero cone. Throws FanError if no maximal cone contains p (only possible on
// non-complete input).
Location locate(const Fan& fan, const LatticePoint& p);

// Add the ray v = sum of tau's generators and replace every maximal cone
// containing tau by its star subdivision. Ray order: old rays, then v.
// Requires |tau| >= 2 and tau a cone of the fan.
Fan star_subdivide(const Fan& fan, const Cone& tau);

struct BlowDown {
    Fan coarse;
    Cone tau;  // center, as indices into coarse.rays
};

// Inverse of star_subdivide at the given ray. Finds the center tau whose
// generator sum is the ray and whose star subdivision reproduces the input
// exactly; throws FanError("not blow-downable...") otherwise.
BlowDown blow_down(const Fan& fan, int ray_index);

// Contraction of the ray onto a prescribed center (indices into fan.rays,
// not containing ray_index, generator sum equal to the ray). Returns nullopt
// when the merged fan does not star-subdivide back to the input. Building
// block of blow_down and of flips, where two centers with the same sum
// coexist and the choice matters.
std::optional<BlowDown> contract_at(const Fan& fan, int ray_index, const Cone& center);

// Quotient fan of the star of eta in the lattice N / (span of eta's
// generators): the fan of the closed invariant subvariety V(eta).
// Rank drops by |eta|. The projection is the lower block of a deterministic
// unimodular basis completion.
Fan quotient_star(const Fan& fan, const Cone& eta);

// quotient_star at a single ray: the fan of the invariant divisor.
Fan divisor_fan(const Fan& fan, int ray_index);

FVector f_vector(const Fan& fan);

struct FVectorChecks {
    // nullopt = not applicable for this input.
    std::optional<bool> ds5;        // f2 = 4f1 - 10f0 + 20 and companions, n=5 only
    std::optional<bool> batyrev;    // 12 f_{n-3} >= (3n-4) f_{n-2}, n>=3, Fano only
    std::optional<bool> spade;      // 7 f1 <= 45 (f0 - 2), n=5 only
    std::optional<bool> manu_bound; // C(f0,2) - f1 <= (3/4) f0, when hypothesis holds
    bool manu_hypothesis = false;
    std::vector<std::string> notes;
};

FVectorChecks fvector_checks(const Fan& fan);

// True iff the two fans are equal after matching rays as vectors (ray order
// and index labels may differ; coordinates may not).
bool same_fan(const Fan& a, const Fan& b);

// Column matrix of a cone's generators.
IntMat cone_matrix(const Fan& fan, const Cone& c);

LatticePoint ray_sum(const Fan& fan, const Cone& c);

}  // namespace torfan
