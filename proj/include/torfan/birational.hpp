// Equivariant birational morphisms X -> Y presented as fan refinements:
// containment maps, center partitions, exceptional-set analysis, the
// 17-type classification of subdivided 4-dimensional cones, and global
// blow-up factorization.
#pragma once

#include <array>
#include <map>
#include <optional>

#include "torfan/primitive.hpp"

namespace torfan {

struct RefinementMap {
    Fan source;  // the finer fan
    Fan target;
    std::vector<Cone> ray_to_cone;  // per source ray: minimal target cone
    std::vector<int> cone_to_cone;  // per source max cone: containing target max cone
    std::vector<int> target_ray_in_source;  // per target ray: its source index
};

// Validates that source refines target: every target ray is a source ray and
// every source maximal cone sits inside a single target maximal cone.
RefinementMap build_refinement(const Fan& source, const Fan& target);

struct CenterPartition {
    Cone source_cone;               // <x_1..x_k>, the cone holding the generator sum
    std::vector<Cone> blocks;       // J_i: x_i = sum of tau's generators over J_i
};

// The partition behind a subdivided cone: the sum of tau's generators lies
// in a unique source cone whose generators are block sums of tau's.
CenterPartition center_partition(const RefinementMap& map, const Cone& tau);

struct ExceptionalSets {
    Cone eta;                        // target cone
    std::vector<int> g_set;          // source rays strictly inside the star support
    std::vector<int> h_set;          // source rays strictly outside
    std::vector<int> boundary_set;   // source rays on the boundary
};

// Classifies every source ray against the support of Star(eta) in the
// target. On Fano source this enforces: H empty or |G u H| <= 4, and every
// cross pair {g,h} has g+h = 0 or g+h a boundary generator.
ExceptionalSets exceptional_sets(const RefinementMap& map, const Cone& eta);

struct PuhEntry {
    int source_ray;   // exceptional ray (not a target ray)
    Cone eta;         // its image cone in the target
    int rho_drop;     // rho of target minus rho of the image subvariety
    bool point_image; // eta is a maximal cone
};

// Per exceptional divisor: the image cone and the Picard-number drop, which
// must be <= 3 on Fano source; a point image additionally forces rho <= 3
// or a projective-space target.
std::vector<PuhEntry> check_puh(const RefinementMap& map);

struct SubdivisionReport {
    int type = 0;                 // 1..17
    std::vector<Cone> centers;    // ordered star-subdivision centers, as source ray indices
    std::vector<int> y_rays;      // sigma's generators as source rays, in matched label order
    std::vector<int> x_rays;      // new rays x_1, x_2, ... as source ray indices
    bool generalized = false;     // matched in dimension below 4
};

// Determines how the maximal target cone sigma is subdivided in the source:
// matches the expansion vectors of the new rays against the 17 known
// patterns, replays the center list and compares cone by cone, and checks
// the primitive relations supported inside sigma. Patterns 14-17 force a
// projective-space target.
SubdivisionReport classify_subdivision(const RefinementMap& map, const Cone& sigma);

struct SubdivisionPattern {
    // New-ray expansions over the cone's generators y1..y4, x_1 first.
    std::vector<std::array<int, 4>> new_ray_vectors;
    // Star-subdivision centers in label form: 0..3 = y1..y4, 4..6 = x1..x3.
    std::vector<std::vector<int>> centers;
};

// The center list and new-ray data of one of the 17 patterns; used by the
// catalog to build fixtures by replay.
const SubdivisionPattern& subdivision_pattern(int type);

struct FactorStep {
    Cone center;  // source ray indices
    Fan fan;      // fan after this blow-up
};

// Global blow-up factorization: collects all per-cone centers, orders them
// by non-increasing dimension with each center present in the fan built so
// far, and replays from the target. The final fan must equal the source.
std::vector<FactorStep> factorize(const RefinementMap& map);

}  // namespace torfan
