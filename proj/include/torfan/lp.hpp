// Exact rational linear feasibility: a phase-1 simplex with Bland's rule
// (no tolerances, no floating point), plus a brute-force facet oracle for
// cone membership used to cross-check the simplex.
#pragma once

#include <optional>

#include "torfan/linalg.hpp"

namespace torfan {

struct LinearProgram {
    int nvars = 0;
    RatMat eq_lhs;  // eq_lhs * x = eq_rhs
    RatVec eq_rhs;
    RatMat ge_lhs;  // ge_lhs * x >= ge_rhs
    RatVec ge_rhs;
    std::vector<bool> nonneg;  // per-variable sign restriction (empty = all free)
};

// A feasible point, or nullopt when the system is infeasible.
std::optional<RatVec> lp_solve(const LinearProgram& lp);

// Coefficients lambda >= 0 with sum(lambda_i * gens_i) = target, if any.
std::optional<RatVec> nonneg_combination(const std::vector<RatVec>& gens,
                                         const RatVec& target);

// Independent membership test for target in the cone spanned by gens:
// enumerates candidate facet normals from generator subsets and checks the
// resulting inequality description. Exponential in the span dimension; only
// for small instances.
bool cone_contains_bruteforce(const std::vector<RatVec>& gens,
                              const RatVec& target);

}  // namespace torfan
