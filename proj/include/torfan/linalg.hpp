// Small exact linear algebra kit over arbitrary-precision integers and
// rationals: determinants, linear solves, nullspaces, and unimodular basis
// completion (the Smith-normal-form step behind quotient lattices).
#pragma once

#include <optional>
#include <vector>

#include "torfan/numeric.hpp"

namespace torfan {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Determinant of a square integer matrix (fraction-free Bareiss elimination).
Int det(const IntMat& m);

// Solve the square rational system a * x = b. Returns nullopt if singular.
std::optional<RatVec> solve_square(RatMat a, RatVec b);

// Solve a general (possibly rectangular) rational system a * x = b.
// Returns nullopt when inconsistent; when underdetermined, free variables
// are set to zero.
std::optional<RatVec> solve_general(RatMat a, RatVec b);

// Rank of a rational matrix.
int rank(RatMat a);

// Basis of the right nullspace {x : a x = 0} of a rational matrix.
std::vector<RatVec> nullspace(RatMat a);

// Given k integer columns that are part of a lattice basis of Z^n, return a
// unimodular n x n matrix U with U * cols = [I_k; 0]. The last n-k rows of U
// are the projection to the quotient lattice Z^n / <cols>. Pivoting is
// deterministic: first nonzero entry in each column.
// Throws FanError if the columns are not part of a lattice basis.
IntMat unimodular_extension(const std::vector<IntVec>& cols, int n);

IntVec mat_apply(const IntMat& m, const IntVec& v);

}  // namespace torfan
