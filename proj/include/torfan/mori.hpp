// Cone-of-curves machinery: effectiveness, contractibility (Reid's wall
// condition), extremality and projectivity via exact LP, decomposition into
// contractible classes, and the classifier for non-contractible degree-2
// relations of order 3 on 4-folds.
#pragma once

#include <optional>

#include "torfan/lp.hpp"
#include "torfan/primitive.hpp"

namespace torfan {

// Sufficient effectiveness test: the rays carrying negative entries span a
// cone. False only means "inconclusive".
bool effective_by_criterion(const Fan& fan, const RelationClass& c);

// Reid's wall condition around the relation of P: for every cone nu with
// nu + focus in the fan and nu disjoint from P and the focus, dropping any
// single member of P from P + focus + nu still gives a cone.
bool is_contractible(const Fan& fan, const PrimitiveCollection& p);

// Existence of a piecewise-linear function, linear on maximal cones and
// strictly convex across every wall (exact LP feasibility).
bool is_projective(const Fan& fan);

// c spans an extremal ray of the cone generated by the primitive-relation
// classes: c is not a nonnegative combination of the classes that are not
// proportional to it. Requires a projective fan.
bool is_extremal(const Fan& fan, const RelationClass& c);

// Membership of c in the cone spanned by all primitive-relation classes.
bool is_effective(const Fan& fan, const RelationClass& c);

struct Decomposition {
    std::vector<std::pair<RelationClass, Int>> terms;  // class, multiplicity >= 1
};

// Positive integer combination of contractible primitive-relation classes
// summing to c, fewest total multiplicity first. Requires a projective fan
// and an effective c; nullopt when the bounded search exhausts (a bug
// signal on valid input, reported rather than hidden).
std::optional<Decomposition> decompose_into_contractibles(const Fan& fan,
                                                          const RelationClass& c);

enum class Degree2Kind { contractible, A, B, C };

struct Degree2Report {
    Degree2Kind kind;
    // For A/B/C: the two degree-1 primitive relations whose classes sum to
    // the relation of the collection. Empty when contractible.
    std::vector<PrimitiveRelation> witnesses;
};

// For a 4-fold relation x1+x2+x3 = x of degree 2: either it is contractible
// or it splits into two degree-1 relations in exactly one of three shapes:
// (A) xi+x=y with y+xj+xk=2x, (B) xi+w=z with z+xj+xk=w+x,
// (C) xi+z+w=2x with x+xj+xk=z+w.
Degree2Report classify_degree2_decomposition(const Fan& fan,
                                             const PrimitiveCollection& p);

}  // namespace torfan
