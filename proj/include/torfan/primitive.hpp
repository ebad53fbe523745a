// Primitive collections and relations, degrees, curve classes, the Fano
// criterion and Picard numbers.
#pragma once

#include <vector>

#include "torfan/fan.hpp"

namespace torfan {

// A primitive collection is a minimal non-face: the members span no cone,
// every proper subset does. Stored as sorted ray indices.
using PrimitiveCollection = Cone;

struct PrimitiveRelation {
    PrimitiveCollection collection;
    Cone focus_cone;                // the cone whose relative interior holds the sum
    std::vector<Int> coefficients;  // positive, aligned with focus_cone; empty when sum = 0
    Int degree;                     // |collection| - sum of coefficients
};

// Integral curve class: intersection numbers with the invariant divisors,
// one entry per ray. Entries always satisfy sum(entries[i] * ray_i) = 0.
struct RelationClass {
    std::vector<Int> entries;
    Int degree;  // sum of entries = intersection with the anticanonical divisor
};

// All minimal non-faces, sorted by (size, lexicographic members).
// Collections never exceed size n+1: a larger non-face strictly contains a
// non-face of size <= n+1 because cones carry at most n generators.
std::vector<PrimitiveCollection> primitive_collections(const Fan& fan);

PrimitiveRelation primitive_relation(const Fan& fan, const PrimitiveCollection& p);

// All primitive relations, in the order of primitive_collections.
std::vector<PrimitiveRelation> primitive_relations(const Fan& fan);

RelationClass relation_class(const Fan& fan, const PrimitiveRelation& r);

// Every primitive relation has degree >= 1.
bool is_fano(const Fan& fan);

// Ray count minus dimension.
int picard_number(const Fan& fan);

// Number of order-2 primitive collections containing the ray; always equals
// the drop in Picard number from the fan to the divisor fan at that ray, and
// this is verified on every call.
int rho_diff(const Fan& fan, int ray_index);

}  // namespace torfan
