// Built-in fan catalog with pinned coordinates, fan products and face fans,
// lattice isomorphism, and the brute-force dimension-2 enumeration.
#pragma once

#include <string>

#include "torfan/fan.hpp"

namespace torfan {

struct CatalogEntry {
    std::string name;
    Fan fan;
    int picard = 0;
    bool fano = false;
    std::string notes;
};

// Built-in entry by name, recomputing the Picard number and Fano flag. When
// TORFAN_CATALOG_DIR is set and <dir>/<name>.json exists, that file wins.
// Unknown names raise InputError. Product names split on 'x'.
CatalogEntry catalog(const std::string& name);

// Every built-in name, in a fixed order.
std::vector<std::string> catalog_names();

Fan projective_space(int n);

Fan product_fan(const Fan& a, const Fan& b);

// Fan over the facets of the convex hull of the given vertices (origin must
// be interior, facets must be simplices found by support-plane enumeration).
Fan face_fan(int dim, const std::vector<LatticePoint>& vertices);

// GL_n(Z) equivalence carrying rays to rays and cones to cones. On success
// an optional witness matrix (acting on column vectors) is filled in.
bool lattice_isomorphic(const Fan& a, const Fan& b, IntMat* witness = nullptr);

// Brute force over primitive rays with coordinates bounded by `bound`
// (default 3 in dimension 2, 1 in dimension 3), deduplicated by lattice
// isomorphism. Dimension 3 is expensive and sits behind the caller's flag.
std::vector<CatalogEntry> enumerate_smooth_fano(int dim, int bound = 0);

}  // namespace torfan
