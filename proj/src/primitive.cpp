#include "torfan/primitive.hpp"

#include <algorithm>
#include <set>

namespace torfan {

namespace {

void combos(int f0, int k, int start, Cone& cur,
            const std::set<Cone>& faces, int dim,
            std::vector<PrimitiveCollection>& out) {
    if (static_cast<int>(cur.size()) == k) {
        if (faces.count(cur)) return;
        // minimality: drop each member in turn
        for (size_t d = 0; d < cur.size(); ++d) {
            Cone sub;
            for (size_t i = 0; i < cur.size(); ++i)
                if (i != d) sub.push_back(cur[i]);
            if (sub.size() >= 2 && !faces.count(sub)) return;
            if (sub.size() == 1 && !faces.count(sub)) return;
        }
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= f0 - (k - static_cast<int>(cur.size())); ++i) {
        cur.push_back(i);
        combos(f0, k, i + 1, cur, faces, dim, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<PrimitiveCollection> primitive_collections(const Fan& fan) {
    const int f0 = static_cast<int>(fan.rays.size());
    std::set<Cone> faces = all_faces(fan);
    std::vector<PrimitiveCollection> out;
    for (int k = 2; k <= fan.dim + 1 && k <= f0; ++k) {
        Cone cur;
        combos(f0, k, 0, cur, faces, fan.dim, out);
    }
    return out;
}

PrimitiveRelation primitive_relation(const Fan& fan,
                                     const PrimitiveCollection& p) {
    PrimitiveRelation r;
    r.collection = p;
    std::sort(r.collection.begin(), r.collection.end());
    Location loc = locate(fan, ray_sum(fan, r.collection));
    r.focus_cone = loc.cone;
    Int total = 0;
    for (const Rat& c : loc.coeffs) {
        if (denominator(c) != 1 || c <= 0)
            throw FanError("relation coefficient not a positive integer");
        r.coefficients.push_back(numerator(c));
        total += numerator(c);
    }
    r.degree = Int(r.collection.size()) - total;
    return r;
}

std::vector<PrimitiveRelation> primitive_relations(const Fan& fan) {
    std::vector<PrimitiveRelation> out;
    for (const auto& p : primitive_collections(fan))
        out.push_back(primitive_relation(fan, p));
    return out;
}

RelationClass relation_class(const Fan& fan, const PrimitiveRelation& r) {
    RelationClass c;
    c.entries.assign(fan.rays.size(), 0);
    for (int i : r.collection) c.entries[i] += 1;
    for (size_t j = 0; j < r.focus_cone.size(); ++j)
        c.entries[r.focus_cone[j]] -= r.coefficients[j];
    c.degree = 0;
    for (const Int& e : c.entries) c.degree += e;
    if (c.degree != r.degree) throw FanError("degree mismatch in relation class");
    LatticePoint s(fan.dim, 0);
    for (size_t i = 0; i < c.entries.size(); ++i)
        for (int j = 0; j < fan.dim; ++j) s[j] += c.entries[i] * fan.rays[i][j];
    for (const Int& x : s)
        if (x != 0) throw FanError("relation class is not a lattice relation");
    return c;
}

bool is_fano(const Fan& fan) {
    for (const auto& r : primitive_relations(fan))
        if (r.degree < 1) return false;
    return true;
}

int picard_number(const Fan& fan) {
    return static_cast<int>(fan.rays.size()) - fan.dim;
}

int rho_diff(const Fan& fan, int ray_index) {
    if (ray_index < 0 || ray_index >= static_cast<int>(fan.rays.size()))
        throw InputError("ray index out of range");
    int count = 0;
    for (int j = 0; j < static_cast<int>(fan.rays.size()); ++j) {
        if (j == ray_index) continue;
        Cone pair = {std::min(ray_index, j), std::max(ray_index, j)};
        if (!is_face(fan, pair)) ++count;
    }
    int by_picard = picard_number(fan) - picard_number(divisor_fan(fan, ray_index));
    if (count != by_picard)
        throw FanError("order-2 collection count disagrees with Picard drop");
    return count;
}

}  // namespace torfan
