#include "torfan/birational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace torfan {

namespace {

int find_ray(const Fan& fan, const LatticePoint& v) {
    for (size_t i = 0; i < fan.rays.size(); ++i)
        if (fan.rays[i] == v) return static_cast<int>(i);
    return -1;
}

RatVec to_rat(const LatticePoint& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

RatMat cone_rat_matrix(const Fan& fan, const Cone& c) {
    RatMat m(fan.dim, RatVec(c.size()));
    for (size_t j = 0; j < c.size(); ++j)
        for (int i = 0; i < fan.dim; ++i) m[i][j] = Rat(fan.rays[c[j]][i]);
    return m;
}

// Expansion of v over the generators of a full-dimensional cone, or nullopt
// when some coefficient is negative.
std::optional<RatVec> expand_nonneg(const Fan& fan, const Cone& c, const LatticePoint& v) {
    auto sol = solve_square(cone_rat_matrix(fan, c), to_rat(v));
    if (!sol) return std::nullopt;
    for (const Rat& x : *sol)
        if (x < 0) return std::nullopt;
    return sol;
}

bool is_projective_space(const Fan& fan) {
    int n = fan.dim;
    if (static_cast<int>(fan.rays.size()) != n + 1) return false;
    if (static_cast<int>(fan.max_cones.size()) != n + 1) return false;
    std::set<Cone> have(fan.max_cones.begin(), fan.max_cones.end());
    for (int skip = 0; skip <= n; ++skip) {
        Cone c;
        for (int i = 0; i <= n; ++i)
            if (i != skip) c.push_back(i);
        if (!have.count(c)) return false;
    }
    return validate(fan).ok();
}

// Subdivision patterns of a smooth maximal cone <y1..y4>. New rays are
// written by their expansion over the y's; centers and relations use label
// codes 0..3 for y1..y4 and 4..6 for x1..x3.
struct PatternRelation {
    std::vector<int> lhs;                      // collection labels
    std::vector<std::pair<int, int>> rhs;      // (label, coefficient)
};

struct Pattern {
    std::vector<std::array<int, 4>> xvecs;     // x_i over y1..y4
    std::vector<std::vector<int>> centers;
    std::vector<PatternRelation> rels;
};

const std::array<Pattern, 17>& patterns() {
    static const std::array<Pattern, 17> table = {{
        // 1
        {{}, {}, {}},
        // 2
        {{{1, 1, 0, 0}},
         {{0, 1}},
         {{{0, 1}, {{4, 1}}}}},
        // 3
        {{{1, 1, 1, 0}},
         {{0, 1, 2}},
         {{{0, 1, 2}, {{4, 1}}}}},
        // 4
        {{{1, 1, 1, 1}},
         {{0, 1, 2, 3}},
         {{{0, 1, 2, 3}, {{4, 1}}}}},
        // 5
        {{{1, 1, 0, 0}, {0, 0, 1, 1}},
         {{0, 1}, {2, 3}},
         {{{0, 1}, {{4, 1}}}, {{2, 3}, {{5, 1}}}}},
        // 6
        {{{1, 1, 1, 0}, {2, 1, 1, 0}},
         {{0, 1, 2}, {0, 4}},
         {{{0, 1, 2}, {{4, 1}}},
          {{0, 4}, {{5, 1}}},
          {{1, 2, 5}, {{4, 2}}}}},
        // 7
        {{{1, 1, 1, 0}, {1, 0, 0, 1}},
         {{0, 1, 2}, {0, 3}},
         {{{0, 1, 2}, {{4, 1}}},
          {{0, 3}, {{5, 1}}},
          {{1, 2, 5}, {{3, 1}, {4, 1}}}}},
        // 8
        {{{1, 1, 1, 0}, {1, 1, 0, 0}},
         {{0, 1, 2}, {0, 1}},
         {{{0, 1}, {{5, 1}}}, {{2, 5}, {{4, 1}}}}},
        // 9
        {{{1, 1, 1, 1}, {1, 1, 1, 0}},
         {{0, 1, 2, 3}, {0, 1, 2}},
         {{{0, 1, 2}, {{5, 1}}}, {{3, 5}, {{4, 1}}}}},
        // 10
        {{{1, 1, 1, 1}, {1, 1, 1, 0}, {0, 1, 1, 1}},
         {{0, 1, 2}, {1, 2, 3}, {3, 5}},
         {{{0, 1, 2}, {{5, 1}}},
          {{1, 2, 3}, {{6, 1}}},
          {{0, 6}, {{4, 1}}},
          {{3, 5}, {{4, 1}}},
          {{1, 2, 4}, {{5, 1}, {6, 1}}}}},
        // 11
        {{{1, 1, 1, 1}, {1, 1, 0, 0}},
         {{0, 1, 2, 3}, {0, 1}},
         {{{0, 1}, {{5, 1}}}, {{2, 3, 5}, {{4, 1}}}}},
        // 12
        {{{1, 1, 1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}},
         {{0, 1, 2, 3}, {0, 1}, {2, 3}},
         {{{0, 1}, {{5, 1}}},
          {{2, 3}, {{6, 1}}},
          {{5, 6}, {{4, 1}}}}},
        // 13
        {{{1, 1, 1, 1}, {1, 1, 0, 0}, {1, 1, 1, 0}},
         {{0, 1, 2, 3}, {0, 1}, {2, 5}},
         {{{0, 1}, {{5, 1}}},
          {{2, 5}, {{6, 1}}},
          {{3, 6}, {{4, 1}}}}},
        // 14
        {{{1, 1, 1, 1}, {2, 1, 1, 1}},
         {{0, 1, 2, 3}, {0, 4}},
         {{{0, 1, 2, 3}, {{4, 1}}},
          {{0, 4}, {{5, 1}}},
          {{1, 2, 3, 5}, {{4, 2}}}}},
        // 15
        {{{1, 1, 1, 1}, {1, 1, 1, 0}, {2, 1, 1, 1}},
         {{0, 1, 2, 3}, {0, 1, 2}, {0, 4}},
         {{{0, 1, 2}, {{5, 1}}},
          {{3, 5}, {{4, 1}}},
          {{0, 4}, {{6, 1}}},
          {{1, 2, 6}, {{4, 1}, {5, 1}}}}},
        // 16
        {{{1, 1, 1, 1}, {1, 1, 0, 0}, {1, 1, 2, 1}},
         {{0, 1, 2, 3}, {0, 1}, {2, 4}},
         {{{0, 1}, {{5, 1}}},
          {{2, 3, 5}, {{4, 1}}},
          {{2, 4}, {{6, 1}}},
          {{3, 5, 6}, {{4, 2}}}}},
        // 17
        {{{1, 1, 1, 1}, {1, 1, 0, 0}, {2, 2, 1, 1}},
         {{0, 1, 2, 3}, {0, 1}, {4, 5}},
         {{{0, 1}, {{5, 1}}},
          {{2, 3, 5}, {{4, 1}}},
          {{4, 5}, {{6, 1}}},
          {{2, 3, 6}, {{4, 2}}}}},
    }};
    return table;
}

}  // namespace

const SubdivisionPattern& subdivision_pattern(int type) {
    if (type < 1 || type > 17) throw InputError("subdivision pattern type out of range");
    static const std::vector<SubdivisionPattern> pub = [] {
        std::vector<SubdivisionPattern> v;
        for (const Pattern& p : patterns()) v.push_back({p.xvecs, p.centers});
        return v;
    }();
    return pub[type - 1];
}

RefinementMap build_refinement(const Fan& source, const Fan& target) {
    check_well_formed(source);
    check_well_formed(target);
    if (source.dim != target.dim)
        throw InputError("refinement: fans live in different dimensions");

    RefinementMap map;
    map.source = source;
    map.target = target;

    map.target_ray_in_source.resize(target.rays.size());
    for (size_t i = 0; i < target.rays.size(); ++i) {
        int j = find_ray(source, target.rays[i]);
        if (j < 0) throw InputError("refinement: target ray is not a source ray");
        map.target_ray_in_source[i] = j;
    }

    for (const auto& r : source.rays)
        map.ray_to_cone.push_back(locate(target, r).cone);

    for (const Cone& c : source.max_cones) {
        int owner = -1;
        for (size_t t = 0; t < target.max_cones.size(); ++t) {
            bool inside = true;
            for (int g : c)
                if (!expand_nonneg(target, target.max_cones[t], source.rays[g])) {
                    inside = false;
                    break;
                }
            if (inside) {
                owner = static_cast<int>(t);
                break;
            }
        }
        if (owner < 0)
            throw FanError("refinement: source cone straddles target cones");
        map.cone_to_cone.push_back(owner);
    }
    return map;
}

CenterPartition center_partition(const RefinementMap& map, const Cone& tau) {
    Cone t = tau;
    std::sort(t.begin(), t.end());
    if (!is_face(map.target, t))
        throw InputError("center partition: tau is not a cone of the target");

    Location loc = locate(map.source, ray_sum(map.target, t));
    for (const Rat& c : loc.coeffs)
        if (c != 1)
            throw FanError("center partition: generator sum is not a plain sum of source generators");

    CenterPartition part;
    part.source_cone = loc.cone;
    std::vector<int> used(t.size(), 0);
    for (int xi : loc.cone) {
        auto sol = solve_general(cone_rat_matrix(map.target, t), to_rat(map.source.rays[xi]));
        if (!sol) throw FanError("center partition: block generator leaves the span of tau");
        Cone block;
        for (size_t j = 0; j < t.size(); ++j) {
            if ((*sol)[j] == 0) continue;
            if ((*sol)[j] != 1)
                throw FanError("center partition: block expansion is not zero-one");
            block.push_back(t[j]);
            ++used[j];
        }
        part.blocks.push_back(block);
    }
    for (int u : used)
        if (u != 1) throw FanError("center partition: blocks do not partition tau");
    return part;
}

ExceptionalSets exceptional_sets(const RefinementMap& map, const Cone& eta) {
    Cone e = eta;
    std::sort(e.begin(), e.end());
    if (e.empty() || !is_face(map.target, e))
        throw InputError("exceptional sets: eta is not a nonzero cone of the target");

    ExceptionalSets out;
    out.eta = e;
    for (size_t z = 0; z < map.source.rays.size(); ++z) {
        const Cone& tz = map.ray_to_cone[z];
        if (std::includes(tz.begin(), tz.end(), e.begin(), e.end())) {
            out.g_set.push_back(static_cast<int>(z));
            continue;
        }
        Cone joined;
        std::set_union(tz.begin(), tz.end(), e.begin(), e.end(), std::back_inserter(joined));
        if (!is_face(map.target, joined))
            out.h_set.push_back(static_cast<int>(z));
        else
            out.boundary_set.push_back(static_cast<int>(z));
    }

    if (is_fano(map.source)) {
        if (!out.h_set.empty() && out.g_set.size() + out.h_set.size() > 4)
            throw FanError("exceptional sets: more than four generators split across "
                           "interior and exterior of a star support on Fano input");
        std::set<int> boundary(out.boundary_set.begin(), out.boundary_set.end());
        for (int g : out.g_set)
            for (int h : out.h_set) {
                LatticePoint s(map.source.dim);
                bool zero = true;
                for (int i = 0; i < map.source.dim; ++i) {
                    s[i] = map.source.rays[g][i] + map.source.rays[h][i];
                    if (s[i] != 0) zero = false;
                }
                if (zero) continue;
                int w = find_ray(map.source, s);
                if (w < 0 || !boundary.count(w))
                    throw FanError("exceptional sets: interior-exterior pair sums "
                                   "outside the boundary generators on Fano input");
            }
    }
    return out;
}

std::vector<PuhEntry> check_puh(const RefinementMap& map) {
    std::set<int> target_rays(map.target_ray_in_source.begin(),
                              map.target_ray_in_source.end());
    bool fano = is_fano(map.source);
    int rho_target = picard_number(map.target);

    std::vector<PuhEntry> out;
    for (size_t z = 0; z < map.source.rays.size(); ++z) {
        if (target_rays.count(static_cast<int>(z))) continue;
        PuhEntry entry;
        entry.source_ray = static_cast<int>(z);
        entry.eta = map.ray_to_cone[z];
        entry.rho_drop = rho_target - picard_number(quotient_star(map.target, entry.eta));
        entry.point_image = static_cast<int>(entry.eta.size()) == map.target.dim;
        if (fano) {
            if (entry.rho_drop > 3)
                throw FanError("image of an exceptional divisor drops the Picard "
                               "number by more than 3 on Fano input");
            if (entry.point_image && rho_target > 3 && !is_projective_space(map.target))
                throw FanError("divisor contracted to a point, yet the target has "
                               "rho > 3 and is not a projective space");
        }
        out.push_back(entry);
    }
    return out;
}

SubdivisionReport classify_subdivision(const RefinementMap& map, const Cone& sigma) {
    Cone s = sigma;
    std::sort(s.begin(), s.end());
    int sigma_idx = -1;
    for (size_t i = 0; i < map.target.max_cones.size(); ++i)
        if (map.target.max_cones[i] == s) sigma_idx = static_cast<int>(i);
    if (sigma_idx < 0)
        throw InputError("classify: sigma is not a maximal cone of the target");
    const int n = map.target.dim;
    if (n > 4)
        throw InputError("classify: only dimensions up to 4 are supported");

    // Source rays interior to the subdivision of sigma, with integer
    // expansions over sigma's generators.
    std::vector<std::pair<int, std::vector<Int>>> new_rays;
    std::set<int> gen_source;
    for (int g : s) gen_source.insert(map.target_ray_in_source[g]);
    for (size_t z = 0; z < map.source.rays.size(); ++z) {
        auto sol = expand_nonneg(map.target, s, map.source.rays[z]);
        if (!sol) continue;
        if (gen_source.count(static_cast<int>(z))) continue;
        std::vector<Int> coeffs(n);
        for (int i = 0; i < n; ++i) {
            if (boost::multiprecision::denominator((*sol)[i]) != 1)
                throw FanError("classify: new ray has a fractional expansion "
                               "(target cone not smooth?)");
            coeffs[i] = boost::multiprecision::numerator((*sol)[i]);
        }
        new_rays.emplace_back(static_cast<int>(z), coeffs);
    }

    // Try each pattern under every relabeling of sigma's generators. Labels
    // beyond the dimension must be untouched by the pattern.
    const auto& table = patterns();
    SubdivisionReport best;
    bool found = false;
    for (int t = 0; t < 17; ++t) {
        const Pattern& pat = table[t];
        if (pat.xvecs.size() != new_rays.size()) continue;
        std::array<int, 4> perm = {0, 1, 2, 3};
        std::sort(perm.begin(), perm.end());
        do {
            // perm[j] = coordinate of sigma carrying label y_{j+1}
            bool ok = true;
            std::vector<int> pad_labels;
            for (int j = 0; j < 4 && ok; ++j) {
                if (perm[j] >= n) {
                    for (const auto& v : pat.xvecs)
                        if (v[j] != 0) ok = false;
                    pad_labels.push_back(j);
                }
            }
            if (!ok) continue;
            for (const auto& c : pat.centers)
                for (int lbl : c)
                    if (lbl < 4 && perm[lbl] >= n) ok = false;
            if (!ok) continue;

            std::vector<int> x_assign(pat.xvecs.size(), -1);
            std::set<int> taken;
            for (size_t i = 0; i < pat.xvecs.size() && ok; ++i) {
                std::vector<Int> want(n);
                for (int j = 0; j < 4; ++j)
                    if (perm[j] < n) want[perm[j]] = pat.xvecs[i][j];
                int hit = -1;
                for (const auto& [z, coeffs] : new_rays)
                    if (coeffs == want && !taken.count(z)) hit = z;
                if (hit < 0) ok = false;
                else {
                    x_assign[i] = hit;
                    taken.insert(hit);
                }
            }
            if (!ok) continue;

            SubdivisionReport cand;
            cand.type = t + 1;
            cand.generalized = n != 4;
            cand.y_rays.assign(4, -1);
            for (int j = 0; j < 4; ++j)
                if (perm[j] < n)
                    cand.y_rays[j] = map.target_ray_in_source[s[perm[j]]];
            cand.x_rays = x_assign;
            for (const auto& c : pat.centers) {
                Cone center;
                for (int lbl : c)
                    center.push_back(lbl < 4 ? cand.y_rays[lbl] : x_assign[lbl - 4]);
                std::sort(center.begin(), center.end());
                cand.centers.push_back(center);
            }
            if (!found || cand.centers < best.centers) {
                best = cand;
                found = true;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (found) break;  // patterns are mutually exclusive up to relabeling
    }
    if (!found)
        throw FanError("classify: subdivision matches none of the 17 patterns");

    // Replay the centers on the target and compare the cones inside sigma.
    Fan replay = map.target;
    for (const Cone& center : best.centers) {
        Cone tau;
        for (int src : center) {
            int idx = find_ray(replay, map.source.rays[src]);
            if (idx < 0) throw FanError("classify: center ray missing during replay");
            tau.push_back(idx);
        }
        std::sort(tau.begin(), tau.end());
        replay = star_subdivide(replay, tau);
    }
    auto cones_inside = [&](const Fan& f) {
        std::set<std::set<LatticePoint>> out;
        for (const Cone& c : f.max_cones) {
            bool inside = true;
            std::set<LatticePoint> vecs;
            for (int g : c) {
                if (!expand_nonneg(map.target, s, f.rays[g])) {
                    inside = false;
                    break;
                }
                vecs.insert(f.rays[g]);
            }
            if (inside) out.insert(vecs);
        }
        return out;
    };
    if (cones_inside(replay) != cones_inside(map.source))
        throw FanError("classify: replaying the centers does not reproduce the "
                       "subdivision of sigma");

    // The primitive relations supported inside sigma must be exactly the
    // pattern's list.
    std::set<int> inside(gen_source.begin(), gen_source.end());
    for (int x : best.x_rays) inside.insert(x);
    using RelKey = std::pair<Cone, std::vector<std::pair<int, Int>>>;
    std::set<RelKey> got;
    for (const auto& r : primitive_relations(map.source)) {
        bool in = true;
        for (int g : r.collection)
            if (!inside.count(g)) in = false;
        if (!in) continue;
        std::vector<std::pair<int, Int>> rhs;
        for (size_t i = 0; i < r.focus_cone.size(); ++i)
            rhs.emplace_back(r.focus_cone[i], r.coefficients[i]);
        got.insert({r.collection, rhs});
    }
    std::set<RelKey> want;
    for (const auto& rel : table[best.type - 1].rels) {
        Cone lhs;
        for (int lbl : rel.lhs)
            lhs.push_back(lbl < 4 ? best.y_rays[lbl] : best.x_rays[lbl - 4]);
        std::sort(lhs.begin(), lhs.end());
        std::vector<std::pair<int, Int>> rhs;
        for (auto [lbl, coeff] : rel.rhs)
            rhs.emplace_back(lbl < 4 ? best.y_rays[lbl] : best.x_rays[lbl - 4], Int(coeff));
        std::sort(rhs.begin(), rhs.end());
        want.insert({lhs, rhs});
    }
    if (got != want)
        throw FanError("classify: primitive relations inside sigma do not match "
                       "the pattern");

    if (best.type >= 14 && !is_projective_space(map.target))
        throw FanError("classify: patterns 14-17 require a projective-space target");

    return best;
}

std::vector<FactorStep> factorize(const RefinementMap& map) {
    std::set<Cone> seen;
    std::vector<Cone> pending;
    for (const Cone& sigma : map.target.max_cones) {
        SubdivisionReport rep = classify_subdivision(map, sigma);
        for (const Cone& c : rep.centers)
            if (seen.insert(c).second) pending.push_back(c);
    }
    if (pending.size() + map.target.rays.size() != map.source.rays.size())
        throw FanError("factorize: center count does not match the new rays");

    Fan cur = map.target;
    std::vector<FactorStep> steps;
    size_t last_size = map.target.dim + 1;
    while (!pending.empty()) {
        int pick = -1;
        Cone pick_tau;
        for (size_t i = 0; i < pending.size(); ++i) {
            Cone tau;
            bool present = true;
            for (int src : pending[i]) {
                int idx = find_ray(cur, map.source.rays[src]);
                if (idx < 0) {
                    present = false;
                    break;
                }
                tau.push_back(idx);
            }
            if (!present) continue;
            std::sort(tau.begin(), tau.end());
            if (!is_face(cur, tau)) continue;
            if (pick < 0 || pending[i].size() > pending[pick].size() ||
                (pending[i].size() == pending[pick].size() && pending[i] < pending[pick])) {
                pick = static_cast<int>(i);
                pick_tau = tau;
            }
        }
        if (pick < 0)
            throw FanError("factorize: no remaining center is a cone of the "
                           "current fan");
        if (pending[pick].size() > last_size)
            throw FanError("factorize: center dimensions cannot be ordered "
                           "non-increasingly");
        last_size = pending[pick].size();

        cur = star_subdivide(cur, pick_tau);
        if (!validate(cur).ok())
            throw FanError("factorize: intermediate fan is not smooth and complete");
        steps.push_back({pending[pick], cur});
        pending.erase(pending.begin() + pick);
    }
    if (!same_fan(cur, map.source))
        throw FanError("factorize: replayed blow-ups do not reproduce the source");
    return steps;
}

}  // namespace torfan
