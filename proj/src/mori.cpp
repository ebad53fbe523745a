#include "torfan/mori.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace torfan {

namespace {

RatVec to_rat(const std::vector<Int>& v) {
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

bool proportional(const std::vector<Int>& a, const std::vector<Int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

Cone sorted_union(const Cone& a, const Cone& b) {
    Cone out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

bool effective_by_criterion(const Fan& fan, const RelationClass& c) {
    Cone neg;
    for (size_t i = 0; i < c.entries.size(); ++i)
        if (c.entries[i] < 0) neg.push_back(static_cast<int>(i));
    return is_face(fan, neg);
}

bool is_contractible(const Fan& fan, const PrimitiveCollection& p) {
    PrimitiveRelation r = primitive_relation(fan, p);
    std::set<int> blocked(r.collection.begin(), r.collection.end());
    blocked.insert(r.focus_cone.begin(), r.focus_cone.end());

    std::vector<Cone> nus = {Cone{}};
    for (const Cone& f : all_faces(fan)) {
        bool disjoint = true;
        for (int i : f)
            if (blocked.count(i)) disjoint = false;
        if (disjoint && is_face(fan, sorted_union(f, r.focus_cone)))
            nus.push_back(f);
    }
    for (const Cone& nu : nus) {
        Cone base = sorted_union(nu, r.focus_cone);
        for (int drop : r.collection) {
            Cone c = base;
            for (int i : r.collection)
                if (i != drop) c.push_back(i);
            std::sort(c.begin(), c.end());
            if (!is_face(fan, c)) return false;
        }
    }
    return true;
}

bool is_projective(const Fan& fan) {
    const int n = fan.dim;
    if (n <= 1) return true;
    // the answer depends only on the fan, and the extremality sweep asks
    // about the same fan once per class; remember previous verdicts
    using Key = std::pair<std::vector<LatticePoint>, std::vector<Cone>>;
    static std::mutex cache_mutex;
    static std::map<Key, bool> cache;
    Key key{fan.rays, fan.max_cones};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    // One value per ray; one strict-convexity constraint per wall,
    // normalized to slack 1 (feasibility is scale invariant).
    std::map<Cone, std::vector<std::pair<int, int>>> facets;
    for (size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
        const Cone& mc = fan.max_cones[ci];
        for (size_t drop = 0; drop < mc.size(); ++drop) {
            Cone f;
            for (size_t i = 0; i < mc.size(); ++i)
                if (i != drop) f.push_back(mc[i]);
            facets[f].push_back({static_cast<int>(ci), mc[drop]});
        }
    }
    LinearProgram lp;
    lp.nvars = static_cast<int>(fan.rays.size());
    for (const auto& [f, owners] : facets) {
        if (owners.size() != 2) throw FanError("fan is not complete");
        const Cone& sigma = fan.max_cones[owners[0].first];
        int s = owners[1].second;  // the generator across the wall
        RatMat a(n, RatVec(sigma.size()));
        RatVec b(n);
        for (int i = 0; i < n; ++i) {
            for (size_t j = 0; j < sigma.size(); ++j)
                a[i][j] = Rat(fan.rays[sigma[j]][i]);
            b[i] = Rat(fan.rays[s][i]);
        }
        auto lam = solve_square(std::move(a), std::move(b));
        if (!lam) throw FanError("degenerate maximal cone");
        RatVec row(lp.nvars);
        for (size_t j = 0; j < sigma.size(); ++j) row[sigma[j]] += (*lam)[j];
        row[s] -= 1;
        lp.ge_lhs.push_back(std::move(row));
        lp.ge_rhs.push_back(Rat(1));
    }
    bool feasible = lp_solve(lp).has_value();
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(std::move(key), feasible);
    }
    return feasible;
}

bool is_effective(const Fan& fan, const RelationClass& c) {
    std::vector<RatVec> gens;
    for (const auto& r : primitive_relations(fan))
        gens.push_back(to_rat(relation_class(fan, r).entries));
    return nonneg_combination(gens, to_rat(c.entries)).has_value();
}

bool is_extremal(const Fan& fan, const RelationClass& c) {
    if (!is_projective(fan))
        throw FanError("extremality is only defined here for projective fans");
    std::vector<RatVec> others;
    for (const auto& r : primitive_relations(fan)) {
        RelationClass rc = relation_class(fan, r);
        if (proportional(rc.entries, c.entries)) continue;
        others.push_back(to_rat(rc.entries));
    }
    if (others.empty()) return true;
    return !nonneg_combination(others, to_rat(c.entries)).has_value();
}

std::optional<Decomposition> decompose_into_contractibles(
    const Fan& fan, const RelationClass& c) {
    if (!is_projective(fan))
        throw FanError("decomposition requires a projective fan");
    if (!is_effective(fan, c))
        throw InputError("class is not in the cone of effective curves");

    std::vector<RelationClass> classes;
    for (const auto& p : primitive_collections(fan)) {
        if (!is_contractible(fan, p)) continue;
        classes.push_back(relation_class(fan, primitive_relation(fan, p)));
    }
    const size_t nr = c.entries.size();

    // Iterative deepening on the total multiplicity; the theorem bounds
    // nothing, so we stop at degree(c) + 4 and report exhaustion honestly.
    Int max_total = (c.degree > 0 ? c.degree : Int(0)) + 4;
    std::vector<Int> mult(classes.size(), 0);
    std::vector<Int> residual = c.entries;

    std::function<bool(size_t, Int)> dfs = [&](size_t i, Int budget) -> bool {
        bool zero = true;
        for (const auto& x : residual)
            if (x != 0) zero = false;
        if (zero && budget == 0) return true;
        if (i == classes.size() || budget == 0) return false;
        for (Int m = budget; m >= 0; --m) {
            for (size_t k = 0; k < nr; ++k)
                residual[k] -= m * classes[i].entries[k];
            mult[i] = m;
            if (dfs(i + 1, budget - m)) return true;
            for (size_t k = 0; k < nr; ++k)
                residual[k] += m * classes[i].entries[k];
            mult[i] = 0;
        }
        return false;
    };

    for (Int total = 1; total <= max_total; ++total) {
        if (dfs(0, total)) {
            Decomposition d;
            for (size_t i = 0; i < classes.size(); ++i)
                if (mult[i] > 0) d.terms.push_back({classes[i], mult[i]});
            return d;
        }
    }
    return std::nullopt;
}

Degree2Report classify_degree2_decomposition(const Fan& fan,
                                             const PrimitiveCollection& p) {
    if (fan.dim != 4) throw InputError("classifier is specific to 4-folds");
    PrimitiveRelation r = primitive_relation(fan, p);
    if (r.collection.size() != 3 || r.degree != 2 ||
        r.focus_cone.size() != 1 || r.coefficients[0] != 1)
        throw InputError("relation is not of the shape x1+x2+x3 = x");

    if (is_contractible(fan, p)) return {Degree2Kind::contractible, {}};

    RelationClass target = relation_class(fan, r);
    std::vector<PrimitiveRelation> rels = primitive_relations(fan);
    std::vector<RelationClass> rcs;
    for (const auto& rel : rels) rcs.push_back(relation_class(fan, rel));

    // Shape of a degree-1 relation: order and focus coefficients decide the
    // case of the pair (order-2 + coefficient-2 focus -> A, order-2 +
    // order-3 balanced -> B, coefficient-2 focus + balanced -> C).
    auto shape = [&](const PrimitiveRelation& rel) -> char {
        if (rel.degree != 1) return '?';
        if (rel.collection.size() == 2) return 'a';
        if (rel.collection.size() == 3 && rel.focus_cone.size() == 1 &&
            rel.coefficients[0] == 2)
            return 'b';
        if (rel.collection.size() == 3 && rel.focus_cone.size() == 2)
            return 'c';
        return '?';
    };

    std::set<char> kinds;
    std::vector<PrimitiveRelation> witness;
    for (size_t i = 0; i < rels.size(); ++i) {
        for (size_t j = i; j < rels.size(); ++j) {
            bool match = true;
            for (size_t k = 0; k < target.entries.size(); ++k)
                if (rcs[i].entries[k] + rcs[j].entries[k] != target.entries[k])
                    match = false;
            if (!match) continue;
            char si = shape(rels[i]), sj = shape(rels[j]);
            std::string pair{std::min(si, sj), std::max(si, sj)};
            char kind = pair == "ab" ? 'A' : pair == "ac" ? 'B'
                        : pair == "bc" ? 'C' : '?';
            if (kind == '?')
                throw FanError("degree-2 relation splits outside the three known shapes");
            if (kinds.empty()) witness = {rels[i], rels[j]};
            kinds.insert(kind);
        }
    }
    if (kinds.empty())
        throw FanError("non-contractible degree-2 relation admits no split "
                       "into two degree-1 primitive relations");
    if (kinds.size() > 1)
        throw FanError("degree-2 relation splits in more than one shape");
    Degree2Kind k = *kinds.begin() == 'A' ? Degree2Kind::A
                    : *kinds.begin() == 'B' ? Degree2Kind::B
                                            : Degree2Kind::C;
    return {k, witness};
}

}  // namespace torfan
