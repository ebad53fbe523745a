#include "torfan/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <sstream>

namespace torfan {

namespace {

std::string cone_str(const Cone& c) {
    std::ostringstream os;
    os << '<';
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << '>';
    return os.str();
}

}  // namespace

bool is_primitive(const LatticePoint& p) {
    Int g = 0;
    for (const auto& x : p) g = gcd(g, x);
    return g == 1;
}

IntMat cone_matrix(const Fan& fan, const Cone& c) {
    IntMat m(fan.dim, IntVec(c.size()));
    for (size_t j = 0; j < c.size(); ++j)
        for (int i = 0; i < fan.dim; ++i) m[i][j] = fan.rays[c[j]][i];
    return m;
}

LatticePoint ray_sum(const Fan& fan, const Cone& c) {
    LatticePoint s(fan.dim, 0);
    for (int j : c)
        for (int i = 0; i < fan.dim; ++i) s[i] += fan.rays[j][i];
    return s;
}

void check_well_formed(const Fan& fan) {
    if (fan.dim < 0) throw InputError("negative dimension");
    for (size_t r = 0; r < fan.rays.size(); ++r) {
        if (static_cast<int>(fan.rays[r].size()) != fan.dim)
            throw InputError("ray " + std::to_string(r) + " has wrong length");
        if (!is_primitive(fan.rays[r]))
            throw InputError("ray " + std::to_string(r) + " is not primitive");
    }
    for (size_t a = 0; a < fan.rays.size(); ++a)
        for (size_t b = a + 1; b < fan.rays.size(); ++b)
            if (fan.rays[a] == fan.rays[b])
                throw InputError("duplicate rays " + std::to_string(a) + " and " +
                                 std::to_string(b));
    if (fan.max_cones.empty()) throw InputError("no maximal cones");
    for (const Cone& c : fan.max_cones) {
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0 || c[i] >= static_cast<int>(fan.rays.size()))
                throw InputError("cone index out of range in " + cone_str(c));
            if (i > 0 && c[i] <= c[i - 1])
                throw InputError("cone indices not strictly ascending in " +
                                 cone_str(c));
        }
    }
}

bool is_face(const Fan& fan, const Cone& c) {
    if (c.empty()) return true;
    Cone s = c;
    std::sort(s.begin(), s.end());
    for (const Cone& mc : fan.max_cones)
        if (std::includes(mc.begin(), mc.end(), s.begin(), s.end())) return true;
    return false;
}

std::set<Cone> all_faces(const Fan& fan) {
    std::set<Cone> out;
    for (const Cone& mc : fan.max_cones) {
        const size_t k = mc.size();
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            Cone f;
            for (size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) f.push_back(mc[i]);
            out.insert(std::move(f));
        }
    }
    return out;
}

namespace {

// Expansion of p over the generators of a full-dimensional cone, or nullopt
// when p is outside. Zero coefficients mean p sits on the boundary.
std::optional<RatVec> expand_in_cone(const Fan& fan, const Cone& c,
                                     const LatticePoint& p) {
    IntMat m = cone_matrix(fan, c);
    RatMat a(fan.dim, RatVec(c.size()));
    RatVec b(fan.dim);
    for (int i = 0; i < fan.dim; ++i) {
        for (size_t j = 0; j < c.size(); ++j) a[i][j] = Rat(m[i][j]);
        b[i] = Rat(p[i]);
    }
    auto sol = solve_square(std::move(a), std::move(b));
    if (!sol) return std::nullopt;
    for (const Rat& x : *sol)
        if (x < 0) return std::nullopt;
    return sol;
}

}  // namespace

ValidationReport validate(const Fan& fan) {
    check_well_formed(fan);
    ValidationReport rep;
    const int n = fan.dim;

    rep.smooth = true;
    for (const Cone& c : fan.max_cones) {
        if (static_cast<int>(c.size()) != n) {
            rep.smooth = false;
            rep.defects.push_back("maximal cone " + cone_str(c) +
                                  " is not full-dimensional");
            continue;
        }
        Int d = det(cone_matrix(fan, c));
        if (d != 1 && d != -1) {
            rep.smooth = false;
            rep.defects.push_back("maximal cone " + cone_str(c) +
                                  " has determinant " + d.str());
        }
    }

    rep.complete = true;
    if (n == 1) {
        bool ok = fan.rays.size() == 2 && fan.max_cones.size() == 2 &&
                  fan.rays[0][0] == -fan.rays[1][0];
        if (!ok) {
            rep.complete = false;
            rep.defects.push_back("rank-1 fan does not cover the line");
        }
        return rep;
    }

    // Facet battery: every (n-1)-face in exactly two maximal cones, the two
    // remaining generators on opposite sides of the facet hyperplane, and a
    // connected facet graph.
    std::map<Cone, std::vector<std::pair<int, int>>> facets;  // facet -> (cone, dropped ray)
    for (size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
        const Cone& mc = fan.max_cones[ci];
        if (static_cast<int>(mc.size()) != n) {
            rep.complete = false;
            continue;
        }
        for (size_t drop = 0; drop < mc.size(); ++drop) {
            Cone f;
            for (size_t i = 0; i < mc.size(); ++i)
                if (i != drop) f.push_back(mc[i]);
            facets[f].push_back({static_cast<int>(ci), mc[drop]});
        }
    }
    std::vector<std::vector<int>> adj(fan.max_cones.size());
    for (const auto& [f, owners] : facets) {
        if (owners.size() != 2) {
            rep.complete = false;
            rep.defects.push_back("facet " + cone_str(f) + " lies in " +
                                  std::to_string(owners.size()) +
                                  " maximal cone(s)");
            continue;
        }
        RatMat a(f.size(), RatVec(n));
        for (size_t i = 0; i < f.size(); ++i)
            for (int j = 0; j < n; ++j) a[i][j] = Rat(fan.rays[f[i]][j]);
        auto ns = nullspace(std::move(a));
        if (ns.size() != 1) {
            rep.complete = false;
            rep.defects.push_back("facet " + cone_str(f) +
                                  " generators are degenerate");
            continue;
        }
        Rat s0 = 0, s1 = 0;
        for (int j = 0; j < n; ++j) {
            s0 += ns[0][j] * Rat(fan.rays[owners[0].second][j]);
            s1 += ns[0][j] * Rat(fan.rays[owners[1].second][j]);
        }
        if (sign(s0) * sign(s1) != -1) {
            rep.complete = false;
            rep.defects.push_back("cones across facet " + cone_str(f) +
                                  " do not sit on opposite sides");
        }
        adj[owners[0].first].push_back(owners[1].first);
        adj[owners[1].first].push_back(owners[0].first);
    }
    {
        std::vector<char> seen(fan.max_cones.size(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        size_t cnt = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    ++cnt;
                    q.push(v);
                }
        }
        if (cnt != fan.max_cones.size()) {
            rep.complete = false;
            rep.defects.push_back("facet graph is disconnected");
        }
    }

    // Sample deterministic generic points and demand each is covered by
    // exactly one maximal cone. Guards against double covers that still pass
    // the facet battery locally.
    if (rep.smooth && rep.complete) {
        std::mt19937 rng(12345);
        int tested = 0, attempts = 0;
        while (tested < 16 && attempts < 400) {
            ++attempts;
            LatticePoint p(n);
            bool zero = true;
            for (int i = 0; i < n; ++i) {
                p[i] = static_cast<int>(rng() % 19) - 9;
                if (p[i] != 0) zero = false;
            }
            if (zero) continue;
            int count = 0;
            bool boundary = false;
            for (const Cone& mc : fan.max_cones) {
                auto e = expand_in_cone(fan, mc, p);
                if (!e) continue;
                ++count;
                for (const Rat& x : *e)
                    if (x == 0) boundary = true;
            }
            if (boundary) continue;
            ++tested;
            if (count != 1) {
                rep.complete = false;
                rep.defects.push_back("generic point covered by " +
                                      std::to_string(count) + " maximal cones");
                break;
            }
        }
    }
    return rep;
}

Location locate(const Fan& fan, const LatticePoint& p) {
    if (static_cast<int>(p.size()) != fan.dim)
        throw InputError("point has wrong length");
    bool zero = true;
    for (const auto& x : p)
        if (x != 0) zero = false;
    if (zero) return {{}, {}};
    for (const Cone& mc : fan.max_cones) {
        auto e = expand_in_cone(fan, mc, p);
        if (!e) continue;
        Location loc;
        for (size_t j = 0; j < mc.size(); ++j) {
            if ((*e)[j] > 0) {
                loc.cone.push_back(mc[j]);
                loc.coeffs.push_back((*e)[j]);
            }
        }
        return loc;
    }
    throw FanError("point not covered by any maximal cone (fan not complete?)");
}

Fan star_subdivide(const Fan& fan, const Cone& tau) {
    Cone t = tau;
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    if (t.size() < 2) throw InputError("subdivision center must have dimension >= 2");
    if (!is_face(fan, t))
        throw InputError("subdivision center " + cone_str(t) + " is not a cone of the fan");
    LatticePoint v = ray_sum(fan, t);
    for (const auto& r : fan.rays)
        if (r == v) throw FanError("barycentric ray already present");

    Fan out;
    out.dim = fan.dim;
    out.rays = fan.rays;
    out.rays.push_back(v);
    const int vi = static_cast<int>(out.rays.size()) - 1;
    for (const Cone& mc : fan.max_cones) {
        if (!std::includes(mc.begin(), mc.end(), t.begin(), t.end())) {
            out.max_cones.push_back(mc);
            continue;
        }
        for (int drop : t) {
            Cone nc;
            for (int i : mc)
                if (i != drop) nc.push_back(i);
            nc.push_back(vi);
            std::sort(nc.begin(), nc.end());
            out.max_cones.push_back(std::move(nc));
        }
    }
    return out;
}

namespace {

void subsets_of_size(const std::vector<int>& pool, size_t k, size_t start,
                     Cone& cur, const std::function<bool(const Cone&)>& cb,
                     bool& stop) {
    if (stop) return;
    if (cur.size() == k) {
        if (cb(cur)) stop = true;
        return;
    }
    for (size_t i = start; i + (k - cur.size()) <= pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets_of_size(pool, k, i + 1, cur, cb, stop);
        cur.pop_back();
        if (stop) return;
    }
}

}  // namespace

std::optional<BlowDown> contract_at(const Fan& fan, int ray_index,
                                    const Cone& center) {
    if (ray_index < 0 || ray_index >= static_cast<int>(fan.rays.size()))
        throw InputError("ray index out of range");
    Cone t = center;
    std::sort(t.begin(), t.end());
    if (t.size() < 2) return std::nullopt;
    for (int j : t)
        if (j < 0 || j >= static_cast<int>(fan.rays.size()) || j == ray_index)
            return std::nullopt;
    if (ray_sum(fan, t) != fan.rays[ray_index]) return std::nullopt;

    std::vector<Cone> star, others;
    for (const Cone& mc : fan.max_cones) {
        if (std::binary_search(mc.begin(), mc.end(), ray_index))
            star.push_back(mc);
        else
            others.push_back(mc);
    }

    std::vector<int> remap(fan.rays.size(), -1);
    Fan coarse;
    coarse.dim = fan.dim;
    for (size_t i = 0; i < fan.rays.size(); ++i) {
        if (static_cast<int>(i) == ray_index) continue;
        remap[i] = static_cast<int>(coarse.rays.size());
        coarse.rays.push_back(fan.rays[i]);
    }

    // Each star cone must contain all of the center but one generator; it
    // merges into the cone with that generator restored.
    std::set<Cone> merged;
    for (const Cone& sc : star) {
        int missing = -1, hits = 0;
        for (int j : t) {
            if (std::binary_search(sc.begin(), sc.end(), j))
                ++hits;
            else
                missing = j;
        }
        if (hits != static_cast<int>(t.size()) - 1) return std::nullopt;
        Cone nc;
        for (int i : sc)
            if (i != ray_index) nc.push_back(remap[i]);
        nc.push_back(remap[missing]);
        std::sort(nc.begin(), nc.end());
        merged.insert(std::move(nc));
    }
    for (const Cone& oc : others) {
        Cone nc;
        for (int i : oc) nc.push_back(remap[i]);
        coarse.max_cones.push_back(std::move(nc));
    }
    for (const Cone& mc : merged) coarse.max_cones.push_back(mc);

    Cone tau;
    for (int j : t) tau.push_back(remap[j]);
    std::sort(tau.begin(), tau.end());
    if (!is_face(coarse, tau)) return std::nullopt;
    if (!same_fan(star_subdivide(coarse, tau), fan)) return std::nullopt;
    return BlowDown{std::move(coarse), std::move(tau)};
}

BlowDown blow_down(const Fan& fan, int ray_index) {
    if (ray_index < 0 || ray_index >= static_cast<int>(fan.rays.size()))
        throw InputError("ray index out of range");
    std::set<int> star_rays;
    for (const Cone& mc : fan.max_cones)
        if (std::binary_search(mc.begin(), mc.end(), ray_index))
            for (int i : mc)
                if (i != ray_index) star_rays.insert(i);
    std::vector<int> pool(star_rays.begin(), star_rays.end());

    std::optional<BlowDown> result;
    auto try_center = [&](const Cone& t) -> bool {
        auto bd = contract_at(fan, ray_index, t);
        if (!bd) return false;
        result = std::move(bd);
        return true;
    };
    for (size_t k = 2; k <= std::min<size_t>(fan.dim, pool.size()) && !result; ++k) {
        Cone cur;
        bool stop = false;
        subsets_of_size(pool, k, 0, cur, try_center, stop);
    }
    if (!result) throw FanError("not blow-downable at this ray");
    return *result;
}

Fan quotient_star(const Fan& fan, const Cone& eta) {
    Cone e = eta;
    std::sort(e.begin(), e.end());
    if (e.empty()) return fan;
    if (!is_face(fan, e))
        throw InputError("cone " + cone_str(e) + " is not in the fan");
    const int n = fan.dim;
    const int k = static_cast<int>(e.size());
    std::vector<IntVec> cols;
    for (int j : e) cols.push_back(fan.rays[j]);
    IntMat u = unimodular_extension(cols, n);

    auto project = [&](const LatticePoint& p) {
        LatticePoint q(n - k);
        for (int i = k; i < n; ++i) {
            Int s = 0;
            for (int j = 0; j < n; ++j) s += u[i][j] * p[j];
            q[i - k] = s;
        }
        return q;
    };

    Fan out;
    out.dim = n - k;
    std::map<int, int> qindex;
    std::map<LatticePoint, int> by_value;
    for (size_t j = 0; j < fan.rays.size(); ++j) {
        int ji = static_cast<int>(j);
        if (std::binary_search(e.begin(), e.end(), ji)) continue;
        Cone probe = e;
        probe.push_back(ji);
        std::sort(probe.begin(), probe.end());
        if (!is_face(fan, probe)) continue;
        LatticePoint q = project(fan.rays[j]);
        if (out.dim > 0 && !is_primitive(q))
            throw FanError("quotient ray is not primitive (fan not smooth?)");
        auto it = by_value.find(q);
        if (it != by_value.end())
            throw FanError("two star rays project to the same quotient ray");
        int idx = static_cast<int>(out.rays.size());
        by_value[q] = idx;
        out.rays.push_back(std::move(q));
        qindex[ji] = idx;
    }
    for (const Cone& mc : fan.max_cones) {
        if (!std::includes(mc.begin(), mc.end(), e.begin(), e.end())) continue;
        Cone nc;
        for (int i : mc)
            if (!std::binary_search(e.begin(), e.end(), i))
                nc.push_back(qindex.at(i));
        std::sort(nc.begin(), nc.end());
        out.max_cones.push_back(std::move(nc));
    }
    if (out.max_cones.empty()) throw FanError("empty star");
    return out;
}

Fan divisor_fan(const Fan& fan, int ray_index) {
    if (ray_index < 0 || ray_index >= static_cast<int>(fan.rays.size()))
        throw InputError("ray index out of range");
    return quotient_star(fan, {ray_index});
}

FVector f_vector(const Fan& fan) {
    FVector fv;
    fv.f.assign(fan.dim, 0);
    for (const Cone& c : all_faces(fan)) fv.f[c.size() - 1] += 1;
    return fv;
}

bool same_fan(const Fan& a, const Fan& b) {
    if (a.dim != b.dim) return false;
    if (a.rays.size() != b.rays.size()) return false;
    if (a.max_cones.size() != b.max_cones.size()) return false;
    std::map<LatticePoint, int> label;
    for (const auto& r : a.rays) {
        int next = static_cast<int>(label.size());
        if (!label.emplace(r, next).second) return false;
    }
    auto canon = [&](const Fan& f) -> std::optional<std::set<Cone>> {
        std::set<Cone> out;
        for (const Cone& mc : f.max_cones) {
            Cone nc;
            for (int i : mc) {
                auto it = label.find(f.rays[i]);
                if (it == label.end()) return std::nullopt;
                nc.push_back(it->second);
            }
            std::sort(nc.begin(), nc.end());
            out.insert(std::move(nc));
        }
        return out;
    };
    auto ca = canon(a);
    auto cb = canon(b);
    return ca && cb && *ca == *cb;
}

}  // namespace torfan
