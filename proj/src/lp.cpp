#include "torfan/lp.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace torfan {

namespace {

// Phase-1 simplex on the standard form  A y = d, y >= 0, d >= 0:
// minimizes the sum of artificial variables with Bland's rule, so it always
// terminates. Returns y when the minimum is zero, nullopt otherwise.
std::optional<RatVec> phase1(RatMat a, RatVec d) {
    const int m = static_cast<int>(a.size());
    const int nv = m ? static_cast<int>(a[0].size()) : 0;
    for (int i = 0; i < m; ++i) {
        if (d[i] < 0) {
            d[i] = -d[i];
            for (auto& x : a[i]) x = -x;
        }
    }
    const int total = nv + m;  // artificials appended
    RatMat t(m, RatVec(total + 1));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nv; ++j) t[i][j] = a[i][j];
        t[i][nv + i] = 1;
        t[i][total] = d[i];
        basis[i] = nv + i;
    }
    // reduced costs for the artificial objective
    RatVec obj(total + 1);
    for (int j = 0; j <= total; ++j) {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += t[i][j];
        obj[j] = (j >= nv && j < total ? Rat(1) : Rat(0)) - s;
    }
    for (;;) {
        int enter = -1;
        for (int j = 0; j < total; ++j)
            if (obj[j] < 0) { enter = j; break; }
        if (enter < 0) break;
        int leave = -1;
        Rat best = 0;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][total] / t[i][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) return std::nullopt;  // cannot happen: objective >= 0
        Rat piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (int j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
        }
        if (obj[enter] != 0) {
            Rat f = obj[enter];
            for (int j = 0; j <= total; ++j) obj[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    Rat value = 0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= nv) value += t[i][total];
    if (value != 0) return std::nullopt;
    RatVec y(nv);
    for (int i = 0; i < m; ++i)
        if (basis[i] < nv) y[basis[i]] = t[i][total];
    return y;
}

}  // namespace

std::optional<RatVec> lp_solve(const LinearProgram& lp) {
    std::vector<bool> nonneg = lp.nonneg;
    if (nonneg.empty()) nonneg.assign(lp.nvars, false);
    // column layout: for each original variable one column (nonneg) or a
    // split pair (free); then one slack per >= row
    std::vector<int> col_of(lp.nvars), neg_col(lp.nvars, -1);
    int nv = 0;
    for (int i = 0; i < lp.nvars; ++i) {
        col_of[i] = nv++;
        if (!nonneg[i]) neg_col[i] = nv++;
    }
    const int nge = static_cast<int>(lp.ge_lhs.size());
    const int slack0 = nv;
    nv += nge;
    const int m = static_cast<int>(lp.eq_lhs.size()) + nge;
    RatMat a(m, RatVec(nv));
    RatVec d(m);
    int row = 0;
    for (size_t r = 0; r < lp.eq_lhs.size(); ++r, ++row) {
        for (int i = 0; i < lp.nvars; ++i) {
            a[row][col_of[i]] = lp.eq_lhs[r][i];
            if (neg_col[i] >= 0) a[row][neg_col[i]] = -lp.eq_lhs[r][i];
        }
        d[row] = lp.eq_rhs[r];
    }
    for (int r = 0; r < nge; ++r, ++row) {
        for (int i = 0; i < lp.nvars; ++i) {
            a[row][col_of[i]] = lp.ge_lhs[r][i];
            if (neg_col[i] >= 0) a[row][neg_col[i]] = -lp.ge_lhs[r][i];
        }
        a[row][slack0 + r] = -1;
        d[row] = lp.ge_rhs[r];
    }
    auto y = phase1(std::move(a), std::move(d));
    if (!y) return std::nullopt;
    RatVec x(lp.nvars);
    for (int i = 0; i < lp.nvars; ++i) {
        x[i] = (*y)[col_of[i]];
        if (neg_col[i] >= 0) x[i] -= (*y)[neg_col[i]];
    }
    return x;
}

std::optional<RatVec> nonneg_combination(const std::vector<RatVec>& gens,
                                         const RatVec& target) {
    LinearProgram lp;
    lp.nvars = static_cast<int>(gens.size());
    lp.nonneg.assign(lp.nvars, true);
    const int amb = static_cast<int>(target.size());
    lp.eq_lhs.assign(amb, RatVec(lp.nvars));
    lp.eq_rhs = target;
    for (int k = 0; k < amb; ++k)
        for (int i = 0; i < lp.nvars; ++i) lp.eq_lhs[k][i] = gens[i][k];
    return lp_solve(lp);
}

namespace {

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void facet_subsets(const std::vector<RatVec>& gens, int k, size_t start,
                   std::vector<int>& cur, std::vector<RatVec>& normals) {
    if (static_cast<int>(cur.size()) == k) {
        RatMat rows;
        for (int i : cur) rows.push_back(gens[i]);
        auto ns = nullspace(std::move(rows));
        if (ns.size() != 1) return;
        const RatVec& u = ns[0];
        int pos = 0, neg = 0;
        for (const auto& g : gens) {
            int s = sign(dot(u, g));
            if (s > 0) ++pos;
            if (s < 0) ++neg;
        }
        if (pos && neg) return;
        RatVec n = u;
        if (neg)
            for (auto& x : n) x = -x;
        normals.push_back(std::move(n));
        return;
    }
    for (size_t i = start; i + (k - cur.size()) <= gens.size(); ++i) {
        cur.push_back(static_cast<int>(i));
        facet_subsets(gens, k, i + 1, cur, normals);
        cur.pop_back();
    }
}

}  // namespace

bool cone_contains_bruteforce(const std::vector<RatVec>& gens,
                              const RatVec& target) {
    // span check and span coordinates
    std::vector<RatVec> basis;
    RatMat probe;
    for (const auto& g : gens) {
        probe.push_back(g);
        if (rank(probe) == static_cast<int>(probe.size()))
            basis.push_back(g);
        else
            probe.pop_back();
    }
    const int d = static_cast<int>(basis.size());
    const int amb = static_cast<int>(target.size());
    RatMat bcols(amb, RatVec(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < amb; ++i) bcols[i][j] = basis[j][i];
    auto coords = [&](const RatVec& v) { return solve_general(bcols, v); };
    auto tc = coords(target);
    if (!tc) return false;  // target outside the span
    if (d == 0) return true;  // span is {0} and target lies in it
    std::vector<RatVec> gc;
    for (const auto& g : gens) {
        auto c = coords(g);
        if (!c) throw FanError("generator outside its own span");
        gc.push_back(std::move(*c));
    }
    if (d == 1) {
        int pos = 0, neg = 0;
        for (const auto& g : gc) {
            int s = sign(g[0]);
            if (s > 0) ++pos;
            if (s < 0) ++neg;
        }
        if (pos && neg) return true;  // whole line
        int st = sign((*tc)[0]);
        return st == 0 || (pos && st > 0) || (neg && st < 0);
    }
    // the facet enumeration depends only on the generators, so repeated
    // queries against the same cone reuse the normals
    static std::mutex cache_mutex;
    static std::map<std::vector<RatVec>, std::vector<RatVec>> cache;
    std::vector<RatVec>* normals;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(gc);
        if (it == cache.end()) {
            std::vector<RatVec> fresh;
            std::vector<int> cur;
            facet_subsets(gc, d - 1, 0, cur, fresh);
            it = cache.emplace(gc, std::move(fresh)).first;
        }
        normals = &it->second;
    }
    for (const auto& u : *normals)
        if (dot(u, *tc) < 0) return false;
    return true;
}

}  // namespace torfan
