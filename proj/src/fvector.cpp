#include "torfan/fan.hpp"
#include "torfan/primitive.hpp"

namespace torfan {

FVectorChecks fvector_checks(const Fan& fan) {
    FVectorChecks rep;
    const int n = fan.dim;
    FVector fv = f_vector(fan);
    const auto& f = fv.f;

    if (n == 5) {
        rep.ds5 = f[2] == 4 * f[1] - 10 * f[0] + 20 &&
                  f[3] == 5 * f[1] - 15 * f[0] + 30 &&
                  f[4] == 2 * f[1] - 6 * f[0] + 12;
        rep.spade = 7 * f[1] <= 45 * (f[0] - 2);
    } else {
        rep.notes.push_back("dimension-5 identities not applicable");
    }

    bool fano = is_fano(fan);
    if (n >= 3) {
        if (fano) {
            rep.batyrev = 12 * f[n - 3] >= (3 * n - 4) * f[n - 2];
        } else {
            rep.notes.push_back("input is not Fano; lower-bound inequality skipped");
        }
    } else {
        rep.notes.push_back("dimension below 3; lower-bound inequality not applicable");
    }

    if (fano) {
        // Hypothesis: each generator lies in at most two order-2 collections,
        // and a generator with exactly two has them of the form {x,-x} and
        // {x,y} where neither -y nor -x-y is a generator.
        auto has_ray = [&](const LatticePoint& p) {
            for (const auto& r : fan.rays)
                if (r == p) return true;
            return false;
        };
        std::vector<std::vector<int>> partners(fan.rays.size());
        for (const auto& p : primitive_collections(fan)) {
            if (p.size() != 2) continue;
            partners[p[0]].push_back(p[1]);
            partners[p[1]].push_back(p[0]);
        }
        rep.manu_hypothesis = true;
        for (size_t x = 0; x < fan.rays.size() && rep.manu_hypothesis; ++x) {
            if (partners[x].size() > 2) rep.manu_hypothesis = false;
            if (partners[x].size() == 2) {
                LatticePoint minus_x(n), sums[2];
                for (int i = 0; i < n; ++i) minus_x[i] = -fan.rays[x][i];
                int y = -1;
                for (int j : partners[x])
                    if (fan.rays[j] != minus_x) y = j;
                bool has_opposite =
                    fan.rays[partners[x][0]] == minus_x || fan.rays[partners[x][1]] == minus_x;
                if (!has_opposite || y < 0) {
                    rep.manu_hypothesis = false;
                } else {
                    LatticePoint minus_y(n), minus_xy(n);
                    for (int i = 0; i < n; ++i) {
                        minus_y[i] = -fan.rays[y][i];
                        minus_xy[i] = -fan.rays[x][i] - fan.rays[y][i];
                    }
                    if (has_ray(minus_y) || has_ray(minus_xy))
                        rep.manu_hypothesis = false;
                }
            }
        }
        if (rep.manu_hypothesis) {
            Int pairs = f[0] * (f[0] - 1) / 2 - f[1];
            rep.manu_bound = 4 * pairs <= 3 * f[0];
        } else {
            rep.notes.push_back(
                "order-2 collection pattern outside the bound's hypothesis; "
                "bound check skipped");
        }
    } else {
        rep.notes.push_back("input is not Fano; order-2 bound skipped");
    }
    return rep;
}

}  // namespace torfan
