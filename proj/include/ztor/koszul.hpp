#pragma once

#include "ztor/fpmod.hpp"

#include <functional>

namespace ztor {

// Koszul complexes K(f1^e, ..., ft^e; R) in cohomological indexing: C^k is free
// of rank binomial(t,k) on basis vectors e_S, |S| = k, and
//   d(e_S) = sum_{j not in S} sign(j,S) f_j^e e_{S+j},
// sign(j,S) = (-1)^{#{i in S : i < j}} (tensor-product convention).

namespace koszul_detail {

/// Subsets of {0..t-1} with |S| = k, listed lexicographically.
inline std::vector<std::vector<int>> subsets(int t, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > t) return out;
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int start, int pos) {
        if (pos == k) { out.push_back(cur); return; }
        for (int i = start; i <= t - (k - pos); ++i) {
            cur[pos] = i;
            rec(i + 1, pos + 1);
        }
    };
    rec(0, 0);
    return out;
}

inline int sign_insert(int j, const std::vector<int>& s) {
    int cnt = 0;
    for (int i : s)
        if (i < j) ++cnt;
    return (cnt % 2 == 0) ? 1 : -1;
}

inline int index_of(const std::vector<std::vector<int>>& list, const std::vector<int>& s) {
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) throw input_error("koszul: subset index lookup failed");
    return static_cast<int>(it - list.begin());
}

}  // namespace koszul_detail

/// The Koszul cochain complex on f1^e, ..., ft^e.
inline FreeComplex koszul_complex(const std::vector<Polynomial>& f, int64_t e = 1) {
    using namespace koszul_detail;
    if (f.empty()) throw input_error("koszul_complex: empty sequence");
    if (e < 1) throw input_error("koszul_complex: exponent must be positive");
    const Ring& ring = f.front().ring();
    for (const auto& g : f) require_same_ring(ring, g.ring(), "koszul_complex");
    const int t = static_cast<int>(f.size());

    std::vector<Polynomial> fe;
    for (const auto& g : f) fe.push_back(poly_pow(g, e));

    std::vector<int> ranks(t + 1);
    std::vector<std::vector<std::vector<int>>> levels(t + 1);
    for (int k = 0; k <= t; ++k) {
        levels[k] = subsets(t, k);
        ranks[k] = static_cast<int>(levels[k].size());
    }
    std::vector<PolyMat> diffs(t);
    for (int k = 0; k < t; ++k) {
        PolyMat d(ranks[k + 1], std::vector<Polynomial>(ranks[k], Polynomial::zero(ring)));
        for (int col = 0; col < ranks[k]; ++col) {
            const auto& s = levels[k][col];
            for (int j = 0; j < t; ++j) {
                if (std::binary_search(s.begin(), s.end(), j)) continue;
                std::vector<int> s2 = s;
                s2.insert(std::lower_bound(s2.begin(), s2.end(), j), j);
                int row = index_of(levels[k + 1], s2);
                Polynomial ent = fe[j];
                if (sign_insert(j, s) < 0) ent = poly_neg(ent);
                d[row][col] = poly_add(d[row][col], ent);
            }
        }
        diffs[k] = std::move(d);
    }
    FreeComplex c(ring, 0, std::move(ranks), std::move(diffs));

    bool homogeneous = std::all_of(f.begin(), f.end(),
                                   [](const Polynomial& g) { return g.is_homogeneous() && !g.is_zero(); });
    if (homogeneous) {
        std::vector<std::vector<int64_t>> tw(t + 1);
        for (int k = 0; k <= t; ++k) {
            tw[k].resize(levels[k].size());
            for (std::size_t i = 0; i < levels[k].size(); ++i) {
                int64_t w = 0;
                for (int j : levels[k][i]) w -= e * f[j].max_deg();
                tw[k][i] = w;
            }
        }
        c.set_twists(std::move(tw));
    }
    return c;
}

struct KoszulCohomology {
    FPModule module;
    std::vector<VecElem> kernel_gens;  // generators of ker d^k inside C^k
};

inline KoszulCohomology koszul_cohomology_full(const std::vector<Polynomial>& f, int k,
                                               int64_t e = 1, RunConfig cfg = {}) {
    FreeComplex c = koszul_complex(f, e);
    if (k < 0 || k > c.k_max()) throw input_error("koszul_cohomology: k out of range");
    KoszulCohomology out;
    out.module = cohomology_at(c, k, cfg, &out.kernel_gens);
    return out;
}

inline FPModule koszul_cohomology(const std::vector<Polynomial>& f, int k, int64_t e = 1,
                                  RunConfig cfg = {}) {
    return koszul_cohomology_full(f, k, e, cfg).module;
}

/// The induced map H^k(f;R) -> H^k(f^p;R) coming from the chain map that is
/// multiplication by prod_{j in S} f_j^{p-1} on the basis vector e_S.
inline ModuleMap koszul_power_map(const std::vector<Polynomial>& f, int k, const Int& p,
                                  RunConfig cfg = {}) {
    using namespace koszul_detail;
    if (!is_prime(p)) throw input_error("koszul_power_map: p must be prime");
    const Ring& ring = f.front().ring();
    const int t = static_cast<int>(f.size());
    if (k < 0 || k > t) throw input_error("koszul_power_map: k out of range");
    int64_t pe = static_cast<int64_t>(p);

    KoszulCohomology src = koszul_cohomology_full(f, k, 1, cfg);
    KoszulCohomology dst = koszul_cohomology_full(f, k, pe, cfg);

    auto levels = subsets(t, k);
    std::vector<Polynomial> diag;
    for (const auto& s : levels) {
        Polynomial m = Polynomial::constant(ring, 1);
        for (int j : s) m = poly_mul(m, poly_pow(f[j], pe - 1));
        diag.push_back(std::move(m));
    }

    ModOrder ord = default_order();
    const int sdim = static_cast<int>(src.kernel_gens.size());
    const int ddim = static_cast<int>(dst.kernel_gens.size());
    Submodule dst_sub(ring, ord, levels.empty() ? 0 : static_cast<int>(levels.size()),
                      dst.kernel_gens, false, cfg);

    PolyMat matrix(ddim, std::vector<Polynomial>(sdim, Polynomial::zero(ring)));
    for (int j = 0; j < sdim; ++j) {
        // image of the j-th source generator under the diagonal chain map
        VecElem img{static_cast<int>(levels.size()), {}};
        for (const auto& tm : src.kernel_gens[j].terms) {
            Polynomial contrib = poly_term_mul(diag[tm.comp], tm.m, tm.c);
            for (const auto& t2 : contrib.terms())
                img.terms.push_back(VTerm{tm.comp, t2.m, t2.c});
        }
        img = vec_normalize(ring, ord, std::move(img));
        auto expr = dst_sub.express(img);
        if (!expr) throw input_error("koszul_power_map: chain image not in target kernel");
        for (const auto& tm : expr->terms)
            matrix[tm.comp][j] = poly_add(matrix[tm.comp][j],
                                          Polynomial(ring, {Term{tm.m, tm.c}}));
    }
    ModuleMap out{std::move(src.module), std::move(dst.module), std::move(matrix)};
    if (!out.well_defined()) throw input_error("koszul_power_map: induced map ill-defined");
    return out;
}

}  // namespace ztor
