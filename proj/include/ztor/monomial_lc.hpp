#pragma once

#include "ztor/fpmod.hpp"

#include <functional>
#include <set>

namespace ztor {

// ZZ^d-graded Cech oracle for monomial ideals. Each graded piece of the Cech
// complex C(f;R) is a finite complex of free ZZ-modules; its cohomology,
// computed by Smith normal form, is the degree-u piece of H^k_a(R). For
// squarefree ideals the degrees u in {0,-1}^d determine every graded piece
// (Hochster-type degeneracy), which makes the squarefree scan complete.

namespace cech_detail {

inline std::vector<int> support_union(const std::vector<Monomial>& f, const std::vector<int>& s) {
    std::vector<int> in(f.empty() ? 0 : f[0].e.size(), 0);
    for (int j : s)
        for (std::size_t i = 0; i < f[j].e.size(); ++i)
            if (f[j].e[i] > 0) in[i] = 1;
    return in;
}

inline bool admissible(const std::vector<Monomial>& f, const std::vector<int>& s,
                       const std::vector<int64_t>& u) {
    std::vector<int> in = support_union(f, s);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!in[i] && u[i] < 0) return false;
    return true;
}

inline int sign_insert(int j, const std::vector<int>& s) {
    int cnt = 0;
    for (int i : s)
        if (i < j) ++cnt;
    return (cnt % 2 == 0) ? 1 : -1;
}

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

inline std::vector<Monomial> monomial_gens(const std::vector<Polynomial>& f) {
    std::vector<Monomial> out;
    for (const auto& g : f) {
        if (g.size() != 1 || g.terms().front().c != 1)
            throw input_error("cech: generators must be monomials with coefficient 1");
        out.push_back(g.terms().front().m);
    }
    return out;
}

}  // namespace cech_detail

/// The degree-u strand of the Cech complex on monomials f: the component for
/// S has rank one exactly when u_i >= 0 for every variable i outside the
/// support of prod_{j in S} f_j; differentials are the Cech signs.
inline FreeComplex cech_degree_complex(const std::vector<Polynomial>& f,
                                       const std::vector<int64_t>& u) {
    using namespace cech_detail;
    if (f.empty()) throw input_error("cech_degree_complex: empty sequence");
    const Ring& ring = f.front().ring();
    if (ring.kind != CoefKind::ZZ) throw input_error("cech_degree_complex: ring must be ZZ");
    if (static_cast<int>(u.size()) != ring.nvars)
        throw input_error("cech_degree_complex: degree vector length mismatch");
    std::vector<Monomial> mono = monomial_gens(f);
    const int t = static_cast<int>(mono.size());

    std::vector<int> ranks(t + 1);
    std::vector<std::vector<std::vector<int>>> levels(t + 1);
    for (int k = 0; k <= t; ++k) {
        for (const auto& s : subsets(t, k))
            if (admissible(mono, s, u)) levels[k].push_back(s);
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
                auto it = std::lower_bound(levels[k + 1].begin(), levels[k + 1].end(), s2);
                if (it == levels[k + 1].end() || *it != s2) continue;  // cannot happen: admissibility is upward closed
                int row = static_cast<int>(it - levels[k + 1].begin());
                Rat c(sign_insert(j, s));
                d[row][col] = poly_add(d[row][col], Polynomial::constant(ring, c));
            }
        }
        diffs[k] = std::move(d);
    }
    return FreeComplex(ring, 0, std::move(ranks), std::move(diffs));
}

struct GradedPieceResult {
    std::vector<int64_t> u;
    int k = 0;
    int rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, divisibility chain
};

/// H^k_a(R)_u as a finitely generated abelian group, via SNF on the strand.
inline GradedPieceResult lc_graded_piece(const std::vector<Polynomial>& f, int k,
                                         const std::vector<int64_t>& u) {
    FreeComplex strand = cech_degree_complex(f, u);
    GradedPieceResult out;
    out.u = u;
    out.k = k;
    if (k < 0 || k > strand.k_max() || strand.rank_at(k) == 0) return out;

    auto to_int_mat = [&](const PolyMat& m, int rows, int cols) {
        IntMat a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!m[i][j].is_zero()) a.at(i, j) = numerator(m[i][j].terms().front().c);
        return a;
    };
    const int rk = strand.rank_at(k);
    const int rk1 = strand.rank_at(k + 1);
    const int rkm = strand.rank_at(k - 1);

    // kernel basis of d^k
    std::vector<std::vector<Int>> kernel;
    if (rk1 == 0) {
        for (int i = 0; i < rk; ++i) {
            std::vector<Int> ei(rk, Int(0));
            ei[i] = 1;
            kernel.push_back(std::move(ei));
        }
    } else {
        IntMat dk = to_int_mat(strand.diff_at(k), rk1, rk);
        kernel = integer_kernel(smith_normal_form(dk));
    }
    const int kr = static_cast<int>(kernel.size());
    if (kr == 0) return out;

    IntMat K(rk, kr);
    for (int j = 0; j < kr; ++j)
        for (int i = 0; i < rk; ++i) K.at(i, j) = kernel[j][i];

    IntMat X(kr, rkm);
    if (rkm > 0) {
        auto ksnf = smith_normal_form(K);
        IntMat dkm = to_int_mat(strand.diff_at(k - 1), rk, rkm);
        for (int j = 0; j < rkm; ++j) {
            std::vector<Int> col(rk);
            for (int i = 0; i < rk; ++i) col[i] = dkm.at(i, j);
            auto sol = solve_integer(ksnf, col);
            if (!sol) throw input_error("lc_graded_piece: image not inside kernel");
            for (int i = 0; i < kr; ++i) X.at(i, j) = (*sol)[i];
        }
    }
    AbelianInvariants inv = cokernel_invariants(smith_normal_form(X), kr);
    out.rank = inv.rank;
    out.torsion = std::move(inv.torsion);
    return out;
}

enum class ScanMode { Box, Squarefree };

struct TorsionScanResult {
    std::vector<Int> primes;                 // primes dividing any invariant factor
    std::vector<GradedPieceResult> witnesses;  // pieces with torsion
    ScanMode mode = ScanMode::Squarefree;
    int box_bound = 0;  // the bound when mode == Box (soundness is bounded there)
};

/// Scan graded pieces of H^k_a(R) for torsion primes. Squarefree mode visits
/// u in {0,-1}^d and is complete for squarefree monomial ideals; box mode
/// visits u in [-D, D]^d and is sound but bounded.
inline TorsionScanResult torsion_scan(const std::vector<Polynomial>& f, int k, ScanMode mode,
                                      int box_bound = 2) {
    using namespace cech_detail;
    std::vector<Monomial> mono = monomial_gens(f);
    const int d = static_cast<int>(f.front().ring().nvars);
    TorsionScanResult out;
    out.mode = mode;
    out.box_bound = mode == ScanMode::Box ? box_bound : 0;
    if (mode == ScanMode::Squarefree) {
        for (const auto& m : mono)
            for (auto e : m.e)
                if (e > 1) throw input_error("torsion_scan: squarefree mode needs squarefree generators");
    }

    std::set<Int> primes;
    std::vector<int64_t> u(d, 0);
    const int64_t lo = mode == ScanMode::Squarefree ? -1 : -box_bound;
    const int64_t hi = mode == ScanMode::Squarefree ? 0 : box_bound;
    std::function<void(int)> rec = [&](int i) {
        if (i == d) {
            GradedPieceResult piece = lc_graded_piece(f, k, u);
            if (!piece.torsion.empty()) {
                for (const auto& fct : piece.torsion)
                    for (const auto& p : prime_factors(fct)) primes.insert(p);
                out.witnesses.push_back(std::move(piece));
            }
            return;
        }
        for (int64_t v = lo; v <= hi; ++v) {
            u[i] = v;
            rec(i + 1);
        }
        u[i] = 0;
    };
    rec(0);
    out.primes.assign(primes.begin(), primes.end());
    return out;
}

}  // namespace ztor
