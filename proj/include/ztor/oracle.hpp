#pragma once

#include "ztor/fpmod.hpp"

#include <functional>
#include <map>

namespace ztor {

// Degree-truncated linear-algebra oracle. Multiplication and differential maps
// are laid out as exact matrices over a monomial basis and answered by Smith
// normal form (over ZZ) or by rank (over fields). Columns are never truncated:
// the row space always covers every term of every included product, so a
// positive membership answer is exact and a negative answer means precisely
// "no certificate with multiplier degree <= D".

namespace oracle_detail {

inline void enumerate_monomials(int nvars, int64_t max_deg, std::vector<Monomial>& out) {
    Monomial cur(nvars);
    std::function<void(int, int64_t)> rec = [&](int i, int64_t left) {
        if (i == nvars) { out.push_back(cur); return; }
        for (int64_t e = 0; e <= left; ++e) {
            cur.e[i] = e;
            rec(i + 1, left - e);
        }
        cur.e[i] = 0;
    };
    rec(0, max_deg);
}

inline void enumerate_monomials_exact(int nvars, int64_t deg, std::vector<Monomial>& out) {
    Monomial cur(nvars);
    std::function<void(int, int64_t)> rec = [&](int i, int64_t left) {
        if (i == nvars - 1) { cur.e[i] = left; out.push_back(cur); cur.e[i] = 0; return; }
        if (nvars == 0) return;
        for (int64_t e = 0; e <= left; ++e) {
            cur.e[i] = e;
            rec(i + 1, left - e);
        }
        cur.e[i] = 0;
    };
    if (nvars == 0) {
        if (deg == 0) out.push_back(Monomial(0));
        return;
    }
    rec(0, deg);
}

/// Row indexer for pairs (component, monomial).
struct RowIndex {
    std::map<std::pair<int, std::vector<int64_t>>, int> idx;
    int add(int comp, const Monomial& m) {
        auto key = std::make_pair(comp, m.e);
        auto it = idx.find(key);
        if (it != idx.end()) return it->second;
        int id = static_cast<int>(idx.size());
        idx.emplace(key, id);
        return id;
    }
    int find(int comp, const Monomial& m) const {
        auto it = idx.find(std::make_pair(comp, m.e));
        return it == idx.end() ? -1 : it->second;
    }
    int size() const { return static_cast<int>(idx.size()); }
};

struct SparseCol {
    std::vector<std::pair<int, Rat>> entries;
};

/// Exact rank / solvability over a field by Gaussian elimination.
struct FieldSolver {
    Ring ring;
    // columns as dense rows after assembly
    int rank(std::vector<std::vector<Rat>>& rows) const {
        int r = 0;
        int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
        for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
            int piv = -1;
            for (int i = r; i < static_cast<int>(rows.size()); ++i)
                if (rows[i][c] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(rows[r], rows[piv]);
            Rat inv = coef_inv(ring, rows[r][c]);
            for (int j = c; j < ncols; ++j) rows[r][j] = coef_mul(ring, rows[r][j], inv);
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                if (i == r || rows[i][c] == 0) continue;
                Rat f = rows[i][c];
                for (int j = c; j < ncols; ++j)
                    rows[i][j] = coef_add(ring, rows[i][j], coef_neg(ring, coef_mul(ring, f, rows[r][j])));
            }
            ++r;
        }
        return r;
    }
};

}  // namespace oracle_detail

struct OracleMembership {
    bool member = false;
    int64_t bound = 0;  // multiplier degree bound used
};

/// Is v in the submodule generated by gens, witnessed by multipliers of degree
/// <= bound? Sound in both directions at the stated bound.
inline OracleMembership oracle_membership(const Ring& ring, int rank,
                                          const std::vector<VecElem>& gens, const VecElem& v,
                                          int64_t bound) {
    using namespace oracle_detail;
    OracleMembership out;
    out.bound = bound;

    std::vector<Monomial> mults;
    enumerate_monomials(ring.nvars, bound, mults);

    RowIndex rows;
    std::vector<SparseCol> cols;
    ModOrder ord = default_order();
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (const auto& mu : mults) {
            SparseCol col;
            for (const auto& t : g.terms)
                col.entries.emplace_back(rows.add(t.comp, mono_mul(t.m, mu)), t.c);
            cols.push_back(std::move(col));
        }
    }
    std::vector<std::pair<int, Rat>> target;
    for (const auto& t : v.terms) target.emplace_back(rows.add(t.comp, t.m), t.c);

    const int nr = rows.size();
    const int nc = static_cast<int>(cols.size());
    if (ring.kind == CoefKind::ZZ) {
        IntMat A(nr, nc);
        for (int j = 0; j < nc; ++j)
            for (const auto& [r, c] : cols[j].entries) A.at(r, j) += numerator(c);
        std::vector<Int> b(nr, Int(0));
        for (const auto& [r, c] : target) b[r] += numerator(c);
        auto snf = smith_normal_form(A);
        out.member = solve_integer(snf, b).has_value();
        return out;
    }
    // field: compare rank(A) with rank([A|b])
    std::vector<std::vector<Rat>> m1(nr, std::vector<Rat>(nc, Rat(0)));
    std::vector<std::vector<Rat>> m2(nr, std::vector<Rat>(nc + 1, Rat(0)));
    for (int j = 0; j < nc; ++j)
        for (const auto& [r, c] : cols[j].entries) {
            m1[r][j] = coef_add(ring, m1[r][j], c);
            m2[r][j] = coef_add(ring, m2[r][j], c);
        }
    for (const auto& [r, c] : target) m2[r][nc] = coef_add(ring, m2[r][nc], c);
    FieldSolver fs{ring};
    out.member = fs.rank(m1) == fs.rank(m2);
    return out;
}

inline OracleMembership oracle_membership(const std::vector<Polynomial>& gens,
                                          const Polynomial& v, int64_t bound) {
    if (gens.empty()) return OracleMembership{v.is_zero(), bound};
    const Ring& r = gens.front().ring();
    ModOrder ord = default_order();
    std::vector<VecElem> vs;
    for (const auto& g : gens) vs.push_back(vec_from_poly(ord, g));
    return oracle_membership(r, 1, vs, vec_from_poly(ord, v), bound);
}

/// Exact syzygies of gens whose multiplier degree is <= bound (ZZ: lattice
/// basis, saturated; fields: nullspace basis).
inline std::vector<VecElem> oracle_kernel(const Ring& ring, int rank,
                                          const std::vector<VecElem>& gens, int64_t bound) {
    using namespace oracle_detail;
    std::vector<Monomial> mults;
    enumerate_monomials(ring.nvars, bound, mults);

    RowIndex rows;
    struct ColTag { int gen; Monomial mu; };
    std::vector<ColTag> tags;
    std::vector<SparseCol> cols;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        for (const auto& mu : mults) {
            SparseCol col;
            for (const auto& t : gens[gi].terms)
                col.entries.emplace_back(rows.add(t.comp, mono_mul(t.m, mu)), t.c);
            cols.push_back(std::move(col));
            tags.push_back(ColTag{static_cast<int>(gi), mu});
        }
    }
    const int nr = rows.size();
    const int nc = static_cast<int>(cols.size());
    std::vector<std::vector<Int>> null_cols;
    if (ring.kind == CoefKind::ZZ) {
        IntMat A(nr, nc);
        for (int j = 0; j < nc; ++j)
            for (const auto& [r, c] : cols[j].entries) A.at(r, j) += numerator(c);
        null_cols = integer_kernel(smith_normal_form(A));
    } else {
        throw input_error("oracle_kernel: implemented over ZZ");
    }
    ModOrder ord = default_order();
    std::vector<VecElem> out;
    for (const auto& x : null_cols) {
        VecElem z{static_cast<int>(gens.size()), {}};
        for (int j = 0; j < nc; ++j)
            if (x[j] != 0) z.terms.push_back(VTerm{tags[j].gen, tags[j].mu, Rat(x[j])});
        out.push_back(vec_normalize(ring, ord, std::move(z)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graded slices (ZZ coefficients)

/// Abelian-group invariants of the degree-n slice of H^k of a homogeneous
/// complex, via SNF of the exact slice matrices. Requires twists.
inline AbelianInvariants oracle_graded_cohomology(const FreeComplex& c, int k, int64_t n) {
    using namespace oracle_detail;
    if (!c.twists()) throw input_error("oracle_graded_cohomology: complex has no twists");
    if (c.ring().kind != CoefKind::ZZ)
        throw input_error("oracle_graded_cohomology: implemented over ZZ");
    const auto& tw = *c.twists();
    const int nvars = c.ring().nvars;

    // slice basis of C^level at internal degree n
    auto slice_basis = [&](int level) {
        std::vector<std::pair<int, Monomial>> basis;
        if (level < c.k_min() || level > c.k_max()) return basis;
        const auto& wt = tw[level - c.k_min()];
        for (int i = 0; i < c.rank_at(level); ++i) {
            int64_t d = n - wt[i];
            if (d < 0) continue;
            std::vector<Monomial> ms;
            enumerate_monomials_exact(nvars, d, ms);
            for (auto& m : ms) basis.emplace_back(i, std::move(m));
        }
        return basis;
    };
    auto slice_matrix = [&](int level, const std::vector<std::pair<int, Monomial>>& src,
                            const std::vector<std::pair<int, Monomial>>& dst) {
        std::map<std::pair<int, std::vector<int64_t>>, int> dst_idx;
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst_idx[{dst[i].first, dst[i].second.e}] = static_cast<int>(i);
        IntMat A(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        const PolyMat& d = c.diff_at(level);
        for (std::size_t j = 0; j < src.size(); ++j) {
            auto [comp, mon] = src[j];
            for (int i = 0; i < c.rank_at(level + 1); ++i) {
                const Polynomial& ent = d[i][comp];
                for (const auto& t : ent.terms()) {
                    auto it = dst_idx.find({i, mono_mul(t.m, mon).e});
                    if (it == dst_idx.end())
                        throw input_error("oracle_graded_cohomology: differential leaves the slice");
                    A.at(it->second, static_cast<int>(j)) += numerator(t.c);
                }
            }
        }
        return A;
    };

    auto bk = slice_basis(k);
    auto bk1 = slice_basis(k + 1);
    auto bkm = slice_basis(k - 1);
    IntMat dk = slice_matrix(k, bk, bk1);
    IntMat dkm = slice_matrix(k - 1, bkm, bk);

    // kernel basis of dk, then image coordinates inside it
    auto kersnf = smith_normal_form(dk);
    auto kernel = integer_kernel(kersnf);
    const int kr = static_cast<int>(kernel.size());
    IntMat K(static_cast<int>(bk.size()), kr);
    for (int j = 0; j < kr; ++j)
        for (int i = 0; i < K.rows; ++i) K.at(i, j) = kernel[j][i];
    auto ksnf = smith_normal_form(K);
    IntMat X(kr, dkm.cols);
    for (int j = 0; j < dkm.cols; ++j) {
        std::vector<Int> col(dkm.rows);
        for (int i = 0; i < dkm.rows; ++i) col[i] = dkm.at(i, j);
        auto sol = solve_integer(ksnf, col);
        if (!sol) throw input_error("oracle_graded_cohomology: image not inside kernel");
        for (int i = 0; i < kr; ++i) X.at(i, j) = (*sol)[i];
    }
    return cokernel_invariants(smith_normal_form(X), kr);
}

/// Abelian-group invariants of the degree-n slice of a graded presentation
/// coker(relations) (ZZ coefficients; ambient twists required).
inline AbelianInvariants oracle_graded_presentation(const FPModule& m, int64_t n) {
    using namespace oracle_detail;
    if (!m.twists()) throw input_error("oracle_graded_presentation: module has no twists");
    if (m.ring().kind != CoefKind::ZZ)
        throw input_error("oracle_graded_presentation: implemented over ZZ");
    const auto& tw = *m.twists();
    const int nvars = m.ring().nvars;

    std::vector<std::pair<int, Monomial>> basis;
    std::map<std::pair<int, std::vector<int64_t>>, int> idx;
    for (int i = 0; i < m.ambient_rank(); ++i) {
        int64_t d = n - tw[i];
        if (d < 0) continue;
        std::vector<Monomial> ms;
        enumerate_monomials_exact(nvars, d, ms);
        for (auto& mm : ms) {
            idx[{i, mm.e}] = static_cast<int>(basis.size());
            basis.emplace_back(i, std::move(mm));
        }
    }
    std::vector<std::vector<Int>> cols;
    for (const auto& r : m.relations()) {
        if (r.is_zero()) continue;
        int64_t rdeg = r.terms.front().m.deg() + tw[r.terms.front().comp];
        for (const auto& t : r.terms)
            if (t.m.deg() + tw[t.comp] != rdeg)
                throw input_error("oracle_graded_presentation: relation not homogeneous");
        int64_t mu_deg = n - rdeg;
        if (mu_deg < 0) continue;
        std::vector<Monomial> ms;
        enumerate_monomials_exact(nvars, mu_deg, ms);
        for (const auto& mu : ms) {
            std::vector<Int> col(basis.size(), Int(0));
            for (const auto& t : r.terms) {
                auto it = idx.find({t.comp, mono_mul(t.m, mu).e});
                if (it == idx.end())
                    throw input_error("oracle_graded_presentation: slice indexing error");
                col[it->second] += numerator(t.c);
            }
            cols.push_back(std::move(col));
        }
    }
    IntMat A(static_cast<int>(basis.size()), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) A.at(static_cast<int>(i), static_cast<int>(j)) = cols[j][i];
    return cokernel_invariants(smith_normal_form(A), static_cast<int>(basis.size()));
}

}  // namespace ztor
