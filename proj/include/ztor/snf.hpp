#pragma once

#include "ztor/base.hpp"

#include <optional>

namespace ztor {

/// Dense integer matrix, row-major.
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Int(0)) {}

    Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const IntMat& x, const IntMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

inline IntMat mat_mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw input_error("mat_mul: shape mismatch");
    IntMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                if (y.at(k, j) != 0) z.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return z;
}

inline std::vector<Int> mat_apply(const IntMat& x, const std::vector<Int>& v) {
    if (x.cols != static_cast<int>(v.size())) throw input_error("mat_apply: shape mismatch");
    std::vector<Int> out(x.rows, Int(0));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j)
            if (x.at(i, j) != 0 && v[j] != 0) out[i] += x.at(i, j) * v[j];
    return out;
}

/// Exact determinant by fraction-free Gaussian elimination (Bareiss).
inline Int mat_det(const IntMat& m) {
    if (m.rows != m.cols) throw input_error("mat_det: square matrices only");
    int n = m.rows;
    if (n == 0) return 1;
    IntMat w = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

/// U*A*V = D with U, V unimodular and D diagonal, d1 | d2 | ... .
/// invariant_factors lists the nonzero diagonal entries (1s included).
struct SNFResult {
    IntMat u, v, d;
    std::vector<Int> invariant_factors;
    int rank() const { return static_cast<int>(invariant_factors.size()); }
};

/// Smith normal form: smallest-absolute-value pivoting, Euclidean row/column
/// steps, divisibility fix-up by row merging.
inline SNFResult smith_normal_form(const IntMat& A) {
    SNFResult res;
    res.u = IntMat::identity(A.rows);
    res.v = IntMat::identity(A.cols);
    res.d = A;
    IntMat& D = res.d;
    IntMat& U = res.u;
    IntMat& V = res.v;
    const int n = std::min(A.rows, A.cols);

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < D.cols; ++k) std::swap(D.at(i, k), D.at(j, k));
        for (int k = 0; k < U.cols; ++k) std::swap(U.at(i, k), U.at(j, k));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int k = 0; k < D.rows; ++k) std::swap(D.at(k, i), D.at(k, j));
        for (int k = 0; k < V.rows; ++k) std::swap(V.at(k, i), V.at(k, j));
    };
    auto addmul_row = [&](int dst, int src, const Int& q) {  // row_dst += q * row_src
        if (q == 0) return;
        for (int k = 0; k < D.cols; ++k) D.at(dst, k) += q * D.at(src, k);
        for (int k = 0; k < U.cols; ++k) U.at(dst, k) += q * U.at(src, k);
    };
    auto addmul_col = [&](int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int k = 0; k < D.rows; ++k) D.at(k, dst) += q * D.at(k, src);
        for (int k = 0; k < V.rows; ++k) V.at(k, dst) += q * V.at(k, src);
    };

    for (int s = 0; s < n; ++s) {
        for (;;) {
            // smallest absolute nonzero entry in the trailing block
            int pi = -1, pj = -1;
            Int best;
            for (int i = s; i < D.rows; ++i)
                for (int j = s; j < D.cols; ++j) {
                    if (D.at(i, j) == 0) continue;
                    Int v2 = abs_int(D.at(i, j));
                    if (pi < 0 || v2 < best) { best = v2; pi = i; pj = j; }
                }
            if (pi < 0) { s = n; break; }  // trailing block is zero
            swap_rows(s, pi);
            swap_cols(s, pj);

            bool again = false;
            for (int i = s + 1; i < D.rows; ++i) {
                if (D.at(i, s) == 0) continue;
                addmul_row(i, s, -(D.at(i, s) / D.at(s, s)));
                if (D.at(i, s) != 0) again = true;  // remainder is smaller; re-pivot
            }
            for (int j = s + 1; j < D.cols; ++j) {
                if (D.at(s, j) == 0) continue;
                addmul_col(j, s, -(D.at(s, j) / D.at(s, s)));
                if (D.at(s, j) != 0) again = true;
            }
            if (again) continue;

            // divisibility fix-up: fold a bad row in and restart the block
            bool fixed = true;
            for (int i = s + 1; i < D.rows && fixed; ++i)
                for (int j = s + 1; j < D.cols && fixed; ++j)
                    if (D.at(i, j) % D.at(s, s) != 0) {
                        addmul_row(s, i, Int(1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (s >= n) break;
    }

    for (int s = 0; s < n; ++s) {
        if (D.at(s, s) < 0) {
            for (int k = 0; k < D.cols; ++k) D.at(s, k) = -D.at(s, k);
            for (int k = 0; k < U.cols; ++k) U.at(s, k) = -U.at(s, k);
        }
        if (D.at(s, s) != 0) res.invariant_factors.push_back(D.at(s, s));
    }
    return res;
}

/// Solves A x = b over ZZ; nullopt when no integral solution exists.
inline std::optional<std::vector<Int>> solve_integer(const SNFResult& snf,
                                                     const std::vector<Int>& b) {
    const IntMat& D = snf.d;
    std::vector<Int> y = mat_apply(snf.u, b);
    std::vector<Int> z(D.cols, Int(0));
    int n = std::min(D.rows, D.cols);
    for (int i = 0; i < static_cast<int>(y.size()); ++i) {
        Int d = i < n ? D.at(i, i) : Int(0);
        if (d == 0) {
            if (y[i] != 0) return std::nullopt;
        } else {
            if (y[i] % d != 0) return std::nullopt;
            z[i] = y[i] / d;
        }
    }
    return mat_apply(snf.v, z);
}

/// ZZ-basis of the kernel of A (columns; the lattice is saturated).
inline std::vector<std::vector<Int>> integer_kernel(const SNFResult& snf) {
    const IntMat& D = snf.d;
    int n = std::min(D.rows, D.cols);
    std::vector<std::vector<Int>> out;
    for (int j = 0; j < D.cols; ++j) {
        Int d = j < n ? D.at(j, j) : Int(0);
        if (d != 0) continue;
        std::vector<Int> col(D.cols);
        for (int i = 0; i < snf.v.rows; ++i) col[i] = snf.v.at(i, j);
        out.push_back(std::move(col));
    }
    return out;
}

/// Rank and torsion of coker(A: ZZ^cols -> ZZ^rows) read off the SNF.
struct AbelianInvariants {
    int rank = 0;                       // free rank
    std::vector<Int> torsion;           // invariant factors > 1, divisibility chain
};

inline AbelianInvariants cokernel_invariants(const SNFResult& snf, int target_rank) {
    AbelianInvariants inv;
    inv.rank = target_rank - snf.rank();
    for (const auto& d : snf.invariant_factors)
        if (d > 1) inv.torsion.push_back(d);
    return inv;
}

}  // namespace ztor
