#pragma once

#include "ztor/groebner.hpp"
#include "ztor/snf.hpp"

#include <memory>
#include <mutex>

namespace ztor {

using PolyMat = std::vector<std::vector<Polynomial>>;  // rows of columns

inline PolyMat poly_mat_mul(const Ring& ring, const PolyMat& a, const PolyMat& b) {
    std::size_t n = a.size();
    std::size_t m = n ? a[0].size() : 0;
    std::size_t q = b.size() ? b[0].size() : 0;
    if (m != b.size()) throw input_error("poly_mat_mul: shape mismatch");
    PolyMat out(n, std::vector<Polynomial>(q, Polynomial::zero(ring)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < q; ++j)
                if (!b[k][j].is_zero())
                    out[i][j] = poly_add(out[i][j], poly_mul(a[i][k], b[k][j]));
        }
    return out;
}

/// Column j of a polynomial matrix as an element of R^rows.
inline VecElem mat_column(const ModOrder& ord, const Ring& ring, const PolyMat& m, int rows,
                          int j) {
    VecElem v;
    v.rank = rows;
    for (int i = 0; i < rows; ++i)
        for (const auto& t : m[i][j].terms()) v.terms.push_back(VTerm{i, t.m, t.c});
    return vec_normalize(ring, ord, std::move(v));
}

// ---------------------------------------------------------------------------
// Bounded complexes of finite free modules

/// C^{k_min} -> ... -> C^{k_max} with polynomial differentials.
/// d[k] maps C^k -> C^{k+1} and is stored as a rank(k+1) x rank(k) matrix.
/// d o d = 0 is verified on construction.
class FreeComplex {
  public:
    FreeComplex(Ring ring, int k_min, std::vector<int> ranks, std::vector<PolyMat> diffs)
        : ring_(ring), k_min_(k_min), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
        if (diffs_.size() + 1 != ranks_.size())
            throw input_error("FreeComplex: need one differential per adjacent pair");
        for (std::size_t k = 0; k < diffs_.size(); ++k) {
            if (static_cast<int>(diffs_[k].size()) != ranks_[k + 1])
                throw input_error("FreeComplex: differential row count mismatch");
            for (const auto& row : diffs_[k])
                if (static_cast<int>(row.size()) != ranks_[k])
                    throw input_error("FreeComplex: differential column count mismatch");
        }
        for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
            PolyMat dd = poly_mat_mul(ring_, diffs_[k + 1], diffs_[k]);
            for (const auto& row : dd)
                for (const auto& ent : row)
                    if (!ent.is_zero()) throw input_error("FreeComplex: d o d != 0");
        }
    }

    const Ring& ring() const { return ring_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_min_ + static_cast<int>(ranks_.size()) - 1; }

    int rank_at(int k) const {
        if (k < k_min() || k > k_max()) return 0;
        return ranks_[k - k_min_];
    }
    /// d^k: C^k -> C^{k+1}; empty matrix outside the window.
    const PolyMat& diff_at(int k) const {
        static const PolyMat empty;
        if (k < k_min() || k >= k_max()) return empty;
        return diffs_[k - k_min_];
    }

    /// Internal degrees per component making every differential degree zero;
    /// present only for homogeneous complexes.
    const std::optional<std::vector<std::vector<int64_t>>>& twists() const { return twists_; }
    void set_twists(std::vector<std::vector<int64_t>> t) { twists_ = std::move(t); }

  private:
    Ring ring_;
    int k_min_;
    std::vector<int> ranks_;
    std::vector<PolyMat> diffs_;
    std::optional<std::vector<std::vector<int64_t>>> twists_;
};

// ---------------------------------------------------------------------------
// Finitely presented modules coker(R^s -> R^m)

class FPModule {
  public:
    FPModule() : FPModule(Ring::ZZ(0), 0, {}) {}
    FPModule(Ring ring, int ambient_rank, std::vector<VecElem> relations, RunConfig cfg = {})
        : ring_(ring), ambient_(ambient_rank), relations_(std::move(relations)), cfg_(cfg),
          cache_(std::make_shared<Cache>()) {
        for (auto& r : relations_) r.rank = ambient_;
    }

    const Ring& ring() const { return ring_; }
    int ambient_rank() const { return ambient_; }
    const std::vector<VecElem>& relations() const { return relations_; }
    const RunConfig& config() const { return cfg_; }

    const std::optional<std::vector<int64_t>>& twists() const { return twists_; }
    void set_twists(std::vector<int64_t> t) { twists_ = std::move(t); }

    /// Groebner basis of the relation submodule; computed once, shared by copies.
    const Submodule& rel_gb() const {
        std::call_once(cache_->flag, [&] {
            cache_->sub = std::make_shared<Submodule>(ring_, default_order(), ambient_,
                                                      relations_, false, cfg_);
        });
        return *cache_->sub;
    }

    VecElem reduce(const VecElem& v) const { return rel_gb().normal_form(v); }

    bool is_zero() const {
        if (ambient_ == 0) return true;
        for (int i = 0; i < ambient_; ++i)
            if (!rel_gb().contains(VecElem::unit(ambient_, i))) return false;
        return true;
    }

    /// Same ambient rank and the same relation submodule (mutual containment).
    bool same_presentation_module(const FPModule& other) const {
        if (ring_ != other.ring_ || ambient_ != other.ambient_) return false;
        for (const auto& r : other.relations_)
            if (!rel_gb().contains(r)) return false;
        for (const auto& r : relations_)
            if (!other.rel_gb().contains(r)) return false;
        return true;
    }

  private:
    struct Cache {
        std::once_flag flag;
        std::shared_ptr<const Submodule> sub;
    };

    Ring ring_;
    int ambient_;
    std::vector<VecElem> relations_;
    RunConfig cfg_;
    std::optional<std::vector<int64_t>> twists_;
    std::shared_ptr<Cache> cache_;
};

/// M/pM over Fp[x]: coefficientwise reduction of every relation.
inline FPModule reduce_module_mod_p(const FPModule& m, const Int& p, RunConfig cfg = {}) {
    if (m.ring().kind != CoefKind::ZZ)
        throw input_error("reduce_module_mod_p: module must be over ZZ");
    Ring rp = Ring::Fp(p, m.ring().nvars);
    std::vector<VecElem> rels;
    for (const auto& r : m.relations()) {
        VecElem v = r;
        rels.push_back(vec_normalize(rp, default_order(), std::move(v)));
    }
    FPModule out(rp, m.ambient_rank(), std::move(rels), cfg);
    if (m.twists()) out.set_twists(*m.twists());
    return out;
}

// ---------------------------------------------------------------------------
// Maps between finitely presented modules

/// Map given by a matrix on ambient generators. Well-definedness (matrix maps
/// source relations into the target relation submodule) is checked on demand.
struct ModuleMap {
    FPModule source;
    FPModule target;
    PolyMat matrix;  // target.ambient_rank x source.ambient_rank

    VecElem apply(const VecElem& v) const {
        const Ring& ring = source.ring();
        ModOrder ord = default_order();
        VecElem out{target.ambient_rank(), {}};
        for (const auto& t : v.terms) {
            VecElem col = mat_column(ord, ring, matrix, target.ambient_rank(), t.comp);
            out = vec_add_scaled(ring, ord, out, t.c, t.m, col);
        }
        return out;
    }

    bool well_defined() const {
        for (const auto& r : source.relations())
            if (!target.rel_gb().contains(apply(r))) return false;
        return true;
    }
};

/// Generators of ker(f) as a submodule of the source ambient (relations of the
/// source are folded in, so the list generates the full kernel preimage).
inline std::vector<VecElem> kernel_of_map(const ModuleMap& f, RunConfig cfg = {}) {
    const Ring& ring = f.source.ring();
    ModOrder ord = default_order();
    const int s = f.source.ambient_rank();
    std::vector<VecElem> combined;
    for (int j = 0; j < s; ++j)
        combined.push_back(mat_column(ord, ring, f.matrix, f.target.ambient_rank(), j));
    for (const auto& r : f.target.relations()) combined.push_back(r);
    auto syz = syzygies(ring, f.target.ambient_rank(), combined, cfg);
    std::vector<VecElem> out;
    for (const auto& z : syz) {
        VecElem v{s, {}};
        for (const auto& t : z.terms)
            if (t.comp < s) v.terms.push_back(t);
        v = vec_normalize(ring, ord, std::move(v));
        if (!v.is_zero()) out.push_back(std::move(v));
    }
    for (const auto& r : f.source.relations()) out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// Cohomology of free complexes

/// ker(d^k)/im(d^{k-1}) presented on the kernel generators: ambient coordinates
/// are the kernel generators of d^k; relations express im(d^{k-1}) in those
/// generators plus the syzygies among the generators themselves.
inline FPModule cohomology_at(const FreeComplex& c, int k, RunConfig cfg = {},
                              std::vector<VecElem>* kernel_gens_out = nullptr) {
    if (k < c.k_min() || k > c.k_max()) throw input_error("cohomology_at: k outside window");
    const Ring& ring = c.ring();
    ModOrder ord = default_order();
    const int rk = c.rank_at(k);
    if (rk == 0) return FPModule(ring, 0, {}, cfg);
    const int rk1 = c.rank_at(k + 1);
    const int rkm = c.rank_at(k - 1);

    auto image_columns = [&]() {
        std::vector<VecElem> cols;
        for (int j = 0; j < rkm; ++j) cols.push_back(mat_column(ord, ring, c.diff_at(k - 1), rk, j));
        return cols;
    };

    if (rk1 == 0) {
        // kernel is everything: present coker(d^{k-1}) on the unit vectors
        std::vector<VecElem> units;
        for (int i = 0; i < rk; ++i) units.push_back(VecElem::unit(rk, i));
        if (kernel_gens_out) *kernel_gens_out = units;
        FPModule out(ring, rk, image_columns(), cfg);
        if (c.twists()) out.set_twists((*c.twists())[k - c.k_min()]);
        return out;
    }

    std::vector<VecElem> dk_cols;
    for (int j = 0; j < rk; ++j) dk_cols.push_back(mat_column(ord, ring, c.diff_at(k), rk1, j));
    auto gens = syzygies(ring, rk1, dk_cols, cfg);
    if (kernel_gens_out) *kernel_gens_out = gens;
    const int s = static_cast<int>(gens.size());
    if (s == 0) return FPModule(ring, 0, {}, cfg);

    Submodule ker_sub(ring, ord, rk, gens, true, cfg);
    std::vector<VecElem> rels = ker_sub.syzygies();
    for (auto& r : rels) r.rank = s;
    for (const auto& col : image_columns()) {
        auto expr = ker_sub.express(col);
        if (!expr) throw input_error("cohomology_at: d o d = 0 violated");
        expr->rank = s;
        if (!expr->is_zero()) rels.push_back(std::move(*expr));
    }
    FPModule out(ring, s, std::move(rels), cfg);

    if (c.twists()) {
        const auto& tw = (*c.twists())[k - c.k_min()];
        std::vector<int64_t> gen_deg(s, 0);
        bool ok = true;
        for (int i = 0; i < s && ok; ++i) {
            if (gens[i].is_zero()) continue;
            int64_t d0 = gens[i].terms.front().m.deg() + tw[gens[i].terms.front().comp];
            for (const auto& t : gens[i].terms)
                if (t.m.deg() + tw[t.comp] != d0) { ok = false; break; }
            gen_deg[i] = d0;
        }
        if (ok) out.set_twists(std::move(gen_deg));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Colon by an integer scalar

struct ColonResult {
    FPModule quotient;                   // (N :_F c)/N, presented on colon_gens
    std::vector<VecElem> colon_gens;     // generators of (N : c) in the ambient of M
};

/// (0 :_M c) for M over ZZ, computed as the a-part projection of the syzygies
/// of (c*e_1, ..., c*e_m, relations), then presented modulo the relations.
inline ColonResult colon_by_scalar(const FPModule& m, const Int& c, RunConfig cfg = {}) {
    if (c == 0) throw input_error("colon_by_scalar: scalar must be nonzero");
    if (m.ring().kind != CoefKind::ZZ) throw input_error("colon_by_scalar: module must be over ZZ");
    const Ring& ring = m.ring();
    ModOrder ord = default_order();
    const int mr = m.ambient_rank();

    std::vector<VecElem> combined;
    for (int i = 0; i < mr; ++i) {
        VecElem v = VecElem::unit(mr, i);
        v.terms[0].c = Rat(c);
        combined.push_back(std::move(v));
    }
    for (const auto& r : m.relations()) combined.push_back(r);
    auto syz = syzygies(ring, mr, combined, cfg);

    std::vector<VecElem> gens;
    for (const auto& z : syz) {
        VecElem v{mr, {}};
        for (const auto& t : z.terms)
            if (t.comp < mr) v.terms.push_back(t);
        v = vec_normalize(ring, ord, std::move(v));
        if (v.is_zero()) continue;
        // keep only generators with nonzero image in M
        VecElem nf = m.reduce(v);
        if (nf.is_zero()) continue;
        bool dup = false;
        for (const auto& g : gens)
            if (vec_equal(g, v)) { dup = true; break; }
        if (!dup) gens.push_back(std::move(v));
    }

    const int q = static_cast<int>(gens.size());
    if (q == 0) return ColonResult{FPModule(ring, 0, {}, cfg), {}};

    std::vector<VecElem> pres = gens;
    for (const auto& r : m.relations()) pres.push_back(r);
    auto syz2 = syzygies(ring, mr, pres, cfg);
    std::vector<VecElem> rels;
    for (const auto& z : syz2) {
        VecElem v{q, {}};
        for (const auto& t : z.terms)
            if (t.comp < q) v.terms.push_back(t);
        v = vec_normalize(ring, ord, std::move(v));
        if (!v.is_zero()) rels.push_back(std::move(v));
    }
    return ColonResult{FPModule(ring, q, std::move(rels), cfg), std::move(gens)};
}

struct InjectivityResult {
    bool injective = true;
    VecElem witness;  // ambient element with p*witness in N, witness not in N
};

/// Is multiplication by the prime p injective on M? (Theorem-level question:
/// p a nonzerodivisor.) When not, reports a witness in M's generator coordinates.
inline InjectivityResult scalar_is_injective(const FPModule& m, const Int& p, RunConfig cfg = {}) {
    ColonResult col = colon_by_scalar(m, p, cfg);
    InjectivityResult out;
    if (col.quotient.is_zero() || col.colon_gens.empty()) return out;
    out.injective = false;
    out.witness = m.reduce(col.colon_gens.front());
    return out;
}

}  // namespace ztor
