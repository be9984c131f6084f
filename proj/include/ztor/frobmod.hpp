#pragma once

#include "ztor/koszul.hpp"

#include <memory>

namespace ztor {

// Frobenius machinery over Fp[x]. On presentations the functor F is entrywise
// p-th power of the relation matrix (Frobenius is flat on regular rings, so F
// is exact and fixes free modules).

inline FPModule frobenius_functor(const FPModule& m, RunConfig cfg = {}) {
    if (m.ring().kind != CoefKind::Fp)
        throw input_error("frobenius_functor: module must be over Fp");
    int64_t p = static_cast<int64_t>(m.ring().p);
    std::vector<VecElem> rels;
    for (const auto& r : m.relations()) {
        VecElem v = r;
        for (auto& t : v.terms) t.m = mono_pow(t.m, p);
        rels.push_back(vec_normalize(m.ring(), default_order(), std::move(v)));
    }
    return FPModule(m.ring(), m.ambient_rank(), std::move(rels), cfg);
}

inline FreeComplex frobenius_complex(const FreeComplex& c) {
    if (c.ring().kind != CoefKind::Fp)
        throw input_error("frobenius_complex: complex must be over Fp");
    std::vector<int> ranks;
    for (int k = c.k_min(); k <= c.k_max(); ++k) ranks.push_back(c.rank_at(k));
    std::vector<PolyMat> diffs;
    for (int k = c.k_min(); k < c.k_max(); ++k) {
        PolyMat d = c.diff_at(k);
        for (auto& row : d)
            for (auto& ent : row)
                if (!ent.is_zero()) ent = frobenius_endo(ent);
        diffs.push_back(std::move(d));
    }
    FreeComplex out(c.ring(), c.k_min(), std::move(ranks), std::move(diffs));
    if (c.twists()) {
        int64_t p = static_cast<int64_t>(c.ring().p);
        auto tw = *c.twists();
        for (auto& level : tw)
            for (auto& w : level) w *= p;
        out.set_twists(std::move(tw));
    }
    return out;
}

/// beta: H^k(f) -> F(H^k(f)), the koszul power map with its target identified,
/// presentation by presentation, with the Frobenius functor applied to the
/// source. The identification is literal equality of relation matrices.
inline ModuleMap generating_morphism(const std::vector<Polynomial>& f, int k,
                                     RunConfig cfg = {}) {
    if (f.empty()) throw input_error("generating_morphism: empty sequence");
    const Ring& ring = f.front().ring();
    if (ring.kind != CoefKind::Fp)
        throw input_error("generating_morphism: sequence must be over Fp");
    ModuleMap beta = koszul_power_map(f, k, ring.p, cfg);
    FPModule fm = frobenius_functor(beta.source, cfg);
    if (fm.ambient_rank() != beta.target.ambient_rank())
        throw input_error("generating_morphism: presentation mismatch with F(M)");
    const auto& a = fm.relations();
    const auto& b = beta.target.relations();
    if (a.size() != b.size())
        throw input_error("generating_morphism: presentation mismatch with F(M)");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!vec_equal(a[i], b[i]))
            throw input_error("generating_morphism: presentation mismatch with F(M)");
    beta.target = std::move(fm);
    if (!beta.well_defined()) throw input_error("generating_morphism: ill-defined map");
    return beta;
}

struct StabilizeResult {
    bool vanishes = false;
    int stabilized_at = 0;     // smallest e with K_e = K_{e+1}; 0 when unstabilized
    std::string status;        // "ok" | "unstabilized"
    FPModule root;             // M_0 / K_infinity when stabilized
};

/// Kernel stabilization of M_0 -> F^e(M_0) along beta. The direct limit
/// H^k_a(R/pR) vanishes exactly when the stable quotient M_0/K_inf is zero.
inline StabilizeResult stabilize_kernel(const std::vector<Polynomial>& f, int k, const Int& p,
                                        int e_max = 8, RunConfig cfg = {}) {
    if (e_max < 1) throw input_error("stabilize_kernel: e_max must be >= 1");
    std::vector<Polynomial> fp;
    if (!f.empty() && f.front().ring().kind == CoefKind::ZZ) {
        for (const auto& g : f) fp.push_back(reduce_mod_p(g, p));
    } else {
        fp = f;
        if (!f.empty() && f.front().ring().p != p)
            throw input_error("stabilize_kernel: sequence modulus differs from p");
    }
    ModuleMap beta = generating_morphism(fp, k, cfg);
    const Ring& ring = beta.source.ring();
    const FPModule& m0 = beta.source;
    const int s = m0.ambient_rank();
    int64_t pl = static_cast<int64_t>(p);

    StabilizeResult res;
    res.status = "unstabilized";
    if (s == 0) {  // zero module: trivially stable and vanishing
        res.vanishes = true;
        res.stabilized_at = 1;
        res.status = "ok";
        res.root = FPModule(ring, 0, {}, cfg);
        return res;
    }

    auto frob_mat = [&](const PolyMat& m) {
        PolyMat out = m;
        for (auto& row : out)
            for (auto& ent : row)
                if (!ent.is_zero()) ent = frobenius_endo(ent);
        return out;
    };
    auto frob_module = [&](const FPModule& m) { return frobenius_functor(m, cfg); };

    PolyMat b_e = beta.matrix;       // composite matrix M_0 -> F^e(M_0)
    PolyMat f_pow_b = beta.matrix;   // F^{e}(B), advanced each round
    FPModule target = beta.target;   // F^e(M_0)

    std::vector<VecElem> prev_kernel;
    Submodule* prev_sub = nullptr;
    std::unique_ptr<Submodule> prev_holder;

    for (int e = 1; e <= e_max; ++e) {
        ModuleMap comp{m0, target, b_e};
        std::vector<VecElem> ker = kernel_of_map(comp, cfg);
        auto cur = std::make_unique<Submodule>(ring, default_order(), s, ker, false, cfg);

        if (e > 1) {
            // ascending chain: K_{e-1} subset K_e must hold
            for (const auto& g : prev_kernel)
                if (!cur->contains(g))
                    throw input_error("stabilize_kernel: kernel chain not ascending");
            bool equal = true;
            for (const auto& g : ker)
                if (!prev_sub->contains(g)) { equal = false; break; }
            if (equal) {
                res.stabilized_at = e - 1;
                res.status = "ok";
                std::vector<VecElem> rels = prev_kernel;
                for (const auto& r : m0.relations()) rels.push_back(r);
                res.root = FPModule(ring, s, std::move(rels), cfg);
                res.vanishes = res.root.is_zero();
                return res;
            }
        }

        bool full = true;
        for (int i = 0; i < s && full; ++i)
            if (!cur->contains(VecElem::unit(s, i))) full = false;
        if (full) {  // K_e is everything; the chain is flat from here on
            res.stabilized_at = e;
            res.status = "ok";
            res.vanishes = true;
            res.root = FPModule(ring, 0, {}, cfg);
            return res;
        }
        prev_holder = std::move(cur);
        prev_sub = prev_holder.get();
        prev_kernel = std::move(ker);

        // advance: B_{e+1} = F^e(B) * B_e, target F^{e+1}(M_0)
        f_pow_b = frob_mat(f_pow_b);
        b_e = poly_mat_mul(ring, f_pow_b, b_e);
        target = frob_module(target);
    }
    res.root = FPModule(ring, 0, {}, cfg);
    return res;
}

}  // namespace ztor
