#pragma once

#include "ztor/ring.hpp"

#include <optional>
#include <set>

namespace ztor {

// ---------------------------------------------------------------------------
// Elements of free modules R^m

struct VTerm {
    int comp = 0;
    Monomial m;
    Rat c;
};

/// Element of a free module R^m: finite list of (component, monomial) -> coefficient.
/// Terms are kept sorted, leading term first, under the active module order.
struct VecElem {
    int rank = 0;
    std::vector<VTerm> terms;

    bool is_zero() const { return terms.empty(); }
    const VTerm& lead() const { return terms.front(); }

    static VecElem unit(int rank, int comp) {
        VecElem v;
        v.rank = rank;
        v.terms.push_back(VTerm{comp, Monomial(0), Rat(1)});
        return v;
    }
};

/// Module order: position-over-term (default) or term-over-position over a
/// monomial order. Positions compare ascending: a lower component index wins.
struct ModOrder {
    MonomialOrder mono;
    bool pot = true;

    int cmp(const VTerm& a, const VTerm& b) const {
        if (pot) {
            if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
            return mono.cmp(a.m, b.m);
        }
        int c = mono.cmp(a.m, b.m);
        if (c != 0) return c;
        if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
        return 0;
    }
};

// ---------------------------------------------------------------------------
// VecElem arithmetic (engine-internal; inputs assumed normalized)

inline VecElem vec_normalize(const Ring& ring, const ModOrder& ord, VecElem v) {
    for (auto& t : v.terms) {
        t.c = coef_normalize(ring, t.c);
        if (t.comp < 0 || t.comp >= v.rank)
            throw input_error("VecElem: component index out of range");
        if (static_cast<int>(t.m.e.size()) != ring.nvars)
            throw input_error("VecElem: exponent vector length mismatch");
    }
    std::sort(v.terms.begin(), v.terms.end(),
              [&](const VTerm& a, const VTerm& b) { return ord.cmp(a, b) > 0; });
    std::vector<VTerm> merged;
    merged.reserve(v.terms.size());
    for (auto& t : v.terms) {
        if (!merged.empty() && merged.back().comp == t.comp && merged.back().m == t.m)
            merged.back().c = coef_add(ring, merged.back().c, t.c);
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const VTerm& t) { return t.c == 0; }),
                 merged.end());
    v.terms = std::move(merged);
    return v;
}

/// a + c * m * b, all terms merged under ord.
inline VecElem vec_add_scaled(const Ring& ring, const ModOrder& ord, const VecElem& a,
                              const Rat& c, const Monomial& m, const VecElem& b) {
    VecElem out;
    out.rank = a.rank ? a.rank : b.rank;
    out.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    auto scaled = [&](const VTerm& t) {
        return VTerm{t.comp, mono_mul(t.m, m), coef_mul(ring, t.c, c)};
    };
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size()) { out.terms.push_back(a.terms[i++]); continue; }
        VTerm tb = scaled(b.terms[j]);
        if (i == a.terms.size()) { out.terms.push_back(std::move(tb)); ++j; continue; }
        int c3 = ord.cmp(a.terms[i], tb);
        if (c3 > 0) out.terms.push_back(a.terms[i++]);
        else if (c3 < 0) { out.terms.push_back(std::move(tb)); ++j; }
        else {
            Rat s = coef_add(ring, a.terms[i].c, tb.c);
            if (s != 0) out.terms.push_back(VTerm{tb.comp, std::move(tb.m), std::move(s)});
            ++i; ++j;
        }
    }
    return out;
}

inline VecElem vec_scale(const Ring& ring, VecElem v, const Rat& c) {
    if (c == 0) return VecElem{v.rank, {}};
    for (auto& t : v.terms) t.c = coef_mul(ring, t.c, c);
    return v;
}

inline VecElem vec_neg(const Ring& ring, VecElem v) {
    for (auto& t : v.terms) t.c = coef_neg(ring, t.c);
    return v;
}

inline bool vec_equal(const VecElem& a, const VecElem& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].comp != b.terms[i].comp || a.terms[i].m != b.terms[i].m ||
            a.terms[i].c != b.terms[i].c)
            return false;
    return true;
}

/// Polynomial (rank-1) views.
inline VecElem vec_from_poly(const ModOrder& ord, const Polynomial& f, int comp = 0, int rank = 1) {
    VecElem v;
    v.rank = rank;
    for (const auto& t : f.terms()) v.terms.push_back(VTerm{comp, t.m, t.c});
    return vec_normalize(f.ring(), ord, std::move(v));
}

inline Polynomial poly_from_vec(const Ring& ring, const VecElem& v) {
    std::vector<Term> ts;
    for (const auto& t : v.terms) {
        if (t.comp != 0) throw input_error("poly_from_vec: element not in rank-1 module");
        ts.push_back(Term{t.m, t.c});
    }
    return Polynomial(ring, std::move(ts));
}

// ---------------------------------------------------------------------------
// The Groebner engine
//
// One completion procedure covers both coefficient situations:
//   * fields (QQ, Fp): Buchberger, monic reduced bases, S-pairs only;
//   * ZZ: Kandri-Rody/Kapur-style strong bases, S-pairs plus GCD-pairs,
//     strong reduction (a term is reducible only when monomial, component
//     and coefficient all divide).
// Pair selection is the normal strategy: smallest lcm first, ties broken by
// indices, so runs are deterministic.

struct GBResult {
    std::vector<VecElem> basis;
    /// reps[i] expresses basis[i] in input-generator coordinates (R^s, s = #gens).
    std::vector<VecElem> reps;
    /// Generators of Syz(gens) in R^s; filled only when requested.
    std::vector<VecElem> syzygies;
};

class GroebnerEngine {
  public:
    GroebnerEngine(Ring ring, ModOrder ord, RunConfig cfg = {})
        : ring_(ring), ord_(ord), cfg_(cfg) {}

    const Ring& ring() const { return ring_; }
    const ModOrder& order() const { return ord_; }

    GBResult compute(const std::vector<VecElem>& gens, bool want_syzygies) const {
        const int s = static_cast<int>(gens.size());
        std::vector<VecElem> basis, reps;
        std::vector<VecElem> syz;
        std::set<Pair, PairLess> queue{PairLess{this}};

        for (int i = 0; i < s; ++i) {
            VecElem v = vec_normalize(ring_, ord_, gens[i]);
            VecElem rep = VecElem::unit(s, i);
            if (v.is_zero()) {
                if (want_syzygies) syz.push_back(rep);
                continue;
            }
            insert_element(basis, reps, queue, std::move(v), std::move(rep));
        }

        while (!queue.empty()) {
            Pair pr = *queue.begin();
            queue.erase(queue.begin());
            VecElem v, rep;
            build_pair(basis, reps, pr, v, rep);
            reduce_full(basis, v, &reps, &rep);
            if (v.is_zero()) {
                if (want_syzygies && !rep.is_zero()) syz.push_back(sign_normalize(rep));
            } else {
                check_coeff_cap(v);
                insert_element(basis, reps, queue, std::move(v), std::move(rep));
            }
        }

        canonicalize(basis, reps);
        GBResult out;
        out.basis = std::move(basis);
        out.reps = std::move(reps);
        if (want_syzygies) out.syzygies = dedupe(std::move(syz));
        return out;
    }

    /// Remainder of strong reduction by an (assumed Groebner) basis.
    VecElem normal_form(VecElem v, const std::vector<VecElem>& basis,
                        std::vector<VecElem>* quotients = nullptr) const {
        v = vec_normalize(ring_, ord_, std::move(v));
        if (quotients) quotients->assign(basis.size(), VecElem{static_cast<int>(basis.size()), {}});
        VecElem rem;
        rem.rank = v.rank;
        while (!v.is_zero()) {
            const VTerm& t = v.lead();
            int gi = find_reducer(basis, t);
            if (gi < 0) {
                rem.terms.push_back(t);
                v.terms.erase(v.terms.begin());
                continue;
            }
            const VTerm& lt = basis[gi].lead();
            Rat q = ring_.is_field() ? coef_mul(ring_, t.c, coef_inv(ring_, lt.c))
                                     : Rat(numerator(t.c) / numerator(lt.c));
            Monomial qm = mono_quot(t.m, lt.m);
            v = vec_add_scaled(ring_, ord_, v, coef_neg(ring_, q), qm, basis[gi]);
            if (quotients)
                (*quotients)[gi] = vec_add_scaled(ring_, ord_, (*quotients)[gi], q, Monomial(ring_.nvars),
                                                  VecElem{static_cast<int>(basis.size()),
                                                          {VTerm{gi, qm, Rat(1)}}});
        }
        return rem;
    }

  private:
    struct Pair {
        int i, j;
        bool gcd_pair;
        Monomial lcm;
        int comp;
    };
    struct PairLess {
        const GroebnerEngine* eng;
        bool operator()(const Pair& a, const Pair& b) const {
            int c = eng->ord_.mono.cmp(a.lcm, b.lcm);
            if (c != 0) return c < 0;
            if (a.comp != b.comp) return a.comp < b.comp;
            if (a.i != b.i) return a.i < b.i;
            if (a.j != b.j) return a.j < b.j;
            return a.gcd_pair < b.gcd_pair;
        }
    };

    Ring ring_;
    ModOrder ord_;
    RunConfig cfg_;

    /// Scale so the lead is monic (fields) or has positive coefficient (ZZ).
    VecElem sign_normalize(VecElem v, VecElem* rep = nullptr) const {
        if (v.is_zero()) return v;
        if (ring_.is_field()) {
            Rat inv = coef_inv(ring_, v.lead().c);
            if (rep) *rep = vec_scale(ring_, std::move(*rep), inv);
            return vec_scale(ring_, std::move(v), inv);
        }
        if (v.lead().c < 0) {
            if (rep) *rep = vec_neg(ring_, std::move(*rep));
            return vec_neg(ring_, std::move(v));
        }
        return v;
    }

    void check_coeff_cap(const VecElem& v) const {
        for (const auto& t : v.terms) {
            if (msb(abs_int(numerator(t.c))) + 1 > cfg_.max_coeff_bits ||
                msb(denominator(t.c)) + 1 > cfg_.max_coeff_bits)
                throw resource_error("groebner: coefficient bit-length cap exceeded");
        }
    }

    void insert_element(std::vector<VecElem>& basis, std::vector<VecElem>& reps,
                        std::set<Pair, PairLess>& queue, VecElem v, VecElem rep) const {
        v = sign_normalize(std::move(v), &rep);
        int idx = static_cast<int>(basis.size());
        if (basis.size() + 1 > cfg_.max_basis_size)
            throw resource_error("groebner: basis size cap exceeded");
        for (int i = 0; i < idx; ++i) {
            const VTerm& a = basis[i].lead();
            const VTerm& b = v.lead();
            if (a.comp != b.comp) continue;
            Pair pr;
            pr.i = i;
            pr.j = idx;
            pr.comp = a.comp;
            pr.lcm = mono_lcm(a.m, b.m);
            pr.gcd_pair = false;
            queue.insert(pr);
            if (!ring_.is_field()) {
                const Int& ca = numerator(a.c);
                const Int& cb = numerator(b.c);
                if (ca % cb != 0 && cb % ca != 0) {
                    pr.gcd_pair = true;
                    queue.insert(pr);
                }
            }
        }
        basis.push_back(std::move(v));
        reps.push_back(std::move(rep));
    }

    void build_pair(const std::vector<VecElem>& basis, const std::vector<VecElem>& reps,
                    const Pair& pr, VecElem& v, VecElem& rep) const {
        const VecElem& f = basis[pr.i];
        const VecElem& g = basis[pr.j];
        const VTerm& ltf = f.lead();
        const VTerm& ltg = g.lead();
        Monomial mf = mono_quot(pr.lcm, ltf.m);
        Monomial mg = mono_quot(pr.lcm, ltg.m);
        Rat cf, cg;
        if (ring_.is_field()) {
            cf = 1;  // bases are monic over fields
            cg = coef_neg(ring_, Rat(1));
        } else if (pr.gcd_pair) {
            Int u, w;
            gcd_ext(numerator(ltf.c), numerator(ltg.c), u, w);
            cf = Rat(u);
            cg = Rat(w);
        } else {
            Int l = lcm_int(numerator(ltf.c), numerator(ltg.c));
            cf = Rat(l / numerator(ltf.c));
            cg = Rat(-l / numerator(ltg.c));
        }
        VecElem zero{f.rank, {}};
        v = vec_add_scaled(ring_, ord_, vec_add_scaled(ring_, ord_, zero, cf, mf, f), cg, mg, g);
        VecElem zr{reps[pr.i].rank, {}};
        rep = vec_add_scaled(ring_, ord_, vec_add_scaled(ring_, ord_, zr, cf, mf, reps[pr.i]),
                             cg, mg, reps[pr.j]);
    }

    int find_reducer(const std::vector<VecElem>& basis, const VTerm& t) const {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].is_zero()) continue;
            const VTerm& lt = basis[i].lead();
            if (lt.comp != t.comp || !mono_divides(lt.m, t.m)) continue;
            if (!ring_.is_field() && numerator(t.c) % numerator(lt.c) != 0) continue;
            return static_cast<int>(i);
        }
        return -1;
    }

    void reduce_full(const std::vector<VecElem>& basis, VecElem& v,
                     const std::vector<VecElem>* reps, VecElem* rep) const {
        VecElem rem;
        rem.rank = v.rank;
        while (!v.is_zero()) {
            const VTerm t = v.lead();
            int gi = find_reducer(basis, t);
            if (gi < 0) {
                rem.terms.push_back(t);
                v.terms.erase(v.terms.begin());
                continue;
            }
            const VTerm& lt = basis[gi].lead();
            Rat q = ring_.is_field() ? t.c : Rat(numerator(t.c) / numerator(lt.c));
            Monomial qm = mono_quot(t.m, lt.m);
            Rat nq = coef_neg(ring_, q);
            v = vec_add_scaled(ring_, ord_, v, nq, qm, basis[gi]);
            if (rep) *rep = vec_add_scaled(ring_, ord_, *rep, nq, qm, (*reps)[gi]);
        }
        v = std::move(rem);
    }

    /// Minimalize (drop strongly divisible leads) and tail-reduce; sort ascending
    /// by leading term so output is canonical.
    void canonicalize(std::vector<VecElem>& basis, std::vector<VecElem>& reps) const {
        std::vector<std::size_t> order(basis.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            int c = ord_.cmp(basis[a].lead(), basis[b].lead());
            if (c != 0) return c < 0;
            if (!ring_.is_field()) {
                Int ca = abs_int(numerator(basis[a].lead().c));
                Int cb = abs_int(numerator(basis[b].lead().c));
                if (ca != cb) return ca < cb;
            }
            return a < b;
        });
        std::vector<VecElem> kept, kept_reps;
        for (std::size_t idx : order) {
            const VTerm& t = basis[idx].lead();
            if (find_reducer(kept, t) >= 0) continue;
            kept.push_back(basis[idx]);
            kept_reps.push_back(reps[idx]);
        }
        // tail reduction against the other kept elements
        for (std::size_t i = 0; i < kept.size(); ++i) {
            VecElem v = kept[i];
            VecElem rep = kept_reps[i];
            VecElem rem;
            rem.rank = v.rank;
            rem.terms.push_back(v.lead());
            v.terms.erase(v.terms.begin());
            while (!v.is_zero()) {
                const VTerm t = v.lead();
                int gi = -1;
                for (std::size_t j = 0; j < kept.size(); ++j) {
                    if (j == i) continue;
                    const VTerm& lt = kept[j].lead();
                    if (lt.comp != t.comp || !mono_divides(lt.m, t.m)) continue;
                    if (!ring_.is_field() && numerator(t.c) % numerator(lt.c) != 0) continue;
                    gi = static_cast<int>(j);
                    break;
                }
                if (gi < 0) {
                    rem.terms.push_back(t);
                    v.terms.erase(v.terms.begin());
                    continue;
                }
                const VTerm& lt = kept[gi].lead();
                Rat q = ring_.is_field() ? t.c : Rat(numerator(t.c) / numerator(lt.c));
                Monomial qm = mono_quot(t.m, lt.m);
                Rat nq = coef_neg(ring_, q);
                v = vec_add_scaled(ring_, ord_, v, nq, qm, kept[gi]);
                rep = vec_add_scaled(ring_, ord_, rep, nq, qm, kept_reps[gi]);
            }
            kept[i] = std::move(rem);
            kept_reps[i] = std::move(rep);
        }
        basis = std::move(kept);
        reps = std::move(kept_reps);
    }

    std::vector<VecElem> dedupe(std::vector<VecElem> xs) const {
        std::vector<VecElem> out;
        for (auto& x : xs) {
            bool dup = false;
            for (const auto& y : out)
                if (vec_equal(x, y)) { dup = true; break; }
            if (!dup) out.push_back(std::move(x));
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// A computed submodule of R^m: generators plus their Groebner data, giving
// membership tests, expression in the original generators, and syzygies.

class Submodule {
  public:
    Submodule(Ring ring, ModOrder ord, int rank, std::vector<VecElem> gens,
              bool want_syzygies = false, RunConfig cfg = {})
        : engine_(ring, ord, cfg), rank_(rank), gens_(std::move(gens)) {
        for (auto& g : gens_) g.rank = rank_;
        result_ = engine_.compute(gens_, want_syzygies);
    }

    const GroebnerEngine& engine() const { return engine_; }
    int rank() const { return rank_; }
    const std::vector<VecElem>& gens() const { return gens_; }
    const std::vector<VecElem>& basis() const { return result_.basis; }
    const std::vector<VecElem>& syzygies() const { return result_.syzygies; }

    VecElem normal_form(const VecElem& v) const { return engine_.normal_form(v, result_.basis); }
    bool contains(const VecElem& v) const { return normal_form(v).is_zero(); }

    /// Writes v as a combination of the original generators (coordinates in R^s).
    /// Returns nullopt when v is not in the submodule.
    std::optional<VecElem> express(const VecElem& v) const {
        std::vector<VecElem> q;
        VecElem r = engine_.normal_form(v, result_.basis, &q);
        if (!r.is_zero()) return std::nullopt;
        VecElem acc{static_cast<int>(gens_.size()), {}};
        for (std::size_t i = 0; i < result_.basis.size(); ++i)
            for (const auto& t : q[i].terms)
                acc = vec_add_scaled(engine_.ring(), engine_.order(), acc, t.c, t.m,
                                     result_.reps[i]);
        return acc;
    }

  private:
    GroebnerEngine engine_;
    int rank_;
    std::vector<VecElem> gens_;
    GBResult result_;
};

// ---------------------------------------------------------------------------
// Spec-level conveniences on polynomial lists (rank-1 modules)

inline ModOrder default_order() { return ModOrder{MonomialOrder{OrderKind::GrevLex}, true}; }

/// Reduced Groebner basis over a field, returned as polynomials.
inline std::vector<Polynomial> groebner_field(const std::vector<Polynomial>& gens,
                                              MonomialOrder mono = {}, RunConfig cfg = {}) {
    if (gens.empty()) return {};
    const Ring& r = gens.front().ring();
    if (!r.is_field()) throw input_error("groebner_field: coefficient ring must be a field");
    ModOrder ord{mono, true};
    std::vector<VecElem> vs;
    for (const auto& g : gens) {
        require_same_ring(r, g.ring(), "groebner_field");
        vs.push_back(vec_from_poly(ord, g));
    }
    GroebnerEngine eng(r, ord, cfg);
    auto res = eng.compute(vs, false);
    std::vector<Polynomial> out;
    for (const auto& b : res.basis) out.push_back(poly_from_vec(r, b));
    return out;
}

/// Strong Groebner basis over ZZ, returned as polynomials.
inline std::vector<Polynomial> strong_groebner_int(const std::vector<Polynomial>& gens,
                                                   MonomialOrder mono = {}, RunConfig cfg = {}) {
    if (gens.empty()) return {};
    const Ring& r = gens.front().ring();
    if (r.kind != CoefKind::ZZ) throw input_error("strong_groebner_int: coefficient ring must be ZZ");
    ModOrder ord{mono, true};
    std::vector<VecElem> vs;
    for (const auto& g : gens) {
        require_same_ring(r, g.ring(), "strong_groebner_int");
        vs.push_back(vec_from_poly(ord, g));
    }
    GroebnerEngine eng(r, ord, cfg);
    auto res = eng.compute(vs, false);
    std::vector<Polynomial> out;
    for (const auto& b : res.basis) out.push_back(poly_from_vec(r, b));
    return out;
}

/// Generators of the kernel of R^s -> R^m, e_i -> gens[i].
inline std::vector<VecElem> syzygies(const Ring& ring, int rank,
                                     const std::vector<VecElem>& gens, RunConfig cfg = {}) {
    Submodule sub(ring, default_order(), rank, gens, true, cfg);
    return sub.syzygies();
}

inline std::vector<VecElem> syzygies(const std::vector<Polynomial>& gens, RunConfig cfg = {}) {
    if (gens.empty()) return {};
    const Ring& r = gens.front().ring();
    ModOrder ord = default_order();
    std::vector<VecElem> vs;
    for (const auto& g : gens) vs.push_back(vec_from_poly(ord, g));
    return syzygies(r, 1, vs, cfg);
}

}  // namespace ztor
