#pragma once

#include "ztor/ring.hpp"

#include <functional>

namespace ztor {

// Divided-power differential operators g * D^[t], where D^[t] acts on x^n as
// prod_i C(n_i, t_i) x^{n-t}. The binomial action is exact in every
// characteristic, so these operate over ZZ and Fp alike. Normal form keeps
// coefficient polynomials to the LEFT of the divided powers.

class DividedPowerOp {
  public:
    explicit DividedPowerOp(Ring ring) : ring_(ring) {}
    DividedPowerOp(Ring ring, std::vector<std::pair<Monomial, Polynomial>> terms)
        : ring_(ring) {
        for (auto& [t, g] : terms) {
            if (static_cast<int>(t.e.size()) != ring.nvars)
                throw input_error("DividedPowerOp: multi-index length mismatch");
            require_same_ring(ring, g.ring(), "DividedPowerOp");
            add_term(t, g);
        }
    }

    static DividedPowerOp zero(const Ring& r) { return DividedPowerOp(r); }
    /// The multiplication operator g~ (order 0).
    static DividedPowerOp mult(const Polynomial& g) {
        return DividedPowerOp(g.ring(), {{Monomial(g.ring().nvars), g}});
    }
    /// D^[t], a single divided power.
    static DividedPowerOp divided_power(const Ring& r, Monomial t) {
        return DividedPowerOp(r, {{std::move(t), Polynomial::constant(r, 1)}});
    }
    /// d/dx_i.
    static DividedPowerOp partial(const Ring& r, int i) {
        return divided_power(r, Monomial::var(r.nvars, i));
    }

    const Ring& ring() const { return ring_; }
    const std::vector<std::pair<Monomial, Polynomial>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Order = max |t| over terms with nonzero coefficient (normal form order);
    /// -1 for the zero operator.
    int64_t order() const {
        int64_t o = -1;
        for (const auto& [t, g] : terms_)
            if (!g.is_zero()) o = std::max(o, t.deg());
        return o;
    }

    friend bool operator==(const DividedPowerOp& a, const DividedPowerOp& b) {
        if (a.ring_ != b.ring_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second)
                return false;
        return true;
    }

    void add_term(const Monomial& t, const Polynomial& g) {
        if (g.is_zero()) return;
        auto pos = std::lower_bound(terms_.begin(), terms_.end(), t,
                                    [](const auto& a, const Monomial& b) {
                                        return std::lexicographical_compare(a.first.e.begin(),
                                                                            a.first.e.end(),
                                                                            b.e.begin(), b.e.end());
                                    });
        if (pos != terms_.end() && pos->first == t) {
            pos->second = poly_add(pos->second, g);
            if (pos->second.is_zero()) terms_.erase(pos);
        } else {
            terms_.insert(pos, {t, g});
        }
    }

  private:
    Ring ring_;
    std::vector<std::pair<Monomial, Polynomial>> terms_;
};

/// D^[t] applied to a single monomial: prod_i C(m_i, t_i) x^{m-t}.
inline Polynomial divided_power_on_monomial(const Ring& ring, const Monomial& t,
                                            const Monomial& m, const Rat& c) {
    Int bin = 1;
    for (std::size_t i = 0; i < t.e.size(); ++i) {
        if (m.e[i] < t.e[i]) return Polynomial::zero(ring);
        bin *= binomial(Int(m.e[i]), Int(t.e[i]));
    }
    return Polynomial(ring, {Term{mono_quot(m, t), coef_mul(ring, c, Rat(bin))}});
}

inline Polynomial apply_op(const DividedPowerOp& op, const Polynomial& f) {
    require_same_ring(op.ring(), f.ring(), "apply_op");
    Polynomial out = Polynomial::zero(f.ring());
    for (const auto& [t, g] : op.terms())
        for (const auto& term : f.terms())
            out = poly_add(out, poly_mul(g, divided_power_on_monomial(f.ring(), t, term.m, term.c)));
    return out;
}

inline DividedPowerOp op_add(const DividedPowerOp& a, const DividedPowerOp& b) {
    require_same_ring(a.ring(), b.ring(), "op_add");
    DividedPowerOp out = a;
    for (const auto& [t, g] : b.terms()) out.add_term(t, g);
    return out;
}

inline DividedPowerOp op_neg(const DividedPowerOp& a) {
    DividedPowerOp out(a.ring());
    for (const auto& [t, g] : a.terms()) out.add_term(t, poly_neg(g));
    return out;
}

inline DividedPowerOp op_sub(const DividedPowerOp& a, const DividedPowerOp& b) {
    return op_add(a, op_neg(b));
}

/// Composition in normal form. Within one variable,
///   D^[a] o g~ = sum_{b <= a} (D^[b] g)~ o D^[a-b]        (divided Leibniz)
///   D^[s] o D^[c] = prod_i C(s_i + c_i, s_i) D^[s+c],
/// and the result is renormalized with coefficients on the left.
inline DividedPowerOp compose(const DividedPowerOp& x, const DividedPowerOp& y) {
    require_same_ring(x.ring(), y.ring(), "compose");
    const Ring& ring = x.ring();
    DividedPowerOp out(ring);
    for (const auto& [a, g] : x.terms()) {
        for (const auto& [c, h] : y.terms()) {
            // enumerate b <= a componentwise
            std::vector<int64_t> b(a.e.size(), 0);
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == a.e.size()) {
                    Monomial bm{std::vector<int64_t>(b)};
                    Polynomial hb = Polynomial::zero(ring);
                    for (const auto& term : h.terms())
                        hb = poly_add(hb, divided_power_on_monomial(ring, bm, term.m, term.c));
                    if (hb.is_zero()) return;
                    Monomial rest = mono_quot(a, bm);  // a - b
                    Int bin = 1;
                    for (std::size_t v = 0; v < rest.e.size(); ++v)
                        bin *= binomial(Int(rest.e[v] + c.e[v]), Int(c.e[v]));
                    Rat binc = coef_normalize(ring, Rat(bin));
                    if (binc == 0) return;
                    out.add_term(mono_mul(rest, c),
                                 poly_scalar_mul(poly_mul(g, hb), binc));
                    return;
                }
                for (b[i] = 0; b[i] <= a.e[i]; ++b[i]) rec(i + 1);
                b[i] = 0;
            };
            rec(0);
        }
    }
    return out;
}

inline DividedPowerOp commutator(const DividedPowerOp& a, const DividedPowerOp& b) {
    return op_sub(compose(a, b), compose(b, a));
}

/// Reduce an operator over ZZ modulo p (coefficient polynomials reduced).
inline DividedPowerOp reduce_op_mod_p(const DividedPowerOp& op, const Int& p) {
    if (op.ring().kind != CoefKind::ZZ)
        throw input_error("reduce_op_mod_p: operator must be over ZZ");
    Ring rp = Ring::Fp(p, op.ring().nvars);
    DividedPowerOp out(rp);
    for (const auto& [t, g] : op.terms()) out.add_term(t, reduce_mod_p(g, p));
    return out;
}

/// Action-level check of the reduction isomorphism: applying then reducing
/// equals reducing then applying.
inline bool reduction_compat(const DividedPowerOp& op, const Polynomial& f, const Int& p) {
    Polynomial lhs = reduce_mod_p(apply_op(op, f), p);
    Polynomial rhs = apply_op(reduce_op_mod_p(op, p), reduce_mod_p(f, p));
    return lhs == rhs;
}

}  // namespace ztor
