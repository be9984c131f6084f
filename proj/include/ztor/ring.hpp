#pragma once

#include "ztor/base.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace ztor {

enum class CoefKind { ZZ, QQ, Fp };

/// Ambient polynomial ring: coefficient ring + number of variables.
/// Variable names are a presentation concern and live in the JSON layer.
struct Ring {
    CoefKind kind = CoefKind::ZZ;
    Int p = 0;  // modulus, Fp only
    int nvars = 0;

    static Ring ZZ(int nvars) { return Ring{CoefKind::ZZ, 0, nvars}; }
    static Ring QQ(int nvars) { return Ring{CoefKind::QQ, 0, nvars}; }
    static Ring Fp(const Int& p, int nvars) {
        if (!is_prime(p)) throw input_error("Ring::Fp: modulus is not prime");
        return Ring{CoefKind::Fp, p, nvars};
    }

    bool is_field() const { return kind != CoefKind::ZZ; }

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.kind == b.kind && a.p == b.p && a.nvars == b.nvars;
    }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }
};

inline void require_same_ring(const Ring& a, const Ring& b, const char* where) {
    if (a != b) throw input_error(std::string(where) + ": ring mismatch");
}

// ---------------------------------------------------------------------------
// Coefficient arithmetic, mediated by the ring

inline Rat coef_normalize(const Ring& r, const Rat& c) {
    switch (r.kind) {
        case CoefKind::QQ: return c;
        case CoefKind::ZZ:
            if (denominator(c) != 1) throw input_error("coefficient not an integer over ZZ");
            return c;
        case CoefKind::Fp: {
            if (denominator(c) != 1) throw input_error("coefficient not an integer over Fp");
            Int v = numerator(c) % r.p;
            if (v < 0) v += r.p;
            return Rat(v);
        }
    }
    return c;
}

inline Rat coef_add(const Ring& r, const Rat& a, const Rat& b) {
    Rat s = a + b;
    if (r.kind == CoefKind::Fp) {
        Int v = numerator(s) % r.p;
        if (v < 0) v += r.p;
        return Rat(v);
    }
    return s;
}

inline Rat coef_mul(const Ring& r, const Rat& a, const Rat& b) {
    Rat s = a * b;
    if (r.kind == CoefKind::Fp) {
        Int v = numerator(s) % r.p;
        if (v < 0) v += r.p;
        return Rat(v);
    }
    return s;
}

inline Rat coef_neg(const Ring& r, const Rat& a) {
    if (r.kind == CoefKind::Fp && a != 0) return Rat(r.p - numerator(a));
    return -a;
}

/// Multiplicative inverse; fields only.
inline Rat coef_inv(const Ring& r, const Rat& a) {
    if (a == 0) throw input_error("coef_inv: division by zero");
    switch (r.kind) {
        case CoefKind::QQ: return Rat(1) / a;
        case CoefKind::Fp: {
            Int x, y;
            gcd_ext(numerator(a), r.p, x, y);
            x %= r.p;
            if (x < 0) x += r.p;
            return Rat(x);
        }
        case CoefKind::ZZ: throw input_error("coef_inv: ZZ is not a field");
    }
    return a;
}

// ---------------------------------------------------------------------------
// Monomials

/// Exponent vector; length equals the ambient ring's variable count.
struct Monomial {
    std::vector<int64_t> e;

    Monomial() = default;
    explicit Monomial(int nvars) : e(nvars, 0) {}
    explicit Monomial(std::vector<int64_t> exps) : e(std::move(exps)) {}

    static Monomial var(int nvars, int i, int64_t k = 1) {
        Monomial m(nvars);
        m.e[i] = k;
        return m;
    }

    int64_t deg() const { return std::accumulate(e.begin(), e.end(), int64_t{0}); }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](int64_t x) { return x == 0; });
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

/// b / a, requires a | b.
inline Monomial mono_quot(const Monomial& b, const Monomial& a) {
    Monomial r = b;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] -= a.e[i];
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

inline Monomial mono_pow(const Monomial& a, int64_t k) {
    Monomial r = a;
    for (auto& x : r.e) x *= k;
    return r;
}

// ---------------------------------------------------------------------------
// Monomial orders

enum class OrderKind { GrevLex, Lex, GrLex };

struct MonomialOrder {
    OrderKind kind = OrderKind::GrevLex;

    /// <0, 0, >0 as a is below, equal to, above b.
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case OrderKind::Lex: {
                for (std::size_t i = 0; i < a.e.size(); ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
                return 0;
            }
            case OrderKind::GrLex: {
                int64_t da = a.deg(), db = b.deg();
                if (da != db) return da < db ? -1 : 1;
                for (std::size_t i = 0; i < a.e.size(); ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
                return 0;
            }
            case OrderKind::GrevLex: {
                int64_t da = a.deg(), db = b.deg();
                if (da != db) return da < db ? -1 : 1;
                for (std::size_t i = a.e.size(); i-- > 0;)
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
                return 0;
            }
        }
        return 0;
    }
    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Polynomials

struct Term {
    Monomial m;
    Rat c;
};

/// Exact multivariate polynomial. Terms are kept sorted, leading term first,
/// under grevlex; no zero coefficients are stored.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(Ring ring) : ring_(ring) {}

    /// Builds from arbitrary terms: normalizes coefficients, merges, drops zeros.
    Polynomial(Ring ring, std::vector<Term> terms) : ring_(ring) {
        MonomialOrder ord{OrderKind::GrevLex};
        for (auto& t : terms) {
            if (static_cast<int>(t.m.e.size()) != ring.nvars)
                throw input_error("Polynomial: exponent vector length mismatch");
            t.c = coef_normalize(ring, t.c);
        }
        std::sort(terms.begin(), terms.end(),
                  [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
        for (auto& t : terms) {
            if (!terms_.empty() && terms_.back().m == t.m)
                terms_.back().c = coef_add(ring, terms_.back().c, t.c);
            else
                terms_.push_back(t);
        }
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [](const Term& t) { return t.c == 0; }),
                     terms_.end());
    }

    static Polynomial zero(const Ring& r) { return Polynomial(r); }
    static Polynomial constant(const Ring& r, const Rat& c) {
        return Polynomial(r, {Term{Monomial(r.nvars), c}});
    }
    static Polynomial monomial(const Ring& r, Monomial m, const Rat& c = 1) {
        return Polynomial(r, {Term{std::move(m), c}});
    }
    static Polynomial var(const Ring& r, int i) {
        return monomial(r, Monomial::var(r.nvars, i));
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int64_t max_deg() const {
        int64_t d = 0;
        for (auto& t : terms_) d = std::max(d, t.m.deg());
        return d;
    }

    /// True when the polynomial is homogeneous (one total degree; zero counts).
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int64_t d = terms_.front().m.deg();
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const Term& t) { return t.m.deg() == d; });
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.ring_ != b.ring_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  private:
    Ring ring_;
    std::vector<Term> terms_;
};

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.ring(), b.ring(), "poly_add");
    MonomialOrder ord{OrderKind::GrevLex};
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    while (i < ta.size() || j < tb.size()) {
        if (j == tb.size() || (i < ta.size() && ord.cmp(ta[i].m, tb[j].m) > 0)) {
            out.push_back(ta[i++]);
        } else if (i == ta.size() || ord.cmp(ta[i].m, tb[j].m) < 0) {
            out.push_back(tb[j++]);
        } else {
            Rat c = coef_add(a.ring(), ta[i].c, tb[j].c);
            if (c != 0) out.push_back(Term{ta[i].m, c});
            ++i; ++j;
        }
    }
    Polynomial r(a.ring());
    r = Polynomial(a.ring(), std::move(out));
    return r;
}

inline Polynomial poly_neg(const Polynomial& a) {
    std::vector<Term> out = a.terms();
    for (auto& t : out) t.c = coef_neg(a.ring(), t.c);
    return Polynomial(a.ring(), std::move(out));
}

inline Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    return poly_add(a, poly_neg(b));
}

inline Polynomial poly_scalar_mul(const Polynomial& a, const Rat& c) {
    std::vector<Term> out = a.terms();
    for (auto& t : out) t.c = coef_mul(a.ring(), t.c, c);
    return Polynomial(a.ring(), std::move(out));
}

inline Polynomial poly_term_mul(const Polynomial& a, const Monomial& m, const Rat& c) {
    std::vector<Term> out = a.terms();
    for (auto& t : out) {
        t.m = mono_mul(t.m, m);
        t.c = coef_mul(a.ring(), t.c, c);
    }
    return Polynomial(a.ring(), std::move(out));
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.ring(), b.ring(), "poly_mul");
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            out.push_back(Term{mono_mul(ta.m, tb.m), coef_mul(a.ring(), ta.c, tb.c)});
    return Polynomial(a.ring(), std::move(out));
}

inline Polynomial poly_pow(const Polynomial& a, int64_t k) {
    Polynomial r = Polynomial::constant(a.ring(), 1);
    for (int64_t i = 0; i < k; ++i) r = poly_mul(r, a);
    return r;
}

/// Coefficientwise reduction ZZ[x] -> Fp[x].
inline Polynomial reduce_mod_p(const Polynomial& f, const Int& p) {
    if (f.ring().kind != CoefKind::ZZ)
        throw input_error("reduce_mod_p: input must have integer coefficients");
    Ring rp = Ring::Fp(p, f.ring().nvars);
    std::vector<Term> out = f.terms();
    return Polynomial(rp, std::move(out));  // constructor normalizes mod p
}

/// f -> f^p over Fp: exponent vectors scale by p, coefficients are Frobenius-fixed.
inline Polynomial frobenius_endo(const Polynomial& f) {
    if (f.ring().kind != CoefKind::Fp)
        throw input_error("frobenius_endo: coefficient ring must be Fp");
    int64_t p = static_cast<int64_t>(f.ring().p);
    std::vector<Term> out = f.terms();
    for (auto& t : out) t.m = mono_pow(t.m, p);
    return Polynomial(f.ring(), std::move(out));
}

/// Plain text rendering for diagnostics: "3*x0^2*x1 - x2".
inline std::string poly_to_string(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rat c = t.c;
        if (!first) {
            if (c < 0) { os << " - "; c = -c; }
            else os << " + ";
        } else if (c < 0 && denominator(c) == 1) {
            os << "-"; c = -c;
        }
        first = false;
        bool printed = false;
        if (c != 1 || t.m.is_one()) { os << c.str(); printed = true; }
        for (std::size_t i = 0; i < t.m.e.size(); ++i) {
            if (t.m.e[i] == 0) continue;
            if (printed) os << "*";
            os << "x" << i;
            if (t.m.e[i] != 1) os << "^" << t.m.e[i];
            printed = true;
        }
    }
    return os.str();
}

}  // namespace ztor
