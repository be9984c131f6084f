#pragma once

#include "ztor/ring.hpp"
#include "ztor/groebner.hpp"

#include <random>

namespace ztest {

using namespace ztor;

/// Deterministic random polynomials for property suites.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}

    int uniform(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }

    Monomial monomial(int nvars, int max_deg) {
        Monomial m(nvars);
        int left = max_deg;
        for (int i = 0; i < nvars; ++i) {
            int e = uniform(0, left);
            m.e[i] = e;
            left -= e;
        }
        return m;
    }

    Polynomial poly(const Ring& ring, int max_terms, int max_deg, int max_coef) {
        std::vector<Term> ts;
        int nt = uniform(0, max_terms);
        for (int i = 0; i < nt; ++i) {
            int c = uniform(-max_coef, max_coef);
            if (c == 0) continue;
            ts.push_back(Term{monomial(ring.nvars, max_deg), Rat(c)});
        }
        return Polynomial(ring, std::move(ts));
    }

    Polynomial nonzero_poly(const Ring& ring, int max_terms, int max_deg, int max_coef) {
        for (;;) {
            Polynomial f = poly(ring, max_terms, max_deg, max_coef);
            if (!f.is_zero()) return f;
        }
    }
};

inline Polynomial parse_simple(const Ring& ring, std::initializer_list<std::pair<int, std::vector<int64_t>>> terms) {
    std::vector<Term> ts;
    for (auto& [c, e] : terms) ts.push_back(Term{Monomial(std::vector<int64_t>(e)), Rat(c)});
    return Polynomial(ring, std::move(ts));
}

}  // namespace ztest
