#pragma once

#include "ztor/koszul.hpp"

#include <set>

namespace ztor {

// Executable face of the torsion theorem: a prime that divides no leading
// coefficient of the strong Groebner basis of the relation submodule is a
// nonzerodivisor on the presented module, so the finitely many primes below
// are the only candidates for integer torsion.

/// Primes dividing some leading coefficient of the strong basis of M's relations.
inline std::vector<Int> candidate_primes(const FPModule& m) {
    if (m.ring().kind != CoefKind::ZZ)
        throw input_error("candidate_primes: module must be over ZZ");
    std::set<Int> out;
    for (const auto& g : m.rel_gb().basis()) {
        Int lc = abs_int(numerator(g.lead().c));
        if (lc > 1)
            for (const auto& p : prime_factors(lc)) out.insert(p);
    }
    return std::vector<Int>(out.begin(), out.end());
}

struct ZerodivisorPrime {
    Int p;
    VecElem witness;  // killed by p, nonzero in M
};

/// Candidates filtered through the injectivity test: exactly the primes p with
/// (0 :_M p) != 0, each with a witness. Tested in increasing order.
inline std::vector<ZerodivisorPrime> zerodivisor_primes(const FPModule& m, RunConfig cfg = {}) {
    std::vector<ZerodivisorPrime> out;
    for (const auto& p : candidate_primes(m)) {
        InjectivityResult r = scalar_is_injective(m, p, cfg);
        if (!r.injective) out.push_back(ZerodivisorPrime{p, std::move(r.witness)});
    }
    return out;
}

struct TorsionReport {
    std::vector<Polynomial> gens;
    int k = 0;
    std::string status;  // "ok" | "resource_cap"
    std::vector<Int> candidates;
    std::vector<ZerodivisorPrime> zerodivisors;
    /// Contract: every prime integer that is a zerodivisor on H^k_a(R) appears
    /// in zerodivisors; the tool never claims the reverse containment.
    std::string note =
        "every prime integer that is a zerodivisor on H^k_a(R) appears in zerodivisor_primes";
};

inline TorsionReport torsion_primes_koszul(const std::vector<Polynomial>& f, int k,
                                           RunConfig cfg = {}) {
    TorsionReport rep;
    rep.gens = f;
    rep.k = k;
    try {
        FPModule m = koszul_cohomology(f, k, 1, cfg);
        rep.candidates = candidate_primes(m);
        rep.zerodivisors = zerodivisor_primes(m, cfg);
        rep.status = "ok";
    } catch (const resource_error&) {
        rep.status = "resource_cap";
        rep.candidates.clear();
        rep.zerodivisors.clear();
    }
    return rep;
}

}  // namespace ztor
