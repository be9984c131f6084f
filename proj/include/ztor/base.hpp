#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ztor {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Malformed or inconsistent input (ring mismatch, bad JSON, non-prime modulus, ...).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource cap was exceeded; the computation was aborted.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Resource caps and defaults shared by the engines.
struct RunConfig {
    std::size_t max_basis_size = 20000;  // Groebner: max number of basis elements
    std::size_t max_coeff_bits = 4096;   // Groebner: max bit length of any coefficient
    int e_max = 8;                       // Frobenius stabilization cap
    int oracle_degree = 4;               // default truncation bound D
    int box_bound = 2;                   // monomial torsion scan box half-width
    int parallelism = 1;                 // corpus runner width

    void validate() const {
        if (max_basis_size == 0 || max_coeff_bits == 0 || e_max < 1 || oracle_degree < 0 ||
            box_bound < 0 || parallelism < 1)
            throw input_error("RunConfig: all caps must be positive");
    }
};

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Extended gcd: returns g = gcd(a,b) >= 0 and writes x,y with a*x + b*y = g.
inline Int gcd_ext(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        if (a < 0) { x = -1; y = 0; return -a; }
        x = 1; y = 0;
        return a;
    }
    Int x1, y1;
    Int g = gcd_ext(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

/// Exact binomial coefficient C(n, k) for n >= 0; zero when k > n or k < 0.
inline Int binomial(const Int& n, const Int& k) {
    if (k < 0 || k > n) return 0;
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int num = 1, den = 1;
    for (Int i = 0; i < kk; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return num / den;
}

namespace detail {

inline Int pow_mod(Int base, Int exp, const Int& mod) {
    Int result = 1;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if ((exp & 1) != 0) result = (result * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return result;
}

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, int r) {
    Int x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace detail

/// Deterministic primality test for n < 2^64 (fixed Miller-Rabin witness set).
/// Larger inputs are rejected with input_error: all primes in scope are small.
inline bool is_prime(const Int& n) {
    if (n >= (Int(1) << 64)) throw input_error("is_prime: inputs must be below 2^64");
    if (n < 2) return false;
    for (int q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    Int d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (detail::miller_rabin_witness(n, a, d, r)) return false;
    return true;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    Int x = 2, y = 2, c = 1;
    while (true) {
        x = 2; y = 2;
        Int d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd_int(abs_int(x - y), n);
        }
        if (d != n) return d;
        ++c;
    }
}

}  // namespace detail

/// Prime factors of |n| (each prime once, sorted). |n| must be >= 1.
inline std::vector<Int> prime_factors(Int n) {
    n = abs_int(n);
    if (n == 0) throw input_error("prime_factors: zero has no factorization");
    std::vector<Int> out;
    for (int q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    // trial division by 6k+-1 up to 10^4, then rho for anything left
    Int q = 49;
    while (q * q <= n && q < 10000) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
        q += (q % 6 == 1) ? 4 : 2;
    }
    while (n > 1) {
        if (is_prime(n)) {
            out.push_back(n);
            break;
        }
        Int d = detail::pollard_rho(n);
        while (!is_prime(d)) d = detail::pollard_rho(d);
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace ztor
