#include "ztor/ring.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ztor;
using ztest::Rng;

namespace {
Ring zz2 = Ring::ZZ(2);

Polynomial P(const Ring& r, std::initializer_list<std::pair<int, std::vector<int64_t>>> ts) {
    return ztest::parse_simple(r, ts);
}
}  // namespace

TEST_CASE("polynomial arithmetic basics") {
    Polynomial x = Polynomial::var(zz2, 0);
    Polynomial y = Polynomial::var(zz2, 1);

    SECTION("additive inverse") {
        CHECK(poly_add(x, poly_neg(x)).is_zero());
    }
    SECTION("difference of squares") {
        Polynomial lhs = poly_mul(poly_add(x, y), poly_sub(x, y));
        CHECK(lhs == P(zz2, {{1, {2, 0}}, {-1, {0, 2}}}));
    }
    SECTION("freshman's dream in characteristic 2") {
        Ring f2 = Ring::Fp(2, 2);
        Polynomial s = poly_add(Polynomial::var(f2, 0), Polynomial::var(f2, 1));
        CHECK(poly_mul(s, s) == P(f2, {{1, {2, 0}}, {1, {0, 2}}}));
    }
    SECTION("ring mismatch rejected") {
        Ring zz3 = Ring::ZZ(3);
        CHECK_THROWS_AS(poly_add(x, Polynomial::var(zz3, 0)), input_error);
    }
}

TEST_CASE("reduce_mod_p examples") {
    Polynomial f = P(zz2, {{6, {1, 0}}, {5, {0, 1}}});
    CHECK(reduce_mod_p(f, 2) == P(Ring::Fp(2, 2), {{1, {0, 1}}}));

    Ring zz1 = Ring::ZZ(1);
    CHECK(reduce_mod_p(P(zz1, {{7, {3}}}), 7).is_zero());
    CHECK(reduce_mod_p(P(zz2, {{1, {1, 0}}, {-1, {0, 1}}}), 3) ==
          P(Ring::Fp(3, 2), {{1, {1, 0}}, {2, {0, 1}}}));
}

TEST_CASE("frobenius_endo examples") {
    Ring f2 = Ring::Fp(2, 2);
    Polynomial s = poly_add(Polynomial::var(f2, 0), Polynomial::var(f2, 1));
    CHECK(frobenius_endo(s) == P(f2, {{1, {2, 0}}, {1, {0, 2}}}));
    CHECK(frobenius_endo(Polynomial::constant(f2, 1)) == Polynomial::constant(f2, 1));

    Ring f3 = Ring::Fp(3, 2);
    CHECK(frobenius_endo(P(f3, {{1, {2, 1}}})) == P(f3, {{1, {6, 3}}}));
    CHECK_THROWS_AS(frobenius_endo(Polynomial::var(zz2, 0)), input_error);
}

TEST_CASE("frobenius is a ring endomorphism") {
    for (Int p : {2, 3, 5}) {
        Ring fp = Ring::Fp(p, 2);
        Rng rng(41 + static_cast<uint64_t>(p));
        for (int i = 0; i < 60; ++i) {
            Polynomial a = rng.poly(fp, 4, 3, 6);
            Polynomial b = rng.poly(fp, 4, 3, 6);
            CHECK(frobenius_endo(poly_add(a, b)) ==
                  poly_add(frobenius_endo(a), frobenius_endo(b)));
            CHECK(frobenius_endo(poly_mul(a, b)) ==
                  poly_mul(frobenius_endo(a), frobenius_endo(b)));
        }
    }
}

TEST_CASE("reduce_mod_p is a ring homomorphism") {
    Rng rng(7);
    Ring zz3 = Ring::ZZ(3);
    for (int i = 0; i < 200; ++i) {
        Int p = (i % 3 == 0) ? 2 : (i % 3 == 1) ? 3 : 5;
        Polynomial a = rng.poly(zz3, 4, 3, 9);
        Polynomial b = rng.poly(zz3, 4, 3, 9);
        CHECK(reduce_mod_p(poly_mul(a, b), p) ==
              poly_mul(reduce_mod_p(a, p), reduce_mod_p(b, p)));
        CHECK(reduce_mod_p(poly_add(a, b), p) ==
              poly_add(reduce_mod_p(a, p), reduce_mod_p(b, p)));
    }
}

TEST_CASE("monomial orders: antisymmetry, transitivity, multiplicativity") {
    Rng rng(13);
    for (OrderKind kind : {OrderKind::GrevLex, OrderKind::Lex, OrderKind::GrLex}) {
        MonomialOrder ord{kind};
        for (int i = 0; i < 100; ++i) {
            Monomial a = rng.monomial(3, 5), b = rng.monomial(3, 5), c = rng.monomial(3, 5);
            int ab = ord.cmp(a, b);
            CHECK(ab == -ord.cmp(b, a));
            CHECK((ord.cmp(a, b) == 0) == (a == b));
            if (ab < 0 && ord.cmp(b, c) < 0) CHECK(ord.cmp(a, c) < 0);
            CHECK(ord.cmp(mono_mul(a, c), mono_mul(b, c)) == ab);
            // well order: 1 is minimal
            Monomial one(3);
            CHECK(ord.cmp(one, a) <= 0);
        }
    }
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK(is_prime(Int("18446744073709551557")));  // largest prime below 2^64
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));  // Carmichael
    CHECK_THROWS_AS(is_prime(Int(1) << 64), input_error);
    CHECK_THROWS_AS(Ring::Fp(4, 1), input_error);
}

TEST_CASE("prime_factors") {
    CHECK(prime_factors(60) == std::vector<Int>{2, 3, 5});
    CHECK(prime_factors(-97) == std::vector<Int>{97});
    CHECK(prime_factors(1).empty());
}
