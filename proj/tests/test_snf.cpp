#include "ztor/snf.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ztor;

namespace {

IntMat make(int r, int c, std::initializer_list<int> vals) {
    IntMat m(r, c);
    auto it = vals.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = *it++;
    return m;
}

/// gcd of all k x k minors, computed straight from determinants.
Int minor_gcd(const IntMat& m, int k) {
    std::vector<std::vector<int>> rsets, csets;
    std::vector<int> cur;
    std::function<void(int, int, int, std::vector<std::vector<int>>&)> rec =
        [&](int start, int need, int total, std::vector<std::vector<int>>& out) {
            if (need == 0) { out.push_back(cur); return; }
            for (int i = start; i <= total - need; ++i) {
                cur.push_back(i);
                rec(i + 1, need - 1, total, out);
                cur.pop_back();
            }
        };
    rec(0, k, m.rows, rsets);
    cur.clear();
    rec(0, k, m.cols, csets);
    Int g = 0;
    for (const auto& rs : rsets)
        for (const auto& cs : csets) {
            IntMat sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
            g = gcd_int(g, mat_det(sub));
        }
    return abs_int(g);
}

void check_snf_contract(const IntMat& a) {
    SNFResult s = smith_normal_form(a);
    CHECK(abs_int(mat_det(s.u)) == 1);
    CHECK(abs_int(mat_det(s.v)) == 1);
    CHECK(mat_mul(mat_mul(s.u, a), s.v) == s.d);
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
        CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
    for (int i = 0; i < s.d.rows; ++i)
        for (int j = 0; j < s.d.cols; ++j)
            if (i != j) CHECK(s.d.at(i, j) == 0);
    if (!s.invariant_factors.empty()) {
        Int prod = 1;
        for (const auto& d : s.invariant_factors) prod *= d;
        CHECK(prod == minor_gcd(a, s.rank()));
    }
}

}  // namespace

TEST_CASE("smith normal form pinned examples") {
    SECTION("diag(2,3) has invariant factors (1,6)") {
        auto s = smith_normal_form(make(2, 2, {2, 0, 0, 3}));
        CHECK(s.invariant_factors == std::vector<Int>{1, 6});
    }
    SECTION("zero matrix has no invariant factors") {
        auto s = smith_normal_form(IntMat(3, 2));
        CHECK(s.invariant_factors.empty());
        CHECK(s.rank() == 0);
    }
    SECTION("[[2,4],[6,8]] has invariant factors (2,4)") {
        auto s = smith_normal_form(make(2, 2, {2, 4, 6, 8}));
        CHECK(s.invariant_factors == std::vector<Int>{2, 4});
    }
}

TEST_CASE("smith normal form contract on random matrices") {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> val(-9, 9);
    for (int trial = 0; trial < 100; ++trial) {
        IntMat a(4, 4);
        for (auto& x : a.a) x = val(gen);
        check_snf_contract(a);
    }
    // rectangular shapes too
    for (int trial = 0; trial < 30; ++trial) {
        IntMat a(3, 5);
        for (auto& x : a.a) x = val(gen);
        check_snf_contract(a);
    }
}

TEST_CASE("integer solve and kernel") {
    IntMat a = make(2, 3, {2, 0, 4, 0, 3, 6});
    auto snf = smith_normal_form(a);

    SECTION("solvable system") {
        auto x = solve_integer(snf, {6, 9});
        REQUIRE(x.has_value());
        auto b = mat_apply(a, *x);
        CHECK(b == std::vector<Int>{6, 9});
    }
    SECTION("unsolvable by divisibility") {
        CHECK_FALSE(solve_integer(snf, {1, 0}).has_value());
    }
    SECTION("kernel is exact") {
        auto kern = integer_kernel(snf);
        REQUIRE(kern.size() == 1);
        CHECK(mat_apply(a, kern[0]) == std::vector<Int>{0, 0});
        // saturation: entries of the kernel vector are coprime overall
        Int g = 0;
        for (const auto& v : kern[0]) g = gcd_int(g, v);
        CHECK(g == 1);
    }
}
