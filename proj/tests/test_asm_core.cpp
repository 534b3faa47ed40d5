#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "hasm/asm_core.hpp"
#include "hasm/formulas.hpp"

using namespace hasm;

namespace {

// the order-6 example matrix and its height matrix
AsmMatrix example6() {
    return AsmMatrix::from_rows({{0, 0, 1, 0, 0, 0},
                                 {1, 0, -1, 0, 1, 0},
                                 {0, 0, 1, 0, -1, 1},
                                 {0, 1, -1, 1, 0, 0},
                                 {0, 0, 0, 0, 1, 0},
                                 {0, 0, 1, 0, 0, 0}});
}

HeightMatrix example6_heights() {
    return HeightMatrix{{{0, 1, 2, 3, 4, 5, 6},
                         {1, 2, 3, 2, 3, 4, 5},
                         {2, 1, 2, 3, 4, 3, 4},
                         {3, 2, 3, 2, 3, 4, 3},
                         {4, 3, 2, 3, 2, 3, 2},
                         {5, 4, 3, 4, 3, 2, 1},
                         {6, 5, 4, 3, 2, 1, 0}}};
}

AsmMatrix fortress_example() {
    return AsmMatrix::from_rows(
        {{0, 0, 1, 0, 0, 0}, {1, 0, -1, 0, 1, 0}, {0, 0, 1, 0, -1, 1}});
}

}  // namespace

TEST_CASE("height matrix of the order-6 example") {
    CHECK(height_from_asm(example6()) == example6_heights());
    CHECK(asm_from_height(example6_heights()) == example6());
}

TEST_CASE("heights of the order-2 halved matrices") {
    AsmMatrix a10 = AsmMatrix::from_rows({{1, 0}});
    AsmMatrix a01 = AsmMatrix::from_rows({{0, 1}});
    CHECK(height_from_asm(a10) == HeightMatrix{{{0, 1, 2}, {1, 0, 1}}});
    CHECK(height_from_asm(a01) == HeightMatrix{{{0, 1, 2}, {1, 2, 1}}});
    CHECK(asm_from_height(HeightMatrix{{{0, 1, 2}, {1, 2, 1}}}) == a01);
}

TEST_CASE("corrupt height matrices are rejected") {
    CHECK_THROWS_AS(asm_from_height(HeightMatrix{{{0, 1, 2}, {1, 3, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(asm_from_height(HeightMatrix{{{0, 1}, {0, 1}}}), std::invalid_argument);
}

TEST_CASE("validation catches the named violations") {
    CHECK(validate(example6()).ok);

    auto bad_row = validate(AsmMatrix::from_rows({{0, 0}}));
    CHECK_FALSE(bad_row.ok);
    CHECK(bad_row.message.find("sum") != std::string::npos);

    // rows are fine but column 2 starts with -1
    auto top_minus = validate(AsmMatrix::from_rows({{1, -1, 1, 0}, {0, 1, 0, 0}}));
    CHECK_FALSE(top_minus.ok);
    CHECK(top_minus.message.find("column 2") != std::string::npos);
    CHECK(top_minus.message.find("alternate") != std::string::npos);

    // consecutive nonzeros of the same sign in a row
    auto no_alt = validate(AsmMatrix::from_rows({{0, -1}}));
    CHECK_FALSE(no_alt.ok);

    auto bad_shape = validate(AsmMatrix::from_rows({{1, 0, 0}}));
    CHECK_FALSE(bad_shape.ok);
    CHECK(bad_shape.message.find("shape") != std::string::npos);
}

TEST_CASE("enumeration at n=1") {
    auto all = enumerate_halved_asms(1, BottomSpec::free_spec(1));
    REQUIRE(all.size() == 2);
    CHECK(all[0] == AsmMatrix::from_rows({{1, 0}}));
    CHECK(all[1] == AsmMatrix::from_rows({{0, 1}}));

    auto high = enumerate_halved_asms(1, BottomSpec::all(1, BottomConstraint::High));
    REQUIRE(high.size() == 1);
    CHECK(high[0] == AsmMatrix::from_rows({{0, 1}}));
}

TEST_CASE("two-enumeration small values") {
    for (int n = 1; n <= 3; ++n) {
        BigInt sum = 0;
        for (const auto& a : enumerate_halved_asms(n, BottomSpec::free_spec(n)))
            sum += domino_weight(weight_stats(a));
        CHECK(sum == theorem1_value(n));
    }
}

TEST_CASE("round trip through heights for every enumerated matrix") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& a : enumerate_halved_asms(n, BottomSpec::free_spec(n)))
            CHECK(asm_from_height(height_from_asm(a)) == a);
}

TEST_CASE("bottom row of enumerated height matrices") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& a : enumerate_halved_asms(n, BottomSpec::free_spec(n))) {
            auto h = height_from_asm(a);
            for (int j = 0; j <= 2 * n; j += 2) CHECK(h.h[n][j] == n);
            for (int j = 1; j <= 2 * n; j += 2)
                CHECK((h.h[n][j] == n - 1 || h.h[n][j] == n + 1));
        }
}

TEST_CASE("weight statistics of the fortress example") {
    auto s = weight_stats(fortress_example());
    CHECK(s.n_minus == 2);
    CHECK(s.n_minus_even == 1);
    CHECK(s.n_minus_odd == 1);
    CHECK(s.n_plus_odd == 3);
    CHECK(s.n_plus_even == 2);
    CHECK(fortress_weight(s) == 16);
    CHECK(s.n_minus_even + s.n_minus_odd == s.n_minus);

    auto z = weight_stats(AsmMatrix::from_rows({{1, 0}}));
    CHECK(z.n_minus == 0);
    CHECK(z.n_plus_odd == 0);
    CHECK(z.n_plus_even == 1);  // the 1 sits at even position (1,1)
}

TEST_CASE("reflection swaps even and odd statistics") {
    for (int n = 1; n <= 3; ++n) {
        auto all = enumerate_halved_asms(n, BottomSpec::free_spec(n));
        std::set<AsmMatrix> pool(all.begin(), all.end());
        BigInt sum_even_odd = 0, sum_odd_even = 0;
        for (const auto& a : all) {
            auto r = reflect_lr(a);
            CHECK(pool.count(r) == 1);
            auto sa = weight_stats(a), sr = weight_stats(r);
            CHECK(sa.n_minus_even == sr.n_minus_odd);
            CHECK(sa.n_plus_odd == sr.n_plus_even);
            sum_even_odd += fortress_weight(sa);
            sum_odd_even += int_pow(2, (unsigned long)(sa.n_minus_odd + sa.n_plus_even));
        }
        CHECK(sum_even_odd == sum_odd_even);
    }
}

TEST_CASE("bottom values match the height matrix") {
    for (const auto& a : enumerate_halved_asms(2, BottomSpec::free_spec(2))) {
        auto c = bottom_values(a);
        auto h = height_from_asm(a);
        CHECK(c[0] == h.h[2][1]);
        CHECK(c[1] == h.h[2][3]);
    }
}

TEST_CASE("full ASM enumeration counts") {
    // 1, 2, 7, 42 matrices of orders 1..4
    CHECK(enumerate_full_asms(1).size() == 1);
    CHECK(enumerate_full_asms(2).size() == 2);
    CHECK(enumerate_full_asms(3).size() == 7);
    CHECK(enumerate_full_asms(4).size() == 42);
    for (const auto& a : enumerate_full_asms(3)) {
        CHECK(validate(a).ok);
        CHECK(asm_from_height(height_from_asm(a)) == a);
    }
}

TEST_CASE("enumeration is deterministic and duplicate-free") {
    auto a1 = enumerate_halved_asms(2, BottomSpec::free_spec(2));
    auto a2 = enumerate_halved_asms(2, BottomSpec::free_spec(2));
    CHECK(a1 == a2);
    std::set<AsmMatrix> uniq(a1.begin(), a1.end());
    CHECK(uniq.size() == a1.size());
}
