#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwa/padic.hpp"

using namespace iwa;

namespace {

PadicMatrix mat2(uint64_t p, uint32_t N, int64_t a, int64_t b, int64_t c, int64_t d) {
    PadicMatrix m(p, N, 2);
    m.set(0, 0, TruncatedPadic::from_int(p, N, a));
    m.set(0, 1, TruncatedPadic::from_int(p, N, b));
    m.set(1, 0, TruncatedPadic::from_int(p, N, c));
    m.set(1, 1, TruncatedPadic::from_int(p, N, d));
    return m;
}

} // namespace

TEST_CASE("valuation") {
    CHECK(TruncatedPadic(3, 5, 9).valuation() == 2);
    CHECK(TruncatedPadic(3, 5, 0).valuation() == 5);
    CHECK(TruncatedPadic(2, 4, 6).valuation() == 1);
    CHECK(TruncatedPadic(3, 5, 1).valuation() == 0);
}

TEST_CASE("ring axioms, exhaustive at p^N = 3^5") {
    const uint64_t p = 3;
    const uint32_t N = 5;
    const uint64_t q = 243;
    std::vector<TruncatedPadic> all;
    all.reserve(q);
    for (uint64_t v = 0; v < q; ++v) all.emplace_back(p, N, v);

    for (uint64_t a = 0; a < q; ++a)
        for (uint64_t b = 0; b < q; ++b) {
            REQUIRE((all[a] + all[b]).value() == (a + b) % q);
            REQUIRE((all[a] * all[b]) == (all[b] * all[a]));
        }

    // Associativity and distributivity over all triples.
    for (uint64_t a = 0; a < q; ++a)
        for (uint64_t b = 0; b < q; ++b) {
            TruncatedPadic ab_sum = all[a] + all[b];
            TruncatedPadic ab_mul = all[a] * all[b];
            for (uint64_t c = 0; c < q; ++c) {
                REQUIRE((ab_sum + all[c]).value() == (all[a] + (all[b] + all[c])).value());
                REQUIRE((ab_mul * all[c]).value() == (all[a] * (all[b] * all[c])).value());
                REQUIRE((all[a] * (all[b] + all[c])).value() ==
                        (ab_mul + all[a] * all[c]).value());
            }
        }
}

TEST_CASE("valuation is additive under products") {
    const uint64_t p = 3;
    const uint32_t N = 5;
    const uint64_t q = 243;
    for (uint64_t a = 0; a < q; ++a)
        for (uint64_t b = 0; b < q; ++b) {
            TruncatedPadic x(p, N, a), y(p, N, b);
            uint32_t expect = std::min(x.valuation() + y.valuation(), N);
            CHECK((x * y).valuation() == expect);
        }
}

TEST_CASE("unit inversion") {
    TruncatedPadic x(3, 5, 2);
    CHECK((x * x.invert()).value() == 1);
    CHECK_THROWS_AS(TruncatedPadic(3, 5, 3).invert(), not_a_unit);
    CHECK_THROWS_AS(TruncatedPadic(3, 5, 0).invert(), not_a_unit);
}

TEST_CASE("mixed precision is an error") {
    TruncatedPadic a(3, 5, 1), b(3, 4, 1);
    CHECK_THROWS_AS(a + b, mixed_precision);
    CHECK_THROWS_AS(a * TruncatedPadic(5, 5, 1), mixed_precision);
}

TEST_CASE("mat_exp basics") {
    CHECK(mat_exp(PadicMatrix(3, 3, 2), 1).is_identity());

    // Nilpotent: M^2 = 0, so exp(M) = I + M.
    CHECK(mat_exp(mat2(3, 3, 0, 3, 0, 0), 1) == mat2(3, 3, 1, 3, 0, 1));

    // Scalar series 1 + 3 + 9/2 + 27/6 + ... = 13 mod 27.
    CHECK(mat_exp(mat2(3, 3, 3, 0, 0, 0), 1) == mat2(3, 3, 13, 0, 0, 1));

    CHECK_THROWS_AS(mat_exp(mat2(3, 3, 1, 0, 0, 0), 1), entry_not_small_enough);
    CHECK_THROWS_AS(mat_exp(mat2(2, 4, 2, 0, 0, 0), 1), entry_not_small_enough);
}

TEST_CASE("mat_log basics") {
    CHECK(mat_log(PadicMatrix::identity(3, 3, 2)) == PadicMatrix(3, 3, 2));
    CHECK(mat_log(mat2(3, 3, 1, 3, 0, 1)) == mat2(3, 3, 0, 3, 0, 0));
    CHECK_THROWS_AS(mat_log(mat2(3, 3, 2, 0, 0, 1)), not_congruent_to_identity);
}

TEST_CASE("exp/log round-trip on seeded samples") {
    std::mt19937_64 rng(17);
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        uint32_t N = 8;
        uint32_t eps = (p == 2) ? 2 : 1;
        uint64_t pN = checked_pow_u64(p, N);
        uint64_t pe = checked_pow_u64(p, eps);
        for (int trial = 0; trial < 120; ++trial) {
            PadicMatrix M(p, N, 2);
            for (uint32_t i = 0; i < 2; ++i)
                for (uint32_t j = 0; j < 2; ++j)
                    M.set_raw(i, j, (rng() % (pN / pe)) * pe);
            PadicMatrix back = mat_log(mat_exp(M, eps));
            REQUIRE(back == M);
        }
    }
}

TEST_CASE("exp(M) exp(-M) = I") {
    std::mt19937_64 rng(23);
    const uint64_t p = 3;
    const uint32_t N = 6;
    uint64_t pN = checked_pow_u64(p, N);
    for (int trial = 0; trial < 60; ++trial) {
        PadicMatrix M(p, N, 2);
        for (uint32_t i = 0; i < 2; ++i)
            for (uint32_t j = 0; j < 2; ++j) M.set_raw(i, j, (rng() % (pN / 3)) * 3);
        CHECK((mat_exp(M, 1) * mat_exp(-M, 1)).is_identity());
    }
}

TEST_CASE("one-parameter additivity for commuting arguments") {
    const uint64_t p = 3;
    const uint32_t N = 6;
    PadicMatrix E = mat2(p, N, 3, 6, 9, -3);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int64_t a = static_cast<int64_t>(rng() % 200) - 100;
        int64_t b = static_cast<int64_t>(rng() % 200) - 100;
        PadicMatrix lhs = mat_exp(E.scaled(TruncatedPadic::from_int(p, N, a + b)), 1);
        PadicMatrix rhs = mat_exp(E.scaled(TruncatedPadic::from_int(p, N, a)), 1) *
                          mat_exp(E.scaled(TruncatedPadic::from_int(p, N, b)), 1);
        CHECK(lhs == rhs);
    }
}
