#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwa/lie.hpp"

using namespace iwa;

namespace {

LieElement random_element(const PowerfulLieAlgebra& L, std::mt19937_64& rng) {
    std::vector<int64_t> c(L.rank());
    uint64_t pN = checked_pow_u64(L.p(), L.N());
    for (auto& x : c) x = static_cast<int64_t>(rng() % pN);
    return L.element(c);
}

} // namespace

TEST_CASE("sl2 structure constants and bracket") {
    auto fam = build_chevalley_sl2(3, 1, 6);
    const auto& L = *fam.pairs[0].algebra;
    auto e = L.basis(0), f = L.basis(1), h = L.basis(2);

    CHECK(L.bracket(h, e) == e.times_int(6));
    CHECK(L.bracket(h, f) == f.times_int(-6));
    CHECK(L.bracket(e, f) == h.times_int(3));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        auto u = random_element(L, rng);
        CHECK(L.bracket(u, u).is_zero());
    }
}

TEST_CASE("p=2 chain relations") {
    auto fam = build_chevalley_sl2(2, 2, 9);
    REQUIRE(fam.pairs.size() == 2);
    CHECK(fam.pairs[0].sub.t() == 2);
    CHECK(fam.pairs[1].sub.t() == 1);

    // Middle algebra basis (h', e', f') with e' = 2e, f' = 2f:
    // [e', f'] = p^(l+2) h'.
    const auto& L1 = *fam.pairs[1].algebra;
    auto h = L1.basis(0), e = L1.basis(1), f = L1.basis(2);
    CHECK(L1.bracket(e, f) == h.times_int(16));
    CHECK(L1.bracket(h, e) == e.times_int(8));
    CHECK(L1.bracket(h, f) == f.times_int(-8));
}

TEST_CASE("unsupported parameters") {
    CHECK_THROWS_AS(build_chevalley_sl2(2, 1, 8), unsupported_parameters);
    CHECK_THROWS_AS(build_chevalley_sl2(3, 0, 8), unsupported_parameters);
}

TEST_CASE("perturbed structure constants fail validation") {
    auto fam = build_chevalley_sl2(3, 1, 6);
    auto& L = *fam.pairs[0].algebra;
    L.perturb_structure_constant(0, 1, 0, 3);  // [e,f] += 3e
    CHECK_THROWS_AS(L.validate(), error);
}

TEST_CASE("bch identities") {
    auto fam = build_chevalley_sl2(3, 1, 6);
    const auto& L = *fam.pairs[0].algebra;
    std::mt19937_64 rng(7);

    for (int i = 0; i < 20; ++i) {
        auto u = random_element(L, rng);
        CHECK(L.bch(u, L.zero()) == u);
        CHECK(L.bch(L.zero(), u) == u);
        int64_t a = static_cast<int64_t>(rng() % 729);
        int64_t b = static_cast<int64_t>(rng() % 729);
        CHECK(L.bch(u.times_int(a), u.times_int(b)) == u.times_int(a + b));
    }
}

TEST_CASE("bch leading correction at sl2(3 Z_3)") {
    auto fam = build_chevalley_sl2(3, 1, 6);
    const auto& L = *fam.pairs[0].algebra;
    auto e = L.basis(0), f = L.basis(1);
    LieElement phi = L.bch(e, f);

    // Phi(e, f) = e + f + (1/2)[e, f] + higher. [e, f] = 3h, so the h
    // coordinate is 3/2 + O(9) = 6 mod 9 and the e, f corrections are O(3).
    CHECK(phi.coord(0).value() % 3 == 1);
    CHECK(phi.coord(1).value() % 3 == 1);
    CHECK(phi.coord(2).value() % 9 == 6);

    // exp(Phi(u,v)) = exp(u) exp(v) as matrices.
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        auto u = random_element(L, rng), v = random_element(L, rng);
        PadicMatrix lhs = mat_exp(L.realize(L.bch(u, v)), 1);
        PadicMatrix rhs = mat_exp(L.realize(u), 1) * mat_exp(L.realize(v), 1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("group law against the matrix oracle") {
    auto fam = build_chevalley_sl2(3, 1, 6);
    const auto& L = *fam.pairs[0].algebra;
    std::mt19937_64 rng(13);

    for (int i = 0; i < 50; ++i) {
        auto g = L.exp_of(random_element(L, rng));
        auto h = L.exp_of(random_element(L, rng));
        auto k = L.exp_of(random_element(L, rng));
        CHECK(L.group_mul(g, L.group_identity()).log == g.log);
        auto gh_k = L.group_mul(L.group_mul(g, h), k);
        auto g_hk = L.group_mul(g, L.group_mul(h, k));
        REQUIRE(gh_k.log == g_hk.log);
        PadicMatrix direct =
            mat_exp(L.realize(g.log), 1) * mat_exp(L.realize(h.log), 1) * mat_exp(L.realize(k.log), 1);
        REQUIRE(mat_exp(L.realize(gh_k.log), 1) == direct);
    }

    auto u = random_element(L, rng);
    CHECK(L.group_mul(L.exp_of(u), L.exp_of(u)).log == u.times_int(2));
    for (int m : {-5, -1, 0, 2, 9}) {
        // exp(u)^m = exp(mu): check through the matrix realization.
        PadicMatrix pw = PadicMatrix::identity(3, L.Nmat(), 2);
        PadicMatrix gu = mat_exp(L.realize(u), 1);
        PadicMatrix inv = mat_exp(L.realize(-u), 1);
        for (int t = 0; t < std::abs(m); ++t) pw = pw * (m > 0 ? gu : inv);
        CHECK(mat_exp(L.realize(L.group_pow(L.exp_of(u), m).log), 1) == pw);
    }
}

TEST_CASE("shift congruence Phi(-v + p^k w, v) = p^k w mod p^(k+1)L") {
    std::mt19937_64 rng(19);
    for (auto [p, l] : std::vector<std::pair<uint64_t, uint32_t>>{{2, 2}, {3, 1}, {5, 1}}) {
        auto fam = build_chevalley_sl2(p, l, 8);
        const auto& L = *fam.pairs[0].algebra;
        for (int i = 0; i < 60; ++i) {
            auto v = random_element(L, rng), w = random_element(L, rng);
            uint32_t k = rng() % 4;
            REQUIRE(L.check_bch_congruence(v, w, k));
        }
        auto v = random_element(L, rng);
        CHECK(L.check_bch_congruence(v, L.zero(), 2));
        CHECK_THROWS_AS(L.check_bch_congruence(v, v, 9), precision_exhausted);
    }
}

TEST_CASE("shift congruence, exhaustive rank-1 sublattice") {
    auto fam = build_chevalley_sl2(3, 1, 8);
    const auto& L = *fam.pairs[0].algebra;
    for (uint64_t a = 0; a < 27; ++a)
        for (uint64_t b = 0; b < 27; ++b)
            for (uint32_t k = 0; k <= 2; ++k) {
                auto v = L.basis(0).times_int(static_cast<int64_t>(a));
                auto w = L.basis(0).times_int(static_cast<int64_t>(b));
                REQUIRE(L.check_bch_congruence(v, w, k));
            }
}

TEST_CASE("commutator congruence (exp u, exp v) = exp([u,v]) mod G^(p^(k+1))") {
    auto fam = build_chevalley_sl2(3, 1, 8);
    const auto& L = *fam.pairs[0].algebra;
    auto e = L.basis(0), h = L.basis(2);

    CHECK(L.check_commutator_congruence(h, e, 1));
    CHECK(L.check_commutator_congruence(h, L.zero(), 1));

    std::mt19937_64 rng(29);
    for (int i = 0; i < 40; ++i) {
        uint32_t r = 1 + rng() % 2;
        auto u = random_element(L, rng).times_prime_power(r);
        auto v = random_element(L, rng);
        uint32_t k = L.bracket_depth(u);
        if (k + 1 > L.N()) k = L.N() - 1;
        if (k < L.eps()) continue;
        REQUIRE(L.check_commutator_congruence(u, v, k));
    }

    CHECK_THROWS_AS(L.check_commutator_congruence(e, e, 2), hypothesis_failed);
}

TEST_CASE("exp congruence laws") {
    auto fam = build_chevalley_sl2(3, 1, 8);
    const auto& L = *fam.pairs[0].algebra;
    std::mt19937_64 rng(31);

    for (int i = 0; i < 40; ++i) {
        auto u = random_element(L, rng), v = random_element(L, rng);

        // u = v mod p^k L implies exp(u) exp(v)^-1 in G^(p^k).
        uint32_t k = rng() % 5;
        auto u2 = u + v.times_prime_power(k);
        auto diff = L.group_mul(L.exp_of(u2), L.group_inv(L.exp_of(u))).log;
        REQUIRE(diff.min_valuation() >= k);

        // exp(u + v) = exp(u) exp(v) mod G^p.
        auto d2 = L.group_mul(L.exp_of(u + v),
                              L.group_inv(L.group_mul(L.exp_of(u), L.exp_of(v))))
                      .log;
        REQUIRE(d2.min_valuation() >= 1);
    }
}

TEST_CASE("exp/log round-trip, exhaustive rank-1 slices at p=3 N=3") {
    auto fam = build_chevalley_sl2(3, 1, 3);
    const auto& L = *fam.pairs[0].algebra;
    for (uint32_t i = 0; i < 3; ++i)
        for (uint64_t c = 0; c < 27; ++c) {
            PadicMatrix M = L.realize(L.basis(i).times_int(static_cast<int64_t>(c)));
            REQUIRE(mat_log(mat_exp(M, 1)) == M);
        }
}

TEST_CASE("abelian algebra") {
    auto pair = build_abelian(3, 2, 6);
    const auto& L = *pair.algebra;
    std::mt19937_64 rng(37);
    for (int i = 0; i < 20; ++i) {
        auto u = random_element(L, rng), v = random_element(L, rng);
        CHECK(L.bracket(u, v).is_zero());
        CHECK(L.bch(u, v) == u + v);
    }
}

TEST_CASE("mixed algebra is an error") {
    auto fam1 = build_chevalley_sl2(3, 1, 6);
    auto fam2 = build_chevalley_sl2(3, 1, 6);
    const auto& A = *fam1.pairs[0].algebra;
    const auto& B = *fam2.pairs[0].algebra;
    CHECK_THROWS_AS(A.bracket(A.basis(0), B.basis(0)), mixed_algebra);
    CHECK_THROWS_AS(A.basis(0) + B.basis(0), mixed_algebra);
}
