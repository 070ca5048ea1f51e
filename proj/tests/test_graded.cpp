#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwa/graded_ideal.hpp"
#include "iwa/graded_poly.hpp"

using namespace iwa;

namespace {

GradedPoly var(uint32_t p, uint32_t n, uint32_t j, uint32_t e = 1) {
    return GradedPoly::variable(p, n, j, e);
}

GradedPoly random_poly(uint32_t p, uint32_t nvars, uint32_t maxdeg, std::mt19937_64& rng,
                       int terms = 4) {
    GradedPoly f(p, nvars);
    for (int i = 0; i < terms; ++i) {
        Mono m{};
        uint32_t budget = rng() % (maxdeg + 1);
        for (uint32_t v = 0; v < nvars; ++v) {
            uint32_t e = budget ? rng() % (budget + 1) : 0;
            m[v] = static_cast<uint16_t>(e);
            budget -= e;
        }
        f.add_term(m, static_cast<uint8_t>(1 + rng() % (p - 1)));
    }
    return f;
}

GradedPoly random_homogeneous(uint32_t p, uint32_t nvars, uint32_t deg, std::mt19937_64& rng) {
    auto ms = monomials_of_degree(nvars, deg);
    GradedPoly f(p, nvars);
    for (const auto& m : ms)
        if (rng() % 2) f.add_term(m, static_cast<uint8_t>(1 + rng() % (p - 1)));
    if (f.is_zero()) f.add_term(ms[rng() % ms.size()], 1);
    return f;
}

// Independent witness that a list of homogeneous polynomials has no common
// nonunit divisor: enumerate every homogeneous candidate up to max_deg.
bool has_common_divisor_upto(const std::vector<GradedPoly>& gens, uint32_t max_deg) {
    if (gens.empty()) return false;
    uint32_t p = gens[0].p(), nv = gens[0].nvars();
    for (uint32_t deg = 1; deg <= max_deg; ++deg) {
        auto ms = monomials_of_degree(nv, deg);
        std::vector<uint8_t> coeff(ms.size(), 0);
        while (true) {
            std::size_t i = 0;
            while (i < coeff.size() && coeff[i] + 1u == p) coeff[i++] = 0;
            if (i == coeff.size()) break;
            ++coeff[i];
            GradedPoly cand(p, nv);
            for (std::size_t k = 0; k < ms.size(); ++k)
                if (coeff[k]) cand.add_term(ms[k], coeff[k]);
            bool all = true;
            for (const auto& g : gens)
                if (!divides(cand, g)) {
                    all = false;
                    break;
                }
            if (all) return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("exact division") {
    const uint32_t p = 3, n = 3;
    auto y1 = var(p, n, 0), y2 = var(p, n, 1);

    auto q = divide_exact(y1, y1 * y2);
    REQUIRE(q.has_value());
    CHECK(*q == y2);

    CHECK(divides(GradedPoly::constant(p, n, 1), y1 * y2 + y2));
    CHECK_FALSE(divides(y1 + y2, y1 * y1 + y2 * y2));
    CHECK_THROWS_AS(divide_exact(GradedPoly::zero(p, n), y1), zero_divisor);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        GradedPoly X = random_poly(p, n, 3, rng);
        GradedPoly Q = random_poly(p, n, 3, rng);
        if (X.is_zero()) continue;
        auto back = divide_exact(X, X * Q);
        REQUIRE(back.has_value());
        CHECK(*back == Q);
    }
}

TEST_CASE("multivariate gcd") {
    const uint32_t p = 3, n = 3;
    auto y1 = var(p, n, 0), y2 = var(p, n, 1);

    CHECK(multivariate_gcd(y1 * y1 * y2, y1 * y2 * y2) == y1 * y2);
    CHECK(multivariate_gcd(var(p, n, 0, 3) - var(p, n, 1, 3), y1 - y2) == y1 - y2);

    // Distinct monic linear forms are coprime.
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        GradedPoly a = random_homogeneous(p, n, 1, rng).monic();
        GradedPoly b = random_homogeneous(p, n, 1, rng).monic();
        if (a == b) continue;
        GradedPoly g = multivariate_gcd(a, b);
        CHECK(g == GradedPoly::constant(p, n, 1));
        CHECK(divides(g, a));
        CHECK(divides(g, b));
    }

    for (int i = 0; i < 40; ++i) {
        GradedPoly a = random_poly(p, n, 3, rng);
        GradedPoly b = random_poly(p, n, 3, rng);
        GradedPoly g = multivariate_gcd(a, b);
        if (a.is_zero() && b.is_zero()) {
            CHECK(g.is_zero());
            continue;
        }
        CHECK(divides(g, a));
        CHECK(divides(g, b));
        CHECK(multivariate_gcd(a, b) == multivariate_gcd(b, a));
        if (!a.is_zero() && !b.is_zero()) {
            auto qa = *divide_exact(g, a);
            auto qb = *divide_exact(g, b);
            CHECK(multivariate_gcd(qa, qb).is_constant());
        }
    }

    // Associativity on triples.
    for (int i = 0; i < 20; ++i) {
        GradedPoly a = random_poly(p, n, 2, rng);
        GradedPoly b = random_poly(p, n, 2, rng);
        GradedPoly c = random_poly(p, n, 2, rng);
        CHECK(multivariate_gcd(a, multivariate_gcd(b, c)) ==
              multivariate_gcd(multivariate_gcd(a, b), c));
    }
}

TEST_CASE("reflexive closure") {
    const uint32_t p = 3, n = 3;
    auto y1 = var(p, n, 0), y2 = var(p, n, 1);

    CHECK(reflexive_closure({y1 * y1 * y2, y1 * y2 * y2}) == y1 * y2);

    GradedPoly x = (y1 + y2) * y1;
    CHECK(reflexive_closure({x}) == x.monic());

    // Closure of (y1, y2) is the unit ideal; cross-check by enumerating
    // candidate common divisors.
    CHECK(reflexive_closure({y1, y2}) == GradedPoly::constant(p, n, 1));
    CHECK_FALSE(has_common_divisor_upto({y1, y2}, 1));

    CHECK_THROWS_AS(reflexive_closure({GradedPoly::zero(p, n)}), zero_ideal);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        std::vector<GradedPoly> gens;
        for (int k = 0; k < 2 + int(rng() % 2); ++k)
            gens.push_back(random_homogeneous(p, n, 1 + rng() % 3, rng));
        GradedPoly x0 = reflexive_closure(gens);
        CHECK(x0.is_homogeneous());
        // Idempotent, and the reduced ideal has unit closure.
        CHECK(reflexive_closure({x0}) == x0);
        std::vector<GradedPoly> reduced;
        for (const auto& g : gens) reduced.push_back(*divide_exact(x0, g));
        CHECK(reflexive_closure(reduced) == GradedPoly::constant(p, n, 1));
        CHECK(pseudo_null_test(reduced));
    }
}

TEST_CASE("pseudo-null criterion") {
    const uint32_t p = 3, n = 3;
    auto y1 = var(p, n, 0), y2 = var(p, n, 1);
    CHECK(pseudo_null_test({y1, y2}));
    CHECK_FALSE(pseudo_null_test({y1}));
    CHECK_FALSE(pseudo_null_test({y1 * y1, y1 * y2}));
    CHECK_FALSE(pseudo_null_test({GradedPoly::zero(p, n)}));
}

TEST_CASE("frobenius decomposition") {
    const uint32_t p = 3, n = 3, t = 3;
    auto y1 = var(p, n, 0), y2 = var(p, n, 1);

    GradedPoly f = var(p, n, 0, 3) * var(p, n, 1, 3);  // in B1
    auto s = frobenius_decompose(f, t);
    REQUIRE(s.components.size() == 1);
    CHECK(s.components.begin()->first == Mono{});

    auto s2 = frobenius_decompose(y1, t);
    REQUIRE(s2.components.size() == 1);
    Mono e1{};
    e1[0] = 1;
    CHECK(s2.components.begin()->first == e1);
    CHECK(s2.components.begin()->second == GradedPoly::constant(p, n, 1));

    GradedPoly g = var(p, n, 0, p + 2) * y2;
    auto s3 = frobenius_decompose(g, t);
    REQUIRE(s3.components.size() == 1);
    Mono a{};
    a[0] = 2;
    a[1] = 1;
    CHECK(s3.components.begin()->first == a);
    CHECK(s3.components.begin()->second == var(p, n, 0, 3));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        GradedPoly h = random_poly(p, n, 7, rng, 6);
        for (uint32_t tt = 1; tt <= 3; ++tt) {
            auto split = frobenius_decompose(h, tt);
            for (const auto& [alpha, u] : split.components) {
                CHECK(is_b1_polynomial(u, tt));
                for (uint32_t j = 0; j < tt; ++j) CHECK(alpha[j] < p);
            }
            CHECK(frobenius_reassemble(split, p, n) == h);
        }
    }
}

TEST_CASE("partial derivations") {
    const uint32_t p = 3, n = 3, t = 3;
    auto y1 = var(p, n, 0), y2 = var(p, n, 1);

    CHECK(partial_j(y1, 0, t) == GradedPoly::constant(p, n, 1));
    CHECK(partial_j(var(p, n, 0, 3), 0, t).is_zero());
    CHECK(partial_j(y1 * y1 * y2, 0, t) == (y1 * y2).scaled(2));
    CHECK_THROWS_AS(partial_j(y1, 3, t), index_out_of_range);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        GradedPoly f = random_poly(p, n, 5, rng);
        GradedPoly g = random_poly(p, n, 5, rng);
        for (uint32_t j = 0; j < t; ++j) {
            CHECK(partial_j(f * g, j, t) ==
                  partial_j(f, j, t) * g + f * partial_j(g, j, t));
            for (uint32_t k = 0; k < t; ++k)
                CHECK(partial_j(partial_j(f, j, t), k, t) ==
                      partial_j(partial_j(f, k, t), j, t));
        }
    }
}

TEST_CASE("derivation kernel sweep to degree 6") {
    const uint32_t p = 3, n = 3, t = 3;
    for (uint32_t deg = 0; deg <= 6; ++deg) {
        for (const auto& m : monomials_of_degree(n, deg)) {
            GradedPoly f = GradedPoly::monomial(p, n, m, 1);
            bool killed = true;
            for (uint32_t j = 0; j < t; ++j)
                if (!partial_j(f, j, t).is_zero()) killed = false;
            CHECK(killed == is_b1_monomial(m, t, p));
        }
    }
}

TEST_CASE("apply_derivation") {
    const uint32_t p = 3, n = 3, t = 3;
    auto y1 = var(p, n, 0);
    GradedPoly b = var(p, n, 2, 2);

    std::vector<GradedPoly> zero_imgs(3, GradedPoly::zero(p, n));
    CHECK(apply_derivation(DerivationOp(t, zero_imgs), y1 * y1).is_zero());

    std::vector<GradedPoly> imgs = {b, GradedPoly::zero(p, n), GradedPoly::zero(p, n)};
    CHECK(apply_derivation(DerivationOp(t, imgs), y1) == b);

    // Images at B1 generators must vanish.
    std::vector<GradedPoly> bad = {GradedPoly::zero(p, n), GradedPoly::zero(p, n), b};
    CHECK_THROWS_AS(DerivationOp(2, bad), invalid_parameter);
}

TEST_CASE("stability and control") {
    const uint32_t p = 3, n = 3, t = 3, D = 8;
    auto y1 = var(p, n, 0);

    TruncatedIdeal Ip({var(p, n, 0, 3)}, D);
    CHECK(d_stable_test(Ip, t));
    CHECK(control_test(Ip, t));

    TruncatedIdeal I1({y1}, D);
    CHECK_FALSE(d_stable_test(I1, t));
    CHECK_FALSE(control_test(I1, t));

    TruncatedIdeal small({y1}, 2);
    CHECK_THROWS_AS(d_stable_test(small, t), degree_bound_too_small);
}

TEST_CASE("stability/control equivalence on random ideals") {
    std::mt19937_64 rng(17);
    for (uint32_t p : {2u, 3u}) {
        for (uint32_t d : {2u, 3u}) {
            const uint32_t D = 8;
            for (int trial = 0; trial < 40; ++trial) {
                std::vector<GradedPoly> gens;
                int ngens = 1 + rng() % 3;
                for (int k = 0; k < ngens; ++k)
                    gens.push_back(random_homogeneous(p, d, 1 + rng() % (D - p), rng));
                TruncatedIdeal I(std::move(gens), D);
                for (uint32_t t = 1; t <= d; ++t)
                    REQUIRE(d_stable_test(I, t) == control_test(I, t));
            }
        }
    }
}
