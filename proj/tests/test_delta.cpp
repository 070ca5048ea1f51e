#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwa/delta.hpp"

using namespace iwa;

namespace {

struct Fixture {
    Sl2Family fam;
    std::unique_ptr<QuotientAlgebra> A;
    std::unique_ptr<FrobeniusPairContext> ctx;

    Fixture() : fam(build_chevalley_sl2(3, 1, 8)) {
        A = std::make_unique<QuotientAlgebra>(fam.pairs[0].algebra.get(), fam.pairs[0].sub, 2);
        ctx = std::make_unique<FrobeniusPairContext>(A.get());
    }
};

Fixture& fx() {
    static Fixture f;
    return f;
}

GroupAlgebraElement bmono(const QuotientAlgebra& A, std::vector<uint32_t> alpha) {
    return A.b_monomial(A.pack(std::move(alpha)));
}

GroupAlgebraElement random_nspan_unit(const QuotientAlgebra& A, std::mt19937_64& rng) {
    std::vector<uint8_t> c(A.dim(), 0);
    c[0] = static_cast<uint8_t>(1 + rng() % (A.p() - 1));
    for (int i = 0; i < 4; ++i) {
        uint64_t idx = rng() % A.dim();
        if (A.in_nspan(idx)) c[idx] = static_cast<uint8_t>(rng() % A.p());
    }
    return {&A, std::move(c)};
}

GroupAlgebraElement random_unit(const QuotientAlgebra& A, std::mt19937_64& rng) {
    std::vector<uint8_t> c(A.dim(), 0);
    c[0] = static_cast<uint8_t>(1 + rng() % (A.p() - 1));
    for (int i = 0; i < 5; ++i) c[rng() % A.dim()] = static_cast<uint8_t>(rng() % A.p());
    return {&A, std::move(c)};
}

} // namespace

TEST_CASE("delta closed form") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;

    CHECK_FALSE(ctx.delta(bmono(A, {3, 0, 0})).has_value());          // in the N-span
    CHECK(*ctx.delta(bmono(A, {3, 0, 0}) + bmono(A, {0, 1, 0})) == 0);
    CHECK(*ctx.delta(bmono(A, {3, 0, 0}) + bmono(A, {0, 3, 1})) == 1);
    CHECK(*ctx.delta(A.one() + bmono(A, {1, 0, 0})) == 1);
    CHECK_THROWS_AS(ctx.delta(A.zero_element()), zero_element);
}

TEST_CASE("delta positivity matches symbol membership in B1") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;
    std::mt19937_64 rng(23);
    int seen_pos = 0, seen_zero = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<uint8_t> c(A.dim(), 0);
        for (int i = 0; i < 3; ++i) c[rng() % A.dim()] = static_cast<uint8_t>(rng() % 3);
        GroupAlgebraElement w(&A, std::move(c));
        if (w.is_zero()) continue;
        auto dv = ctx.delta(w);
        if (!dv) continue;
        bool pos = *dv > 0;
        (pos ? seen_pos : seen_zero)++;
        CHECK(pos == is_b1_polynomial(w.principal_symbol(), A.t()));
    }
    CHECK(seen_pos > 0);
    CHECK(seen_zero > 0);
}

TEST_CASE("delta agrees with the echelon brute-force route") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<uint8_t> c(A.dim(), 0);
        int terms = 1 + int(rng() % 5);
        for (int i = 0; i < terms; ++i) {
            uint64_t idx = rng() % A.dim();
            if (trial % 2 == 0 && !A.in_nspan(idx)) continue;  // bias toward the N-span
            c[idx] = static_cast<uint8_t>(1 + rng() % 2);
        }
        GroupAlgebraElement w(&A, std::move(c));
        if (w.is_zero()) continue;
        REQUIRE(ctx.delta(w) == ctx.delta_bruteforce(w));
    }
}

TEST_CASE("leading error symbol") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;

    // delta = 0: Y_w = gr w.
    auto w0 = bmono(A, {3, 0, 0}) + bmono(A, {0, 1, 0});
    CHECK(ctx.leading_error_symbol(w0) == w0.principal_symbol());
    CHECK(ctx.leading_error_symbol(w0) == GradedPoly::variable(3, 3, 1));

    // delta = 1: the error part at degree jdeg + delta.
    auto w1 = bmono(A, {3, 0, 0}) + bmono(A, {0, 3, 1});
    Mono m{};
    m[1] = 3;
    m[2] = 1;
    CHECK(ctx.leading_error_symbol(w1) == GradedPoly::monomial(3, 3, m, 1));

    CHECK_THROWS_AS(ctx.leading_error_symbol(bmono(A, {3, 0, 0})), in_subalgebra);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        auto w = random_unit(A, rng);
        auto dv = ctx.delta(w);
        if (!dv) continue;
        GradedPoly Y = ctx.leading_error_symbol(w);
        CHECK(Y.is_homogeneous());
        CHECK(Y.degree() == *w.jadic_degree() + *dv);
    }
}

TEST_CASE("sources of derivations") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;
    const auto& L = A.lie();

    for (uint32_t i = 0; i < 3; ++i) {
        DerivationSource src = make_source(ctx, L.basis(i), 1);
        CHECK(src.theta(0) == 2);
        CHECK(src.r_max == 0);
        CHECK_FALSE(src.induced(0).is_zero());
        CHECK_THROWS_AS(src.induced(1), window_exceeded);
    }

    DerivationSource trivial = make_source(ctx, L.zero(), 1);
    CHECK(trivial.induced(0).is_zero());

    CHECK_THROWS_AS(make_source(ctx, L.basis(0), 2), hypothesis_failed);
}

TEST_CASE("a-closure test basics") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;
    const auto& L = A.lie();

    DerivationSource src = make_source(ctx, L.basis(2), 1);
    GradedPoly one = GradedPoly::constant(3, 3, 1);
    GradedPoly Y = GradedPoly::variable(3, 3, 0, 2);  // e^2

    CHECK(a_closure_test(Y, one, src, 0, 0));

    DerivationSource trivial = make_source(ctx, L.zero(), 1);
    CHECK(a_closure_test(Y, GradedPoly::variable(3, 3, 2), trivial, 0, 0));
}

TEST_CASE("elements of two-sided ideals pass the closure test") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;
    const auto& L = A.lie();

    auto w0 = bmono(A, {1, 0, 0});
    FpEchelon span = two_sided_ideal_span(ctx, w0);
    CHECK(span.contains((A.b_monomial(A.generator_index(1)) * w0).coeffs()));
    GradedPoly X = graded_ideal_closure_generator(ctx, span);
    REQUIRE_FALSE(X.is_zero());

    std::vector<DerivationSource> sources;
    for (uint32_t i = 0; i < 3; ++i) sources.push_back(make_source(ctx, L.basis(i), 1));

    std::mt19937_64 rng(37);
    int done = 0;
    while (done < 25) {
        // Random element of the ideal.
        std::vector<uint8_t> acc(A.dim(), 0);
        Fp fp{3};
        for (const auto& row : span.rows())
            if (rng() % 4 == 0) {
                uint8_t s = static_cast<uint8_t>(1 + rng() % 2);
                for (std::size_t j = 0; j < acc.size(); ++j)
                    acc[j] = fp.add(acc[j], fp.mul(s, row[j]));
            }
        GroupAlgebraElement w(&A, std::move(acc));
        if (w.is_zero()) continue;
        auto dv = ctx.delta(w);
        if (!dv) continue;
        GradedPoly Y = ctx.leading_error_symbol(w);
        if (Y.degree() + 3 >= A.safe_window()) continue;
        ++done;
        for (const auto& src : sources) REQUIRE(a_closure_test(Y, X, src, 0, 0));
    }
}

TEST_CASE("cleaning step on 1 + b1") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;

    auto w = A.one() + bmono(A, {1, 0, 0});
    CleaningStep step = cleaning_step(ctx, w);
    CHECK(step.delta_before == 1);
    CHECK(step.unit == A.one() - bmono(A, {1, 0, 0}));
    CHECK(step.cleaned == A.one() - bmono(A, {2, 0, 0}));
    REQUIRE(step.delta_after.has_value());
    CHECK(*step.delta_after == 2);

    CHECK_THROWS_AS(cleaning_step(ctx, bmono(A, {3, 0, 0})), in_subalgebra);
}

TEST_CASE("cleaning loop telescopes 1 + b1 to 1") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;

    auto w = A.one() + bmono(A, {1, 0, 0});
    CleaningResult res = cleaning_loop(ctx, w);
    CHECK(res.cleaned == A.one());
    CHECK(res.delta_trace == std::vector<uint32_t>{1, 2, 4, 8});
    CHECK(res.unit.is_unit());
    CHECK((w * res.unit) == res.cleaned);

    // Already inside the subalgebra span: u = 1.
    auto z = bmono(A, {3, 0, 0});
    CleaningResult triv = cleaning_loop(ctx, z);
    CHECK(triv.unit == A.one());
    CHECK(triv.cleaned == z);
    CHECK(triv.delta_trace.empty());
}

TEST_CASE("cleaning random unit times N-span unit") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;
    std::mt19937_64 rng(41);

    for (int trial = 0; trial < 15; ++trial) {
        auto z = random_nspan_unit(A, rng);
        auto u0 = random_unit(A, rng);
        auto w = (trial % 2 == 0) ? z * u0 : u0 * z;
        REQUIRE(w.is_unit());
        CleaningResult res = cleaning_loop(ctx, w);
        REQUIRE(res.cleaned.in_subalgebra_span());
        REQUIRE(res.unit.is_unit());
        REQUIRE(w * res.unit == res.cleaned);
        for (std::size_t i = 1; i < res.delta_trace.size(); ++i)
            REQUIRE(res.delta_trace[i] > res.delta_trace[i - 1]);
    }
}

TEST_CASE("normality certificate") {
    const auto& A = *fx().A;
    const auto& ctx = *fx().ctx;

    CHECK(is_normal(ctx, A.one() + bmono(A, {1, 0, 0})));  // units are normal

    auto x = bmono(A, {1, 0, 0});
    if (!is_normal(ctx, x)) {
        CHECK_THROWS_AS(cleaning_loop(ctx, x), not_normal);
    }
}

TEST_CASE("source at p = 2 with the chain subalgebra") {
    auto fam = build_chevalley_sl2(2, 2, 10);
    QuotientAlgebra A(fam.pairs[0].algebra.get(), fam.pairs[0].sub, 4);
    FrobeniusPairContext ctx(&A);
    const auto& L = *fam.pairs[0].algebra;

    DerivationSource src = make_source(ctx, L.basis(2), 3);  // u = h, k = l + 1
    CHECK(src.r_max == 0);
    CHECK(src.theta(0) == 7);
    CHECK_FALSE(src.induced(0).is_zero());
}
