#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwa/group_algebra.hpp"

using namespace iwa;

namespace {

struct Setup {
    Sl2Family fam;
    std::unique_ptr<QuotientAlgebra> A;

    Setup(uint64_t p, uint32_t l, uint32_t N, uint32_t m, std::size_t pair = 0)
        : fam(build_chevalley_sl2(p, l, N)) {
        A = std::make_unique<QuotientAlgebra>(fam.pairs[pair].algebra.get(), fam.pairs[pair].sub,
                                              m);
    }
    const PowerfulLieAlgebra& L() const { return *fam.pairs[0].algebra; }
};

// Shared across test cases: the table-backed m = 2 quotient is the costly
// fixture, so build it once.
Setup& sl2_m2() {
    static Setup s(3, 1, 8, 2);
    return s;
}

GroupAlgebraElement random_elem(const QuotientAlgebra& A, std::mt19937_64& rng, int terms) {
    auto x = A.zero_element();
    for (int i = 0; i < terms; ++i) {
        std::vector<uint8_t> c(A.dim(), 0);
        c[rng() % A.dim()] = static_cast<uint8_t>(1 + rng() % (A.p() - 1));
        x = x + GroupAlgebraElement(&A, std::move(c));
    }
    return x;
}

} // namespace

TEST_CASE("dimension and identity") {
    auto fam = build_chevalley_sl2(3, 1, 8);
    QuotientAlgebra A(fam.pairs[0].algebra.get(), fam.pairs[0].sub, 1);
    CHECK(A.dim() == 27);

    std::mt19937_64 rng(2);
    auto x = random_elem(A, rng, 5);
    CHECK(A.one() * x == x);
    CHECK(x * A.one() == x);
}

TEST_CASE("precision guard") {
    auto fam = build_chevalley_sl2(3, 1, 4);
    CHECK_THROWS_AS(QuotientAlgebra(fam.pairs[0].algebra.get(), fam.pairs[0].sub, 2),
                    precision_exhausted);
}

TEST_CASE("generator products match the direct group-basis route") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j) {
            auto bi = A.b_monomial(A.generator_index(i));
            auto bj = A.b_monomial(A.generator_index(j));
            // b_i b_j = g_i g_j - g_i - g_j + 1, computed without convolution.
            uint64_t gi = A.generator_index(i), gj = A.generator_index(j);
            auto direct = A.group_basis_element(A.group_mul(gi, gj)) - A.group_basis_element(gi) -
                          A.group_basis_element(gj) + A.one();
            CHECK(bi * bj == direct);
        }
}

TEST_CASE("multiplication is associative and bilinear") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = random_elem(A, rng, 3);
        auto y = random_elem(A, rng, 3);
        auto z = random_elem(A, rng, 3);
        REQUIRE((x * y) * z == x * (y * z));
        REQUIRE(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("jadic degree and principal symbol") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    auto b = [&](std::vector<uint32_t> alpha) { return A.b_monomial(A.pack(alpha)); };

    CHECK(*b({1, 0, 0}).jadic_degree() == 1);
    CHECK(*(A.one() + b({1, 0, 0})).jadic_degree() == 0);
    CHECK(*(b({2, 1, 0}) + b({0, 0, 3})).jadic_degree() == 3);
    CHECK_FALSE(A.zero_element().jadic_degree().has_value());

    // gr(b1 b2 + b1^3) = y1 y2.
    auto w = b({1, 1, 0}) + b({3, 0, 0});
    GradedPoly expect(3, 3);
    Mono m{};
    m[0] = 1;
    m[1] = 1;
    expect.add_term(m, 1);
    CHECK(w.principal_symbol() == expect);

    // gr(g_i - 1) = y_i.
    for (uint32_t i = 0; i < 3; ++i) {
        auto gi = A.element_of_lie(s.L().basis(i)) - A.one();
        CHECK(gi.principal_symbol() == GradedPoly::variable(3, 3, i));
    }

    CHECK_THROWS_AS(A.zero_element().principal_symbol(), zero_element);
}

TEST_CASE("symbols are multiplicative inside the safe window") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    std::mt19937_64 rng(5);
    int done = 0;
    while (done < 100) {
        auto x = random_elem(A, rng, 3);
        auto y = random_elem(A, rng, 3);
        auto dx = x.jadic_degree(), dy = y.jadic_degree();
        if (!dx || !dy || *dx + *dy >= A.safe_window()) continue;
        ++done;
        auto xy = x * y;
        REQUIRE(*xy.jadic_degree() == *dx + *dy);
        REQUIRE(xy.principal_symbol() == x.principal_symbol() * y.principal_symbol());
    }
}

TEST_CASE("generators commute modulo J^3") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j) {
            auto bi = A.b_monomial(A.generator_index(i));
            auto bj = A.b_monomial(A.generator_index(j));
            auto c = bi * bj - bj * bi;
            auto deg = c.jadic_degree();
            CHECK((!deg || *deg >= 3));
        }
}

TEST_CASE("subalgebra split") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    auto b = [&](std::vector<uint32_t> alpha) { return A.b_monomial(A.pack(alpha)); };

    auto w = b({3, 0, 0}) + b({0, 1, 0});
    auto [x, y] = w.subalgebra_decompose();
    CHECK(x == b({3, 0, 0}));
    CHECK(y == b({0, 1, 0}));
    CHECK(x + y == w);
    CHECK(x.in_subalgebra_span());
    CHECK(x.subalgebra_decompose().first == x);
    CHECK(y.subalgebra_decompose().second == y);

    // The N-span is closed under multiplication.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto u = random_elem(A, rng, 3).subalgebra_decompose().first;
        auto v = random_elem(A, rng, 3).subalgebra_decompose().first;
        REQUIRE((u * v).in_subalgebra_span());
    }
}

TEST_CASE("span certification and the reference J^n oracle") {
    Setup s(3, 1, 8, 1);
    const auto& A = *s.A;
    CHECK_FALSE(A.verify_filtration_spans(A.max_total_degree() + 1).has_value());

    auto spaces = reference_jn_spaces(A, A.max_total_degree() + 1);
    for (uint32_t n = 0; n <= A.max_total_degree(); ++n) {
        std::size_t count = 0;
        for (uint64_t idx = 0; idx < A.dim(); ++idx)
            if (A.degree_of(idx) >= n) ++count;
        REQUIRE(spaces[n].rank() == count);
    }
    CHECK(spaces[A.max_total_degree() + 1].rank() == 0);
}

TEST_CASE("commutator filtration bounds") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    const auto& L = s.L();

    for (uint32_t i = 0; i < 3; ++i) {
        auto res_c = A.commutator_filtration_check(L.basis(i), 1, 4, 'c');
        CHECK(res_c.ok);
        auto res_d = A.commutator_filtration_check(L.basis(i), 1, 4, 'd');
        CHECK(res_d.ok);
    }

    // Specific bound: [exp(e), b_f] has degree >= p^l = 3.
    auto c = A.commutator(A.group_of_lie(L.basis(0)), A.b_monomial(A.generator_index(1)));
    REQUIRE(c.jadic_degree().has_value());
    CHECK(*c.jadic_degree() >= 3);

    CHECK_THROWS_AS(A.commutator_filtration_check(L.basis(0), 2, 4, 'c'), hypothesis_failed);
    CHECK_THROWS_AS(A.commutator_filtration_check(L.basis(0), 0, 4, 'c'), hypothesis_failed);
}

TEST_CASE("induced derivation of exp(h)") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    const auto& L = s.L();

    DerivationOp D = A.induced_derivation(A.group_of_lie(L.basis(2)), 2);
    // D(y_e) = 2 e^3, D(y_f) = -2 f^3 = f^3, D(y_h) = 0.
    Mono e3{}, f3{};
    e3[0] = 3;
    f3[1] = 3;
    CHECK(D.images[0] == GradedPoly::monomial(3, 3, e3, 2));
    CHECK(D.images[1] == GradedPoly::monomial(3, 3, f3, 1));
    CHECK(D.images[2].is_zero());

    // A central-acting element: exp(p^2 h) commutes deeply enough that the
    // depth-2 derivation vanishes.
    DerivationOp Z = A.induced_derivation(A.group_of_lie(L.basis(2).times_prime_power(2)), 2);
    CHECK(Z.is_zero());
}

TEST_CASE("induced derivation satisfies the Leibniz symbol identity") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    const auto& L = s.L();
    std::mt19937_64 rng(11);

    uint64_t a = A.group_of_lie(L.basis(2));
    const uint32_t theta = 2;
    DerivationOp D = A.induced_derivation(a, theta);

    int done = 0;
    while (done < 50) {
        uint64_t ai = rng() % A.dim(), bi = rng() % A.dim();
        uint32_t da = A.degree_of(ai), db = A.degree_of(bi);
        if (da + db == 0 || da + db + theta >= A.safe_window()) continue;
        ++done;
        auto w = A.b_monomial(ai) * A.b_monomial(bi);
        auto lhs = A.commutator(a, w).homogeneous_component(da + db + theta);
        auto rhs = apply_derivation(D, w.homogeneous_component(da + db));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("rho matrix") {
    auto fam = build_chevalley_sl2(3, 1, 8);
    const auto& L = *fam.pairs[0].algebra;
    const auto& sub = fam.pairs[0].sub;

    // u = h: columns (e, f, h) -> (2, -2, 0) on the diagonal positions.
    auto ch = rho_matrix(L, sub, L.basis(2), 1);
    CHECK(ch[0][0] == 2);
    CHECK(ch[1][1] == 1);  // -2 mod 3
    CHECK(ch[2][2] == 0);
    CHECK(ch[2][0] == 0);

    // u = e: rho(f + L1) = h + pL, rho(h + L1) = -2e + pL.
    auto ce = rho_matrix(L, sub, L.basis(0), 1);
    CHECK(ce[2][1] == 1);
    CHECK(ce[0][2] == 1);  // -2 mod 3
    CHECK(ce[0][0] == 0);

    CHECK(rho_depth(L, sub, L.basis(0)) == 1);
    CHECK(rho_depth(L, sub, L.basis(0).times_prime_power(1)) == 2);
    CHECK_THROWS_AS(rho_matrix(L, sub, L.basis(0), 2), hypothesis_failed);

    auto ab = build_abelian(3, 2, 8);
    CHECK_THROWS_AS(rho_depth(*ab.algebra, ab.sub, ab.algebra->basis(0)), hypothesis_failed);
}

TEST_CASE("derivation formula for sl2 at p = 3") {
    Setup& s = sl2_m2();
    const auto& A = *s.A;
    const auto& L = s.L();
    for (uint32_t i = 0; i < 3; ++i) CHECK(A.verify_rho_derivation_formula(L.basis(i)));

    // r = 1 through p*u needs the next window.
    QuotientAlgebra A3(s.fam.pairs[0].algebra.get(), s.fam.pairs[0].sub, 3);
    for (uint32_t i = 0; i < 3; ++i) {
        CHECK(A3.verify_rho_derivation_formula(L.basis(i)));
        CHECK(A3.verify_rho_derivation_formula(L.basis(i).times_prime_power(1)));
    }
    CHECK_THROWS_AS(A.verify_rho_derivation_formula(L.basis(0).times_prime_power(1)),
                    window_exceeded);
}

TEST_CASE("derivation formula for the p = 2 chain") {
    auto fam = build_chevalley_sl2(2, 2, 10);

    // Pair (L0, L1): u in {e, f} at depth l, u = h at depth l + 1.
    QuotientAlgebra A0(fam.pairs[0].algebra.get(), fam.pairs[0].sub, 4);
    const auto& L0 = *fam.pairs[0].algebra;
    CHECK(A0.verify_rho_derivation_formula(L0.basis(0)));
    CHECK(A0.verify_rho_derivation_formula(L0.basis(1)));
    CHECK(A0.verify_rho_derivation_formula(L0.basis(2)));

    // Pair (L1, L2), basis (h', e', f'): u in {e', f'} at depth l + 1.
    QuotientAlgebra A1(fam.pairs[1].algebra.get(), fam.pairs[1].sub, 4);
    const auto& L1 = *fam.pairs[1].algebra;
    CHECK(A1.verify_rho_derivation_formula(L1.basis(1)));
    CHECK(A1.verify_rho_derivation_formula(L1.basis(2)));
    CHECK_THROWS_AS(rho_depth(L1, fam.pairs[1].sub, L1.basis(0)), hypothesis_failed);
}
