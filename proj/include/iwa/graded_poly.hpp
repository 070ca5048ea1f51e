#pragma once

// Multivariate polynomial calculus over F_p: sparse polynomials with
// graded-lexicographic ordering, exact division and multivariate gcd by
// recursive content/primitive-part reduction, the Frobenius decomposition
// B = (+)_alpha B1 y^alpha, and the partial derivations that span all
// B1-linear derivations.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwa/errors.hpp"
#include "iwa/fp.hpp"

namespace iwa {

constexpr uint32_t kMaxVars = 6;

using Mono = std::array<uint16_t, kMaxVars>;

inline uint32_t mono_degree(const Mono& m) {
    uint32_t s = 0;
    for (auto e : m) s += e;
    return s;
}

// Graded-lexicographic: higher total degree first, ties by exponent of the
// earliest variable. The map comparator inverts this so iteration starts at
// the lowest monomial; leading terms are taken from the other end.
struct MonoGrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        uint32_t da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        for (uint32_t i = 0; i < kMaxVars; ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

class GradedPoly {
  public:
    GradedPoly(uint32_t p, uint32_t nvars);
    static GradedPoly zero(uint32_t p, uint32_t nvars) { return {p, nvars}; }
    static GradedPoly constant(uint32_t p, uint32_t nvars, uint8_t c);
    static GradedPoly variable(uint32_t p, uint32_t nvars, uint32_t j, uint32_t exponent = 1);
    static GradedPoly monomial(uint32_t p, uint32_t nvars, const Mono& m, uint8_t c);

    uint32_t p() const { return fp_.p; }
    uint32_t nvars() const { return nvars_; }
    const Fp& field() const { return fp_; }
    const std::map<Mono, uint8_t, MonoGrlexLess>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    uint32_t degree() const;      // total degree of the leading term; 0 for zero
    uint32_t low_degree() const;  // smallest total degree present
    bool is_homogeneous() const;

    void add_term(const Mono& m, uint8_t c);  // accumulates, drops zeros
    uint8_t coeff(const Mono& m) const;

    GradedPoly operator+(const GradedPoly& o) const;
    GradedPoly operator-(const GradedPoly& o) const;
    GradedPoly operator*(const GradedPoly& o) const;
    GradedPoly operator-() const;
    bool operator==(const GradedPoly& o) const;

    GradedPoly scaled(uint8_t c) const;
    GradedPoly times_monomial(const Mono& m, uint8_t c) const;

    GradedPoly homogeneous_component(uint32_t n) const;

    Mono leading_monomial() const;  // grlex-largest; throws zero_element on zero
    uint8_t leading_coeff() const;
    GradedPoly monic() const;

    std::string str(const std::vector<std::string>& names) const;

  private:
    void check_compatible(const GradedPoly& o) const;
    Fp fp_;
    uint32_t nvars_;
    std::map<Mono, uint8_t, MonoGrlexLess> terms_;
};

// Exact division: Y = X * Q. Returns Q when divisible. Throws zero_divisor
// when X = 0.
std::optional<GradedPoly> divide_exact(const GradedPoly& X, const GradedPoly& Y);
inline bool divides(const GradedPoly& X, const GradedPoly& Y) {
    return divide_exact(X, Y).has_value();
}

// Monic-normalized gcd; gcd(f, 0) = monic f, gcd(0, 0) = 0.
GradedPoly multivariate_gcd(const GradedPoly& f, const GradedPoly& g);
GradedPoly gcd_list(const std::vector<GradedPoly>& fs);

// Principal generator of the reflexive closure: the monic gcd of the
// generators. Throws zero_ideal when every generator is zero.
GradedPoly reflexive_closure(const std::vector<GradedPoly>& gens);

// Cyclic module R/I given by annihilator generators: pseudo-null iff the
// gcd of the generators is a unit. All-zero input (the module R) gives
// false.
bool pseudo_null_test(const std::vector<GradedPoly>& ann_gens);

// Frobenius exponent pattern: alpha in [0, p-1]^t packed into a Mono with
// zeros beyond the first t coordinates.
bool is_b1_monomial(const Mono& m, uint32_t t, uint32_t p);
bool is_b1_polynomial(const GradedPoly& f, uint32_t t);

struct FrobeniusSplit {
    uint32_t t;
    // component at residue pattern alpha; absent patterns are zero.
    std::map<Mono, GradedPoly, MonoGrlexLess> components;
};

FrobeniusSplit frobenius_decompose(const GradedPoly& f, uint32_t t);
GradedPoly frobenius_reassemble(const FrobeniusSplit& split, uint32_t p, uint32_t nvars);

// d_j = the B1-linear derivation with d_j(sum u_a y^a) = sum a_j u_a y^(a-e_j),
// 0-based j < t. Throws index_out_of_range otherwise.
GradedPoly partial_j(const GradedPoly& f, uint32_t j, uint32_t t);

// A B1-linear derivation sum_j b_j d_j stored by the generator images b_j.
// Entries at positions >= t must be zero.
struct DerivationOp {
    uint32_t t;
    std::vector<GradedPoly> images;

    DerivationOp(uint32_t t_, std::vector<GradedPoly> images_);
    bool is_zero() const;
    bool operator==(const DerivationOp& o) const;
};

GradedPoly apply_derivation(const DerivationOp& D, const GradedPoly& f);

} // namespace iwa
