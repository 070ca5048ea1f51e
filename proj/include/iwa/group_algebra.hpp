#pragma once

// The modular group algebra of the finite quotient G/G^(p^m) of a uniform
// group G = exp(L). Elements are stored in the b-basis b^alpha with
// b_i = g_i - 1, alpha in [0, p^m)^d; the group basis g^lambda and the
// triangular binomial transform between the two underlie multiplication,
// which is convolution over the explicit finite group.
//
// J-adic degrees and principal symbols are read off the b-basis support;
// the identification of span{b^alpha : |alpha| >= n} with J^n is a
// certified property (verify_filtration_spans / reference_jn_spaces), valid
// for total degree below the safe window p^m.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwa/fp.hpp"
#include "iwa/graded_poly.hpp"
#include "iwa/lie.hpp"

namespace iwa {

class QuotientAlgebra;

class GroupAlgebraElement {
  public:
    GroupAlgebraElement(const QuotientAlgebra* owner, std::vector<uint8_t> coeffs);

    const QuotientAlgebra* owner() const { return owner_; }
    const std::vector<uint8_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool operator==(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-() const;
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
    GroupAlgebraElement scaled(uint8_t c) const;

    uint8_t augmentation() const { return c_.empty() ? 0 : c_[0]; }
    bool is_unit() const { return augmentation() != 0; }

    // min{|alpha| : coefficient != 0}; nullopt (TOP) for zero.
    std::optional<uint32_t> jadic_degree() const;
    GradedPoly principal_symbol() const;  // zero_element on zero
    GradedPoly homogeneous_component(uint32_t n) const;

    // Splits the support into the N-span part (p | alpha_i for i < t) and
    // the remainder; the sum of the parts is the element.
    std::pair<GroupAlgebraElement, GroupAlgebraElement> subalgebra_decompose() const;
    bool in_subalgebra_span() const;

  private:
    const QuotientAlgebra* owner_;
    std::vector<uint8_t> c_;
};

struct QuotientOptions {
    // Build the full lambda x mu multiplication table when its size in
    // entries stays within this bound; otherwise products fall back to
    // per-pair Campbell-Hausdorff evaluation.
    uint64_t table_entry_limit = uint64_t(1) << 20;
    bool parallel = true;
};

class QuotientAlgebra {
  public:
    QuotientAlgebra(const PowerfulLieAlgebra* L, SubalgebraSpec spec, uint32_t m,
                    QuotientOptions opts = QuotientOptions());
    QuotientAlgebra(const QuotientAlgebra&) = delete;
    QuotientAlgebra& operator=(const QuotientAlgebra&) = delete;

    const PowerfulLieAlgebra& lie() const { return *L_; }
    const SubalgebraSpec& sub() const { return spec_; }
    uint32_t p() const { return static_cast<uint32_t>(L_->p()); }
    uint32_t d() const { return L_->rank(); }
    uint32_t t() const { return t_; }
    uint32_t m() const { return m_; }
    uint32_t pm() const { return pm_; }
    uint64_t dim() const { return dim_; }
    bool has_table() const { return !table_.empty(); }
    uint32_t max_total_degree() const { return d() * (pm_ - 1); }
    uint32_t safe_window() const { return pm_; }  // symbol claims need degree < p^m

    // ---- index bookkeeping -------------------------------------------------
    uint64_t pack(const std::vector<uint32_t>& alpha) const;
    std::vector<uint32_t> unpack(uint64_t idx) const;
    uint32_t degree_of(uint64_t idx) const { return degree_[idx]; }
    bool in_nspan(uint64_t idx) const { return nmask_[idx]; }

    // ---- the finite group --------------------------------------------------
    uint64_t group_mul(uint64_t lambda, uint64_t mu) const;
    uint64_t group_of_lie(const LieElement& u) const;  // exp(u) G^(p^m)
    uint64_t generator_index(uint32_t i) const;        // g_{i+1}

    // ---- elements ----------------------------------------------------------
    GroupAlgebraElement zero_element() const;
    GroupAlgebraElement one() const;
    GroupAlgebraElement b_monomial(uint64_t alpha_idx) const;
    GroupAlgebraElement group_basis_element(uint64_t lambda) const;
    GroupAlgebraElement element_of_lie(const LieElement& u) const;  // image of exp(u)

    std::vector<uint8_t> to_group_basis(const std::vector<uint8_t>& b_coeffs) const;
    std::vector<uint8_t> to_b_basis(const std::vector<uint8_t>& g_coeffs) const;

    GroupAlgebraElement multiply(const GroupAlgebraElement& x, const GroupAlgebraElement& y) const;
    // [g^lambda, x] for a single group element.
    GroupAlgebraElement commutator(uint64_t lambda, const GroupAlgebraElement& x) const;
    // b_i * x and x * b_i.
    GroupAlgebraElement left_mul_generator(uint32_t i, const GroupAlgebraElement& x) const;
    GroupAlgebraElement right_mul_generator(const GroupAlgebraElement& x, uint32_t i) const;

    // ---- certified filtration ----------------------------------------------
    // Checks min-degree(b_i * b^alpha) >= |alpha| + 1 for every generator i
    // and every alpha with |alpha| < up_to (the inductive step identifying
    // J^n with span{b^alpha : |alpha| >= n}). Returns a witness description
    // on failure.
    std::optional<std::string> verify_filtration_spans(uint32_t up_to) const;

    // ---- derivations -------------------------------------------------------
    // The graded derivation {a, -}_theta read off the generators: y_j maps
    // to the degree-(1 + theta) component of [a, b_j]. Throws
    // hypothesis_failed when some [a, b_j] is shallower than 1 + theta or
    // the result is not B1-linear.
    DerivationOp induced_derivation(uint64_t a_lambda, uint32_t theta) const;

    struct FiltrationCheck {
        bool ok = true;
        std::string witness;
    };
    // Commutator depth bounds [a, b^alpha] in J^(|alpha| + p^k - 1) for all
    // |alpha| <= sample_degree (variant 'c'), and, restricted to the N-span
    // basis, [a, b^alpha] in J^(|alpha| + p^(k+1) - p) (variant 'd').
    FiltrationCheck commutator_filtration_check(const LieElement& u, uint32_t k,
                                                uint32_t sample_degree, char variant) const;

    bool verify_rho_derivation_formula(const LieElement& u) const;

  private:
    void check_owner(const GroupAlgebraElement& x) const;
    void build_group(bool parallel);
    void build_table(bool parallel);
    void transform_axis(std::vector<uint8_t>& v, uint32_t axis,
                        const std::vector<uint8_t>& M) const;
    std::vector<std::pair<uint64_t, uint8_t>> expand_b_monomial(uint64_t alpha_idx) const;

    const PowerfulLieAlgebra* L_;
    SubalgebraSpec spec_;
    uint32_t m_, pm_, t_;
    uint64_t dim_;
    Fp fp_;
    std::vector<uint64_t> stride_;
    std::vector<uint32_t> lambda_to_coord_;
    std::vector<uint32_t> coord_to_lambda_;
    std::vector<uint32_t> table_;  // lambda * dim + mu -> nu, optional
    std::vector<uint16_t> degree_;
    std::vector<bool> nmask_;
    std::vector<uint8_t> binom_;   // pascal mod p, (pm) x (pm)
    std::vector<uint8_t> bg_, gb_; // per-axis transform matrices
};

// The matrix of rho_u : L/L1 -> L/pL, v_j + L1 -> (1/p^k)[u, v_j] + pL, as
// a d x t matrix over F_p (column j is the image of v_j, j < t). Verifies
// the three depth conditions and throws hypothesis_failed otherwise.
std::vector<std::vector<uint8_t>> rho_matrix(const PowerfulLieAlgebra& L,
                                             const SubalgebraSpec& spec, const LieElement& u,
                                             uint32_t k);

// Largest k with [u, L] in p^k L when the three rho_u conditions hold for
// it; throws hypothesis_failed when no valid k exists.
uint32_t rho_depth(const PowerfulLieAlgebra& L, const SubalgebraSpec& spec, const LieElement& u);

// Serial reference: J^n as echelon spaces computed from J^(n+1) = sum_i b_i J^n,
// starting from J = ker(augmentation). Independent of the b-basis support
// shortcut; used as the oracle for degree and delta computations.
std::vector<FpEchelon> reference_jn_spaces(const QuotientAlgebra& A, uint32_t n_max);

} // namespace iwa
