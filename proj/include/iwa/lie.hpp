#pragma once

// Powerful Z_p-Lie algebras with structure constants and a faithful matrix
// realization, exponential-coordinate group arithmetic through the matrix
// exp/log oracle, and the Campbell-Hausdorff congruence checks.
//
// Elements store coordinates in the fixed basis at the algebra's coordinate
// precision N; the realization matrices live at precision N + max basis
// scale so coordinate recovery (division by p^scale) stays exact mod p^N.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "iwa/padic.hpp"

namespace iwa {

class PowerfulLieAlgebra;

class LieElement {
  public:
    LieElement(const PowerfulLieAlgebra* owner, std::vector<TruncatedPadic> coords)
        : owner_(owner), c_(std::move(coords)) {}

    const PowerfulLieAlgebra* owner() const { return owner_; }
    const std::vector<TruncatedPadic>& coords() const { return c_; }
    const TruncatedPadic& coord(std::size_t i) const { return c_[i]; }

    LieElement operator+(const LieElement& o) const;
    LieElement operator-(const LieElement& o) const;
    LieElement operator-() const;
    bool operator==(const LieElement& o) const;

    LieElement times_int(int64_t k) const;
    LieElement times_prime_power(uint32_t k) const;
    LieElement scaled(const TruncatedPadic& c) const;

    bool is_zero() const;
    // Smallest coordinate valuation; N when zero. "u in p^k L" in basis
    // coordinates means min_valuation() >= k.
    uint32_t min_valuation() const;

  private:
    const PowerfulLieAlgebra* owner_;
    std::vector<TruncatedPadic> c_;
};

struct GroupElement {
    LieElement log;  // g = exp(log)
};

// Subalgebra L1 spanned by p^{s_i} v_i; requires s_i in {0,1} with the
// scaled indices first, so t = #{i : s_i = 1}.
struct SubalgebraSpec {
    std::vector<int> scaling;
    int t() const {
        int n = 0;
        for (int s : scaling) n += (s == 1);
        return n;
    }
};

struct RecoverySlot {
    uint32_t row, col, scale;
};

class PowerfulLieAlgebra {
  public:
    struct Init {
        uint64_t p;
        uint32_t N;
        uint32_t rank;
        uint32_t matrix_dim;
        std::string name;
        // c[(i*d + j)*d + k] = coefficient of v_k in [v_i, v_j], as integers.
        std::vector<int64_t> structure;
        // realization[i] is the matrix of v_i, row-major integers.
        std::vector<std::vector<int64_t>> realization;
        std::vector<RecoverySlot> recovery;
    };

    explicit PowerfulLieAlgebra(const Init& init, bool validate = true);
    PowerfulLieAlgebra(const PowerfulLieAlgebra&) = delete;
    PowerfulLieAlgebra& operator=(const PowerfulLieAlgebra&) = delete;

    uint64_t p() const { return p_; }
    uint32_t N() const { return N_; }
    uint32_t Nmat() const { return Nmat_; }
    uint32_t eps() const { return eps_; }
    uint32_t rank() const { return d_; }
    const std::string& name() const { return name_; }
    uint32_t min_scale() const { return min_scale_; }

    LieElement element(const std::vector<int64_t>& coords) const;
    LieElement zero() const;
    LieElement basis(uint32_t i) const;
    const TruncatedPadic& structure_constant(uint32_t i, uint32_t j, uint32_t k) const;

    LieElement bracket(const LieElement& a, const LieElement& b) const;

    PadicMatrix realize(const LieElement& u) const;
    LieElement recover(const PadicMatrix& X) const;
    const PadicMatrix& basis_matrix(uint32_t i) const { return real_[i]; }

    // Phi(u, v) with exp(Phi(u,v)) = exp(u) exp(v), through the realization.
    LieElement bch(const LieElement& u, const LieElement& v) const;

    GroupElement exp_of(const LieElement& u) const { return {u}; }
    GroupElement group_identity() const { return {zero()}; }
    GroupElement group_mul(const GroupElement& g, const GroupElement& h) const;
    GroupElement group_inv(const GroupElement& g) const;
    GroupElement group_pow(const GroupElement& g, int64_t m) const;
    GroupElement group_commutator(const GroupElement& g, const GroupElement& h) const;

    // Largest k <= N with [u, L] in p^k L.
    uint32_t bracket_depth(const LieElement& u) const;
    // Largest k <= N with [u, L1] in p^k L, L1 given by the spec.
    uint32_t subalgebra_bracket_depth(const LieElement& u, const SubalgebraSpec& spec) const;

    // Phi(-v + p^k w, v) = p^k w (mod p^(k+1) L).
    bool check_bch_congruence(const LieElement& v, const LieElement& w, uint32_t k) const;

    // (exp u, exp v) = exp([u, v]) (mod G^(p^(k+1))), requires [u,L] in p^k L.
    bool check_commutator_congruence(const LieElement& u, const LieElement& v, uint32_t k) const;

    // Antisymmetry, Jacobi, powerfulness, and the realization being a Lie
    // homomorphism. Throws iwa::error with a witness description.
    void validate() const;
    void validate_subalgebra(const SubalgebraSpec& spec) const;

    // Fault-injection hook: adds delta to c_{ij}^k and subtracts it from
    // c_{ji}^k, keeping antisymmetry while (generally) breaking Jacobi.
    void perturb_structure_constant(uint32_t i, uint32_t j, uint32_t k, int64_t delta);

  private:
    void check_owner(const LieElement& u) const;
    uint64_t p_;
    uint32_t N_, Nmat_, eps_, d_, n_, min_scale_;
    std::string name_;
    std::vector<TruncatedPadic> c_;
    std::vector<PadicMatrix> real_;
    std::vector<RecoverySlot> recovery_;
};

struct AlgebraWithSubalgebra {
    std::unique_ptr<PowerfulLieAlgebra> algebra;
    SubalgebraSpec sub;
    std::string label;
};

struct Sl2Family {
    std::vector<AlgebraWithSubalgebra> pairs;
};

// For p >= 3, l >= 1: sl2(p^l Z_p) with basis (e, f, h) and L1 = pL.
// For p = 2, l >= 2: the two-step chain; first pair is (L0, L1) with basis
// (e, f, h) and t = 2, second pair is (L1, L2) with basis (h', e', f') and
// t = 1 where e' = pe, f' = pf, h' = h.
Sl2Family build_chevalley_sl2(uint64_t p, uint32_t l, uint32_t N);

// sl2(p^l Z_2) with L1 = pL (t = 3); the one-step descent at p = 2.
AlgebraWithSubalgebra build_sl2_single_step(uint32_t l, uint32_t N);

// Abelian Z_p^d with the diagonal realization, L1 = pL.
AlgebraWithSubalgebra build_abelian(uint64_t p, uint32_t d, uint32_t N);

constexpr uint32_t epsilon_for(uint64_t p) { return p == 2 ? 2 : 1; }

} // namespace iwa
